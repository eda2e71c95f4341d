#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aschcheck/criteria.hpp"

namespace testutil {

using namespace asch;

/// Matrix from integer entries (interpreted through from_int, so only
/// prime-subfield values).
inline Matrix mk(const Field& f, std::vector<std::vector<uint64_t>> rows) {
  Matrix m(f, rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j)
      m.at(i, j) = f->from_int(rows[i][j]);
  return m;
}

/// Matrix from explicit coefficient vectors.
inline Matrix mkc(const Field& f,
                  std::vector<std::vector<std::vector<uint32_t>>> rows) {
  Matrix m(f, rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j) {
      FieldElem e{rows[i][j]};
      e.c.resize(f->degree(), 0);
      m.at(i, j) = e;
    }
  return m;
}

inline std::vector<Matrix> sl2_prime_generators(const Field& f) {
  return {mk(f, {{1, 1}, {0, 1}}), mk(f, {{1, 0}, {1, 1}})};
}

/// Generators of SL(2,q) for any q: transvection, torus, Weyl element.
inline std::vector<Matrix> sl2_generators(const Field& f) {
  Matrix x = mk(f, {{1, 1}, {0, 1}});
  // a multiplicative generator of the field
  FieldElem gen;
  for (uint64_t i = 1; i < f->order(); ++i) {
    FieldElem u = f->element_at(i);
    if (!f->is_zero(u) && f->multiplicative_order(u) == f->units()) {
      gen = u;
      break;
    }
  }
  Matrix h(f, 2, 2);
  h.at(0, 0) = gen;
  h.at(1, 1) = f->inv(gen);
  Matrix w(f, 2, 2);
  w.at(0, 1) = f->one();
  w.at(1, 0) = f->neg(f->one());
  return {x, h, w};
}

inline std::vector<Matrix> dihedral_generators(const Field& f, uint64_t a,
                                               uint64_t b) {
  Matrix swap = mk(f, {{0, 1}, {1, 0}});
  Matrix diag(f, 2, 2);
  diag.at(0, 0) = f->from_int(a);
  diag.at(1, 1) = f->from_int(b);
  return {swap, diag};
}

inline std::vector<Matrix> dihedral_generators_elems(const Field& f,
                                                     const FieldElem& a,
                                                     const FieldElem& b) {
  Matrix swap = mk(f, {{0, 1}, {1, 0}});
  Matrix diag(f, 2, 2);
  diag.at(0, 0) = a;
  diag.at(1, 1) = b;
  return {swap, diag};
}

/// Monomial degree-3 group: a diagonal plus the 3-cycle permutation matrix.
inline std::vector<Matrix> monomial3_generators(const Field& f,
                                                const FieldElem& d0,
                                                const FieldElem& d1,
                                                const FieldElem& d2) {
  Matrix diag(f, 3, 3);
  diag.at(0, 0) = d0;
  diag.at(1, 1) = d1;
  diag.at(2, 2) = d2;
  Matrix cyc(f, 3, 3);
  cyc.at(1, 0) = f->one();
  cyc.at(2, 1) = f->one();
  cyc.at(0, 2) = f->one();
  return {diag, cyc};
}

/// The degree-5 representation of Alt(5) over GF(7) (monomial model) and
/// its natural permutation action.
inline std::vector<Matrix> a5_deg5_gf7_generators(const Field& f) {
  return {mk(f, {{0, 0, 0, 0, 4},
                 {2, 0, 0, 0, 0},
                 {0, 2, 0, 0, 0},
                 {0, 0, 1, 0, 0},
                 {0, 0, 0, 4, 0}}),
          mk(f, {{0, 0, 2, 0, 0},
                 {4, 0, 0, 0, 0},
                 {0, 1, 0, 0, 0},
                 {0, 0, 0, 4, 0},
                 {0, 0, 0, 0, 2}})};
}

inline std::vector<std::vector<uint32_t>> a5_psi_images() {
  return {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}};
}

/// Extraspecial 3^(1+2) of exponent 3 inside GL(3,4).
inline std::vector<Matrix> extraspecial3_generators(const Field& gf4) {
  FieldElem w{{0, 1}};
  Matrix a(gf4, 3, 3);
  a.at(0, 0) = gf4->one();
  a.at(1, 1) = w;
  a.at(2, 2) = gf4->mul(w, w);
  Matrix b(gf4, 3, 3);
  b.at(1, 0) = gf4->one();
  b.at(2, 1) = gf4->one();
  b.at(0, 2) = gf4->one();
  return {a, b};
}

/// GF(9)* extended by the Galois automorphism, inside GL(2,3).
inline std::vector<Matrix> singer_galois_gf3_generators(const Field& gf3) {
  return {mk(gf3, {{1, 2}, {1, 1}}), mk(gf3, {{1, 0}, {0, 2}})};
}

inline Matrix random_invertible(const Field& f, size_t n, Prng& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, rng);
    if (invertible(m)) return m;
  }
}

inline std::vector<Matrix> conjugated(const std::vector<Matrix>& gens,
                                      const Matrix& x) {
  Matrix xi = inverse(x);
  std::vector<Matrix> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(x * g * xi);
  return out;
}

inline std::vector<Matrix> scalar_twisted(const std::vector<Matrix>& gens,
                                          const FieldElem& s) {
  std::vector<Matrix> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(scalar_mul(s, g));
  return out;
}

}  // namespace testutil
