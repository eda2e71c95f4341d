#pragma once

#include <string>
#include <variant>
#include <vector>

#include "aschcheck/character.hpp"
#include "aschcheck/group.hpp"
#include "aschcheck/poly.hpp"

namespace asch {

/// Schur test: the commutant of an absolutely irreducible generator list is
/// exactly the scalars.
inline bool absolute_irreducibility(const MatRep& rep) {
  std::vector<Matrix> gens = rep.generators;
  return intertwiner_space(gens, gens).size() == 1;
}

/// Basis of End_{KN}(V), the algebra of matrices commuting with Delta(N).
struct EndAlgebra {
  std::vector<Matrix> basis;

  size_t dimension() const { return basis.size(); }
};

namespace detail {

inline void check_normal_subgroup(const MatRep& rep,
                                  const std::vector<uint32_t>& sub) {
  require(!sub.empty() && sub.front() == 0, Errc::not_normal,
          "subset does not contain the identity");
  require(subgroup_closure(rep, sub).size() == sub.size(), Errc::not_normal,
          "subset is not a subgroup");
  require(is_subgroup_normal(rep, sub), Errc::not_normal,
          "subgroup is not normal");
}

/// Row-major vectorization of a list of matrices, stacked as rows.
inline Matrix stack_vectorized(const std::vector<Matrix>& ms) {
  const Field& f = ms.at(0).field();
  size_t dim = ms[0].rows() * ms[0].cols();
  Matrix s(f, ms.size(), dim);
  for (size_t i = 0; i < ms.size(); ++i) {
    for (size_t j = 0; j < dim; ++j)
      s.at(i, j) = ms[i].entries()[j];
  }
  return s;
}

inline size_t span_dimension(const std::vector<Matrix>& ms) {
  if (ms.empty()) return 0;
  return rank_of(stack_vectorized(ms));
}

/// Coordinates of each target in the span of the basis matrices; throws if
/// a target is outside the span.
inline std::vector<std::vector<FieldElem>> coordinates_in_span(
    const std::vector<Matrix>& basis, const std::vector<Matrix>& targets) {
  const Field& f = basis.at(0).field();
  size_t dim = basis[0].rows() * basis[0].cols();
  size_t m = basis.size();
  // columns: basis vectors, then all targets (solved simultaneously)
  Matrix sys(f, dim, m + targets.size());
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < dim; ++i) sys.at(i, j) = basis[j].entries()[i];
  for (size_t t = 0; t < targets.size(); ++t)
    for (size_t i = 0; i < dim; ++i)
      sys.at(i, m + t) = targets[t].entries()[i];
  Matrix work = sys;
  std::vector<size_t> piv = rref(work);
  for (size_t c : piv) {
    require(c < m, Errc::invariant_violation, "target outside the span");
  }
  std::vector<std::vector<FieldElem>> coords(
      targets.size(), std::vector<FieldElem>(m, f->zero()));
  for (size_t pi = 0; pi < piv.size(); ++pi) {
    for (size_t t = 0; t < targets.size(); ++t)
      coords[t][piv[pi]] = work.at(pi, m + t);
  }
  return coords;
}

/// Minimal polynomial of y in the unital algebra whose identity is e
/// (powers are e, y, y*y, ...). Deterministic.
inline Poly minpoly_in_algebra(const Matrix& y, const Matrix& e) {
  const Field& f = y.field();
  std::vector<Matrix> powers{e};
  for (;;) {
    Matrix next = powers.back() * y;
    // is `next` a combination of the previous powers?
    size_t dim_before = span_dimension(powers);
    std::vector<Matrix> trial = powers;
    trial.push_back(next);
    if (span_dimension(trial) == dim_before) {
      auto coords = coordinates_in_span(powers, {next});
      std::vector<FieldElem> c(powers.size() + 1, f->zero());
      for (size_t i = 0; i < powers.size(); ++i) c[i] = f->neg(coords[0][i]);
      c[powers.size()] = f->one();
      return poly_from(f, std::move(c));
    }
    powers.push_back(std::move(next));
    require(powers.size() <= y.rows() * y.cols() + 1, Errc::invariant_violation,
            "minimal polynomial search runaway");
  }
}

/// Evaluate a polynomial at y, with the constant term multiplying the
/// algebra identity e instead of the full identity matrix.
inline Matrix eval_poly_at(const Poly& p, const Matrix& y, const Matrix& e) {
  const Field& f = y.field();
  Matrix acc(f, y.rows(), y.cols());
  for (size_t i = p.c.size(); i-- > 0;) {
    acc = acc * y;
    if (!f->is_zero(p.c[i])) acc = acc + scalar_mul(p.c[i], e);
  }
  return acc;
}

}  // namespace detail

/// End_{KN}(V): matrices commuting with Delta(n) for a small generating
/// subset of N (equivalently, for all of N). N must be a normal subgroup,
/// given as an element index list.
inline EndAlgebra endomorphism_algebra(const MatRep& rep,
                                       const std::vector<uint32_t>& N) {
  detail::check_normal_subgroup(rep, N);
  std::vector<uint32_t> gens = small_generating_subset(rep, N);
  std::vector<LinEquation> eqs;
  for (uint32_t g : gens) {
    eqs.push_back({rep.elements[g], rep.elements[g]});
  }
  EndAlgebra alg{solve_linear(rep.field, rep.degree, eqs)};
  return alg;
}

namespace detail {

/// Basis of the center of the algebra spanned by `basis` (which must be
/// multiplicatively closed): all span elements commuting with every basis
/// element.
inline std::vector<Matrix> center_of(const std::vector<Matrix>& basis) {
  const Field& f = basis.at(0).field();
  size_t m = basis.size();
  size_t dim = basis[0].rows() * basis[0].cols();
  // unknown c in K^m; equations sum_j c_j (B_j B_i - B_i B_j) = 0
  Matrix sys(f, m * dim, m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      Matrix comm = basis[j] * basis[i] - basis[i] * basis[j];
      for (size_t t = 0; t < dim; ++t) {
        sys.at(i * dim + t, j) = comm.entries()[t];
      }
    }
  }
  Matrix work = sys;
  std::vector<size_t> piv = rref(work);
  std::vector<bool> is_pivot(m, false);
  for (size_t c : piv) is_pivot[c] = true;
  std::vector<Matrix> center;
  for (size_t free_col = 0; free_col < m; ++free_col) {
    if (is_pivot[free_col]) continue;
    Matrix z(f, basis[0].rows(), basis[0].cols());
    z = z + basis[free_col];
    for (size_t pi = 0; pi < piv.size(); ++pi) {
      FieldElem v = f->neg(work.at(pi, free_col));
      if (!f->is_zero(v)) z = z + scalar_mul(v, basis[piv[pi]]);
    }
    center.push_back(std::move(z));
  }
  return center;
}

/// Number of simple factors of the commutative semisimple algebra with the
/// given basis: the dimension of the fixed space of the |K|-power map.
inline size_t count_simple_factors(const std::vector<Matrix>& center) {
  const Field& f = center.at(0).field();
  size_t r = center.size();
  std::vector<Matrix> images;
  images.reserve(r);
  for (const auto& z : center) images.push_back(matrix_pow(z, f->order()));
  auto coords = coordinates_in_span(center, images);
  Matrix m_minus_i(f, r, r);
  for (size_t j = 0; j < r; ++j) {
    for (size_t i = 0; i < r; ++i) m_minus_i.at(i, j) = coords[j][i];
    m_minus_i.at(j, j) = f->sub(m_minus_i.at(j, j), f->one());
  }
  return r - rank_of(m_minus_i);
}

}  // namespace detail

/// Homogeneous components of the restriction V_N: the center of End_{KN}(V)
/// is split into its primitive idempotents by factoring minimal polynomials
/// of seeded-random central elements, and each idempotent's column space is
/// one component. Components are returned as canonical row bases, sorted so
/// the lexicographically least basis comes first. Deterministic given the
/// seed.
inline std::vector<Matrix> homogeneous_components(const MatRep& rep,
                                                  const std::vector<uint32_t>& N,
                                                  Prng& rng,
                                                  int retry_bound = 64) {
  EndAlgebra end = endomorphism_algebra(rep, N);
  std::vector<Matrix> center = detail::center_of(end.basis);
  size_t target = detail::count_simple_factors(center);
  const Field& f = rep.field;
  size_t n = rep.degree;

  std::vector<Matrix> idempotents{Matrix::identity(f, n)};
  int rounds = 0;
  while (idempotents.size() < target) {
    require(++rounds <= retry_bound, Errc::retries_exhausted,
            "central splitting did not converge within the retry bound");
    // random central element
    Matrix z(f, n, n);
    for (const auto& zb : center) {
      z = z + scalar_mul(f->element_at(rng.below(f->order())), zb);
    }
    std::vector<Matrix> refined;
    for (const auto& e : idempotents) {
      Matrix y = e * z;
      Poly mp = detail::minpoly_in_algebra(y, e);
      std::vector<Poly> factors = factor_squarefree(mp, rng);
      if (factors.size() == 1) {
        refined.push_back(e);
        continue;
      }
      // CRT idempotents: h_i = (mp / f_i) * ((mp / f_i)^-1 mod f_i)
      for (const auto& fi : factors) {
        Poly g = poly_divmod(mp, fi).first;
        // invert g modulo fi by scanning the extended Euclid relation
        // g * u = 1 (mod fi): solve via powmod when fi is irreducible:
        // u = g^(q^d - 2)? cheaper: extended Euclid
        Poly u;
        {
          // extended Euclid for gcd(g mod fi, fi) = 1
          Poly a = poly_rem(g, fi), b = fi;
          Poly r0 = b, r1 = a;
          Poly t0 = poly_zero(f), t1 = poly_const(f, f->one());
          while (!r1.is_zero()) {
            auto [q, r2] = poly_divmod(r0, r1);
            Poly t2 = poly_sub(t0, poly_mul(q, t1));
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
          }
          require(r0.deg() == 0, Errc::invariant_violation,
                  "CRT factors are not coprime");
          u = poly_scale(t0, f->inv(r0.c[0]));
        }
        Poly hi = poly_rem(poly_mul(g, u), mp);
        Matrix eps = detail::eval_poly_at(hi, y, e);
        if (!eps.is_zero()) refined.push_back(std::move(eps));
      }
    }
    idempotents = std::move(refined);
  }

  // verify the idempotent decomposition before converting to subspaces
  {
    Matrix sum(f, n, n);
    for (const auto& e : idempotents) {
      require(e * e == e, Errc::invariant_violation, "non-idempotent projector");
      sum = sum + e;
    }
    require(sum.is_identity(), Errc::invariant_violation,
            "idempotents do not sum to the identity");
  }

  std::vector<Matrix> components;
  components.reserve(idempotents.size());
  for (const auto& e : idempotents) components.push_back(column_space(e));
  std::sort(components.begin(), components.end(), matrix_less);

  // Clifford invariants: equal dimensions, direct sum, N-invariance
  size_t dim0 = components[0].rows();
  size_t total = 0;
  for (const auto& c : components) {
    require(c.rows() == dim0, Errc::invariant_violation,
            "homogeneous components of unequal dimension");
    total += c.rows();
  }
  require(total == n && n % components.size() == 0, Errc::invariant_violation,
          "components do not decompose the space");
  {
    std::vector<Matrix> all;
    for (const auto& c : components)
      for (size_t i = 0; i < c.rows(); ++i) {
        Matrix row(f, 1, n);
        for (size_t j = 0; j < n; ++j) row.at(0, j) = c.at(i, j);
        all.push_back(std::move(row));
      }
    require(detail::span_dimension(all) == n, Errc::invariant_violation,
            "components are not independent");
  }
  for (uint32_t g : small_generating_subset(rep, N)) {
    for (const auto& c : components) {
      require(subspace_image(c, rep.elements[g]) == c, Errc::invariant_violation,
              "component is not N-invariant");
    }
  }
  return components;
}

// ---------------------------------------------------------------------------
// Block systems

/// A verified decomposition V = V_1 + ... + V_k with G permuting the blocks
/// transitively; the induced generator permutations and the matching of
/// blocks to the points of the requested action are attached.
struct BlockSystem {
  std::vector<Matrix> blocks;                      // canonical row bases
  std::vector<std::vector<uint32_t>> generator_images;  // action on block indices
  std::vector<uint32_t> block_to_point;            // conjugating bijection to psi
  unsigned multiplicity = 0;                       // e of the Clifford decomposition
};

struct NotImprimitive {
  std::string reason;
};

namespace detail {

/// Backtracking search for a bijection beta with
/// psi(g)(beta(i)) = beta(induced(g)(i)) for all generators.
inline bool match_actions(const std::vector<std::vector<uint32_t>>& induced,
                          const std::vector<std::vector<uint32_t>>& psi,
                          uint32_t k, std::vector<uint32_t>& beta_out) {
  std::vector<uint32_t> beta(k, UINT32_MAX);
  std::vector<bool> used(k, false);
  auto consistent = [&](uint32_t i) {
    for (size_t g = 0; g < induced.size(); ++g) {
      uint32_t ii = induced[g][i];
      if (beta[ii] != UINT32_MAX && beta[ii] != psi[g][beta[i]]) return false;
      if (beta[ii] == UINT32_MAX) {
        // the image point must still be free
        if (used[psi[g][beta[i]]]) return false;
      }
    }
    return true;
  };
  // assign in index order, propagating the generator constraints
  auto rec = [&](auto&& self, uint32_t next) -> bool {
    while (next < k && beta[next] != UINT32_MAX) ++next;
    if (next == k) {
      // full candidate; verify all constraints
      for (size_t g = 0; g < induced.size(); ++g)
        for (uint32_t i = 0; i < k; ++i)
          if (psi[g][beta[i]] != beta[induced[g][i]]) return false;
      beta_out = beta;
      return true;
    }
    for (uint32_t p = 0; p < k; ++p) {
      if (used[p]) continue;
      beta[next] = p;
      used[p] = true;
      if (consistent(next) && self(self, next + 1)) return true;
      beta[next] = UINT32_MAX;
      used[p] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace detail

/// Build and verify a block system for psi from the homogeneous components
/// of V_N (N = ker psi). Returns NotImprimitive when the restriction has a
/// single component or the induced block action is not conjugate to psi.
inline std::variant<BlockSystem, NotImprimitive> block_system(
    const MatRep& rep, const std::vector<uint32_t>& N, const PermAction& psi,
    Prng& rng) {
  std::vector<Matrix> components = homogeneous_components(rep, N, rng);
  uint32_t k = uint32_t(components.size());
  if (k == 1) {
    return NotImprimitive{"single homogeneous component"};
  }
  // every generator must permute the components (guaranteed for normal N)
  std::vector<std::vector<uint32_t>> induced(rep.generators.size(),
                                             std::vector<uint32_t>(k, 0));
  for (size_t g = 0; g < rep.generators.size(); ++g) {
    std::vector<bool> hit(k, false);
    for (uint32_t i = 0; i < k; ++i) {
      Matrix image = subspace_image(components[i], rep.generators[g]);
      bool found = false;
      for (uint32_t j = 0; j < k; ++j) {
        if (image == components[j]) {
          induced[g][i] = j;
          hit[j] = true;
          found = true;
          break;
        }
      }
      require(found, Errc::invariant_violation,
              "generator does not permute the homogeneous components");
    }
    for (bool h : hit)
      require(h, Errc::invariant_violation, "induced image is not a bijection");
  }
  if (k != psi.degree) {
    return NotImprimitive{"component count differs from the action degree"};
  }
  std::vector<uint32_t> beta;
  if (!detail::match_actions(induced, psi.on_generators, k, beta)) {
    return NotImprimitive{"induced block action is not conjugate to psi"};
  }
  // multiplicity e: dim(eps*E) = e^2 * d and dim(eps*Z) = d per block;
  // recompute from the algebra attached to the first block
  EndAlgebra end = endomorphism_algebra(rep, N);
  std::vector<Matrix> center = detail::center_of(end.basis);
  unsigned mult = 0;
  {
    // projector onto the first block: solve for the idempotent with this
    // column space via the component basis (rows) — use rank arithmetic
    // instead: dim component = e * m * d; we report e from the algebra:
    // e^2 = dim(E_i)/dim(Z_i) summed over one block. Recover the block
    // projector from the component basis by completing to a basis.
    const Matrix& b0 = components[0];
    size_t n = rep.degree;
    // complement: extend rows of all other components
    Matrix proj(rep.field, n, n);
    {
      // Build P with image = block0, kernel = sum of the others, by solving
      // P * basis_vector = basis_vector / 0.
      std::vector<Matrix> cols;  // the full basis, block0 first
      Matrix full(rep.field, n, n);
      size_t row = 0;
      for (size_t i = 0; i < b0.rows(); ++i, ++row)
        for (size_t j = 0; j < n; ++j) full.at(row, j) = b0.at(i, j);
      for (uint32_t c = 1; c < k; ++c)
        for (size_t i = 0; i < components[c].rows(); ++i, ++row)
          for (size_t j = 0; j < n; ++j)
            full.at(row, j) = components[c].at(i, j);
      Matrix basis_t = transpose(full);       // columns are basis vectors
      Matrix diag(rep.field, n, n);
      for (size_t i = 0; i < b0.rows(); ++i) diag.at(i, i) = rep.field->one();
      proj = basis_t * diag * inverse(basis_t);
    }
    std::vector<Matrix> pe, pz;
    for (const auto& b : end.basis) pe.push_back(proj * b);
    for (const auto& z : center) pz.push_back(proj * z);
    size_t de = detail::span_dimension(pe);
    size_t dz = detail::span_dimension(pz);
    require(dz > 0 && de % dz == 0, Errc::invariant_violation,
            "block algebra dimensions are inconsistent");
    size_t e2 = de / dz;
    unsigned e = 0;
    while (uint64_t(e + 1) * (e + 1) <= e2) ++e;
    require(uint64_t(e) * e == e2, Errc::invariant_violation,
            "block multiplicity is not a perfect square");
    mult = e;
  }
  BlockSystem bs{std::move(components), std::move(induced), std::move(beta),
                 mult};
  return bs;
}

/// Same generator matrices with entries embedded into an extension field;
/// the closure structure (element order, words, edges) is unchanged.
inline MatRep extend_scalars(const MatRep& rep, const Field& target) {
  if (same_field(rep.field, target)) return rep;
  Embedding emb(rep.field, target);
  MatRep out;
  out.field = target;
  out.degree = rep.degree;
  out.generators.reserve(rep.generators.size());
  for (const auto& g : rep.generators) out.generators.push_back(embed_matrix(g, emb));
  out.elements.reserve(rep.elements.size());
  for (const auto& e : rep.elements) out.elements.push_back(embed_matrix(e, emb));
  out.words = rep.words;
  out.edge = rep.edge;
  out.inverse_idx = rep.inverse_idx;
  for (uint32_t i = 0; i < out.elements.size(); ++i) {
    out.index.emplace(out.elements[i].key(), i);
  }
  require(out.index.size() == rep.order(), Errc::invariant_violation,
          "scalar extension changed the group order");
  return out;
}

}  // namespace asch
