#pragma once

#include <utility>
#include <vector>

#include "aschcheck/finite_field.hpp"
#include "aschcheck/prng.hpp"

namespace asch {

/// Dense univariate polynomial over a FieldSpec, constant term first.
/// The zero polynomial has an empty coefficient vector.
struct Poly {
  Field field;
  std::vector<FieldElem> c;

  bool is_zero() const { return c.empty(); }
  int deg() const { return int(c.size()) - 1; }

  bool operator==(const Poly& o) const { return c == o.c; }
};

inline Poly poly_zero(const Field& f) { return Poly{f, {}}; }

inline Poly poly_from(const Field& f, std::vector<FieldElem> coeffs) {
  while (!coeffs.empty() && f->is_zero(coeffs.back())) coeffs.pop_back();
  return Poly{f, std::move(coeffs)};
}

inline Poly poly_x(const Field& f) {
  return Poly{f, {f->zero(), f->one()}};
}

inline Poly poly_const(const Field& f, const FieldElem& v) {
  if (f->is_zero(v)) return poly_zero(f);
  return Poly{f, {v}};
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  const Field& f = a.field;
  std::vector<FieldElem> r(std::max(a.c.size(), b.c.size()), f->zero());
  for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] = f->add(r[i], b.c[i]);
  return poly_from(f, std::move(r));
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  const Field& f = a.field;
  std::vector<FieldElem> r(std::max(a.c.size(), b.c.size()), f->zero());
  for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] = f->sub(r[i], b.c[i]);
  return poly_from(f, std::move(r));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  const Field& f = a.field;
  if (a.is_zero() || b.is_zero()) return poly_zero(f);
  std::vector<FieldElem> r(a.c.size() + b.c.size() - 1, f->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (f->is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      r[i + j] = f->add(r[i + j], f->mul(a.c[i], b.c[j]));
    }
  }
  return poly_from(f, std::move(r));
}

inline Poly poly_scale(const Poly& a, const FieldElem& s) {
  const Field& f = a.field;
  if (f->is_zero(s)) return poly_zero(f);
  std::vector<FieldElem> r = a.c;
  for (auto& v : r) v = f->mul(v, s);
  return Poly{f, std::move(r)};
}

/// Division with remainder; b must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  const Field& f = a.field;
  require(!b.is_zero(), Errc::division_by_zero, "polynomial division by zero");
  std::vector<FieldElem> rem = a.c;
  std::vector<FieldElem> quo;
  FieldElem lead_inv = f->inv(b.c.back());
  if (rem.size() >= b.c.size()) quo.assign(rem.size() - b.c.size() + 1, f->zero());
  while (rem.size() >= b.c.size()) {
    FieldElem q = f->mul(rem.back(), lead_inv);
    size_t shift = rem.size() - b.c.size();
    if (!f->is_zero(q)) {
      quo[shift] = q;
      for (size_t j = 0; j < b.c.size(); ++j) {
        rem[shift + j] = f->sub(rem[shift + j], f->mul(q, b.c[j]));
      }
    }
    rem.pop_back();
    while (!rem.empty() && f->is_zero(rem.back())) rem.pop_back();
    if (rem.size() < b.c.size()) break;
  }
  return {poly_from(f, std::move(quo)), poly_from(f, std::move(rem))};
}

inline Poly poly_rem(const Poly& a, const Poly& b) {
  return poly_divmod(a, b).second;
}

inline Poly poly_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(a, a.field->inv(a.c.back()));
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

inline Poly poly_powmod(Poly base, uint64_t e, const Poly& m) {
  const Field& f = base.field;
  Poly r = poly_const(f, f->one());
  base = poly_rem(base, m);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base), m);
    base = poly_rem(poly_mul(base, base), m);
    e >>= 1;
  }
  return r;
}

inline FieldElem poly_eval(const Poly& a, const FieldElem& x) {
  const Field& f = a.field;
  FieldElem acc = f->zero();
  for (size_t i = a.c.size(); i-- > 0;) {
    acc = f->mul(acc, x);
    acc = f->add(acc, a.c[i]);
  }
  return acc;
}

/// a^((q^d - 1)/(q - 1)) mod m without big-integer exponents: the product
/// of the iterated q-power conjugates of a mod m.
inline Poly poly_norm_chain(const Poly& a, unsigned d, const Poly& m) {
  uint64_t q = a.field->order();
  Poly result = poly_const(a.field, a.field->one());
  Poly conj = poly_rem(a, m);
  for (unsigned i = 0; i < d; ++i) {
    result = poly_rem(poly_mul(result, conj), m);
    conj = poly_powmod(conj, q, m);
  }
  return result;
}

inline Poly poly_random_below(const Field& f, int deg_bound, Prng& rng) {
  std::vector<FieldElem> c;
  c.reserve(size_t(deg_bound));
  for (int i = 0; i < deg_bound; ++i) {
    c.push_back(f->element_at(rng.below(f->order())));
  }
  return poly_from(f, std::move(c));
}

/// Distinct-degree + equal-degree (Cantor-Zassenhaus) factorization of a
/// squarefree monic polynomial. Randomized but fully determined by rng.
inline std::vector<Poly> factor_squarefree(const Poly& input, Prng& rng) {
  const Field& f = input.field;
  uint64_t q = f->order();
  std::vector<Poly> irreducibles;
  Poly rest = poly_monic(input);

  // distinct-degree stage
  std::vector<std::pair<Poly, unsigned>> stages;  // (product of deg-d factors, d)
  {
    Poly h = poly_x(f);
    unsigned d = 0;
    while (rest.deg() > 0) {
      ++d;
      if (int(2 * d) > rest.deg()) {
        stages.emplace_back(rest, unsigned(rest.deg()));
        break;
      }
      h = poly_powmod(h, q, rest);  // x^(q^d) mod rest
      Poly g = poly_gcd(poly_sub(h, poly_x(f)), rest);
      if (g.deg() > 0) {
        stages.emplace_back(g, d);
        rest = poly_divmod(rest, g).first;
        h = poly_rem(h, rest);
      }
    }
  }

  // equal-degree stage
  for (auto& [prod, d] : stages) {
    std::vector<Poly> work{prod};
    while (!work.empty()) {
      Poly cur = work.back();
      work.pop_back();
      if (cur.deg() == int(d)) {
        irreducibles.push_back(poly_monic(cur));
        continue;
      }
      // split cur (degree > d, all factors of degree d)
      Poly g = poly_const(f, f->one());
      int guard = 0;
      while (g.deg() <= 0 || g.deg() == cur.deg()) {
        require(++guard <= 256, Errc::retries_exhausted,
                "equal-degree splitting did not converge");
        Poly a = poly_random_below(f, cur.deg(), rng);
        if (a.deg() < 1 && a.is_zero()) continue;
        if (f->characteristic() == 2) {
          // trace map over GF(2): sum of a^(2^i), i < d * log2(q)
          unsigned m = f->degree();
          Poly t = poly_rem(a, cur);
          Poly acc = t;
          for (unsigned i = 1; i < d * m; ++i) {
            t = poly_powmod(t, 2, cur);
            acc = poly_rem(poly_add(acc, t), cur);
          }
          g = poly_gcd(acc, cur);
          if (g.deg() <= 0 || g.deg() == cur.deg()) {
            g = poly_gcd(poly_add(acc, poly_const(f, f->one())), cur);
          }
        } else {
          Poly u = poly_norm_chain(a, d, cur);      // a^((q^d-1)/(q-1))
          Poly b = poly_powmod(u, (q - 1) / 2, cur);  // a^((q^d-1)/2)
          g = poly_gcd(poly_sub(b, poly_const(f, f->one())), cur);
        }
      }
      work.push_back(g);
      work.push_back(poly_divmod(cur, g).first);
    }
  }
  return irreducibles;
}

}  // namespace asch
