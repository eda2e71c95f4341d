#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "aschcheck/errors.hpp"

namespace asch {

/// Element of GF(p^k) in the polynomial basis of the field's modulus.
/// Coefficients are constant term first and reduced mod p. The default
/// ordering (constant term most significant) is the canonical element
/// ordering used by every "least solution" contract in the library.
struct FieldElem {
  std::vector<uint32_t> c;

  auto operator<=>(const FieldElem&) const = default;
};

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

namespace detail {

inline bool miller_rabin_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) -> uint64_t {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
  };
  auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) -> uint64_t {
    uint64_t r = 1 % m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Dense polynomial arithmetic over Z/p for modulus selection and
// irreducibility testing. Vectors are constant-first, not normalized.
using PPoly = std::vector<uint64_t>;

inline void ppoly_trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  ppoly_trim(r);
  return r;
}

inline PPoly ppoly_rem(PPoly a, const PPoly& m, uint64_t p) {
  ppoly_trim(a);
  // m monic
  while (a.size() >= m.size()) {
    uint64_t lead = a.back();
    size_t shift = a.size() - m.size();
    if (lead) {
      for (size_t j = 0; j < m.size(); ++j) {
        uint64_t sub = (lead * m[j]) % p;
        a[shift + j] = (a[shift + j] + p - sub % p) % p;
      }
    }
    a.pop_back();
    ppoly_trim(a);
    if (a.size() < m.size()) break;
  }
  return a;
}

inline PPoly ppoly_powmod(PPoly base, uint64_t e, const PPoly& m, uint64_t p) {
  PPoly r = {1};
  base = ppoly_rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = ppoly_rem(ppoly_mul(r, base, p), m, p);
    base = ppoly_rem(ppoly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

inline PPoly ppoly_gcd(PPoly a, PPoly b, uint64_t p) {
  ppoly_trim(a);
  ppoly_trim(b);
  while (!b.empty()) {
    PPoly r = ppoly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// f monic of degree k >= 1 over Z/p. Irreducible iff it has no factor of
/// degree < k, i.e. gcd(f, x^(p^i) - x) = 1 for all 1 <= i < k.
inline bool ppoly_irreducible(const PPoly& f, uint64_t p) {
  size_t k = f.size() - 1;
  if (k == 1) return true;
  PPoly x = {0, 1};
  PPoly xq = x;
  for (size_t i = 1; i < k; ++i) {
    xq = ppoly_powmod(std::move(xq), p, f, p);  // now x^(p^i) mod f
    PPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ppoly_trim(diff);
    PPoly g = ppoly_gcd(f, diff, p);
    if (g.size() != 1) return false;  // nontrivial common factor
  }
  return true;
}

}  // namespace detail

/// Immutable description of GF(p^k) together with its element arithmetic.
/// All operations are const; a FieldSpec can be shared freely across
/// threads.
class FieldSpec {
 public:
  FieldSpec(uint64_t p, unsigned k, std::vector<uint32_t> modulus)
      : p_(p), k_(k), mod_(std::move(modulus)) {
    require(detail::miller_rabin_prime(p_), Errc::composite_characteristic,
            "characteristic " + std::to_string(p_) + " is not prime");
    require(k_ >= 1, Errc::validation_error, "extension degree must be >= 1");
    require(mod_.size() == k_ + 1, Errc::validation_error,
            "modulus must have degree k");
    require(mod_.back() == 1, Errc::validation_error, "modulus must be monic");
    for (uint32_t c : mod_) {
      require(c < p_, Errc::validation_error,
              "modulus coefficients must be reduced mod p");
    }
    order_ = 1;
    for (unsigned i = 0; i < k_; ++i) {
      require(order_ <= UINT64_MAX / p_, Errc::unsupported,
              "field order does not fit in 64 bits");
      order_ *= p_;
    }
    if (k_ > 1) {
      detail::PPoly f(mod_.begin(), mod_.end());
      require(detail::ppoly_irreducible(f, p_), Errc::reducible_modulus,
              "modulus is reducible over GF(" + std::to_string(p_) + ")");
    }
    // Images of the basis monomials under x -> x^p, for fast Frobenius.
    frob_.resize(k_);
    for (unsigned i = 0; i < k_; ++i) {
      detail::PPoly xi(i + 1, 0);
      xi[i] = 1;
      detail::PPoly f(mod_.begin(), mod_.end());
      detail::PPoly img = detail::ppoly_powmod(xi, p_, f, p_);
      FieldElem e = zero();
      for (size_t j = 0; j < img.size(); ++j) e.c[j] = uint32_t(img[j]);
      frob_[i] = e;
    }
  }

  uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  uint64_t order() const { return order_; }
  uint64_t units() const { return order_ - 1; }
  const std::vector<uint32_t>& modulus() const { return mod_; }

  FieldElem zero() const { return FieldElem{std::vector<uint32_t>(k_, 0)}; }
  FieldElem one() const { return from_int(1); }

  FieldElem from_int(uint64_t v) const {
    FieldElem e = zero();
    e.c[0] = uint32_t(v % p_);
    return e;
  }

  bool is_zero(const FieldElem& x) const {
    for (uint32_t v : x.c)
      if (v) return false;
    return true;
  }

  bool is_one(const FieldElem& x) const { return x == one(); }

  /// idx-th element in the canonical ordering (constant term most
  /// significant digit).
  FieldElem element_at(uint64_t idx) const {
    FieldElem e = zero();
    for (unsigned j = k_; j-- > 0;) {
      e.c[j] = uint32_t(idx % p_);
      idx /= p_;
    }
    return e;
  }

  uint64_t index_of(const FieldElem& x) const {
    check(x);
    uint64_t idx = 0;
    for (unsigned j = 0; j < k_; ++j) idx = idx * p_ + x.c[j];
    return idx;
  }

  /// Injective integer code (unrelated to the canonical ordering); used
  /// for hashing.
  uint64_t code_of(const FieldElem& x) const {
    uint64_t code = 0;
    for (unsigned j = k_; j-- > 0;) code = code * p_ + x.c[j];
    return code;
  }

  bool compatible(const FieldElem& x) const {
    if (x.c.size() != k_) return false;
    for (uint32_t v : x.c)
      if (v >= p_) return false;
    return true;
  }

  void check(const FieldElem& x) const {
    require(compatible(x), Errc::field_mismatch,
            "element does not belong to GF(" + std::to_string(p_) + "^" +
                std::to_string(k_) + ")");
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    FieldElem r = a;
    for (unsigned i = 0; i < k_; ++i) {
      r.c[i] += b.c[i];
      if (r.c[i] >= p_) r.c[i] -= uint32_t(p_);
    }
    return r;
  }

  FieldElem neg(const FieldElem& a) const {
    check(a);
    FieldElem r = a;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = r.c[i] ? uint32_t(p_) - r.c[i] : 0;
    return r;
  }

  FieldElem sub(const FieldElem& a, const FieldElem& b) const {
    return add(a, neg(b));
  }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    check(a);
    check(b);
    std::vector<uint64_t> t(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
      if (!a.c[i]) continue;
      for (unsigned j = 0; j < k_; ++j) {
        t[i + j] = (t[i + j] + uint64_t(a.c[i]) * b.c[j]) % p_;
      }
    }
    // reduce by the monic modulus
    for (unsigned i = 2 * k_ - 2; i >= k_ && i < 2 * k_; --i) {
      uint64_t lead = t[i];
      if (lead) {
        for (unsigned j = 0; j <= k_; ++j) {
          uint64_t sub = (lead * mod_[j]) % p_;
          t[i - k_ + j] = (t[i - k_ + j] + p_ - sub) % p_;
        }
      }
      if (i == k_) break;
    }
    FieldElem r = zero();
    for (unsigned i = 0; i < k_; ++i) r.c[i] = uint32_t(t[i]);
    return r;
  }

  FieldElem pow(const FieldElem& a, uint64_t e) const {
    FieldElem r = one();
    FieldElem b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(const FieldElem& a) const {
    require(!is_zero(a), Errc::division_by_zero, "inverse of zero");
    return pow(a, order_ - 2);
  }

  FieldElem div(const FieldElem& a, const FieldElem& b) const {
    return mul(a, inv(b));
  }

  /// x^(p^e), computed via the precomputed basis images; e is reduced mod k.
  FieldElem frobenius_pow(const FieldElem& x, unsigned e) const {
    check(x);
    FieldElem r = x;
    e %= k_;
    for (unsigned step = 0; step < e; ++step) {
      FieldElem next = zero();
      for (unsigned i = 0; i < k_; ++i) {
        if (!r.c[i]) continue;
        for (unsigned j = 0; j < k_; ++j) {
          next.c[j] = uint32_t((next.c[j] + uint64_t(r.c[i]) * frob_[i].c[j]) % p_);
        }
      }
      r = next;
    }
    return r;
  }

  uint64_t multiplicative_order(const FieldElem& x) const {
    require(!is_zero(x), Errc::division_by_zero,
            "multiplicative order of zero");
    FieldElem y = x;
    uint64_t n = 1;
    while (!is_one(y)) {
      y = mul(y, x);
      ++n;
    }
    return n;
  }

  bool operator==(const FieldSpec& other) const {
    return p_ == other.p_ && k_ == other.k_ && mod_ == other.mod_;
  }

  std::string name() const {
    return "GF(" + std::to_string(p_) +
           (k_ > 1 ? "^" + std::to_string(k_) : "") + ")";
  }

 private:
  uint64_t p_;
  unsigned k_;
  std::vector<uint32_t> mod_;
  uint64_t order_;
  std::vector<FieldElem> frob_;  // basis monomial images under x -> x^p
};

inline bool same_field(const Field& a, const Field& b) {
  return a == b || (a && b && *a == *b);
}

/// Galois automorphism x -> x^(p^exponent) of its field.
struct GaloisAut {
  Field field;
  unsigned exponent = 0;

  unsigned order() const {
    unsigned k = field->degree();
    unsigned e = exponent % k;
    if (e == 0) return 1;
    return k / std::gcd(k, e);
  }
};

/// Canonical field constructor. When no modulus is given, picks the
/// lexicographically least monic irreducible of degree k (coefficients
/// compared from the constant term upward), so repeated runs and
/// independent implementations agree bit-for-bit.
inline Field make_field(uint64_t p, unsigned k,
                        std::optional<std::vector<uint32_t>> modulus = {}) {
  require(detail::miller_rabin_prime(p), Errc::composite_characteristic,
          "characteristic " + std::to_string(p) + " is not prime");
  require(k >= 1, Errc::validation_error, "extension degree must be >= 1");
  if (!modulus) {
    if (k == 1) {
      modulus = std::vector<uint32_t>{0, 1};  // f(x) = x
    } else {
      uint64_t count = 1;
      for (unsigned i = 0; i < k; ++i) {
        require(count <= UINT64_MAX / p, Errc::unsupported,
                "field order does not fit in 64 bits");
        count *= p;
      }
      for (uint64_t idx = 0; idx < count; ++idx) {
        // digits with the constant term as the most significant one
        std::vector<uint32_t> cand(k + 1, 0);
        cand[k] = 1;
        uint64_t v = idx;
        for (unsigned j = k; j-- > 0;) {
          cand[j] = uint32_t(v % p);
          v /= p;
        }
        detail::PPoly f(cand.begin(), cand.end());
        if (detail::ppoly_irreducible(f, p)) {
          modulus = std::move(cand);
          break;
        }
      }
      require(modulus.has_value(), Errc::invariant_violation,
              "no irreducible modulus found");
    }
  }
  return std::make_shared<const FieldSpec>(p, k, std::move(*modulus));
}

/// The alpha-action on field values: x -> x^(p^i).
inline FieldElem frobenius(const FieldElem& x, const GaloisAut& aut) {
  aut.field->check(x);
  return aut.field->frobenius_pow(x, aut.exponent);
}

/// Norm of x down to the degree-d subfield of K: the product of the
/// Galois conjugates x^(p^(d*i)), i = 0 .. k/d - 1.
inline FieldElem norm_to_subfield(const Field& K, const FieldElem& x,
                                  unsigned d) {
  require(d >= 1 && K->degree() % d == 0, Errc::non_divisor_degree,
          std::to_string(d) + " does not divide " +
              std::to_string(K->degree()));
  K->check(x);
  unsigned steps = K->degree() / d;
  FieldElem result = K->one();
  FieldElem conj = x;
  for (unsigned i = 0; i < steps; ++i) {
    result = K->mul(result, conj);
    conj = K->frobenius_pow(conj, d);
  }
  return result;
}

/// Norm of x relative to a Galois automorphism: product over the cyclic
/// group generated by aut.
inline FieldElem norm_under(const Field& K, const FieldElem& x,
                            const GaloisAut& aut) {
  unsigned ell = aut.order();
  FieldElem result = K->one();
  FieldElem conj = x;
  for (unsigned i = 0; i < ell; ++i) {
    result = K->mul(result, conj);
    conj = K->frobenius_pow(conj, aut.exponent);
  }
  return result;
}

/// Constructive Hilbert 90 for scalars: given lambda of norm 1 under aut,
/// returns the least mu (in the canonical element ordering) with
/// lambda = aut(mu) * mu^-1.
inline FieldElem hilbert90_scalar(const Field& K, const FieldElem& lambda,
                                  const GaloisAut& aut) {
  K->check(lambda);
  require(same_field(K, aut.field), Errc::field_mismatch,
          "automorphism belongs to a different field");
  require(K->is_one(norm_under(K, lambda, aut)), Errc::norm_not_one,
          "lambda does not have norm 1 under the automorphism");
  for (uint64_t idx = 1; idx < K->order(); ++idx) {
    FieldElem mu = K->element_at(idx);
    if (K->is_zero(mu)) continue;
    FieldElem lhs = K->frobenius_pow(mu, aut.exponent);
    if (lhs == K->mul(lambda, mu)) return mu;
  }
  fail(Errc::invariant_violation, "Hilbert 90 has no solution");  // unreachable
}

/// Field embedding GF(p^k) -> GF(p^K), k | K, realized by mapping the
/// source generator to the least root of the source modulus in the target.
/// Stateless and cheap to rebuild; callers doing bulk work keep one around.
class Embedding {
 public:
  Embedding(Field src, Field tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
    require(src_->characteristic() == tgt_->characteristic() &&
                tgt_->degree() % src_->degree() == 0,
            Errc::no_embedding,
            src_->name() + " does not embed into " + tgt_->name());
    const auto& mod = src_->modulus();
    FieldElem root;
    bool found = false;
    for (uint64_t idx = 0; idx < tgt_->order(); ++idx) {
      FieldElem cand = tgt_->element_at(idx);
      // evaluate the source modulus at cand (Horner, coefficients in GF(p))
      FieldElem acc = tgt_->zero();
      for (size_t j = mod.size(); j-- > 0;) {
        acc = tgt_->mul(acc, cand);
        acc = tgt_->add(acc, tgt_->from_int(mod[j]));
      }
      if (tgt_->is_zero(acc)) {
        root = cand;
        found = true;
        break;
      }
    }
    require(found, Errc::invariant_violation,
            "source modulus has no root in the target field");
    powers_.resize(src_->degree());
    powers_[0] = tgt_->one();
    for (unsigned i = 1; i < src_->degree(); ++i) {
      powers_[i] = tgt_->mul(powers_[i - 1], root);
    }
  }

  const Field& source() const { return src_; }
  const Field& target() const { return tgt_; }

  FieldElem apply(const FieldElem& x) const {
    src_->check(x);
    FieldElem r = tgt_->zero();
    for (unsigned i = 0; i < src_->degree(); ++i) {
      if (!x.c[i]) continue;
      FieldElem term = powers_[i];
      // scalar multiply by the prime-field coefficient
      FieldElem s = tgt_->from_int(x.c[i]);
      r = tgt_->add(r, tgt_->mul(s, term));
    }
    return r;
  }

 private:
  Field src_;
  Field tgt_;
  std::vector<FieldElem> powers_;  // root^0 .. root^(k-1)
};

inline FieldElem embed(const FieldElem& x, const Field& src, const Field& tgt) {
  return Embedding(src, tgt).apply(x);
}

}  // namespace asch
