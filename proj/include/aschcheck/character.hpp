#pragma once

#include <vector>

#include "aschcheck/group.hpp"

namespace asch {

/// The character g -> tr Delta(g) as a class function. The integer degree
/// is carried separately because the value at the identity may vanish in
/// positive characteristic.
struct Character {
  Field field;
  unsigned degree_n = 0;                 // integer degree of the representation
  std::vector<FieldElem> values;         // one per conjugacy class
  std::vector<uint32_t> class_reps;      // class id -> element index
  std::vector<uint32_t> inverse_class;   // class id of the inverse class

  bool operator==(const Character& o) const { return values == o.values; }
};

inline Character character_of(const MatRep& rep, const ConjClassTable& classes) {
  Character chi;
  chi.field = rep.field;
  chi.degree_n = unsigned(rep.degree);
  chi.class_reps = classes.representatives;
  chi.inverse_class = classes.inverse_class;
  chi.values.reserve(classes.representatives.size());
  for (uint32_t r : classes.representatives) {
    chi.values.push_back(trace(rep.elements[r]));
  }
  return chi;
}

/// Element of Omega(G, K) = (<gamma> x Gal(K)) |x Hom(G, K*), in the fixed
/// normal form (gamma flag, Galois exponent, linear character).
struct OmegaElement {
  bool gamma = false;
  unsigned alpha_exp = 0;
  LinearCharacter sigma;

  bool operator==(const OmegaElement& o) const {
    return gamma == o.gamma && alpha_exp == o.alpha_exp &&
           sigma.on_elements == o.sigma.on_elements;
  }
};

inline OmegaElement omega_identity(const MatRep& rep, const Field& K) {
  return OmegaElement{false, 0, trivial_character(rep, K)};
}

inline bool omega_is_identity(const OmegaElement& w) {
  return !w.gamma && w.alpha_exp % w.sigma.field->degree() == 0 &&
         w.sigma.is_trivial();
}

/// Composition in Omega(G, K), normalized so that acting with the product
/// equals acting with the factors in order: (w1*w2)(chi) = w1(w2(chi)).
/// The sigma of the left factor is twisted past the right factor's gamma
/// and Galois parts.
inline OmegaElement omega_mul(const OmegaElement& w1, const OmegaElement& w2) {
  unsigned k = w1.sigma.field->degree();
  OmegaElement r;
  r.gamma = w1.gamma != w2.gamma;
  r.alpha_exp = (w1.alpha_exp + w2.alpha_exp) % k;
  LinearCharacter s = w1.sigma;
  if (w2.gamma) s = character_invert(s);
  s = character_frobenius(s, (k - w2.alpha_exp % k) % k);  // alpha2^-1 twist
  r.sigma = character_mul(s, w2.sigma);
  return r;
}

inline unsigned omega_order(const OmegaElement& w) {
  OmegaElement cur = w;
  unsigned n = 1;
  while (!omega_is_identity(cur)) {
    cur = omega_mul(cur, w);
    ++n;
    require(n <= 1u << 24, Errc::invariant_violation,
            "omega element order runaway");
  }
  return n;
}

inline OmegaElement omega_inverse(const OmegaElement& w) {
  unsigned ord = omega_order(w);
  OmegaElement cur = w;
  for (unsigned i = 2; i < ord; ++i) cur = omega_mul(cur, w);
  if (ord == 1) return w;  // identity
  return cur;
}

/// The action of Definition-style Omega elements on characters:
/// (w chi)(g) = alpha(sigma(g') chi(g')) with g' = g or g^-1 per the gamma
/// flag. Classwise evaluation; sigma is a class function since K* is
/// abelian.
inline Character omega_act(const OmegaElement& w, const Character& chi) {
  require(same_field(w.sigma.field, chi.field), Errc::field_mismatch,
          "omega element and character over different fields");
  const Field& K = chi.field;
  Character out = chi;
  for (size_t c = 0; c < chi.values.size(); ++c) {
    size_t src = w.gamma ? chi.inverse_class[c] : c;
    FieldElem v = K->mul(w.sigma.on_elements[chi.class_reps[src]],
                         chi.values[src]);
    out.values[c] = K->frobenius_pow(v, w.alpha_exp);
  }
  return out;
}

/// Exhaustive scan of all 2 * k * |Hom(G,K*)| candidates; returns the
/// subgroup of Omega(G,K) fixing chi classwise, in a fixed candidate order.
inline std::vector<OmegaElement> omega_stabilizer(
    const MatRep& rep, const Character& chi,
    const std::vector<LinearCharacter>& homs) {
  std::vector<OmegaElement> stab;
  unsigned k = rep.field->degree();
  for (unsigned g = 0; g < 2; ++g) {
    for (unsigned a = 0; a < k; ++a) {
      for (const auto& sigma : homs) {
        OmegaElement w{g == 1, a, sigma};
        if (omega_act(w, chi) == chi) stab.push_back(std::move(w));
      }
    }
  }
  return stab;
}

/// Elements of prime order in a stabilizer list, with the order attached.
inline std::vector<std::pair<OmegaElement, unsigned>> prime_order_elements(
    const std::vector<OmegaElement>& stab) {
  auto is_prime = [](unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  std::vector<std::pair<OmegaElement, unsigned>> out;
  for (const auto& w : stab) {
    unsigned ord = omega_order(w);
    if (is_prime(ord)) out.emplace_back(w, ord);
  }
  return out;
}

}  // namespace asch
