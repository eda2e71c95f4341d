#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "aschcheck/matrix.hpp"

namespace asch {

namespace detail {

struct KeyHash {
  size_t operator()(const std::vector<uint64_t>& k) const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : k) {
      h ^= w;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return size_t(h);
  }
};

}  // namespace detail

/// A finite matrix group, closed under products: the generator matrices,
/// every element in breadth-first discovery order, and for each element a
/// shortest witnessing word in the generators (ties broken lexicographically
/// by generator index). Immutable after close_group.
struct MatRep {
  Field field;
  size_t degree = 0;
  std::vector<Matrix> generators;
  std::vector<Matrix> elements;                 // [0] is the identity
  std::vector<std::vector<uint32_t>> words;     // generator-index sequences
  std::vector<std::vector<uint32_t>> edge;      // edge[e][j] = index of e * gen_j
  std::vector<uint32_t> inverse_idx;
  std::unordered_map<std::vector<uint64_t>, uint32_t, detail::KeyHash> index;

  size_t order() const { return elements.size(); }

  uint32_t index_of(const Matrix& m) const {
    auto it = index.find(m.key());
    require(it != index.end(), Errc::invariant_violation,
            "matrix is not a group element");
    return it->second;
  }

  bool contains(const Matrix& m) const { return index.count(m.key()) != 0; }

  uint32_t generator_index(size_t j) const { return edge[0][j]; }

  /// Product of two elements by walking the closure edges along the word of
  /// the right factor; no matrix arithmetic involved.
  uint32_t mul(uint32_t i, uint32_t j) const {
    uint32_t cur = i;
    for (uint32_t letter : words[j]) cur = edge[cur][letter];
    return cur;
  }

  uint32_t inv(uint32_t i) const { return inverse_idx[i]; }

  /// g * x * g^-1 by index.
  uint32_t conj(uint32_t g, uint32_t x) const {
    return mul(mul(g, x), inverse_idx[g]);
  }

  uint32_t element_order(uint32_t i) const {
    uint32_t cur = i;
    uint32_t n = 1;
    while (cur != 0) {
      cur = mul(cur, i);
      ++n;
    }
    return n;
  }
};

/// Breadth-first closure of the generated group. Deterministic given the
/// generator order; throws OrderCapExceeded once the element count passes
/// the cap.
inline MatRep close_group(std::vector<Matrix> generators,
                          size_t cap = 100000) {
  require(!generators.empty(), Errc::empty_generator_list,
          "close_group needs at least one generator");
  const Field f = generators[0].field();
  size_t n = generators[0].rows();
  for (const auto& g : generators) {
    require(same_field(g.field(), f), Errc::field_mismatch,
            "generators over different fields");
    require(g.rows() == n && g.cols() == n, Errc::shape_mismatch,
            "generators must be square of equal size");
    require(invertible(g), Errc::singular_generator,
            "generator matrix is singular");
  }
  MatRep rep;
  rep.field = f;
  rep.degree = n;
  rep.generators = std::move(generators);

  Matrix id = Matrix::identity(f, n);
  rep.elements.push_back(id);
  rep.words.push_back({});
  rep.index.emplace(id.key(), 0);

  for (uint32_t e = 0; e < rep.elements.size(); ++e) {
    rep.edge.push_back(std::vector<uint32_t>(rep.generators.size(), 0));
    for (size_t j = 0; j < rep.generators.size(); ++j) {
      Matrix prod = rep.elements[e] * rep.generators[j];
      auto key = prod.key();
      auto it = rep.index.find(key);
      uint32_t idx;
      if (it == rep.index.end()) {
        idx = uint32_t(rep.elements.size());
        require(idx < cap, Errc::order_cap_exceeded,
                "group closure exceeded the order cap");
        rep.index.emplace(std::move(key), idx);
        rep.elements.push_back(std::move(prod));
        std::vector<uint32_t> w = rep.words[e];
        w.push_back(uint32_t(j));
        rep.words.push_back(std::move(w));
      } else {
        idx = it->second;
      }
      rep.edge[e][j] = idx;
    }
  }

  rep.inverse_idx.resize(rep.elements.size());
  for (uint32_t e = 0; e < rep.elements.size(); ++e) {
    rep.inverse_idx[e] = rep.index_of(inverse(rep.elements[e]));
  }
  return rep;
}

/// Evaluate a generator word in an arbitrary generator list (used to map
/// elements between parallel closures).
inline Matrix evaluate_word(const std::vector<Matrix>& generators,
                            const std::vector<uint32_t>& word, const Field& f,
                            size_t n) {
  Matrix m = Matrix::identity(f, n);
  for (uint32_t j : word) m = m * generators[j];
  return m;
}

// ---------------------------------------------------------------------------
// Conjugacy classes

struct ConjClassTable {
  std::vector<uint32_t> class_of;        // element index -> class id
  std::vector<uint32_t> representatives; // class id -> least element index
  std::vector<uint32_t> sizes;
  std::vector<uint32_t> inverse_class;   // class id of the inverse class
};

inline ConjClassTable conjugacy_classes(const MatRep& rep) {
  size_t order = rep.order();
  ConjClassTable t;
  t.class_of.assign(order, UINT32_MAX);
  for (uint32_t e = 0; e < order; ++e) {
    if (t.class_of[e] != UINT32_MAX) continue;
    uint32_t cls = uint32_t(t.representatives.size());
    t.representatives.push_back(e);
    uint32_t count = 0;
    std::deque<uint32_t> queue{e};
    t.class_of[e] = cls;
    while (!queue.empty()) {
      uint32_t x = queue.front();
      queue.pop_front();
      ++count;
      for (size_t j = 0; j < rep.generators.size(); ++j) {
        uint32_t g = rep.generator_index(j);
        uint32_t y = rep.conj(g, x);
        if (t.class_of[y] == UINT32_MAX) {
          t.class_of[y] = cls;
          queue.push_back(y);
        }
      }
    }
    t.sizes.push_back(count);
  }
  t.inverse_class.resize(t.representatives.size());
  for (size_t c = 0; c < t.representatives.size(); ++c) {
    t.inverse_class[c] = t.class_of[rep.inv(t.representatives[c])];
  }
  return t;
}

// ---------------------------------------------------------------------------
// Subgroups

/// Subgroup generated by the given element indices, as a sorted index list.
inline std::vector<uint32_t> subgroup_closure(const MatRep& rep,
                                              const std::vector<uint32_t>& gens) {
  std::vector<bool> in(rep.order(), false);
  std::vector<uint32_t> members{0};
  in[0] = true;
  std::deque<uint32_t> queue{0};
  while (!queue.empty()) {
    uint32_t x = queue.front();
    queue.pop_front();
    for (uint32_t g : gens) {
      uint32_t y = rep.mul(x, g);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// Normal closure of the given seed elements in the whole group.
inline std::vector<uint32_t> normal_closure(const MatRep& rep,
                                            std::vector<uint32_t> seeds) {
  std::vector<uint32_t> gens = std::move(seeds);
  for (;;) {
    std::vector<uint32_t> sub = subgroup_closure(rep, gens);
    std::vector<bool> in(rep.order(), false);
    for (uint32_t s : sub) in[s] = true;
    bool grew = false;
    for (uint32_t s : sub) {
      for (size_t j = 0; j < rep.generators.size(); ++j) {
        uint32_t g = rep.generator_index(j);
        uint32_t c = rep.conj(g, s);
        if (!in[c]) {
          gens.push_back(c);
          grew = true;
        }
      }
    }
    if (!grew) return sub;
  }
}

inline std::vector<uint32_t> derived_subgroup(const MatRep& rep) {
  std::vector<uint32_t> commutators;
  for (size_t i = 0; i < rep.generators.size(); ++i) {
    for (size_t j = 0; j < rep.generators.size(); ++j) {
      if (i == j) continue;
      uint32_t a = rep.generator_index(i);
      uint32_t b = rep.generator_index(j);
      uint32_t c = rep.mul(rep.mul(rep.inv(a), rep.inv(b)), rep.mul(a, b));
      commutators.push_back(c);
    }
  }
  if (commutators.empty()) commutators.push_back(0);
  return normal_closure(rep, std::move(commutators));
}

inline bool is_subgroup_normal(const MatRep& rep,
                               const std::vector<uint32_t>& sub) {
  std::vector<bool> in(rep.order(), false);
  for (uint32_t s : sub) in[s] = true;
  for (uint32_t s : sub) {
    for (size_t j = 0; j < rep.generators.size(); ++j) {
      uint32_t g = rep.generator_index(j);
      if (!in[rep.conj(g, s)]) return false;
    }
  }
  return true;
}

/// Small generating subset of a subgroup (greedy over the index order);
/// keeps downstream linear systems small.
inline std::vector<uint32_t> small_generating_subset(
    const MatRep& rep, const std::vector<uint32_t>& sub) {
  std::vector<uint32_t> gens;
  size_t covered = 1;  // identity
  if (sub.size() <= 1) return gens;
  for (uint32_t s : sub) {
    if (s == 0) continue;
    std::vector<uint32_t> trial = gens;
    trial.push_back(s);
    size_t size = subgroup_closure(rep, trial).size();
    if (size > covered) {
      gens = std::move(trial);
      covered = size;
      if (covered == sub.size()) break;
    }
  }
  require(covered == sub.size(), Errc::invariant_violation,
          "generating subset construction failed");
  return gens;
}

// ---------------------------------------------------------------------------
// Linear characters Hom(G, K*)

/// A homomorphism G -> K*, stored by its values on every element (in BFS
/// element order) plus the values on the generators.
struct LinearCharacter {
  Field field;  // the target field K
  std::vector<FieldElem> on_elements;
  std::vector<FieldElem> on_generators;

  bool is_trivial() const {
    for (const auto& v : on_elements)
      if (!field->is_one(v)) return false;
    return true;
  }

  /// Multiplicative order in Hom(G, K*).
  uint64_t order() const {
    uint64_t o = 1;
    for (const auto& v : on_generators) {
      o = std::lcm(o, field->multiplicative_order(v));
    }
    return o;
  }

  bool operator==(const LinearCharacter& o) const {
    return on_elements == o.on_elements;
  }
};

inline LinearCharacter trivial_character(const MatRep& rep, const Field& K) {
  LinearCharacter s;
  s.field = K;
  s.on_elements.assign(rep.order(), K->one());
  s.on_generators.assign(rep.generators.size(), K->one());
  return s;
}

inline LinearCharacter character_mul(const LinearCharacter& a,
                                     const LinearCharacter& b) {
  require(same_field(a.field, b.field) &&
              a.on_elements.size() == b.on_elements.size(),
          Errc::field_mismatch, "characters of different groups or fields");
  LinearCharacter r = a;
  for (size_t i = 0; i < r.on_elements.size(); ++i)
    r.on_elements[i] = a.field->mul(a.on_elements[i], b.on_elements[i]);
  for (size_t i = 0; i < r.on_generators.size(); ++i)
    r.on_generators[i] = a.field->mul(a.on_generators[i], b.on_generators[i]);
  return r;
}

/// The gamma-twist: sigma(g^-1), i.e. the pointwise inverse.
inline LinearCharacter character_invert(const LinearCharacter& a) {
  LinearCharacter r = a;
  for (auto& v : r.on_elements) v = a.field->inv(v);
  for (auto& v : r.on_generators) v = a.field->inv(v);
  return r;
}

/// The alpha-twist: alpha(sigma(g)) with alpha = x -> x^(p^exp).
inline LinearCharacter character_frobenius(const LinearCharacter& a,
                                           unsigned exp) {
  LinearCharacter r = a;
  for (auto& v : r.on_elements) v = a.field->frobenius_pow(v, exp);
  for (auto& v : r.on_generators) v = a.field->frobenius_pow(v, exp);
  return r;
}

/// All linear characters G -> K*. The derived subgroup is factored out,
/// the abelian quotient is decomposed greedily into a cyclic chain by
/// maximal relative element order, and values are propagated along the
/// chain. The list is complete, duplicate-free, and sorted by the value
/// tuple on the generators in the canonical element order.
inline std::vector<LinearCharacter> linear_characters(const MatRep& rep,
                                                      const Field& K) {
  std::vector<uint32_t> derived = derived_subgroup(rep);

  // cosets of the derived subgroup
  size_t order = rep.order();
  std::vector<uint32_t> coset_of(order, UINT32_MAX);
  std::vector<uint32_t> coset_rep;
  for (uint32_t e = 0; e < order; ++e) {
    if (coset_of[e] != UINT32_MAX) continue;
    uint32_t id = uint32_t(coset_rep.size());
    coset_rep.push_back(e);
    for (uint32_t d : derived) coset_of[rep.mul(e, d)] = id;
  }
  size_t q_order = coset_rep.size();
  auto qmul = [&](uint32_t a, uint32_t b) {
    return coset_of[rep.mul(coset_rep[a], coset_rep[b])];
  };
  auto qpow = [&](uint32_t a, uint64_t e) {
    uint32_t r = 0;
    for (uint64_t i = 0; i < e; ++i) r = qmul(r, a);
    return r;
  };

  // cyclic chain: repeatedly adjoin the element of maximal order modulo the
  // subgroup generated so far
  std::vector<bool> in_s(q_order, false);
  in_s[0] = true;
  size_t s_size = 1;
  struct ChainStep {
    uint32_t gen;
    uint32_t rel_order;
    uint32_t power_in_s;  // gen^rel_order, an element of the previous subgroup
  };
  std::vector<ChainStep> chain;
  while (s_size < q_order) {
    uint32_t best = 0, best_ord = 0;
    for (uint32_t x = 0; x < q_order; ++x) {
      if (in_s[x]) continue;
      uint32_t t = 1;
      uint32_t cur = x;
      while (!in_s[cur]) {
        cur = qmul(cur, x);
        ++t;
      }
      if (t > best_ord) {
        best_ord = t;
        best = x;
      }
    }
    chain.push_back({best, best_ord, qpow(best, best_ord)});
    // extend the subgroup: old members times powers of the new generator
    std::vector<uint32_t> old_members;
    old_members.reserve(s_size);
    for (uint32_t x = 0; x < q_order; ++x)
      if (in_s[x]) old_members.push_back(x);
    for (uint32_t j = 1; j < best_ord; ++j) {
      uint32_t pw = qpow(best, j);
      for (uint32_t m : old_members) in_s[qmul(m, pw)] = true;
    }
    s_size *= best_ord;
  }

  // all units of K, in canonical order, with their multiplicative orders
  std::vector<FieldElem> units;
  units.reserve(size_t(K->units()));
  for (uint64_t i = 0; i < K->order(); ++i) {
    FieldElem u = K->element_at(i);
    if (!K->is_zero(u)) units.push_back(u);
  }

  std::vector<LinearCharacter> result;
  std::vector<FieldElem> value(q_order, K->one());

  // depth-first extension along the chain
  auto emit = [&]() {
    LinearCharacter s;
    s.field = K;
    s.on_elements.resize(order);
    for (uint32_t e = 0; e < order; ++e) s.on_elements[e] = value[coset_of[e]];
    s.on_generators.resize(rep.generators.size());
    for (size_t j = 0; j < rep.generators.size(); ++j)
      s.on_generators[j] = s.on_elements[rep.generator_index(j)];
    result.push_back(std::move(s));
  };

  std::vector<uint32_t> members{0};  // current subgroup, in discovery order
  auto extend = [&](auto&& self, size_t step) -> void {
    if (step == chain.size()) {
      emit();
      return;
    }
    const ChainStep& cs = chain[step];
    FieldElem target = value[cs.power_in_s];
    size_t prev_count = members.size();
    for (const FieldElem& v : units) {
      if (K->pow(v, cs.rel_order) != target) continue;
      // assign values on the enlarged subgroup
      FieldElem pw = K->one();
      uint32_t qp = 0;
      for (uint32_t j = 1; j < cs.rel_order; ++j) {
        pw = K->mul(pw, v);
        qp = qmul(qp, cs.gen);
        for (size_t m = 0; m < prev_count; ++m) {
          uint32_t target_coset = qmul(members[m], qp);
          value[target_coset] = K->mul(value[members[m]], pw);
          members.push_back(target_coset);
        }
      }
      self(self, step + 1);
      members.resize(prev_count);
    }
  };
  extend(extend, 0);

  std::sort(result.begin(), result.end(),
            [](const LinearCharacter& a, const LinearCharacter& b) {
              return a.on_generators < b.on_generators;
            });
  return result;
}

// ---------------------------------------------------------------------------
// Permutation actions

inline std::vector<uint32_t> perm_identity(uint32_t degree) {
  std::vector<uint32_t> p(degree);
  for (uint32_t i = 0; i < degree; ++i) p[i] = i;
  return p;
}

inline std::vector<uint32_t> perm_compose(const std::vector<uint32_t>& a,
                                          const std::vector<uint32_t>& b) {
  // (a o b)(x) = a[b[x]]
  std::vector<uint32_t> r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
  return r;
}

inline std::vector<uint32_t> perm_inverse(const std::vector<uint32_t>& a) {
  std::vector<uint32_t> r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[a[x]] = uint32_t(x);
  return r;
}

inline bool perm_is_identity(const std::vector<uint32_t>& a) {
  for (size_t x = 0; x < a.size(); ++x)
    if (a[x] != x) return false;
  return true;
}

/// A homomorphism psi: G -> Sym_degree, materialized on every element.
struct PermAction {
  uint32_t degree = 0;
  std::vector<std::vector<uint32_t>> on_generators;
  std::vector<std::vector<uint32_t>> on_elements;

  bool is_transitive() const {
    std::vector<bool> seen(degree, false);
    seen[0] = true;
    size_t count = 1;
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
      uint32_t x = queue.front();
      queue.pop_front();
      for (const auto& g : on_generators) {
        if (!seen[g[x]]) {
          seen[g[x]] = true;
          ++count;
          queue.push_back(g[x]);
        }
      }
    }
    return count == degree;
  }
};

/// Build an action from generator images and validate that it extends to a
/// homomorphism on the closed group.
inline PermAction make_perm_action(const MatRep& rep,
                                   std::vector<std::vector<uint32_t>> images,
                                   uint32_t degree) {
  require(images.size() == rep.generators.size(), Errc::validation_error,
          "psi must give one permutation per generator");
  for (const auto& img : images) {
    require(img.size() == degree, Errc::validation_error,
            "permutation image of wrong degree");
    std::vector<bool> seen(degree, false);
    for (uint32_t v : img) {
      require(v < degree && !seen[v], Errc::validation_error,
              "image is not a permutation");
      seen[v] = true;
    }
  }
  PermAction a;
  a.degree = degree;
  a.on_generators = std::move(images);
  a.on_elements.resize(rep.order());
  a.on_elements[0] = perm_identity(degree);
  // propagate along BFS words, then check every closure edge
  for (uint32_t e = 1; e < rep.order(); ++e) {
    const auto& w = rep.words[e];
    std::vector<uint32_t> p = perm_identity(degree);
    for (uint32_t letter : w) p = perm_compose(p, a.on_generators[letter]);
    a.on_elements[e] = std::move(p);
  }
  for (uint32_t e = 0; e < rep.order(); ++e) {
    for (size_t j = 0; j < rep.generators.size(); ++j) {
      uint32_t m = rep.edge[e][j];
      require(perm_compose(a.on_elements[e], a.on_generators[j]) ==
                  a.on_elements[m],
              Errc::validation_error,
              "psi is not a homomorphism of the closed group");
    }
  }
  return a;
}

/// psi from a linear character of prime order p: the canonical primitive
/// p-th root zeta (least in element order) is identified with the p-cycle
/// x -> x+1, and sigma(g) = zeta^j maps to that cycle's j-th power.
inline PermAction perm_action_from_character(const MatRep& rep,
                                             const LinearCharacter& sigma) {
  uint64_t p = sigma.order();
  require(p >= 2, Errc::not_prime_order, "character order must be prime");
  for (uint64_t d = 2; d * d <= p; ++d) {
    require(p % d != 0, Errc::not_prime_order,
            "character order " + std::to_string(p) + " is not prime");
  }
  const Field& K = sigma.field;
  FieldElem zeta;
  bool found = false;
  for (uint64_t i = 1; i < K->order() && !found; ++i) {
    FieldElem u = K->element_at(i);
    if (K->is_zero(u)) continue;
    if (K->multiplicative_order(u) == p) {
      zeta = u;
      found = true;
    }
  }
  require(found, Errc::roots_of_unity_missing,
          "the field has no primitive " + std::to_string(p) + "-th root of unity");
  // powers of zeta for discrete logs in mu_p
  std::vector<FieldElem> zpow(static_cast<size_t>(p), FieldElem{});
  zpow[0] = K->one();
  for (uint64_t j = 1; j < p; ++j) zpow[j] = K->mul(zpow[j - 1], zeta);
  auto dlog = [&](const FieldElem& v) -> uint32_t {
    for (uint64_t j = 0; j < p; ++j)
      if (zpow[j] == v) return uint32_t(j);
    fail(Errc::roots_of_unity_missing,
         "character value is not a " + std::to_string(p) + "-th root of unity");
  };
  PermAction a;
  a.degree = uint32_t(p);
  auto cycle_power = [&](uint32_t j) {
    std::vector<uint32_t> perm(a.degree);
    for (uint32_t x = 0; x < a.degree; ++x) perm[x] = (x + j) % a.degree;
    return perm;
  };
  a.on_elements.resize(rep.order());
  for (uint32_t e = 0; e < rep.order(); ++e)
    a.on_elements[e] = cycle_power(dlog(sigma.on_elements[e]));
  a.on_generators.resize(rep.generators.size());
  for (size_t j = 0; j < rep.generators.size(); ++j)
    a.on_generators[j] = a.on_elements[rep.generator_index(j)];
  return a;
}

/// Kernel of the action: all elements mapped to the identity permutation.
inline std::vector<uint32_t> kernel_of(const PermAction& action,
                                       const MatRep& rep) {
  std::vector<uint32_t> kernel;
  for (uint32_t e = 0; e < rep.order(); ++e)
    if (perm_is_identity(action.on_elements[e])) kernel.push_back(e);
  return kernel;
}

// ---------------------------------------------------------------------------
// Structure of the permutation image (solvability, cyclicity)

/// The distinct permutations in the image of an action, closed under
/// composition by construction.
inline std::vector<std::vector<uint32_t>> action_image(const PermAction& a) {
  std::vector<std::vector<uint32_t>> image;
  for (const auto& p : a.on_elements) {
    bool known = false;
    for (const auto& q : image)
      if (q == p) {
        known = true;
        break;
      }
    if (!known) image.push_back(p);
  }
  return image;
}

namespace detail {

inline std::vector<std::vector<uint32_t>> perm_group_closure(
    std::vector<std::vector<uint32_t>> gens, uint32_t degree) {
  std::vector<std::vector<uint32_t>> members{perm_identity(degree)};
  std::deque<size_t> queue{0};
  auto find = [&](const std::vector<uint32_t>& p) -> int {
    for (size_t i = 0; i < members.size(); ++i)
      if (members[i] == p) return int(i);
    return -1;
  };
  while (!queue.empty()) {
    size_t i = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      auto p = perm_compose(members[i], g);
      if (find(p) < 0) {
        members.push_back(p);
        queue.push_back(members.size() - 1);
      }
    }
  }
  return members;
}

}  // namespace detail

/// Derived series of the image reaches the trivial group?
inline bool image_is_solvable(const PermAction& a) {
  auto current = action_image(a);
  for (;;) {
    if (current.size() == 1) return true;
    // commutators of all pairs generate the derived subgroup
    std::vector<std::vector<uint32_t>> comms;
    for (const auto& x : current) {
      for (const auto& y : current) {
        auto c = perm_compose(perm_compose(perm_inverse(x), perm_inverse(y)),
                              perm_compose(x, y));
        bool known = false;
        for (const auto& k : comms)
          if (k == c) {
            known = true;
            break;
          }
        if (!known) comms.push_back(c);
      }
    }
    auto next = detail::perm_group_closure(comms, a.degree);
    if (next.size() == current.size()) return false;  // series stalled
    current = std::move(next);
  }
}

inline bool image_is_cyclic(const PermAction& a) {
  auto image = action_image(a);
  for (const auto& p : image) {
    size_t ord = 1;
    auto cur = p;
    while (!perm_is_identity(cur)) {
      cur = perm_compose(cur, p);
      ++ord;
    }
    if (ord == image.size()) return true;
  }
  return false;
}

}  // namespace asch
