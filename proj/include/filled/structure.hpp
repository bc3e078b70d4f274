#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "filled/elemset.hpp"
#include "filled/errors.hpp"
#include "filled/group.hpp"

namespace filled {

inline ElemSet center(const FiniteGroup& g) {
  ElemSet z(g);
  const std::size_t n = g.order();
  for (std::size_t a = 0; a < n; ++a) {
    bool central = true;
    for (std::size_t b = 0; b < n && central; ++b)
      central = g.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == g.mul(static_cast<Elem>(b), static_cast<Elem>(a));
    if (central) z.insert(static_cast<Elem>(a));
  }
  return z;
}

// Classes are listed by their smallest element; each class is sorted.
inline std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> done(n, false);
  std::vector<std::vector<Elem>> classes;
  for (std::size_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    std::vector<Elem> cls;
    for (std::size_t h = 0; h < n; ++h) {
      const Elem c = g.conjugate(static_cast<Elem>(a), static_cast<Elem>(h));
      if (!done[c]) {
        done[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// Size of the conjugacy class of each element.
inline std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (const auto& cls : conjugacy_classes(g))
    for (Elem e : cls) out[e] = cls.size();
  return out;
}

// Smallest subgroup containing `start` and `gens`; `start` must already be a
// subgroup (or just {1}).
inline ElemSet subgroup_closure(const FiniteGroup& g, const ElemSet& start, std::span<const Elem> gens) {
  ElemSet h = start;
  h.insert(FiniteGroup::identity());
  std::vector<Elem> queue = h.elements();
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (Elem s : gens) {
      const Elem p = g.mul(queue[qi], s);
      if (!h.contains(p)) {
        h.insert(p);
        queue.push_back(p);
      }
    }
  }
  return h;
}

inline ElemSet generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  return subgroup_closure(g, ElemSet(g), gens);
}

inline bool is_subgroup(const ElemSet& s) {
  const FiniteGroup& g = s.group();
  if (!s.contains(FiniteGroup::identity())) return false;
  bool ok = true;
  s.for_each([&](Elem a) {
    if (!ok) return;
    s.for_each([&](Elem b) {
      if (ok && !s.contains(g.mul(a, g.inv(b)))) ok = false;
    });
  });
  return ok;
}

inline bool is_normal_subgroup(const ElemSet& s) {
  if (!is_subgroup(s)) return false;
  const FiniteGroup& g = s.group();
  bool ok = true;
  s.for_each([&](Elem a) {
    for (std::size_t h = 0; h < g.order() && ok; ++h)
      if (!s.contains(g.conjugate(a, static_cast<Elem>(h)))) ok = false;
  });
  return ok;
}

// All normal subgroups, sorted by size and then lexicographically. Each is
// the closure of a union of conjugacy classes; new subgroups are grown from
// known ones one class at a time.
inline std::vector<ElemSet> normal_subgroups(const FiniteGroup& g) {
  const auto classes = conjugacy_classes(g);
  struct Node {
    ElemSet set;
    std::vector<Elem> gens;
  };
  std::vector<Node> found;
  std::unordered_set<std::string> seen;
  auto key = [](const ElemSet& s) {
    const auto w = s.words();
    return std::string(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(std::uint64_t));
  };
  ElemSet trivial(g);
  trivial.insert(FiniteGroup::identity());
  seen.insert(key(trivial));
  found.push_back({trivial, {}});
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& cls : classes) {
      if (found[i].set.contains(cls.front())) continue;
      ElemSet m = found[i].set;
      std::vector<Elem> gens = found[i].gens;
      for (Elem c : cls) {
        if (m.contains(c)) continue;
        gens.push_back(c);
        m = subgroup_closure(g, m, gens);
      }
      if (seen.insert(key(m)).second) found.push_back({std::move(m), std::move(gens)});
    }
  }
  std::vector<ElemSet> out;
  out.reserve(found.size());
  for (auto& node : found) out.push_back(std::move(node.set));
  std::sort(out.begin(), out.end(), [](const ElemSet& a, const ElemSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

struct Quotient {
  GroupPtr group;
  // Natural projection: element of G -> coset index in the quotient.
  std::vector<Elem> projection;
};

// G/N. Cosets are numbered by their smallest member, so N itself is 0.
inline Quotient quotient(const GroupPtr& gp, const ElemSet& n_set) {
  const FiniteGroup& g = *gp;
  if (n_set.group_id() != g.id()) throw GroupMismatch("normal subgroup belongs to a different group");
  if (!is_subgroup(n_set)) throw NotSubgroup("set is not a subgroup");
  if (!is_normal_subgroup(n_set)) throw NotNormal("subgroup is not normal");

  const std::size_t order = g.order();
  const auto members = n_set.elements();
  std::vector<Elem> coset(order, 0);
  std::vector<bool> assigned(order, false);
  std::vector<Elem> reps;
  for (std::size_t a = 0; a < order; ++a) {
    if (assigned[a]) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(a));
    for (Elem m : members) {
      const Elem c = g.mul(static_cast<Elem>(a), m);
      assigned[c] = true;
      coset[c] = id;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(reps.size());
  for (Elem r : reps) labels.push_back("[" + g.label(r) + "]");
  const std::string spec =
      g.spec_string() + "/N" + std::to_string(members.size());
  Quotient q;
  q.group = make_group(
      reps.size(), [&](Elem a, Elem b) { return coset[g.mul(reps[a], reps[b])]; }, std::move(labels),
      spec);
  q.projection = std::move(coset);
  return q;
}

inline unsigned exponent(const FiniteGroup& g) {
  unsigned e = 1;
  for (std::size_t a = 0; a < g.order(); ++a) e = std::lcm(e, g.elem_order(static_cast<Elem>(a)));
  return e;
}

inline std::size_t count_of_order(const FiniteGroup& g, unsigned k) {
  std::size_t c = 0;
  for (std::size_t a = 0; a < g.order(); ++a) c += g.elem_order(static_cast<Elem>(a)) == k;
  return c;
}

inline bool is_abelian(const FiniteGroup& g) {
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = a + 1; b < g.order(); ++b)
      if (g.mul(static_cast<Elem>(a), static_cast<Elem>(b)) != g.mul(static_cast<Elem>(b), static_cast<Elem>(a)))
        return false;
  return true;
}

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

struct StructureFlags {
  bool is_abelian = false;
  bool is_cyclic = false;
  bool is_elementary_abelian_2 = false;
  bool is_dihedral = false;
  bool is_generalized_quaternion = false;
  bool is_extraspecial = false;
};

// Generator of a cyclic subgroup of index 2 for which some y outside it
// satisfies the dihedral (or generalized quaternion) relations.
struct IndexTwoCyclic {
  Elem x;
  Elem y;
};

inline std::optional<IndexTwoCyclic> dihedral_generators(const FiniteGroup& g) {
  const std::size_t order = g.order();
  if (order < 6 || order % 2 != 0) return std::nullopt;
  const unsigned n = static_cast<unsigned>(order / 2);
  for (std::size_t x = 1; x < order; ++x) {
    if (g.elem_order(static_cast<Elem>(x)) != n) continue;
    const Elem gx = static_cast<Elem>(x);
    const Elem xinv = g.inv(gx);
    std::vector<bool> in_rot(order, false);
    Elem p = 0;
    for (unsigned i = 0; i < n; ++i, p = g.mul(p, gx)) in_rot[p] = true;
    for (std::size_t y = 1; y < order; ++y) {
      const Elem gy = static_cast<Elem>(y);
      if (in_rot[y] || g.elem_order(gy) != 2) continue;
      if (g.mul(g.mul(gy, gx), gy) == xinv) return IndexTwoCyclic{gx, gy};
    }
  }
  return std::nullopt;
}

inline std::optional<IndexTwoCyclic> quaternion_generators(const FiniteGroup& g) {
  const std::size_t order = g.order();
  if (order < 8 || order % 4 != 0) return std::nullopt;
  if (count_of_order(g, 2) != 1) return std::nullopt;
  const unsigned n = static_cast<unsigned>(order / 2);
  const long long m = static_cast<long long>(order / 4);
  for (std::size_t x = 1; x < order; ++x) {
    const Elem gx = static_cast<Elem>(x);
    if (g.elem_order(gx) != n) continue;
    const Elem xm = g.power(gx, m);
    const Elem xinv = g.inv(gx);
    std::vector<bool> in_cyc(order, false);
    Elem p = 0;
    for (unsigned i = 0; i < n; ++i, p = g.mul(p, gx)) in_cyc[p] = true;
    for (std::size_t y = 1; y < order; ++y) {
      const Elem gy = static_cast<Elem>(y);
      if (in_cyc[y]) continue;
      if (g.mul(gy, gy) == xm && g.mul(g.mul(gy, gx), g.inv(gy)) == xinv) return IndexTwoCyclic{gx, gy};
    }
  }
  return std::nullopt;
}

// |Z| = 2, every square central, |G| an odd power of 2 (at least 8).
inline bool is_extraspecial(const FiniteGroup& g) {
  const std::size_t order = g.order();
  if (!is_power_of_two(order) || order < 8) return false;
  int e = 0;
  while ((std::size_t{1} << e) < order) ++e;
  if (e % 2 != 1) return false;
  const ElemSet z = center(g);
  if (z.size() != 2) return false;
  for (std::size_t a = 0; a < order; ++a)
    if (!z.contains(g.mul(static_cast<Elem>(a), static_cast<Elem>(a)))) return false;
  return true;
}

inline StructureFlags structure_predicates(const FiniteGroup& g) {
  StructureFlags f;
  f.is_abelian = is_abelian(g);
  f.is_cyclic = count_of_order(g, static_cast<unsigned>(g.order())) > 0;
  f.is_elementary_abelian_2 = true;
  for (std::size_t a = 1; a < g.order(); ++a)
    if (g.elem_order(static_cast<Elem>(a)) != 2) f.is_elementary_abelian_2 = false;
  f.is_dihedral = !f.is_abelian && dihedral_generators(g).has_value();
  f.is_generalized_quaternion = !f.is_abelian && quaternion_generators(g).has_value();
  f.is_extraspecial = is_extraspecial(g);
  return f;
}

// The involution z when G has exponent 4 and every element of order 4
// squares to z; such z is central. Non-filling locally maximal product-free
// sets of these groups contain z and consist of involutions.
inline std::optional<Elem> involution_core(const FiniteGroup& g) {
  if (exponent(g) != 4) return std::nullopt;
  std::optional<Elem> z;
  for (std::size_t a = 0; a < g.order(); ++a) {
    const Elem ga = static_cast<Elem>(a);
    if (g.elem_order(ga) != 4) continue;
    const Elem sq = g.mul(ga, ga);
    if (z && *z != sq) return std::nullopt;
    z = sq;
  }
  return z;
}

// Cheap isomorphism invariant.
struct GroupFingerprint {
  std::size_t order = 0;
  unsigned exponent = 0;
  std::size_t center_size = 0;
  std::vector<std::size_t> class_sizes;   // sorted
  std::map<unsigned, std::size_t> order_histogram;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
  friend bool operator<(const GroupFingerprint& a, const GroupFingerprint& b) {
    return std::tie(a.order, a.exponent, a.center_size, a.class_sizes, a.order_histogram) <
           std::tie(b.order, b.exponent, b.center_size, b.class_sizes, b.order_histogram);
  }
};

inline GroupFingerprint fingerprint(const FiniteGroup& g) {
  GroupFingerprint f;
  f.order = g.order();
  f.exponent = exponent(g);
  f.center_size = center(g).size();
  for (const auto& cls : conjugacy_classes(g)) f.class_sizes.push_back(cls.size());
  std::sort(f.class_sizes.begin(), f.class_sizes.end());
  for (std::size_t a = 0; a < g.order(); ++a) ++f.order_histogram[g.elem_order(static_cast<Elem>(a))];
  return f;
}

}  // namespace filled
