#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "filled/group.hpp"
#include "filled/structure.hpp"

namespace filled {

inline constexpr std::size_t kDefaultAutomorphismCap = 1'000'000;

// Automorphisms as permutations of element indices.
struct Automorphisms {
  // Every automorphism when `complete`; otherwise only the identity.
  std::vector<std::vector<Elem>> perms;
  // Strong generating set relative to the greedy generator base. Always
  // generates the full automorphism group.
  std::vector<std::vector<Elem>> generators;
  // |Aut(G)|, saturating at uint64 max.
  std::uint64_t order = 1;
  bool complete = false;
};

// Elements chosen so that each lies outside the subgroup generated by the
// previous ones, preferring high element order.
inline std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  ElemSet h(g);
  h.insert(FiniteGroup::identity());
  while (h.size() < g.order()) {
    Elem best = 0;
    unsigned best_order = 0;
    for (std::size_t a = 1; a < g.order(); ++a) {
      const Elem e = static_cast<Elem>(a);
      if (!h.contains(e) && g.elem_order(e) > best_order) {
        best = e;
        best_order = g.elem_order(e);
      }
    }
    gens.push_back(best);
    h = subgroup_closure(g, h, gens);
  }
  return gens;
}

namespace detail {

// Backtracking over images of a generating set of `src` in `dst`. Each level
// extends the partial map to the subgroup generated so far and rejects it
// unless it is an injective homomorphism there.
class HomSearch {
 public:
  HomSearch(const FiniteGroup& src, const FiniteGroup& dst)
      : src_(src), dst_(dst), gens_(greedy_generators(src)), n_(src.order()) {
    const auto src_cls = class_sizes(src);
    const auto dst_cls = class_sizes(dst);
    for (Elem g : gens_) {
      std::vector<Elem> cands;
      for (std::size_t c = 0; c < dst.order(); ++c) {
        const Elem e = static_cast<Elem>(c);
        if (dst.elem_order(e) == src.elem_order(g) && dst_cls[e] == src_cls[g]) cands.push_back(e);
      }
      candidates_.push_back(std::move(cands));
    }
    // BFS trees for H_j = <g_0..g_j>, each continuing the previous one so the
    // map on H_{j-1} is reused unchanged.
    std::vector<bool> in(n_, false);
    in[0] = true;
    std::vector<Elem> order_list{0};
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      const std::size_t prev = order_list.size();
      for (std::size_t qi = 0; qi < order_list.size(); ++qi) {
        for (std::size_t t = 0; t <= j; ++t) {
          // Elements from earlier levels only need the new generator.
          if (qi < prev && t < j) continue;
          const Elem p = src.mul(order_list[qi], gens_[t]);
          if (!in[p]) {
            in[p] = true;
            order_list.push_back(p);
            edges.push_back({p, order_list[qi], static_cast<std::uint8_t>(t)});
          }
        }
      }
      levels_.push_back(Level{prev, order_list.size(), edges.size(), order_list});
    }
    tree_edges_ = std::move(edges);
    map_.assign(n_, 0);
    used_.assign(dst.order(), 0);
    images_.assign(gens_.size(), 0);
  }

  const std::vector<Elem>& generators() const noexcept { return gens_; }
  const std::vector<Elem>& candidates(std::size_t level) const { return candidates_[level]; }

  // Calls on_leaf(map) for every isomorphism whose generator images start
  // with `prefix`. on_leaf returns false to stop. Returns false if stopped.
  template <class F>
  bool enumerate(std::span<const Elem> prefix, F&& on_leaf) {
    if (src_.order() != dst_.order()) return true;
    return recurse(0, prefix, on_leaf);
  }

  std::optional<std::vector<Elem>> find_one(std::span<const Elem> prefix) {
    std::optional<std::vector<Elem>> out;
    enumerate(prefix, [&](const std::vector<Elem>& m) {
      out = m;
      return false;
    });
    return out;
  }

 private:
  struct Edge {
    Elem child, parent;
    std::uint8_t gen;
  };
  struct Level {
    std::size_t first_new;   // elements [first_new, end) are new at this level
    std::size_t end;
    std::size_t edge_end;
    std::vector<Elem> elems;  // elements of H_j in BFS order
  };

  template <class F>
  bool recurse(std::size_t j, std::span<const Elem> prefix, F& on_leaf) {
    if (j == gens_.size()) return on_leaf(map_);
    const std::size_t edge_begin = j == 0 ? 0 : levels_[j - 1].edge_end;
    auto try_image = [&](Elem c) {
      images_[j] = c;
      if (!extend(j, edge_begin)) return true;
      return recurse(j + 1, prefix, on_leaf);
    };
    if (j < prefix.size()) return try_image(prefix[j]);
    for (Elem c : candidates_[j])
      if (!try_image(c)) return false;
    return true;
  }

  bool extend(std::size_t j, std::size_t edge_begin) {
    const Level& lv = levels_[j];
    // Mark images already used by H_{j-1}.
    ++stamp_;
    for (std::size_t i = 0; i < lv.first_new; ++i) used_[map_[lv.elems[i]]] = stamp_;
    for (std::size_t e = edge_begin; e < lv.edge_end; ++e) {
      const Edge& ed = tree_edges_[e];
      const Elem v = dst_.mul(map_[ed.parent], images_[ed.gen]);
      if (used_[v] == stamp_) return false;
      used_[v] = stamp_;
      map_[ed.child] = v;
    }
    // Homomorphism on generators: pairs not checked at earlier levels.
    for (std::size_t i = 0; i < lv.end; ++i) {
      const Elem h = lv.elems[i];
      for (std::size_t t = 0; t <= j; ++t) {
        if (i < lv.first_new && t < j) continue;
        if (map_[src_.mul(h, gens_[t])] != dst_.mul(map_[h], images_[t])) return false;
      }
    }
    return true;
  }

  const FiniteGroup& src_;
  const FiniteGroup& dst_;
  std::vector<Elem> gens_;
  std::size_t n_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<Level> levels_;
  std::vector<Edge> tree_edges_;
  std::vector<Elem> map_;
  std::vector<std::uint32_t> used_;
  std::uint32_t stamp_ = 0;
  std::vector<Elem> images_;
};

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace detail

inline bool preserves_table(const FiniteGroup& g, std::span<const Elem> perm) {
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (perm[g.mul(static_cast<Elem>(a), static_cast<Elem>(b))] != g.mul(perm[a], perm[b])) return false;
  return true;
}

// Automorphism group by backtracking over images of greedy generators.
// A strong generating set is built level by level (deepest stabilizer
// first); the full list is enumerated only when |Aut(G)| <= cap.
inline Automorphisms automorphism_group(const FiniteGroup& g, std::size_t cap = kDefaultAutomorphismCap) {
  detail::HomSearch search(g, g);
  const auto& base = search.generators();
  const std::size_t k = base.size();
  const std::size_t n = g.order();

  std::vector<std::vector<Elem>> sgs;
  std::vector<std::size_t> sgs_level;
  std::uint64_t order = 1;
  for (std::size_t level = k; level-- > 0;) {
    std::vector<const std::vector<Elem>*> level_gens;
    for (std::size_t s = 0; s < sgs.size(); ++s)
      if (sgs_level[s] >= level) level_gens.push_back(&sgs[s]);

    std::vector<bool> in_orbit(n, false);
    std::vector<Elem> orbit{base[level]};
    in_orbit[base[level]] = true;
    auto close_orbit = [&](std::size_t from) {
      for (std::size_t qi = from; qi < orbit.size(); ++qi)
        for (const auto* p : level_gens) {
          const Elem im = (*p)[orbit[qi]];
          if (!in_orbit[im]) {
            in_orbit[im] = true;
            orbit.push_back(im);
          }
        }
    };
    close_orbit(0);

    std::vector<Elem> prefix(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(level));
    prefix.push_back(0);
    for (Elem c : search.candidates(level)) {
      if (in_orbit[c]) continue;
      prefix.back() = c;
      if (auto perm = search.find_one(prefix)) {
        sgs.push_back(std::move(*perm));
        sgs_level.push_back(level);
        level_gens.push_back(&sgs.back());
        // Pointers into sgs may have moved; rebuild the list.
        level_gens.clear();
        for (std::size_t s = 0; s < sgs.size(); ++s)
          if (sgs_level[s] >= level) level_gens.push_back(&sgs[s]);
        close_orbit(0);
      }
    }
    order = detail::sat_mul(order, orbit.size());
  }

  Automorphisms out;
  out.generators = std::move(sgs);
  out.order = order;
  if (order <= cap) {
    search.enumerate({}, [&](const std::vector<Elem>& m) {
      out.perms.push_back(m);
      return true;
    });
    out.complete = true;
  } else {
    std::vector<Elem> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Elem>(i);
    out.perms.push_back(std::move(id));
  }
  return out;
}

// Some isomorphism src -> dst as an index map, if one exists.
inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& src, const FiniteGroup& dst) {
  if (src.order() != dst.order()) return std::nullopt;
  if (fingerprint(src) != fingerprint(dst)) return std::nullopt;
  detail::HomSearch search(src, dst);
  return search.find_one({});
}

}  // namespace filled
