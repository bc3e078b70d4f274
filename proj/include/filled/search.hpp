#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "filled/automorphism.hpp"
#include "filled/elemset.hpp"
#include "filled/errors.hpp"
#include "filled/group.hpp"
#include "filled/pfs.hpp"
#include "filled/rng.hpp"
#include "filled/structure.hpp"

namespace filled {

enum class InvolutionSeed { Auto, On, Off };

inline constexpr std::size_t kDefaultExhaustiveCap = 128;
inline constexpr std::size_t kExhaustiveOptInOrder = 64;

struct SearchConfig {
  std::uint64_t rng_seed = 1;
  std::size_t max_restarts = 10'000;
  double time_budget = 60.0;  // seconds
  // Start random restarts from {z}, and restrict exhaustive search to sets of
  // involutions containing z. Auto enables this when every element of order
  // 4 squares to the same z and the exponent is 4.
  InvolutionSeed involution_seed = InvolutionSeed::Auto;
  unsigned parallel_width = 1;

  bool orbit_reduction = true;
  // Skip subtrees whose S u SS already covers G*; all their extensions fill.
  bool filling_prune = true;
  // Keep searching after the first non-filling set and record all of them.
  bool collect_all = false;
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
  bool exhaustive_opt_in = false;
  std::size_t automorphism_cap = kDefaultAutomorphismCap;

  void validate() const {
    if (max_restarts < 1) throw DomainError("max_restarts must be >= 1");
    if (!(time_budget > 0)) throw DomainError("time_budget must be > 0");
    if (parallel_width < 1) throw DomainError("parallel_width must be >= 1");
  }
};

struct SearchStats {
  std::uint64_t restarts = 0;
  std::uint64_t orbits_examined = 0;
  std::uint64_t sets_extended = 0;
  std::uint64_t lmpfs_examined = 0;
  // Locally maximal sets with some a in S, a^-1 not in S, a^-1 not in SS u sqrt(S).
  std::uint64_t inverse_property_violations = 0;
  double elapsed_ms = 0;

  SearchStats& operator+=(const SearchStats& o) {
    restarts += o.restarts;
    orbits_examined += o.orbits_examined;
    sets_extended += o.sets_extended;
    lmpfs_examined += o.lmpfs_examined;
    inverse_property_violations += o.inverse_property_violations;
    elapsed_ms += o.elapsed_ms;
    return *this;
  }
};

enum class Outcome { Filled, NotFilled, Undecided };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Filled: return "filled";
    case Outcome::NotFilled: return "not-filled";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::Undecided;
  std::optional<ElemSet> witness;
  std::vector<std::string> rule_chain;
  SearchStats stats;
  // Every non-filling set found, in collect-all mode.
  std::vector<ElemSet> all_witnesses;
  // Quotient whose verdict decided this one, when the quotient rule fired.
  GroupPtr quotient;

  bool filled() const noexcept { return outcome == Outcome::Filled; }
  bool decided() const noexcept { return outcome != Outcome::Undecided; }
};

struct WitnessReport {
  bool product_free = false;
  // Not applicable unless product_free.
  std::optional<bool> locally_maximal;
  std::optional<bool> fills;

  // Product-free, locally maximal, and not filling.
  bool non_filling_lmpfs() const { return product_free && locally_maximal.value_or(false) && !fills.value_or(true); }
};

inline WitnessReport verify_witness(const FiniteGroup& g, const ElemSet& s) {
  if (s.group_id() != g.id()) throw GroupMismatch("verify_witness: set belongs to a different group");
  WitnessReport r;
  r.product_free = is_product_free(s);
  if (r.product_free) {
    r.locally_maximal = is_locally_maximal(s);
    r.fills = fills(s);
  }
  return r;
}

// For each a in S with a^-1 not in S: a^-1 in SS u sqrt(S).
inline bool inverse_property_holds(const ElemSet& s) {
  const FiniteGroup& g = s.group();
  const ElemSet cover = product_set(s, s) | sqrt_set(s);
  bool ok = true;
  s.for_each([&](Elem a) {
    const Elem ai = g.inv(a);
    if (!s.contains(ai) && !cover.contains(ai)) ok = false;
  });
  return ok;
}

namespace detail {

inline std::optional<Elem> resolve_involution_seed(const FiniteGroup& g, InvolutionSeed mode) {
  if (mode == InvolutionSeed::Off) return std::nullopt;
  const auto z = involution_core(g);
  if (mode == InvolutionSeed::On && !z)
    throw PreconditionViolated("involution restriction needs exponent 4 with all order-4 elements squaring to one z");
  return z;
}

using Word = std::uint64_t;

// Per-group tables shared by all search workers.
struct SearchTables {
  const FiniteGroup* g;
  std::size_t n;
  std::size_t words;
  std::vector<std::vector<Elem>> roots;  // roots[y] = {x : x^2 = y}
  std::vector<Word> all;                 // every element

  explicit SearchTables(const FiniteGroup& group)
      : g(&group), n(group.order()), words((group.order() + 63) / 64), roots(group.order()), all(words, 0) {
    for (std::size_t x = 0; x < n; ++x) {
      const Elem e = static_cast<Elem>(x);
      roots[group.mul(e, e)].push_back(e);
      all[x >> 6] |= Word{1} << (x & 63);
    }
  }
};

inline void set_bit(Word* w, Elem e) { w[e >> 6] |= Word{1} << (e & 63); }
inline bool test_bit(const Word* w, Elem e) { return (w[e >> 6] >> (e & 63)) & 1U; }

// Stack of nested sets S_0 c S_1 c ... with S, SS, T(S) and sqrt(S) kept
// incrementally. Adding x to S costs O(|S|).
class SetStack {
 public:
  enum Slot { kS = 0, kSS, kT, kR, kSlots };

  SetStack(const SearchTables& t, std::size_t max_depth)
      : t_(&t), buf_((max_depth + 1) * kSlots * t.words, 0) {}

  void reset() {
    depth_ = 0;
    elems_.clear();
    std::fill(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(kSlots * t_->words), 0);
  }

  // New frame holding the current set plus x.
  void push(Elem x) {
    const std::size_t w = t_->words;
    std::copy_n(frame(depth_), kSlots * w, frame(depth_ + 1));
    ++depth_;
    add(x);
  }
  void pop() {
    --depth_;
    elems_.pop_back();
  }

  // Adds x to the top frame.
  void add(Elem x) {
    const FiniteGroup& g = *t_->g;
    elems_.push_back(x);
    Word* s = slot(kS);
    Word* ss = slot(kSS);
    Word* tt = slot(kT);
    Word* r = slot(kR);
    set_bit(s, x);
    set_bit(tt, x);
    const Elem xi = g.inv(x);
    for (Elem e : elems_) {
      const Elem ei = g.inv(e);
      const Elem xe = g.mul(x, e), ex = g.mul(e, x);
      set_bit(ss, xe);
      set_bit(ss, ex);
      set_bit(tt, xe);
      set_bit(tt, ex);
      set_bit(tt, g.mul(x, ei));
      set_bit(tt, g.mul(e, xi));
      set_bit(tt, g.mul(xi, e));
      set_bit(tt, g.mul(ei, x));
    }
    for (Elem y : t_->roots[x]) set_bit(r, y);
  }

  const std::vector<Elem>& elements() const noexcept { return elems_; }
  Word* slot(Slot which) { return frame(depth_) + which * t_->words; }
  const Word* slot(Slot which) const { return frame(depth_) + which * t_->words; }

  // T(S) u sqrt(S) = G.
  bool locally_maximal() const {
    const Word* tt = slot(kT);
    const Word* r = slot(kR);
    for (std::size_t i = 0; i < t_->words; ++i)
      if ((tt[i] | r[i]) != t_->all[i]) return false;
    return true;
  }
  // {1} u S u SS = G.
  bool fills() const {
    const Word* s = slot(kS);
    const Word* ss = slot(kSS);
    for (std::size_t i = 0; i < t_->words; ++i) {
      const Word cov = s[i] | ss[i] | (i == 0 ? Word{1} : Word{0});
      if (cov != t_->all[i]) return false;
    }
    return true;
  }
  bool inverse_property() const {
    const FiniteGroup& g = *t_->g;
    const Word* s = slot(kS);
    const Word* ss = slot(kSS);
    const Word* r = slot(kR);
    for (Elem a : elems_) {
      const Elem ai = g.inv(a);
      if (!test_bit(s, ai) && !test_bit(ss, ai) && !test_bit(r, ai)) return false;
    }
    return true;
  }
  // out = mask \ (T(S) u sqrt(S)).
  void addable(const Word* mask, Word* out) const {
    const Word* tt = slot(kT);
    const Word* r = slot(kR);
    for (std::size_t i = 0; i < t_->words; ++i) out[i] = mask[i] & ~(tt[i] | r[i]);
  }

 private:
  Word* frame(std::size_t d) { return buf_.data() + d * kSlots * t_->words; }
  const Word* frame(std::size_t d) const { return buf_.data() + d * kSlots * t_->words; }

  const SearchTables* t_;
  std::vector<Word> buf_;
  std::size_t depth_ = 0;
  std::vector<Elem> elems_;
};

inline std::size_t popcount(const Word* w, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(w[i]));
  return c;
}

inline Elem nth_bit(const Word* w, std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = static_cast<std::size_t>(std::popcount(w[i]));
    if (k < c) {
      Word x = w[i];
      for (std::size_t j = 0; j < k; ++j) x &= x - 1;
      return static_cast<Elem>(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
    }
    k -= c;
  }
  return 0;
}

inline ElemSet to_elemset(const FiniteGroup& g, const std::vector<Elem>& elems) { return ElemSet(g, elems); }

using Triple = std::array<Elem, 3>;

// Lexicographically least member of each orbit of product-free 3-subsets of
// `pool` under the group generated by `gens`. The pool must be invariant
// under every generator.
inline std::vector<Triple> triple_orbit_minima(const FiniteGroup& g, const std::vector<Elem>& pool,
                                               const std::vector<std::vector<Elem>>& gens) {
  const std::size_t m = pool.size();
  std::vector<std::uint32_t> pos(g.order(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < m; ++i) pos[pool[i]] = static_cast<std::uint32_t>(i);
  auto pf = [&](Elem a, Elem b, Elem c) {
    const std::array<Elem, 3> s{a, b, c};
    for (Elem x : s)
      for (Elem y : s) {
        const Elem p = g.mul(x, y);
        if (p == a || p == b || p == c) return false;
      }
    return true;
  };
  // Dense index of i < j < k over pool positions.
  auto rank = [](std::uint64_t i, std::uint64_t j, std::uint64_t k) {
    return i + j * (j - 1) / 2 + k * (k - 1) * (k - 2) / 6;
  };
  const std::uint64_t total = m < 3 ? 0 : rank(0, 0, m);
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(total, kNone);  // kNone: not product-free
  std::vector<Triple> triples;
  for (std::size_t k = 2; k < m; ++k)
    for (std::size_t j = 1; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (pf(pool[i], pool[j], pool[k])) parent[rank(i, j, k)] = static_cast<std::uint32_t>(rank(i, j, k));

  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& p : gens) {
    for (std::size_t k = 2; k < m; ++k)
      for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          const auto r = static_cast<std::uint32_t>(rank(i, j, k));
          if (parent[r] == kNone) continue;
          std::array<std::uint32_t, 3> im{pos[p[pool[i]]], pos[p[pool[j]]], pos[p[pool[k]]]};
          std::sort(im.begin(), im.end());
          const auto q = static_cast<std::uint32_t>(rank(im[0], im[1], im[2]));
          const auto a = find(r), b = find(q);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
  }
  // Roots are the smallest rank in each class, which is the least triple
  // only in colex order; collect every class member and take the lex least.
  std::vector<Triple> best(total);
  std::vector<bool> has(total, false);
  for (std::size_t k = 2; k < m; ++k)
    for (std::size_t j = 1; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const auto r = static_cast<std::uint32_t>(rank(i, j, k));
        if (parent[r] == kNone) continue;
        std::array<Elem, 3> t{pool[i], pool[j], pool[k]};
        std::sort(t.begin(), t.end());
        const auto root = find(r);
        if (!has[root] || t < best[root]) {
          best[root] = t;
          has[root] = true;
        }
      }
  for (std::uint64_t r = 0; r < total; ++r)
    if (has[r]) triples.push_back(best[r]);
  std::sort(triples.begin(), triples.end());
  return triples;
}

inline std::vector<Elem> nonidentity_elements(const FiniteGroup& g) {
  std::vector<Elem> v(g.order() - 1);
  std::iota(v.begin(), v.end(), Elem{1});
  return v;
}

}  // namespace detail

// One lexicographically least representative per Aut(G)-orbit of
// product-free 3-element sets. The orbits are computed from auts.generators,
// which generate all of Aut(G) even when the permutation list was capped.
inline std::vector<ElemSet> orbit_representatives_triples(const FiniteGroup& g, const Automorphisms& auts) {
  std::vector<ElemSet> out;
  for (const auto& t : detail::triple_orbit_minima(g, detail::nonidentity_elements(g), auts.generators))
    out.emplace_back(g, std::span<const Elem>(t));
  return out;
}

// Algorithm of repeated random greedy extension: each restart grows S by
// uniform picks from its addable set until S is locally maximal, and returns
// S if it does not fill G. Returns nothing when the budget runs out, which
// says nothing about whether G is filled.
inline std::optional<ElemSet> random_nonfilling_lmpfs(const FiniteGroup& g, const SearchConfig& cfg,
                                                      SearchStats* stats = nullptr) {
  cfg.validate();
  if (g.order() < 2) throw PreconditionViolated("random_nonfilling_lmpfs: group must have order >= 2");
  const auto start = std::chrono::steady_clock::now();
  const auto seed_elem = detail::resolve_involution_seed(g, cfg.involution_seed);
  detail::SearchTables tables(g);
  detail::SetStack stack(tables, 0);
  std::vector<detail::Word> nonid = tables.all;
  nonid[0] &= ~detail::Word{1};
  std::vector<detail::Word> f(tables.words);
  SearchStats local;
  std::optional<ElemSet> found;
  for (std::size_t r = 0; r < cfg.max_restarts; ++r) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r > 0 && elapsed >= cfg.time_budget) break;
    ++local.restarts;
    auto rng = restart_stream(cfg.rng_seed, r);
    stack.reset();
    if (seed_elem) stack.add(*seed_elem);
    for (;;) {
      stack.addable(nonid.data(), f.data());
      const std::size_t count = detail::popcount(f.data(), tables.words);
      if (count == 0) break;
      stack.add(detail::nth_bit(f.data(), tables.words, uniform_below(rng, count)));
      ++local.sets_extended;
    }
    ++local.lmpfs_examined;
    if (!stack.inverse_property()) ++local.inverse_property_violations;
    if (!stack.fills()) {
      ElemSet s = detail::to_elemset(g, stack.elements());
      const auto report = verify_witness(g, s);
      if (!report.non_filling_lmpfs()) throw InternalCheckFailed("random search produced an invalid witness");
      found = std::move(s);
      break;
    }
  }
  local.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (stats) *stats += local;
  return found;
}

namespace detail {

// Depth-first extension of a product-free set by elements of a candidate
// set F, in increasing index order, testing each maximal extension.
class ExtendSearch {
 public:
  ExtendSearch(const SearchTables& t, const std::vector<Word>& pool, bool prune, bool collect_all)
      : t_(&t), pool_(pool), prune_(prune), collect_all_(collect_all), stack_(t, t.n + 1),
        fbuf_((t.n + 2) * t.words, 0) {}

  // Examines every locally maximal extension of `start` (which must be
  // product-free). Returns false if a non-filling set stopped the search.
  bool run(std::span<const Elem> start) {
    stack_.reset();
    for (Elem e : start) stack_.add(e);
    stack_.addable(pool_.data(), fbuf_.data());
    return node(0);
  }

  SearchStats stats;
  std::vector<std::vector<Elem>> witnesses;

 private:
  bool node(std::size_t depth) {
    ++stats.sets_extended;
    if (prune_ && stack_.fills()) return true;
    const std::size_t w = t_->words;
    const Word* f = fbuf_.data() + depth * w;
    Word* next = fbuf_.data() + (depth + 1) * w;
    bool any = false;
    for (std::size_t i = 0; i < w; ++i) {
      Word bits = f[i];
      while (bits) {
        any = true;
        const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
        bits &= bits - 1;
        const Elem x = static_cast<Elem>(i * 64 + b);
        stack_.push(x);
        // {f in F : f > x} minus T(S') u sqrt(S').
        stack_.addable(f, next);
        for (std::size_t j = 0; j < i; ++j) next[j] = 0;
        next[i] &= ~((Word{2} << b) - 1);
        const bool cont = node(depth + 1);
        stack_.pop();
        if (!cont) return false;
      }
    }
    if (!any) return leaf();
    return true;
  }

  bool leaf() {
    if (!stack_.locally_maximal()) return true;
    ++stats.lmpfs_examined;
    if (!stack_.inverse_property()) ++stats.inverse_property_violations;
    if (stack_.fills()) return true;
    std::vector<Elem> s = stack_.elements();
    std::sort(s.begin(), s.end());
    witnesses.push_back(std::move(s));
    return collect_all_;
  }

  const SearchTables* t_;
  const std::vector<Word>& pool_;
  bool prune_;
  bool collect_all_;
  SetStack stack_;
  std::vector<Word> fbuf_;
};

}  // namespace detail

// Exhaustive search over locally maximal product-free sets. Sets of size 1
// and 2 are tested directly; larger ones are reached by extending one
// representative of each automorphism orbit of product-free triples.
inline Verdict exhaustive_filled_check(const FiniteGroup& g, const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.order();
  if (n > cfg.exhaustive_cap)
    throw ExhaustiveCapExceeded("order " + std::to_string(n) + " exceeds exhaustive cap " +
                                std::to_string(cfg.exhaustive_cap));
  if (n >= kExhaustiveOptInOrder && !cfg.exhaustive_opt_in)
    throw ExhaustiveCapExceeded("exhaustive search at order " + std::to_string(n) + " requires opt-in");
  const auto start = std::chrono::steady_clock::now();

  Verdict v;
  const auto z = detail::resolve_involution_seed(g, cfg.involution_seed);
  if (z) v.rule_chain.push_back("involution-restricted");
  v.rule_chain.push_back("exhaustive");

  detail::SearchTables tables(g);
  // Candidate elements: everything but 1, or only involutions when restricted.
  std::vector<Elem> pool;
  for (std::size_t x = 1; x < n; ++x)
    if (!z || g.is_involution(static_cast<Elem>(x))) pool.push_back(static_cast<Elem>(x));
  std::vector<detail::Word> pool_bits(tables.words, 0);
  for (Elem e : pool) detail::set_bit(pool_bits.data(), e);

  std::set<std::vector<Elem>> found;
  auto record = [&](std::vector<Elem> s) { found.insert(std::move(s)); };
  auto done = [&] { return !found.empty() && !cfg.collect_all; };

  // Sets of size 1 and 2.
  {
    detail::SetStack stack(tables, 2);
    auto test_current = [&] {
      ++v.stats.sets_extended;
      if (!stack.locally_maximal()) return;
      ++v.stats.lmpfs_examined;
      if (!stack.inverse_property()) ++v.stats.inverse_property_violations;
      if (!stack.fills()) {
        auto s = stack.elements();
        std::sort(s.begin(), s.end());
        record(std::move(s));
      }
    };
    for (std::size_t i = 0; i < pool.size() && !done(); ++i) {
      const Elem a = pool[i];
      if (z && a != *z) continue;
      stack.reset();
      stack.add(a);
      test_current();
    }
    for (std::size_t i = 0; i < pool.size() && !done(); ++i)
      for (std::size_t j = i + 1; j < pool.size() && !done(); ++j) {
        const Elem a = pool[i], b = pool[j];
        if (z && a != *z && b != *z) continue;
        const Elem prods[] = {g.mul(a, a), g.mul(a, b), g.mul(b, a), g.mul(b, b)};
        if (std::any_of(std::begin(prods), std::end(prods), [&](Elem p) { return p == a || p == b; })) continue;
        stack.reset();
        stack.add(a);
        stack.add(b);
        test_current();
      }
  }

  if (!done()) {
    std::vector<std::vector<Elem>> gens;
    if (cfg.orbit_reduction) gens = automorphism_group(g, 1).generators;
    auto triples = detail::triple_orbit_minima(g, pool, gens);
    if (z)
      std::erase_if(triples, [&](const detail::Triple& t) { return std::find(t.begin(), t.end(), *z) == t.end(); });

    const std::size_t width = std::max<std::size_t>(1, std::min<std::size_t>(cfg.parallel_width, triples.size()));
    if (width == 1) {
      detail::ExtendSearch search(tables, pool_bits, cfg.filling_prune, cfg.collect_all);
      for (const auto& t : triples) {
        ++v.stats.orbits_examined;
        const bool cont = search.run(t);
        for (auto& w : search.witnesses) record(std::move(w));
        search.witnesses.clear();
        if (!cont) break;
      }
      v.stats += search.stats;
    } else {
      // Workers take triples in index order. The reported witness comes from
      // the lowest-indexed triple with one, as in the sequential run.
      constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
      std::atomic<std::size_t> next{0};
      std::atomic<std::size_t> best{kNone};
      std::vector<std::vector<std::vector<Elem>>> per_triple(triples.size());
      std::mutex stats_mu;
      auto worker = [&] {
        detail::ExtendSearch search(tables, pool_bits, cfg.filling_prune, cfg.collect_all);
        std::uint64_t examined = 0;
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= triples.size() || i > best.load()) break;
          ++examined;
          search.run(triples[i]);
          if (!search.witnesses.empty()) {
            per_triple[i] = std::move(search.witnesses);
            search.witnesses.clear();
            if (!cfg.collect_all) {
              std::size_t cur = best.load();
              while (i < cur && !best.compare_exchange_weak(cur, i)) {
              }
            }
          }
        }
        std::lock_guard lock(stats_mu);
        v.stats += search.stats;
        v.stats.orbits_examined += examined;
      };
      std::vector<std::jthread> pool_threads;
      for (std::size_t w = 0; w < width; ++w) pool_threads.emplace_back(worker);
      pool_threads.clear();
      if (cfg.collect_all) {
        for (auto& ws : per_triple)
          for (auto& w : ws) record(std::move(w));
      } else if (best.load() != kNone) {
        record(std::move(per_triple[best.load()].front()));
      }
    }
  }

  if (found.empty()) {
    v.outcome = Outcome::Filled;
  } else {
    v.outcome = Outcome::NotFilled;
    // First set found: the small-set phase runs in index order, then triples.
    for (const auto& s : found) v.all_witnesses.emplace_back(g, s);
    v.witness = v.all_witnesses.front();
    if (!cfg.collect_all) v.all_witnesses.clear();
    for (const auto& w : cfg.collect_all ? v.all_witnesses : std::vector<ElemSet>{*v.witness})
      if (!verify_witness(g, w).non_filling_lmpfs())
        throw InternalCheckFailed("exhaustive search produced an invalid witness");
  }
  v.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

}  // namespace filled
