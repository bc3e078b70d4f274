#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "filled/automorphism.hpp"
#include "filled/build.hpp"
#include "filled/errors.hpp"
#include "filled/search.hpp"
#include "filled/spec.hpp"
#include "filled/structure.hpp"

namespace filled {

inline constexpr std::size_t kTableMaxOrder = 32;

// Filled groups of order at most 32.
inline const std::vector<std::string>& known_filled_table() {
  static const std::vector<std::string> table = {
      "EA(2)", "EA(4)", "EA(8)",  "EA(16)",  "EA(32)",    "C(3)",  "C(5)",  "D(6)",
      "D(8)",  "D(10)", "D(12)",  "D(14)",   "D(8)xC(2)", "D(22)", "ESM(32)",
  };
  return table;
}

inline std::vector<GroupSpec> known_filled_members(std::uint64_t order) {
  if (order > kTableMaxOrder)
    throw OrderOutOfRange("known filled table covers orders up to " + std::to_string(kTableMaxOrder));
  std::vector<GroupSpec> out;
  for (const auto& text : known_filled_table()) {
    auto spec = parse_group_spec(text);
    if (spec.order() == order) out.push_back(std::move(spec));
  }
  return out;
}

namespace detail {

struct TableEntry {
  GroupPtr group;
  GroupFingerprint print;
};

inline const std::vector<TableEntry>& table_groups() {
  static const std::vector<TableEntry> entries = [] {
    std::vector<TableEntry> v;
    for (const auto& text : known_filled_table()) {
      auto g = build_group(text).group;
      auto print = fingerprint(*g);
      v.push_back({std::move(g), std::move(print)});
    }
    return v;
  }();
  return entries;
}

inline bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// n = 2^k p with k > 0 and p an odd prime.
inline bool is_two_power_times_prime(std::uint64_t n) {
  if (n % 2 != 0) return false;
  while (n % 2 == 0) n /= 2;
  return is_odd_prime(n);
}

inline bool is_small_filled_dihedral(std::size_t order) {
  return order == 6 || order == 8 || order == 10 || order == 12 || order == 14 || order == 22;
}

// Witness for G from a witness for G/N: the full preimage.
inline ElemSet lift_witness(const FiniteGroup& g, const std::vector<Elem>& projection, const ElemSet& w) {
  ElemSet out(g);
  for (std::size_t a = 0; a < g.order(); ++a)
    if (w.contains(projection[a])) out.insert(static_cast<Elem>(a));
  return out;
}

}  // namespace detail

// Membership up to isomorphism.
inline bool in_known_filled_table(const FiniteGroup& g) {
  if (g.order() > kTableMaxOrder) return false;
  const auto print = fingerprint(g);
  for (const auto& e : detail::table_groups())
    if (e.print == print && find_isomorphism(*e.group, g)) return true;
  return false;
}

struct ClassifierFlags {
  bool use_2kp_shortcut = true;
  bool exhaustive_opt_in = false;
  // Decide orders up to 32 by the table of known filled groups.
  bool use_table = true;
  // Skip the table and every structural rule; decide by search alone.
  bool pure_search = false;
  // For rule-based negative verdicts, search for a witness as well.
  bool attach_witness = false;
  SearchConfig search;
};

class Classifier {
 public:
  explicit Classifier(ClassifierFlags flags) : flags_(std::move(flags)) {
    flags_.search.exhaustive_opt_in = flags_.search.exhaustive_opt_in || flags_.exhaustive_opt_in;
    flags_.search.validate();
  }

  const ClassifierFlags& flags() const noexcept { return flags_; }

  Verdict classify(const GroupPtr& gp) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = decide(gp);
    if (flags_.attach_witness && v.outcome == Outcome::NotFilled && !v.witness) find_witness(*gp, v);
    v.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return v;
  }

 private:
  struct MemoEntry {
    GroupPtr group;
    Verdict verdict;
  };

  static Verdict rule(Outcome o, std::string tag) {
    Verdict v;
    v.outcome = o;
    v.rule_chain.push_back(std::move(tag));
    return v;
  }

  // Structural shortcuts applied before the normal-subgroup loop. Exceptions
  // named by the underlying theorems fall through instead of firing.
  std::optional<Verdict> simple_rules(const FiniteGroup& g) const {
    const std::size_t n = g.order();
    const auto flags = structure_predicates(g);
    if (n % 2 == 1) {
      if (n != 3 && n != 5) return rule(Outcome::NotFilled, "odd-order");
      return std::nullopt;
    }
    if (flags.is_elementary_abelian_2) return rule(Outcome::Filled, "elementary-abelian");
    if (is_power_of_two(n) && n > 128) return rule(Outcome::NotFilled, "2-power-order");
    if (flags_.use_2kp_shortcut && detail::is_two_power_times_prime(n) &&
        !(flags.is_dihedral && detail::is_small_filled_dihedral(n)))
      return rule(Outcome::NotFilled, "2kp");
    if (flags.is_abelian) return rule(Outcome::NotFilled, "abelian");
    if (flags.is_dihedral) {
      if (!detail::is_small_filled_dihedral(n)) return rule(Outcome::NotFilled, "dihedral");
      return std::nullopt;
    }
    if (flags.is_generalized_quaternion) return rule(Outcome::NotFilled, "generalized-quaternion");
    return std::nullopt;
  }

  Verdict decide(const GroupPtr& gp) {
    const FiniteGroup& g = *gp;
    // The empty set is the only product-free set and it fills vacuously.
    if (g.order() == 1) return rule(Outcome::Filled, "trivial-group");
    if (flags_.pure_search) return search(g, Verdict{});

    if (flags_.use_table && g.order() <= kTableMaxOrder) {
      if (in_known_filled_table(g)) return rule(Outcome::Filled, "table");
      Verdict v = rule(Outcome::NotFilled, "table");
      // Cite the structural rule that agrees, when one applies.
      if (auto r = simple_rules(g)) {
        if (r->outcome != Outcome::NotFilled) throw InternalCheckFailed("table and structural rules disagree");
        v.rule_chain.push_back(r->rule_chain.front());
      }
      return v;
    }

    if (auto r = simple_rules(g)) return *r;

    Verdict v;
    const auto normals = normal_subgroups(g);
    const std::size_t n = g.order();
    for (auto it = normals.rbegin(); it != normals.rend(); ++it) {
      const ElemSet& nsub = *it;
      if (nsub.size() == 1 || nsub.size() == n) continue;
      const std::size_t index = n / nsub.size();
      if (index == 3) return rule(Outcome::NotFilled, "normal-index-3");
      if (index == 5) {
        bool all_in = true;
        for (std::size_t a = 0; a < n && all_in; ++a)
          if (g.elem_order(static_cast<Elem>(a)) == 5 && !nsub.contains(static_cast<Elem>(a))) all_in = false;
        if (!all_in) return rule(Outcome::NotFilled, "normal-index-5");
      }
      const auto q = quotient(gp, nsub);
      const Verdict qv = classify_memo(q.group);
      v.stats += qv.stats;
      if (qv.outcome == Outcome::NotFilled) {
        v.outcome = Outcome::NotFilled;
        v.rule_chain.push_back("quotient");
        v.quotient = q.group;
        if (qv.witness) v.witness = detail::lift_witness(g, q.projection, *qv.witness);
        if (v.witness && !verify_witness(g, *v.witness).non_filling_lmpfs())
          throw InternalCheckFailed("lifted witness does not verify");
        return v;
      }
    }
    return search(g, std::move(v));
  }

  // Random search, then exhaustive search if permitted.
  Verdict search(const FiniteGroup& g, Verdict v) {
    if (auto w = random_nonfilling_lmpfs(g, flags_.search, &v.stats)) {
      v.outcome = Outcome::NotFilled;
      v.witness = std::move(w);
      v.rule_chain.push_back("nfs");
      return v;
    }
    try {
      Verdict ex = exhaustive_filled_check(g, flags_.search);
      v.outcome = ex.outcome;
      v.witness = std::move(ex.witness);
      v.rule_chain.insert(v.rule_chain.end(), ex.rule_chain.begin(), ex.rule_chain.end());
      v.stats += ex.stats;
    } catch (const ExhaustiveCapExceeded&) {
      v.outcome = Outcome::Undecided;
      v.rule_chain.push_back("undecided-at-budget");
    }
    return v;
  }

  void find_witness(const FiniteGroup& g, Verdict& v) {
    if (auto w = random_nonfilling_lmpfs(g, flags_.search, &v.stats)) {
      v.witness = std::move(w);
      v.rule_chain.push_back("witness-search");
      return;
    }
    try {
      Verdict ex = exhaustive_filled_check(g, flags_.search);
      v.stats += ex.stats;
      if (ex.outcome == Outcome::Filled) throw InternalCheckFailed("rule verdict contradicted by exhaustive search");
      v.witness = std::move(ex.witness);
      v.rule_chain.push_back("witness-search");
    } catch (const ExhaustiveCapExceeded&) {
    }
  }

  Verdict classify_memo(const GroupPtr& gp) {
    const auto print = fingerprint(*gp);
    {
      std::lock_guard lock(mu_);
      auto [lo, hi] = memo_.equal_range(print);
      for (auto it = lo; it != hi; ++it) {
        const auto iso = find_isomorphism(*it->second.group, *gp);
        if (!iso) continue;
        Verdict v = it->second.verdict;
        v.stats = {};
        if (v.witness) {
          ElemSet mapped(*gp);
          v.witness->for_each([&](Elem e) { mapped.insert((*iso)[e]); });
          v.witness = std::move(mapped);
        }
        return v;
      }
    }
    Verdict v = classify(gp);
    std::lock_guard lock(mu_);
    memo_.emplace(print, MemoEntry{gp, v});
    return v;
  }

  ClassifierFlags flags_;
  std::mutex mu_;
  std::multimap<GroupFingerprint, MemoEntry> memo_;
};

inline Verdict classify_filled(const GroupPtr& g, const ClassifierFlags& flags = {}) {
  return Classifier(flags).classify(g);
}

}  // namespace filled
