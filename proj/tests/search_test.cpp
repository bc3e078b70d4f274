#include <gtest/gtest.h>

#include <random>
#include <set>

#include "filled/automorphism.hpp"
#include "filled/build.hpp"
#include "filled/search.hpp"
#include "test_support.hpp"

using namespace filled;

namespace {

GroupPtr grp(const std::string& spec) { return build_group(spec).group; }

SearchConfig quick(std::uint64_t seed = 1) {
  SearchConfig cfg;
  cfg.rng_seed = seed;
  cfg.max_restarts = 2000;
  cfg.time_budget = 30;
  return cfg;
}

std::set<oracle::Subset> as_subsets(const std::vector<ElemSet>& v) {
  std::set<oracle::Subset> out;
  for (const auto& s : v) out.insert(s.elements());
  return out;
}

// Union of the images of `sets` under every permutation in `perms`.
std::set<oracle::Subset> closure(const std::set<oracle::Subset>& sets, const std::vector<std::vector<Elem>>& perms) {
  std::set<oracle::Subset> out;
  for (const auto& s : sets)
    for (const auto& p : perms) {
      oracle::Subset t;
      for (Elem e : s) t.push_back(p[e]);
      std::sort(t.begin(), t.end());
      out.insert(t);
    }
  return out;
}

}  // namespace

TEST(VerifyWitness, Examples) {
  const auto d6 = grp("D(6)");
  ElemSet refl(*d6, {3, 4, 5});
  const auto r = verify_witness(*d6, refl);
  EXPECT_TRUE(r.product_free);
  EXPECT_EQ(r.locally_maximal, true);
  EXPECT_EQ(r.fills, true);

  const auto c5 = grp("C(5)");
  const auto bad = verify_witness(*c5, ElemSet(*c5, {1, 2}));
  EXPECT_FALSE(bad.product_free);
  EXPECT_FALSE(bad.locally_maximal.has_value());
  EXPECT_FALSE(bad.fills.has_value());
  EXPECT_FALSE(bad.non_filling_lmpfs());

  EXPECT_THROW(verify_witness(*c5, refl), GroupMismatch);
}

TEST(RandomSearch, FindsDihedral26Witness) {
  const auto g = grp("D(26)");
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    SearchStats st;
    const auto w = random_nonfilling_lmpfs(*g, quick(seed), &st);
    ASSERT_TRUE(w) << seed;
    EXPECT_TRUE(verify_witness(*g, *w).non_filling_lmpfs());
    EXPECT_TRUE(inverse_property_holds(*w));
    EXPECT_EQ(st.inverse_property_violations, 0u);
  }
}

TEST(RandomSearch, NoWitnessInElementaryAbelian) {
  const auto g = grp("EA(8)");
  auto cfg = quick();
  cfg.max_restarts = 500;
  SearchStats st;
  EXPECT_FALSE(random_nonfilling_lmpfs(*g, cfg, &st));
  EXPECT_EQ(st.restarts, 500u);
  EXPECT_EQ(st.lmpfs_examined, 500u);
}

TEST(RandomSearch, CyclicFourWitnessIsCentralSquare) {
  const auto g = grp("C(4)");
  const auto w = random_nonfilling_lmpfs(*g, quick(1));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, ElemSet(*g, {*g->find_label("x^2")}));
}

TEST(RandomSearch, DeterministicPerSeed) {
  const auto g = grp("D(30)");
  auto cfg = quick(1234);
  cfg.involution_seed = InvolutionSeed::Off;
  const auto a = random_nonfilling_lmpfs(*g, cfg);
  const auto b = random_nonfilling_lmpfs(*g, cfg);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(*a, *b);
}

TEST(RandomSearch, InvolutionSeedStartsFromCentre) {
  const auto built = build_group("ESM(32)");
  const auto z = built.extraspecial->z;
  auto cfg = quick(5);
  cfg.involution_seed = InvolutionSeed::On;
  cfg.max_restarts = 50;
  // ESM(32) is filled, so there is nothing to return; each restart must
  // still be well formed.
  SearchStats st;
  EXPECT_FALSE(random_nonfilling_lmpfs(*built.group, cfg, &st));
  EXPECT_EQ(st.inverse_property_violations, 0u);
  (void)z;
  EXPECT_THROW(random_nonfilling_lmpfs(*grp("D(10)"), cfg), PreconditionViolated);
}

TEST(RandomSearch, ConfigValidation) {
  auto cfg = quick();
  cfg.max_restarts = 0;
  EXPECT_THROW(random_nonfilling_lmpfs(*grp("C(4)"), cfg), DomainError);
  cfg = quick();
  cfg.time_budget = 0;
  EXPECT_THROW(random_nonfilling_lmpfs(*grp("C(4)"), cfg), DomainError);
  EXPECT_THROW(random_nonfilling_lmpfs(*grp("C(1)"), quick()), PreconditionViolated);
}

TEST(OrbitRepresentatives, EmptyCases) {
  for (const char* spec : {"C(4)", "C(3)"}) {
    const auto g = grp(spec);
    EXPECT_TRUE(orbit_representatives_triples(*g, automorphism_group(*g)).empty()) << spec;
  }
}

TEST(OrbitRepresentatives, MatchFullPermutationOracle) {
  for (const char* spec : {"EA(8)", "D(8)", "Q(8)", "C(7)", "C(4)xC(2)", "D(6)"}) {
    SCOPED_TRACE(spec);
    const auto g = grp(spec);
    const auto brute = oracle::brute_triple_orbit_minima(*g, oracle::brute_automorphisms(*g));
    const auto reps = orbit_representatives_triples(*g, automorphism_group(*g));
    EXPECT_EQ(as_subsets(reps), brute);
    EXPECT_EQ(reps.size(), brute.size());
  }
}

TEST(OrbitRepresentatives, CappedListStillReduces) {
  // Same orbits whether or not the permutation list was enumerated.
  for (const char* spec : {"D(12)", "EA(16)", "D(8)xC(2)"}) {
    const auto g = grp(spec);
    const auto full = automorphism_group(*g);
    const auto capped = automorphism_group(*g, 1);
    EXPECT_EQ(as_subsets(orbit_representatives_triples(*g, full)),
              as_subsets(orbit_representatives_triples(*g, capped)))
        << spec;
    if (full.complete) {
      EXPECT_EQ(as_subsets(orbit_representatives_triples(*g, full)),
                oracle::brute_triple_orbit_minima(*g, full.perms))
          << spec;
    }
  }
}

TEST(Exhaustive, Examples) {
  const auto d8 = grp("D(8)");
  const auto v8 = exhaustive_filled_check(*d8, quick());
  EXPECT_TRUE(v8.filled());
  EXPECT_FALSE(v8.witness);

  const auto c4 = grp("C(4)");
  const auto v4 = exhaustive_filled_check(*c4, quick());
  EXPECT_EQ(v4.outcome, Outcome::NotFilled);
  ASSERT_TRUE(v4.witness);
  EXPECT_EQ(*v4.witness, ElemSet(*c4, {*c4->find_label("x^2")}));
  EXPECT_EQ(v4.stats.orbits_examined, 0u);  // found before the triple phase

  const auto d18 = grp("D(18)");
  const auto v18 = exhaustive_filled_check(*d18, quick());
  EXPECT_EQ(v18.outcome, Outcome::NotFilled);
  ASSERT_TRUE(v18.witness);
  EXPECT_TRUE(verify_witness(*d18, *v18.witness).non_filling_lmpfs());
}

TEST(Exhaustive, CapAndOptIn) {
  auto cfg = quick();
  EXPECT_THROW(exhaustive_filled_check(*grp("C(64)"), cfg), ExhaustiveCapExceeded);
  EXPECT_THROW(exhaustive_filled_check(*grp("C(130)"), cfg), ExhaustiveCapExceeded);
  cfg.exhaustive_opt_in = true;
  EXPECT_THROW(exhaustive_filled_check(*grp("C(130)"), cfg), ExhaustiveCapExceeded);
  EXPECT_NO_THROW(exhaustive_filled_check(*grp("C(64)"), cfg));
}

TEST(Exhaustive, OrbitReductionDoesNotChangeVerdicts) {
  for (const auto& spec : oracle::groups_up_to(16)) {
    SCOPED_TRACE(spec);
    const auto g = grp(spec);
    auto on = quick();
    auto off = quick();
    off.orbit_reduction = false;
    const auto a = exhaustive_filled_check(*g, on);
    const auto b = exhaustive_filled_check(*g, off);
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_LE(a.stats.orbits_examined, b.stats.orbits_examined);
  }
}

TEST(Exhaustive, WitnessesMatchSubsetEnumeration) {
  for (const auto& spec : oracle::groups_up_to(16)) {
    SCOPED_TRACE(spec);
    const auto g = grp(spec);
    const auto naive = oracle::all_nonfilling_lmpfs(*g);
    for (auto seed : {InvolutionSeed::Off, InvolutionSeed::Auto}) {
      auto cfg = quick();
      cfg.collect_all = true;
      cfg.involution_seed = seed;
      cfg.orbit_reduction = false;
      const auto v = exhaustive_filled_check(*g, cfg);
      EXPECT_EQ(as_subsets(v.all_witnesses), naive);
      EXPECT_EQ(v.filled(), naive.empty());

      cfg.orbit_reduction = true;
      const auto reduced = exhaustive_filled_check(*g, cfg);
      EXPECT_EQ(closure(as_subsets(reduced.all_witnesses), automorphism_group(*g).perms), naive);
    }
  }
}

TEST(Exhaustive, FillingPruneKeepsWitnesses) {
  for (const char* spec : {"D(16)", "Q(12)", "C(4)*D(8)", "D(10)", "C(3)xC(3)"}) {
    const auto g = grp(spec);
    auto cfg = quick();
    cfg.collect_all = true;
    const auto pruned = exhaustive_filled_check(*g, cfg);
    cfg.filling_prune = false;
    const auto full = exhaustive_filled_check(*g, cfg);
    EXPECT_EQ(as_subsets(pruned.all_witnesses), as_subsets(full.all_witnesses)) << spec;
    EXPECT_LE(pruned.stats.sets_extended, full.stats.sets_extended);
  }
}

TEST(Exhaustive, InvolutionRestrictionProperty) {
  // In groups where every order-4 element squares to z, each non-filling
  // locally maximal product-free set contains z and consists of involutions.
  for (const auto& spec : oracle::groups_up_to(16)) {
    const auto g = grp(spec);
    const auto z = involution_core(*g);
    if (!z) continue;
    for (const auto& s : oracle::all_nonfilling_lmpfs(*g)) {
      EXPECT_TRUE(oracle::contains(s, *z)) << spec;
      for (Elem e : s) EXPECT_TRUE(g->is_involution(e)) << spec;
    }
  }
}

TEST(Exhaustive, DeterministicAndParallelAgree) {
  for (const char* spec : {"D(18)", "D(20)", "Q(16)", "C(3)xC(3)", "D(24)", "D(12)xC(2)"}) {
    SCOPED_TRACE(spec);
    const auto g = grp(spec);
    auto cfg = quick();
    cfg.involution_seed = InvolutionSeed::Off;
    const auto a = exhaustive_filled_check(*g, cfg);
    const auto b = exhaustive_filled_check(*g, cfg);
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_EQ(a.witness, b.witness);
    cfg.parallel_width = 4;
    const auto c = exhaustive_filled_check(*g, cfg);
    EXPECT_EQ(a.outcome, c.outcome);
    EXPECT_EQ(a.witness, c.witness);
  }
  // Filled verdicts too.
  const auto d22 = grp("D(22)");
  auto cfg = quick();
  cfg.parallel_width = 3;
  EXPECT_TRUE(exhaustive_filled_check(*d22, cfg).filled());
}

TEST(Exhaustive, InverseProperty) {
  for (const auto& spec : oracle::groups_up_to(24)) {
    const auto g = grp(spec);
    auto cfg = quick();
    cfg.collect_all = true;
    // Without the prune every locally maximal set is reached and checked.
    cfg.filling_prune = false;
    const auto v = exhaustive_filled_check(*g, cfg);
    EXPECT_EQ(v.stats.inverse_property_violations, 0u) << spec;
    EXPECT_GT(v.stats.lmpfs_examined, 0u) << spec;
    for (const auto& w : v.all_witnesses) EXPECT_TRUE(inverse_property_holds(w)) << spec;
  }
}

TEST(OrbitInvariance, AutomorphismsPreserveLocalMaximality) {
  std::mt19937_64 rng(31337);
  for (const auto& spec : oracle::groups_up_to(24)) {
    const auto g = grp(spec);
    const auto aut = automorphism_group(*g);
    ASSERT_TRUE(aut.complete);
    for (int trial = 0; trial < 100; ++trial) {
      const ElemSet s(*g, oracle::random_product_free(*g, rng));
      const bool lm = is_locally_maximal(s);
      for (const auto& p : aut.perms) {
        const ElemSet t = s.mapped(p);
        ASSERT_TRUE(is_product_free(t)) << spec;
        ASSERT_EQ(is_locally_maximal(t), lm) << spec;
      }
    }
  }
}
