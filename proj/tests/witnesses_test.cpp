#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "filled/build.hpp"
#include "filled/pfs.hpp"
#include "filled/search.hpp"
#include "filled/witnesses.hpp"
#include "test_support.hpp"

using namespace filled;

namespace {

std::set<std::string> label_set(const ElemSet& s) {
  const auto v = s.labels();
  return {v.begin(), v.end()};
}

// Product-free, locally maximal and non-filling by the brute-force oracle.
void expect_oracle_witness(const FiniteGroup& g, const ElemSet& s) {
  const auto sub = s.elements();
  EXPECT_TRUE(oracle::product_free(g, sub));
  EXPECT_TRUE(oracle::locally_maximal(g, sub));
  EXPECT_FALSE(oracle::fills(g, sub));
}

bool covered(const FiniteGroup& g, const ElemSet& s, Elem e) {
  if (s.contains(e)) return true;
  bool hit = false;
  s.for_each([&](Elem a) { s.for_each([&](Elem b) { hit = hit || g.mul(a, b) == e; }); });
  return hit;
}

}  // namespace

TEST(DihedralWitness, ThirteenAndFifteen) {
  const auto w13 = dihedral_witness(13);
  EXPECT_EQ(w13.family, "5k-2");
  EXPECT_EQ(label_set(w13.set), (std::set<std::string>{"x^3", "x^5", "x^7", "y", "x*y", "x^2*y"}));
  EXPECT_EQ(w13.group->order(), 26u);

  const auto p15 = dihedral_witness_plan(15);
  EXPECT_EQ(p15.family, DihedralFamily::FiveK);
  EXPECT_EQ(p15.k, 3u);
  const auto w15 = dihedral_witness(15);
  EXPECT_EQ(label_set(w15.set), (std::set<std::string>{"x^3", "x^5", "x^7", "y", "x*y", "x^2*y"}));
  expect_oracle_witness(*w15.group, w15.set);
}

TEST(DihedralWitness, Seventeen) {
  const auto w = dihedral_witness(17);
  EXPECT_EQ(w.family, "5k+2");
  EXPECT_EQ(label_set(w.set), (std::set<std::string>{"x^3", "x^5", "x^7", "x^9", "y", "x*y", "x^2*y"}));
  expect_oracle_witness(*w.group, w.set);

  // The 5k+2 set with k = 3 is product-free but can be enlarged.
  const FiniteGroup& g = *w.group;
  std::vector<Elem> u;
  for (const char* l : {"x", "x^3", "x^5", "x^7", "y"}) u.push_back(*g.find_label(l));
  std::sort(u.begin(), u.end());
  EXPECT_TRUE(oracle::product_free(g, u));
  EXPECT_FALSE(oracle::locally_maximal(g, u));
}

TEST(DihedralWitness, Errors) {
  EXPECT_THROW(dihedral_witness(14), DomainError);
  EXPECT_THROW(dihedral_witness(11), DomainError);
  EXPECT_THROW(dihedral_witness_plan(0), DomainError);
}

TEST(DihedralWitness, SweepAllFamilies) {
  std::set<std::string> families;
  for (std::uint64_t n = 13; n <= 101; n += 2) {
    SCOPED_TRACE(n);
    const auto plan = dihedral_witness_plan(n);
    const auto w = dihedral_witness(n);
    families.insert(w.family);
    const FiniteGroup& g = *w.group;
    ASSERT_EQ(g.order(), 2 * n);
    expect_oracle_witness(g, w.set);
    EXPECT_TRUE(w.report.non_filling_lmpfs());
    ASSERT_TRUE(w.excluded);
    EXPECT_EQ(g.label(*w.excluded), "x^" + std::to_string(plan.excluded_exponent));
    EXPECT_FALSE(covered(g, w.set, *w.excluded));

    // n = family(k), k odd, with the lower bound on k.
    const std::uint64_t k = plan.k;
    EXPECT_EQ(k % 2, 1u);
    const std::size_t a = plan.rotation_exponents.size(), b = plan.reflection_exponents.size();
    switch (plan.family) {
      case DihedralFamily::FiveKMinus2:
        EXPECT_EQ(n, 5 * k - 2);
        EXPECT_GE(k, 3u);
        EXPECT_EQ(a, k);
        EXPECT_EQ(b, k);
        break;
      case DihedralFamily::FiveK:
        EXPECT_EQ(n, 5 * k);
        EXPECT_GE(k, 3u);
        EXPECT_EQ(a, k);
        EXPECT_EQ(b, k);
        break;
      case DihedralFamily::FiveKPlus2:
        EXPECT_EQ(n, 5 * k + 2);
        EXPECT_GE(k, 3u);
        if (n != 17) {
          EXPECT_EQ(a, k + 1);
          EXPECT_EQ(b, k - 2);
        }
        break;
      case DihedralFamily::FiveKMinus6:
        EXPECT_EQ(n, 5 * k - 6);
        EXPECT_GE(k, 5u);
        EXPECT_EQ(a, k - 1);
        EXPECT_EQ(b, k - 2);
        break;
      case DihedralFamily::FiveKMinus4:
        EXPECT_EQ(n, 5 * k - 4);
        EXPECT_GE(k, 5u);
        EXPECT_EQ(a, k);
        EXPECT_EQ(b, k - 2);
        break;
    }
    EXPECT_EQ(w.set.size(), a + b);
  }
  EXPECT_EQ(families.size(), 5u);
}

// For the 5k-2 family the reflections of SS are exactly the reflections
// outside S.
TEST(DihedralWitness, ReflectionsOfSquareForFiveKMinusTwo) {
  for (std::uint64_t n = 13; n <= 101; n += 10) {
    SCOPED_TRACE(n);
    const auto w = dihedral_witness(n);
    ASSERT_EQ(w.family, "5k-2");
    const auto ss = product_set(w.set, w.set);
    const auto [a_s, b_s] = dihedral_split(w.set);
    const auto [a_ss, b_ss] = dihedral_split(ss);
    ElemSet all_reflections(*w.group);
    for (std::size_t i = n; i < 2 * n; ++i) all_reflections.insert(static_cast<Elem>(i));
    EXPECT_EQ(b_ss, all_reflections - b_s);
    EXPECT_EQ(a_s | b_s, w.set);
  }
}

// The printed 5k-6 set coincides with the 5k-2 shape and is not product-free.
TEST(DihedralWitness, PrintedFiveKMinusSixShapeFails) {
  for (std::uint64_t n = 19; n <= 99; n += 10) {
    const std::uint64_t k = (n + 6) / 5;
    const auto g = build_group("D(" + std::to_string(2 * n) + ")").group;
    std::vector<Elem> v;
    for (std::uint64_t e = k; e <= 3 * k - 2; e += 2) v.push_back(static_cast<Elem>(e));
    for (std::uint64_t e = 0; e < k; ++e) v.push_back(static_cast<Elem>(n + e));
    std::sort(v.begin(), v.end());
    EXPECT_FALSE(oracle::product_free(*g, v)) << n;
  }
}

TEST(D44Witness, LiteralSet) {
  const auto w = d44_witness();
  EXPECT_EQ(w.group->order(), 44u);
  EXPECT_EQ(w.set.size(), 7u);
  EXPECT_TRUE(w.report.product_free);
  EXPECT_EQ(w.report.locally_maximal, std::optional<bool>(true));
  EXPECT_EQ(w.report.fills, std::optional<bool>(false));
  expect_oracle_witness(*w.group, w.set);
  ASSERT_TRUE(w.excluded);
  EXPECT_FALSE(covered(*w.group, w.set, *w.excluded));
}

TEST(ExtraspecialWitness, OrderFiveTwelveBothTypes) {
  for (const char* spec : {"ESP(512)", "ESM(512)"}) {
    SCOPED_TRACE(spec);
    const auto built = build_group(spec);
    ASSERT_TRUE(built.extraspecial);
    const auto& fr = *built.extraspecial;
    const FiniteGroup& g = *fr.group;
    const auto w = extraspecial_witness(fr);
    EXPECT_TRUE(w.report.non_filling_lmpfs());
    expect_oracle_witness(g, w.set);
    ASSERT_TRUE(w.excluded);
    EXPECT_EQ(*w.excluded, fr.q_gens->first);
    EXPECT_FALSE(covered(g, w.set, fr.q_gens->first));

    const auto parts = extraspecial_parts(fr);
    EXPECT_EQ(parts.x.size(), fr.k_kind == FactorKind::D8 ? 3u : 1u);
    EXPECT_EQ(parts.e.size(), g.order() / 4);
    std::size_t order4 = 0;
    for (std::size_t e = 0; e < g.order(); ++e)
      if (parts.e.contains(static_cast<Elem>(e)) && g.elem_order(static_cast<Elem>(e)) == 4) ++order4;
    EXPECT_EQ(2 * parts.u.size(), order4);
    EXPECT_EQ(w.set.size(), parts.x.size() + 2 * parts.u.size());

    // UUz contains E \ K.
    const auto uuz = product_set(product_set(parts.u, parts.u), ElemSet(g, {fr.z}));
    EXPECT_TRUE((parts.e - parts.k).is_subset_of(uuz));
  }
}

TEST(ExtraspecialWitness, FrameTooSmall) {
  for (const char* spec : {"ESP(128)", "ESM(128)", "ESM(32)", "ESP(8)"})
    EXPECT_THROW(extraspecial_witness(build_group(spec)), FrameTooSmall) << spec;
  EXPECT_THROW(extraspecial_witness(build_group("D(8)")), PreconditionViolated);
}

TEST(CentralC4Witness, HundredSeeds) {
  for (const char* spec : {"ESC4(16)", "ESC4(64)"}) {
    SCOPED_TRACE(spec);
    const auto built = build_group(spec);
    const auto& fr = *built.central_c4;
    const FiniteGroup& g = *fr.group;
    std::set<std::vector<Elem>> distinct;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto w = central_c4_witness(built, seed);
      EXPECT_EQ(w.seed, std::optional<std::uint64_t>(seed));
      EXPECT_TRUE(w.set.contains(fr.z));
      w.set.for_each([&](Elem e) { EXPECT_TRUE(g.is_involution(e)); });
      expect_oracle_witness(g, w.set);
      EXPECT_FALSE(covered(g, w.set, fr.x));
      distinct.insert(w.set.elements());
    }
    EXPECT_GT(distinct.size(), 1u);
    EXPECT_EQ(central_c4_witness(built, 7).set, central_c4_witness(built, 7).set);
  }
  EXPECT_THROW(central_c4_witness(build_group("D(8)xC(2)"), 1), NotCentralProductC4);
}

// Non-filling sets found by unrestricted random search in groups whose
// order-4 elements all square to one z contain z and only involutions.
TEST(InvolutionProperty, UnrestrictedRandomSearch) {
  for (const char* spec : {"ESC4(16)", "ESC4(64)", "ESP(32)", "ESP(128)", "ESM(128)", "Q(8)xC(2)"}) {
    SCOPED_TRACE(spec);
    const auto g = build_group(spec).group;
    const auto z = involution_core(*g);
    ASSERT_TRUE(z);
    int found = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SearchConfig cfg;
      cfg.rng_seed = seed;
      cfg.max_restarts = 2000;
      cfg.involution_seed = InvolutionSeed::Off;
      const auto w = random_nonfilling_lmpfs(*g, cfg);
      if (!w) continue;
      ++found;
      EXPECT_TRUE(w->contains(*z));
      w->for_each([&](Elem e) { EXPECT_TRUE(g->is_involution(e)); });
    }
    EXPECT_GT(found, 0);
  }
}
