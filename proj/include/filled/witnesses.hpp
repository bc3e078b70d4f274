#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filled/build.hpp"
#include "filled/elemset.hpp"
#include "filled/errors.hpp"
#include "filled/pfs.hpp"
#include "filled/rng.hpp"
#include "filled/search.hpp"
#include "filled/structure.hpp"

namespace filled {

// A non-filling locally maximal product-free set together with an element
// it misses.
struct Witness {
  GroupPtr group;
  ElemSet set;
  std::optional<Elem> excluded;
  WitnessReport report;
  std::optional<std::uint64_t> seed;
  std::string family;
};

namespace detail {

// Least non-identity element outside S u SS.
inline std::optional<Elem> first_uncovered(const ElemSet& s) {
  const ElemSet cover = s | product_set(s, s);
  for (std::size_t a = 1; a < s.group().order(); ++a)
    if (!cover.contains(static_cast<Elem>(a))) return static_cast<Elem>(a);
  return std::nullopt;
}

inline Witness finish_witness(GroupPtr g, ElemSet s, std::optional<Elem> excluded, std::string family,
                              std::optional<std::uint64_t> seed = std::nullopt) {
  Witness w{std::move(g), std::move(s), excluded, {}, seed, std::move(family)};
  w.report = verify_witness(*w.group, w.set);
  if (!w.report.non_filling_lmpfs()) throw InternalCheckFailed(w.family + " witness does not verify");
  if (!w.excluded) w.excluded = first_uncovered(w.set);
  const ElemSet cover = w.set | product_set(w.set, w.set);
  if (!w.excluded || *w.excluded == 0 || cover.contains(*w.excluded))
    throw InternalCheckFailed(w.family + " witness: designated element is covered by S u SS");
  return w;
}

}  // namespace detail

enum class DihedralFamily { FiveKMinus6, FiveKMinus4, FiveKMinus2, FiveK, FiveKPlus2 };

inline const char* family_name(DihedralFamily f) {
  switch (f) {
    case DihedralFamily::FiveKMinus6: return "5k-6";
    case DihedralFamily::FiveKMinus4: return "5k-4";
    case DihedralFamily::FiveKMinus2: return "5k-2";
    case DihedralFamily::FiveK: return "5k";
    case DihedralFamily::FiveKPlus2: return "5k+2";
  }
  return "?";
}

// Exponents of x in S (rotations x^i and reflections x^i y) for D(2n).
struct DihedralWitnessPlan {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  DihedralFamily family = DihedralFamily::FiveKMinus2;
  std::vector<std::uint64_t> rotation_exponents;
  std::vector<std::uint64_t> reflection_exponents;
  std::uint64_t excluded_exponent = 0;  // x^e lies outside S u SS
};

inline DihedralWitnessPlan dihedral_witness_plan(std::uint64_t n) {
  if (n % 2 == 0 || n < 13) throw DomainError("dihedral witness needs odd n >= 13");
  DihedralWitnessPlan p;
  p.n = n;
  // First and last rotation exponent, and the number of reflections.
  std::uint64_t lo = 0, hi = 0, refl = 0;
  switch (n % 10) {
    case 3:
      p.family = DihedralFamily::FiveKMinus2;
      p.k = (n + 2) / 5;
      lo = p.k, hi = 3 * p.k - 2, refl = p.k;
      break;
    case 5:
      p.family = DihedralFamily::FiveK;
      p.k = n / 5;
      lo = p.k, hi = 3 * p.k - 2, refl = p.k;
      break;
    case 7:
      p.family = DihedralFamily::FiveKPlus2;
      p.k = (n - 2) / 5;
      lo = p.k - 2, hi = 3 * p.k - 2, refl = p.k - 2;
      break;
    case 9:
      p.family = DihedralFamily::FiveKMinus6;
      p.k = (n + 6) / 5;
      lo = p.k - 2, hi = 3 * p.k - 6, refl = p.k - 2;
      break;
    default:  // 1
      p.family = DihedralFamily::FiveKMinus4;
      p.k = (n + 4) / 5;
      lo = p.k - 2, hi = 3 * p.k - 4, refl = p.k - 2;
      break;
  }
  p.excluded_exponent = 3 * p.k;
  if (n == 17) {
    // The 5k+2 shape with k = 3 is not locally maximal.
    lo = 3, hi = 9, refl = 3;
    p.excluded_exponent = 4;
  }
  for (std::uint64_t e = lo; e <= hi; e += 2) p.rotation_exponents.push_back(e);
  for (std::uint64_t e = 0; e < refl; ++e) p.reflection_exponents.push_back(e);
  return p;
}

// In D(2n), x^i has index i and x^i y has index n + i.
inline ElemSet dihedral_witness_set(const FiniteGroup& d2n, const DihedralWitnessPlan& p) {
  if (d2n.order() != 2 * p.n) throw GroupMismatch("plan is for a different dihedral group");
  ElemSet s(d2n);
  for (auto e : p.rotation_exponents) s.insert(static_cast<Elem>(e));
  for (auto e : p.reflection_exponents) s.insert(static_cast<Elem>(p.n + e));
  return s;
}

inline Witness dihedral_witness(std::uint64_t n) {
  const auto plan = dihedral_witness_plan(n);
  auto g = build_group(GroupSpec::atom(GroupSpec::Kind::Dihedral, 2 * n)).group;
  auto s = dihedral_witness_set(*g, plan);
  return detail::finish_witness(g, std::move(s), static_cast<Elem>(plan.excluded_exponent),
                                family_name(plan.family));
}

inline Witness d44_witness() {
  auto g = build_group(GroupSpec::atom(GroupSpec::Kind::Dihedral, 44)).group;
  ElemSet s(*g);
  for (const char* label : {"x^2", "x^5", "x^8", "x^18", "x^21", "x^5*y", "x^16*y"}) s.insert(*g->find_label(label));
  return detail::finish_witness(g, std::move(s), std::nullopt, "d44");
}

// Pieces of the extraspecial construction, for inspection in tests.
struct ExtraspecialParts {
  ElemSet x;  // subset of K
  ElemSet u;  // order-4 elements d h_1 ... h_n of E, d in {1, alpha, beta, alpha beta}
  ElemSet e;  // E = K H_1 ... H_n
  ElemSet k;
  Elem a = 0;
  Elem b = 0;
};

inline ExtraspecialParts extraspecial_parts(const ExtraspecialFrame& fr) {
  const FiniteGroup& g = *fr.group;
  if (g.order() <= 128 || fr.h_gens.size() < 2 || !fr.q_gens)
    throw FrameTooSmall("extraspecial witness needs order > 128");
  const auto [alpha, beta] = fr.k_gens;
  const Elem z = fr.z;
  ExtraspecialParts p{ElemSet(g), ElemSet(g), ElemSet(g), ElemSet(g), fr.q_gens->first, fr.q_gens->second};

  if (fr.k_kind == FactorKind::D8)
    p.x = ElemSet(g, {z, g.mul(z, beta), g.mul(z, g.mul(alpha, beta))});
  else
    p.x = ElemSet(g, {z});

  // Products d h_1 ... h_n over all canonical choices.
  std::vector<Elem> heads = {0};
  for (const auto& [ai, bi] : fr.h_gens) {
    std::vector<Elem> next;
    for (Elem h : heads)
      for (Elem c : {Elem{0}, ai, bi, g.mul(ai, bi)}) next.push_back(g.mul(h, c));
    heads = std::move(next);
  }
  const Elem kd[] = {0, alpha, beta, g.mul(alpha, beta)};
  for (Elem d : kd)
    for (Elem h : heads) {
      const Elem v = g.mul(d, h);
      if (g.elem_order(v) == 4) p.u.insert(v);
    }
  std::vector<Elem> e_gens = {alpha, beta};
  for (const auto& [ai, bi] : fr.h_gens) e_gens.insert(e_gens.end(), {ai, bi});
  p.e = generated_subgroup(g, e_gens);
  p.k = generated_subgroup(g, std::vector<Elem>{alpha, beta});

  if (p.u.intersects(inverse_set(p.u))) throw InternalCheckFailed("U meets its inverse");
  ElemSet order4(g);
  p.e.for_each([&](Elem v) {
    if (g.elem_order(v) == 4) order4.insert(v);
  });
  if ((p.u | inverse_set(p.u)) != order4) throw InternalCheckFailed("U u U^-1 is not every order-4 element of E");
  return p;
}

// S = X u Ua u Ub; a lies outside S u SS.
inline Witness extraspecial_witness(const ExtraspecialFrame& fr) {
  const auto p = extraspecial_parts(fr);
  const FiniteGroup& g = *fr.group;
  const ElemSet s = p.x | product_set(p.u, ElemSet(g, {p.a})) | product_set(p.u, ElemSet(g, {p.b}));
  return detail::finish_witness(fr.group, s, p.a, "extraspecial");
}

inline Witness extraspecial_witness(const BuiltGroup& built) {
  if (!built.extraspecial) throw PreconditionViolated("group was not built as an extraspecial group");
  return extraspecial_witness(*built.extraspecial);
}

// Random maximal extension of {z} by addable elements.
inline Witness central_c4_witness(const CentralC4Frame& fr, std::uint64_t seed) {
  const FiniteGroup& g = *fr.group;
  if (g.elem_order(fr.x) != 4 || g.mul(fr.x, fr.x) != fr.z)
    throw NotCentralProductC4("x must have order 4 with x^2 = z");
  for (std::size_t a = 0; a < g.order(); ++a)
    if (g.mul(fr.x, static_cast<Elem>(a)) != g.mul(static_cast<Elem>(a), fr.x))
      throw NotCentralProductC4("x is not central");

  auto rng = restart_stream(seed, 0);
  ElemSet s(g, {fr.z});
  for (ElemSet add = addable_set(s); !add.empty(); add = addable_set(s)) {
    const auto choices = add.elements();
    s.insert(choices[uniform_below(rng, choices.size())]);
  }
  bool involutions = true;
  s.for_each([&](Elem e) { involutions = involutions && g.is_involution(e); });
  if (!involutions) throw InternalCheckFailed("central C4 witness contains a non-involution");
  return detail::finish_witness(fr.group, std::move(s), fr.x, "central-c4", seed);
}

inline Witness central_c4_witness(const BuiltGroup& built, std::uint64_t seed) {
  if (!built.central_c4) throw NotCentralProductC4("group was not built as E*C4");
  return central_c4_witness(*built.central_c4, seed);
}

}  // namespace filled
