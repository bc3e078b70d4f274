#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "filled/errors.hpp"
#include "filled/group.hpp"
#include "filled/spec.hpp"

namespace filled {

enum class FactorKind { D8, Q8 };

// Extraspecial 2-group G = K H_1 ... H_n Q with named generators. K is D8 or
// Q8, every H_i and Q is Q8, and all factors commute and share the central
// involution z = alpha^2 = a_i^2 = a^2. Order 8 groups have only K; order 32
// groups have K and Q.
struct ExtraspecialFrame {
  GroupPtr group;
  Elem z = 0;
  std::pair<Elem, Elem> k_gens;                  // (alpha, beta)
  std::vector<std::pair<Elem, Elem>> h_gens;     // (a_i, b_i)
  std::optional<std::pair<Elem, Elem>> q_gens;   // (a, b)
  FactorKind k_kind = FactorKind::D8;
};

// E * C4 with |G| = 2|E|: E is extraspecial (built from D8 factors) and x is
// a central element of order 4 with x^2 = z.
struct CentralC4Frame {
  GroupPtr group;
  Elem z = 0;
  Elem x = 0;
  std::vector<std::pair<Elem, Elem>> e_gens;
};

struct BuiltGroup {
  GroupPtr group;
  // Central involution identified by a central product with this group.
  std::optional<Elem> central_involution;
  std::optional<ExtraspecialFrame> extraspecial;
  std::optional<CentralC4Frame> central_c4;
};

struct BuildOptions {
  std::size_t order_cap = kDefaultOrderCap;
};

namespace detail {

inline std::string power_label(std::string_view gen, std::uint64_t k) {
  if (k == 0) return "1";
  if (k == 1) return std::string(gen);
  return std::string(gen) + "^" + std::to_string(k);
}

// Labels x^i (i < n) followed by x^i*y.
inline std::vector<std::string> rotation_reflection_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(power_label("x", i));
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "y" : power_label("x", i) + "*y");
  return labels;
}

inline std::string join_word(const std::vector<std::string>& parts) {
  if (parts.empty()) return "1";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

// Elements of a central product of D8/Q8 factors (optionally with a central
// w of order 4) encoded as bit strings: bit 0 is z, then bit 1 is w when
// present, then two bits (u, v) per factor for u^i v^j.
struct FactorProduct {
  std::vector<FactorKind> kinds;
  std::vector<std::pair<std::string, std::string>> names;
  bool with_c4 = false;

  unsigned factor_shift() const { return with_c4 ? 2U : 1U; }
  std::size_t order() const { return std::size_t{1} << (factor_shift() + 2 * kinds.size()); }

  std::uint32_t mul(std::uint32_t g, std::uint32_t h) const {
    std::uint32_t c = (g ^ h) & 1U;
    std::uint32_t out = 0;
    if (with_c4) {
      const std::uint32_t wg = (g >> 1) & 1U, wh = (h >> 1) & 1U;
      c ^= wg & wh;
      out |= (wg ^ wh) << 1;
    }
    const unsigned base = factor_shift();
    for (std::size_t f = 0; f < kinds.size(); ++f) {
      const unsigned s = base + 2 * static_cast<unsigned>(f);
      const std::uint32_t i = (g >> s) & 1U, j = (g >> (s + 1)) & 1U;
      const std::uint32_t k = (h >> s) & 1U, l = (h >> (s + 1)) & 1U;
      // u^i v^j u^k v^l = z^{jk} u^{i+k} v^{j+l}; u^2 = z; v^2 = 1 or z.
      c ^= (j & k) ^ (i & k);
      if (kinds[f] == FactorKind::Q8) c ^= j & l;
      out |= ((i ^ k) << s) | ((j ^ l) << (s + 1));
    }
    return out | c;
  }

  std::string label(std::uint32_t g) const {
    std::vector<std::string> parts;
    if (g & 1U) parts.emplace_back("z");
    if (with_c4 && ((g >> 1) & 1U)) parts.emplace_back("w");
    const unsigned base = factor_shift();
    for (std::size_t f = 0; f < kinds.size(); ++f) {
      const unsigned s = base + 2 * static_cast<unsigned>(f);
      if ((g >> s) & 1U) parts.push_back(names[f].first);
      if ((g >> (s + 1)) & 1U) parts.push_back(names[f].second);
    }
    return join_word(parts);
  }

  Elem u(std::size_t f) const { return static_cast<Elem>(1U << (factor_shift() + 2 * f)); }
  Elem v(std::size_t f) const { return static_cast<Elem>(1U << (factor_shift() + 2 * f + 1)); }

  GroupPtr build(std::string spec_string) const {
    const std::size_t n = order();
    std::vector<std::string> labels(n);
    for (std::size_t g = 0; g < n; ++g) labels[g] = label(static_cast<std::uint32_t>(g));
    return make_group(
        n, [&](Elem a, Elem b) { return static_cast<Elem>(mul(a, b)); }, std::move(labels),
        std::move(spec_string));
  }
};

inline int log2_exact(std::uint64_t v) {
  int e = 0;
  while ((std::uint64_t{1} << e) < v) ++e;
  return e;
}

inline void check_cap(std::uint64_t order, const BuildOptions& opts, const std::string& what) {
  if (order > opts.order_cap || order > kMaxOrder)
    throw OrderCapExceeded(what + ": order " + std::to_string(order) + " exceeds cap " +
                           std::to_string(opts.order_cap));
}

}  // namespace detail

inline BuiltGroup cyclic_group(std::size_t n) {
  if (n < 1) throw SpecDomainError("cyclic order must be >= 1");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(detail::power_label("x", i));
  BuiltGroup out;
  out.group = make_group(
      n, [n](Elem a, Elem b) { return static_cast<Elem>((std::size_t{a} + b) % n); },
      std::move(labels), "C(" + std::to_string(n) + ")");
  if (n % 2 == 0) out.central_involution = static_cast<Elem>(n / 2);
  return out;
}

// Dihedral group of the given order 2n: x^n = y^2 = 1, yxy = x^-1. Index i is
// x^i and n + i is x^i y.
inline BuiltGroup dihedral_group(std::size_t order) {
  if (order < 6 || order % 2 != 0) throw SpecDomainError("dihedral order must be even and >= 6");
  const std::size_t n = order / 2;
  auto mul = [n](Elem a, Elem b) {
    const std::size_t i = a % n, s = a / n, j = b % n, t = b / n;
    const std::size_t r = s ? (i + n - j) % n : (i + j) % n;
    return static_cast<Elem>(r + n * (s ^ t));
  };
  BuiltGroup out;
  out.group = make_group(order, mul, detail::rotation_reflection_labels(n),
                         "D(" + std::to_string(order) + ")");
  if (n % 2 == 0) out.central_involution = static_cast<Elem>(n / 2);
  return out;
}

// Generalized quaternion (dicyclic) group of order 4m: x^{2m} = 1, y^2 = x^m,
// yxy^-1 = x^-1.
inline BuiltGroup quaternion_group(std::size_t order) {
  if (order < 8 || order % 4 != 0)
    throw SpecDomainError("quaternion order must be a multiple of 4 and >= 8");
  const std::size_t n = order / 2, m = order / 4;
  auto mul = [n, m](Elem a, Elem b) {
    const std::size_t i = a % n, s = a / n, j = b % n, t = b / n;
    std::size_t r = s ? (i + n - j) % n : (i + j) % n;
    if (s && t) r = (r + m) % n;
    return static_cast<Elem>(r + n * (s ^ t));
  };
  BuiltGroup out;
  out.group = make_group(order, mul, detail::rotation_reflection_labels(n),
                         "Q(" + std::to_string(order) + ")");
  out.central_involution = static_cast<Elem>(m);
  return out;
}

inline BuiltGroup elementary_abelian_group(std::size_t order) {
  if (order < 2 || (order & (order - 1)) != 0)
    throw SpecDomainError("elementary abelian order must be a power of 2, >= 2");
  std::vector<std::string> labels(order);
  for (std::size_t g = 0; g < order; ++g) {
    std::vector<std::string> parts;
    for (std::size_t b = 0; (std::size_t{1} << b) < order; ++b)
      if (g & (std::size_t{1} << b)) parts.push_back("e" + std::to_string(b + 1));
    labels[g] = detail::join_word(parts);
  }
  BuiltGroup out;
  out.group = make_group(
      order, [](Elem a, Elem b) { return static_cast<Elem>(a ^ b); }, std::move(labels),
      "EA(" + std::to_string(order) + ")");
  out.central_involution = Elem{1};
  return out;
}

// Extraspecial group of order 2^{2m+1}, plus or minus type, as a central
// product of m factors laid out as K, H_1..H_{m-2}, Q.
inline BuiltGroup extraspecial_group(std::size_t order, bool plus_type) {
  const int e = detail::log2_exact(order);
  if ((std::size_t{1} << e) != order || e < 3 || e % 2 != 1)
    throw SpecDomainError("extraspecial order must be an odd power of 2, >= 8");
  const std::size_t m = static_cast<std::size_t>(e - 1) / 2;

  // The type is the parity of the number of Q8 factors.
  const std::size_t q8_outside_k = m - 1;
  const bool k_is_q8 = plus_type ? (q8_outside_k % 2 == 1) : (q8_outside_k % 2 == 0);

  detail::FactorProduct fp;
  fp.kinds.push_back(k_is_q8 ? FactorKind::Q8 : FactorKind::D8);
  fp.names.emplace_back("alpha", "beta");
  for (std::size_t i = 1; i + 1 < m; ++i) {
    fp.kinds.push_back(FactorKind::Q8);
    fp.names.emplace_back("a" + std::to_string(i), "b" + std::to_string(i));
  }
  if (m >= 2) {
    fp.kinds.push_back(FactorKind::Q8);
    fp.names.emplace_back("a", "b");
  }

  const std::string spec = std::string(plus_type ? "ESP(" : "ESM(") + std::to_string(order) + ")";
  ExtraspecialFrame frame;
  frame.group = fp.build(spec);
  frame.z = 1;
  frame.k_gens = {fp.u(0), fp.v(0)};
  frame.k_kind = fp.kinds[0];
  for (std::size_t i = 1; i + 1 < m; ++i) frame.h_gens.emplace_back(fp.u(i), fp.v(i));
  if (m >= 2) frame.q_gens = std::make_pair(fp.u(m - 1), fp.v(m - 1));

  BuiltGroup out;
  out.group = frame.group;
  out.central_involution = frame.z;
  out.extraspecial = std::move(frame);
  return out;
}

// E * C4 of order 2^{2m+2}: m D8 factors u_i, v_i and a central w with w^2 = z.
inline BuiltGroup central_c4_group(std::size_t order) {
  const int e = detail::log2_exact(order);
  if ((std::size_t{1} << e) != order || e < 4 || e % 2 != 0)
    throw SpecDomainError("E*C4 order must be an even power of 2, >= 16");
  const std::size_t m = static_cast<std::size_t>(e - 2) / 2;
  detail::FactorProduct fp;
  fp.with_c4 = true;
  for (std::size_t i = 1; i <= m; ++i) {
    fp.kinds.push_back(FactorKind::D8);
    fp.names.emplace_back("u" + std::to_string(i), "v" + std::to_string(i));
  }
  CentralC4Frame frame;
  frame.group = fp.build("ESC4(" + std::to_string(order) + ")");
  frame.z = 1;
  frame.x = 2;
  for (std::size_t i = 0; i < m; ++i) frame.e_gens.emplace_back(fp.u(i), fp.v(i));

  BuiltGroup out;
  out.group = frame.group;
  out.central_involution = frame.z;
  out.central_c4 = std::move(frame);
  return out;
}

inline BuiltGroup direct_product(const BuiltGroup& a, const BuiltGroup& b, std::string spec_string) {
  const FiniteGroup& A = *a.group;
  const FiniteGroup& B = *b.group;
  const std::size_t nb = B.order(), n = A.order() * nb;
  std::vector<std::string> labels(n);
  for (std::size_t g = 0; g < n; ++g)
    labels[g] = "(" + A.label(static_cast<Elem>(g / nb)) + "," + B.label(static_cast<Elem>(g % nb)) + ")";
  BuiltGroup out;
  out.group = make_group(
      n,
      [&](Elem g, Elem h) {
        return static_cast<Elem>(std::size_t{A.mul(static_cast<Elem>(g / nb), static_cast<Elem>(h / nb))} * nb +
                                 B.mul(static_cast<Elem>(g % nb), static_cast<Elem>(h % nb)));
      },
      std::move(labels), std::move(spec_string));
  if (a.central_involution)
    out.central_involution = static_cast<Elem>(std::size_t{*a.central_involution} * nb);
  else if (b.central_involution)
    out.central_involution = *b.central_involution;
  return out;
}

// (A x B) / <(z_A, z_B)>. Each coset {(a, b), (a z_A, b z_B)} is represented
// by the member whose B-component has the smaller index.
inline BuiltGroup central_product(const BuiltGroup& a, const BuiltGroup& b, std::string spec_string) {
  if (!a.central_involution || !b.central_involution)
    throw SpecDomainError("central product needs a designated central involution on both sides (" +
                          spec_string + ")");
  const FiniteGroup& A = *a.group;
  const FiniteGroup& B = *b.group;
  const Elem za = *a.central_involution, zb = *b.central_involution;
  const std::size_t na = A.order(), nb = B.order();

  std::vector<std::pair<Elem, Elem>> reps;
  std::vector<std::uint32_t> index_of(na * nb, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const Elem bj = static_cast<Elem>(j);
      if (bj < B.mul(bj, zb)) {
        index_of[i * nb + j] = static_cast<std::uint32_t>(reps.size());
        reps.emplace_back(static_cast<Elem>(i), bj);
      }
    }
  auto canon = [&](Elem x, Elem y) -> Elem {
    const Elem yz = B.mul(y, zb);
    if (y < yz) return static_cast<Elem>(index_of[std::size_t{x} * nb + y]);
    return static_cast<Elem>(index_of[std::size_t{A.mul(x, za)} * nb + yz]);
  };
  std::vector<std::string> labels;
  labels.reserve(reps.size());
  for (const auto& [x, y] : reps) labels.push_back("(" + A.label(x) + "," + B.label(y) + ")");

  BuiltGroup out;
  out.group = make_group(
      reps.size(),
      [&](Elem g, Elem h) {
        return canon(A.mul(reps[g].first, reps[h].first), B.mul(reps[g].second, reps[h].second));
      },
      std::move(labels), std::move(spec_string));
  out.central_involution = canon(za, 0);
  return out;
}

// Constructs the group described by a validated spec. Extraspecial and E*C4
// atoms also return their generator frames.
inline BuiltGroup build_group(const GroupSpec& spec, const BuildOptions& opts = {}) {
  spec.validate();
  detail::check_cap(spec.order(), opts, spec.to_string());
  using K = GroupSpec::Kind;
  const std::size_t p = static_cast<std::size_t>(spec.param());
  switch (spec.kind()) {
    case K::Cyclic: return cyclic_group(p);
    case K::Dihedral: return dihedral_group(p);
    case K::Quaternion: return quaternion_group(p);
    case K::ElementaryAbelian: return elementary_abelian_group(p);
    case K::ExtraspecialPlus: return extraspecial_group(p, true);
    case K::ExtraspecialMinus: return extraspecial_group(p, false);
    case K::CentralC4: return central_c4_group(p);
    case K::Direct:
      return direct_product(build_group(spec.lhs(), opts), build_group(spec.rhs(), opts), spec.to_string());
    case K::Central:
      return central_product(build_group(spec.lhs(), opts), build_group(spec.rhs(), opts), spec.to_string());
  }
  throw SpecDomainError("unknown spec kind");
}

inline BuiltGroup build_group(std::string_view text, const BuildOptions& opts = {}) {
  return build_group(parse_group_spec(text), opts);
}

}  // namespace filled
