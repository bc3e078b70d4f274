#pragma once

#include <utility>
#include <vector>

#include "filled/elemset.hpp"
#include "filled/errors.hpp"
#include "filled/group.hpp"
#include "filled/structure.hpp"

namespace filled {

// {ab : a in A, b in B}.
inline ElemSet product_set(const ElemSet& a, const ElemSet& b) {
  if (a.group_id() != b.group_id()) throw GroupMismatch("product_set: sets belong to different groups");
  const FiniteGroup& g = a.group();
  ElemSet out(g);
  const auto bs = b.elements();
  a.for_each([&](Elem x) {
    const auto row = g.row(x);
    for (Elem y : bs) out.insert(row[y]);
  });
  return out;
}

inline ElemSet inverse_set(const ElemSet& s) {
  const FiniteGroup& g = s.group();
  ElemSet out(g);
  s.for_each([&](Elem x) { out.insert(g.inv(x)); });
  return out;
}

// {x : x^2 in S}.
inline ElemSet sqrt_set(const ElemSet& s) {
  const FiniteGroup& g = s.group();
  ElemSet out(g);
  for (std::size_t x = 0; x < g.order(); ++x) {
    const Elem e = static_cast<Elem>(x);
    if (s.contains(g.mul(e, e))) out.insert(e);
  }
  return out;
}

// S u SS u SS^-1 u S^-1S.
inline ElemSet t_closure(const ElemSet& s) {
  const ElemSet si = inverse_set(s);
  ElemSet out = s;
  out |= product_set(s, s);
  out |= product_set(s, si);
  out |= product_set(si, s);
  return out;
}

inline bool is_product_free(const ElemSet& s) {
  const FiniteGroup& g = s.group();
  const auto es = s.elements();
  for (Elem a : es) {
    const auto row = g.row(a);
    for (Elem b : es)
      if (s.contains(row[b])) return false;
  }
  return true;
}

namespace detail {
inline void require_product_free(const ElemSet& s, const char* op) {
  if (!is_product_free(s)) throw PreconditionViolated(std::string(op) + ": set is not product-free");
}
}  // namespace detail

// G \ ({1} u T(S) u sqrt(S)): the elements whose addition keeps S product-free.
inline ElemSet addable_set(const ElemSet& s) {
  detail::require_product_free(s, "addable_set");
  ElemSet out = ElemSet::nonidentity(s.group());
  out -= t_closure(s);
  out -= sqrt_set(s);
  return out;
}

// Local maximality via G = T(S) u sqrt(S).
inline bool is_locally_maximal(const ElemSet& s) {
  detail::require_product_free(s, "is_locally_maximal");
  return (t_closure(s) | sqrt_set(s)).size() == s.group().order();
}

// G* is contained in S u SS.
inline bool fills(const ElemSet& s) {
  ElemSet covered = s | product_set(s, s);
  covered.insert(FiniteGroup::identity());
  return covered.size() == s.group().order();
}

struct DihedralSplit {
  ElemSet rotations;    // S n <x>
  ElemSet reflections;  // S n <x>y
};

// Splits S by the cyclic subgroup of index 2 of a dihedral group.
inline DihedralSplit dihedral_split(const ElemSet& s) {
  const FiniteGroup& g = s.group();
  if (is_abelian(g)) throw NotDihedral("dihedral_split: group is abelian");
  const auto gens = dihedral_generators(g);
  if (!gens) throw NotDihedral("dihedral_split: group is not dihedral");
  const Elem x = gens->x;
  const ElemSet rot = generated_subgroup(g, std::span<const Elem>(&x, 1));
  return {s & rot, s - rot};
}

}  // namespace filled
