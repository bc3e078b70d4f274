#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "filled/errors.hpp"
#include "filled/group.hpp"

namespace filled {

// Subset of one group's elements as a fixed-width bit vector. Holds a
// non-owning pointer to its group, which must outlive the set.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(const FiniteGroup& group)
      : group_(&group), words_((group.order() + 63) / 64, 0) {}
  ElemSet(const FiniteGroup& group, std::span<const Elem> elems) : ElemSet(group) {
    for (Elem e : elems) insert(e);
  }
  ElemSet(const FiniteGroup& group, std::initializer_list<Elem> elems) : ElemSet(group) {
    for (Elem e : elems) insert(e);
  }

  static ElemSet full(const FiniteGroup& group) {
    ElemSet s(group);
    for (std::size_t i = 0; i < group.order(); ++i) s.insert(static_cast<Elem>(i));
    return s;
  }
  static ElemSet nonidentity(const FiniteGroup& group) {
    ElemSet s = full(group);
    s.erase(FiniteGroup::identity());
    return s;
  }

  bool bound() const noexcept { return group_ != nullptr; }
  const FiniteGroup& group() const {
    if (!group_) throw GroupMismatch("element set is not bound to a group");
    return *group_;
  }
  std::uint64_t group_id() const noexcept { return group_ ? group_->id() : 0; }
  std::size_t universe() const noexcept { return group_ ? group_->order() : 0; }

  bool contains(Elem e) const noexcept {
    return e < universe() && ((words_[e >> 6] >> (e & 63)) & 1U);
  }
  void insert(Elem e) {
    check_range(e);
    words_[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  void erase(Elem e) {
    check_range(e);
    words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<Elem>(wi * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(size());
    for_each([&](Elem e) { out.push_back(e); });
    return out;
  }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for_each([&](Elem e) { out.push_back(group_->label(e)); });
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  ElemSet& operator|=(const ElemSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElemSet& operator&=(const ElemSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference.
  ElemSet& operator-=(const ElemSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
  friend ElemSet operator-(ElemSet a, const ElemSet& b) { return a -= b; }

  ElemSet complement() const { return full(group()) - *this; }

  bool is_subset_of(const ElemSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const ElemSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  friend bool operator==(const ElemSet& a, const ElemSet& b) noexcept {
    return a.group_id() == b.group_id() && a.words_ == b.words_;
  }

  // Lexicographic order of the ascending element lists.
  friend bool operator<(const ElemSet& a, const ElemSet& b) {
    const auto ea = a.elements(), eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

  // Image under a permutation of element indices.
  ElemSet mapped(std::span<const Elem> perm) const {
    ElemSet out(group());
    for_each([&](Elem e) { out.insert(perm[e]); });
    return out;
  }

 private:
  void check_range(Elem e) const {
    if (e >= universe()) throw DomainError("element index out of range for group");
  }
  void check_same(const ElemSet& o) const {
    if (group_id() != o.group_id()) throw GroupMismatch("element sets belong to different groups");
  }

  const FiniteGroup* group_ = nullptr;
  std::vector<std::uint64_t> words_;
};

}  // namespace filled
