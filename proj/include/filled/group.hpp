#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "filled/errors.hpp"
#include "filled/rng.hpp"

namespace filled {

// Index of a group element. The identity is always 0.
using Elem = std::uint16_t;

inline constexpr std::size_t kMaxOrder = 65535;
inline constexpr std::size_t kDefaultOrderCap = 4096;
// Groups up to this order get an exhaustive associativity check.
inline constexpr std::size_t kExhaustiveAssociativityLimit = 512;
inline constexpr std::size_t kAssociativitySamples = 100'000;

// Finite group stored as a full multiplication table. Immutable after
// construction; share it through GroupPtr.
class FiniteGroup {
 public:
  // `table[a * order + b]` is the index of a*b. Validates the table (identity
  // at 0, Latin square, associativity) and precomputes inverses and orders.
  FiniteGroup(std::size_t order, std::vector<Elem> table, std::vector<std::string> labels,
              std::string spec_string)
      : order_(order),
        table_(std::move(table)),
        labels_(std::move(labels)),
        spec_string_(std::move(spec_string)),
        id_(next_id()) {
    validate_and_cache();
  }

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  std::size_t order() const noexcept { return order_; }
  std::uint64_t id() const noexcept { return id_; }
  const std::string& spec_string() const noexcept { return spec_string_; }

  Elem mul(Elem a, Elem b) const noexcept { return table_[std::size_t{a} * order_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  unsigned elem_order(Elem a) const noexcept { return elem_order_[a]; }
  static constexpr Elem identity() noexcept { return 0; }

  std::span<const Elem> row(Elem a) const noexcept {
    return {table_.data() + std::size_t{a} * order_, order_};
  }
  std::span<const Elem> table() const noexcept { return table_; }

  Elem power(Elem a, long long k) const {
    const long long o = elem_order_[a];
    k %= o;
    if (k < 0) k += o;
    Elem r = identity();
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }
  Elem conjugate(Elem g, Elem by) const noexcept { return mul(mul(by, g), inv(by)); }

  const std::string& label(Elem a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Elem> find_label(std::string_view text) const {
    const auto it = label_index_.find(std::string(text));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_involution(Elem a) const noexcept { return elem_order_[a] == 2; }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  void validate_and_cache() {
    const std::size_t n = order_;
    if (n == 0 || n > kMaxOrder) throw InvalidGroupTable("group order out of range");
    if (table_.size() != n * n) throw InvalidGroupTable("table size is not order^2");
    if (labels_.size() != n) throw InvalidGroupTable("label count differs from order");

    for (std::size_t g = 0; g < n; ++g) {
      if (table_[g] != g || table_[g * n] != g)
        throw InvalidGroupTable("row/column 0 is not the identity map");
    }
    // Latin square: every row and column is a permutation.
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    for (std::size_t a = 0; a < n; ++a) {
      ++stamp;
      for (std::size_t b = 0; b < n; ++b) {
        const Elem c = table_[a * n + b];
        if (c >= n || seen[c] == stamp) throw InvalidGroupTable("row is not a permutation");
        seen[c] = stamp;
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      ++stamp;
      for (std::size_t a = 0; a < n; ++a) {
        const Elem c = table_[a * n + b];
        if (seen[c] == stamp) throw InvalidGroupTable("column is not a permutation");
        seen[c] = stamp;
      }
    }
    check_associativity();

    inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      const auto r = row(static_cast<Elem>(a));
      for (std::size_t b = 0; b < n; ++b) {
        if (r[b] == 0) {
          inv_[a] = static_cast<Elem>(b);
          break;
        }
      }
    }
    elem_order_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      unsigned k = 1;
      Elem p = static_cast<Elem>(a);
      while (p != 0) {
        p = mul(p, static_cast<Elem>(a));
        ++k;
      }
      if (n % k != 0) throw InvalidGroupTable("element order does not divide group order");
      elem_order_[a] = k;
    }

    label_index_.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (!label_index_.emplace(labels_[a], static_cast<Elem>(a)).second)
        throw InvalidGroupTable("duplicate element label '" + labels_[a] + "'");
    }
  }

  void check_associativity() const {
    const std::size_t n = order_;
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
      return table_[table_[a * n + b] * n + c] == table_[a * n + table_[b * n + c]];
    };
    if (n <= kExhaustiveAssociativityLimit) {
      for (std::size_t a = 1; a < n; ++a)
        for (std::size_t b = 1; b < n; ++b) {
          const std::size_t ab = table_[a * n + b];
          const Elem* rab = table_.data() + ab * n;
          const Elem* rb = table_.data() + b * n;
          const Elem* ra = table_.data() + a * n;
          for (std::size_t c = 1; c < n; ++c)
            if (rab[c] != ra[rb[c]]) throw InvalidGroupTable("table is not associative");
        }
      return;
    }
    auto rng = restart_stream(n, 0);
    for (std::size_t i = 0; i < kAssociativitySamples; ++i) {
      const auto a = uniform_below(rng, n), b = uniform_below(rng, n), c = uniform_below(rng, n);
      if (!assoc(a, b, c)) throw InvalidGroupTable("table is not associative");
    }
  }

  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<std::string> labels_;
  std::string spec_string_;
  std::uint64_t id_;
  std::vector<Elem> inv_;
  std::vector<unsigned> elem_order_;
  std::unordered_map<std::string, Elem> label_index_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Builds a group from a multiplication function over indices [0, order).
template <class Mul>
GroupPtr make_group(std::size_t order, Mul&& mul, std::vector<std::string> labels,
                    std::string spec_string) {
  if (order == 0 || order > kMaxOrder) throw InvalidGroupTable("group order out of range");
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      table[a * order + b] = static_cast<Elem>(mul(static_cast<Elem>(a), static_cast<Elem>(b)));
  return std::make_shared<const FiniteGroup>(order, std::move(table), std::move(labels),
                                             std::move(spec_string));
}

}  // namespace filled
