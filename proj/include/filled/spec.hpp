#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "filled/errors.hpp"

namespace filled {

// Construction recipe for a group.
//
//   spec := atom | spec "x" atom | spec "*" atom
//   atom := "C(" int ")" | "D(" int ")" | "Q(" int ")" | "EA(" int ")"
//         | "ESP(" int ")" | "ESM(" int ")" | "ESC4(" int ")" | "(" spec ")"
//
// Atom parameters are group orders, so D(8) is the dihedral group of order
// 8. "x" is the direct product and "*" (or U+2217) the central product that
// identifies the designated central involutions of both sides.
class GroupSpec {
 public:
  enum class Kind {
    Cyclic,
    Dihedral,
    Quaternion,
    ElementaryAbelian,
    ExtraspecialPlus,
    ExtraspecialMinus,
    CentralC4,
    Direct,
    Central,
  };

  static GroupSpec atom(Kind kind, std::uint64_t param) {
    GroupSpec s;
    s.kind_ = kind;
    s.param_ = param;
    return s;
  }
  static GroupSpec direct(GroupSpec a, GroupSpec b) { return binary(Kind::Direct, std::move(a), std::move(b)); }
  static GroupSpec central(GroupSpec a, GroupSpec b) { return binary(Kind::Central, std::move(a), std::move(b)); }

  Kind kind() const noexcept { return kind_; }
  std::uint64_t param() const noexcept { return param_; }
  bool is_atom() const noexcept { return kind_ != Kind::Direct && kind_ != Kind::Central; }
  const GroupSpec& lhs() const { return *lhs_; }
  const GroupSpec& rhs() const { return *rhs_; }

  // Canonical text. Parsing it yields an equal spec.
  std::string to_string() const {
    if (is_atom()) return std::string(atom_name(kind_)) + "(" + std::to_string(param_) + ")";
    const char op = kind_ == Kind::Direct ? 'x' : '*';
    std::string left = lhs_->to_string();
    if (!lhs_->is_atom() && lhs_->kind_ != kind_) left = "(" + left + ")";
    std::string right = rhs_->to_string();
    if (!rhs_->is_atom()) right = "(" + right + ")";
    return left + op + right;
  }

  // Order of the described group, saturating at uint64 max.
  std::uint64_t order() const {
    switch (kind_) {
      case Kind::Direct:
        return sat_mul(lhs_->order(), rhs_->order());
      case Kind::Central:
        return sat_mul(lhs_->order(), rhs_->order()) / 2;
      default:
        return param_;
    }
  }

  // Throws SpecDomainError when a constructor parameter is out of its domain.
  void validate() const {
    auto power_of_two_exponent = [](std::uint64_t v) -> std::optional<int> {
      if (v == 0 || (v & (v - 1)) != 0) return std::nullopt;
      int e = 0;
      while ((std::uint64_t{1} << e) != v) ++e;
      return e;
    };
    const std::string here = to_string();
    switch (kind_) {
      case Kind::Cyclic:
        if (param_ < 1) throw SpecDomainError(here + ": cyclic order must be >= 1");
        break;
      case Kind::Dihedral:
        if (param_ < 6 || param_ % 2 != 0)
          throw SpecDomainError(here + ": dihedral order must be even and >= 6");
        break;
      case Kind::Quaternion:
        if (param_ < 8 || param_ % 4 != 0)
          throw SpecDomainError(here + ": quaternion order must be a multiple of 4 and >= 8");
        break;
      case Kind::ElementaryAbelian: {
        const auto e = power_of_two_exponent(param_);
        if (!e || *e < 1) throw SpecDomainError(here + ": order must be a power of 2, >= 2");
        break;
      }
      case Kind::ExtraspecialPlus:
      case Kind::ExtraspecialMinus: {
        const auto e = power_of_two_exponent(param_);
        if (!e || *e < 3 || *e % 2 != 1)
          throw SpecDomainError(here + ": extraspecial order must be an odd power of 2, >= 8");
        break;
      }
      case Kind::CentralC4: {
        const auto e = power_of_two_exponent(param_);
        if (!e || *e < 4 || *e % 2 != 0)
          throw SpecDomainError(here + ": E*C4 order must be an even power of 2, >= 16");
        break;
      }
      case Kind::Direct:
      case Kind::Central:
        lhs_->validate();
        rhs_->validate();
        break;
    }
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.is_atom()) return a.param_ == b.param_;
    return *a.lhs_ == *b.lhs_ && *a.rhs_ == *b.rhs_;
  }

  static constexpr std::string_view atom_name(Kind k) {
    switch (k) {
      case Kind::Cyclic: return "C";
      case Kind::Dihedral: return "D";
      case Kind::Quaternion: return "Q";
      case Kind::ElementaryAbelian: return "EA";
      case Kind::ExtraspecialPlus: return "ESP";
      case Kind::ExtraspecialMinus: return "ESM";
      case Kind::CentralC4: return "ESC4";
      default: return "";
    }
  }

 private:
  static GroupSpec binary(Kind k, GroupSpec a, GroupSpec b) {
    GroupSpec s;
    s.kind_ = k;
    s.lhs_ = std::make_shared<const GroupSpec>(std::move(a));
    s.rhs_ = std::make_shared<const GroupSpec>(std::move(b));
    return s;
  }
  static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
      return std::numeric_limits<std::uint64_t>::max();
    return a * b;
  }

  Kind kind_ = Kind::Cyclic;
  std::uint64_t param_ = 1;
  std::shared_ptr<const GroupSpec> lhs_, rhs_;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GroupSpec parse() {
    GroupSpec s = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("expected 'x', '*' or end of input");
    return s;
  }

 private:
  GroupSpec parse_spec() {
    GroupSpec acc = parse_atom();
    for (;;) {
      skip_ws();
      if (consume("x")) {
        acc = GroupSpec::direct(std::move(acc), parse_atom());
      } else if (consume("*") || consume("\xE2\x88\x97")) {
        acc = GroupSpec::central(std::move(acc), parse_atom());
      } else {
        return acc;
      }
    }
  }

  GroupSpec parse_atom() {
    skip_ws();
    if (consume("(")) {
      GroupSpec inner = parse_spec();
      skip_ws();
      if (!consume(")")) fail("expected ')'");
      return inner;
    }
    // Longest names first so "ESC4" is not read as "ES...".
    static constexpr std::pair<std::string_view, GroupSpec::Kind> kNames[] = {
        {"ESC4", GroupSpec::Kind::CentralC4},     {"ESP", GroupSpec::Kind::ExtraspecialPlus},
        {"ESM", GroupSpec::Kind::ExtraspecialMinus}, {"EA", GroupSpec::Kind::ElementaryAbelian},
        {"C", GroupSpec::Kind::Cyclic},           {"D", GroupSpec::Kind::Dihedral},
        {"Q", GroupSpec::Kind::Quaternion},
    };
    for (const auto& [name, kind] : kNames) {
      if (consume(name)) {
        skip_ws();
        if (!consume("(")) fail("expected '(' after " + std::string(name));
        const std::uint64_t v = parse_int();
        skip_ws();
        if (!consume(")")) fail("expected ')'");
        return GroupSpec::atom(kind, v);
      }
    }
    fail("expected one of C( D( Q( EA( ESP( ESM( ESC4( or '('");
  }

  std::uint64_t parse_int() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("integer too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool consume(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses and validates a spec. Throws ParseError or SpecDomainError.
inline GroupSpec parse_group_spec(std::string_view text) {
  GroupSpec s = detail::SpecParser(text).parse();
  s.validate();
  return s;
}

}  // namespace filled
