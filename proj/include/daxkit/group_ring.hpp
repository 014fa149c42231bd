#pragma once

// Integer group ring Z[pi], its identity-free part Z[pi \ 1], and the
// mod-2 ring on the order-two elements.

#include "daxkit/bigint.hpp"
#include "daxkit/error.hpp"
#include "daxkit/group.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace daxkit {

// Finite formal sum of group elements with nonzero integer coefficients.
class RingElement {
 public:
  using Terms = std::map<GroupElement, BigInt, ElementLess>;

  RingElement() = default;
  explicit RingElement(const GroupElement& g, BigInt coefficient = 1) { add(g, coefficient); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  BigInt coefficient(const GroupElement& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add(const GroupElement& g, const BigInt& coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(g, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  RingElement& operator+=(const RingElement& other) {
    for (const auto& [g, c] : other.terms_) add(g, c);
    return *this;
  }
  RingElement& operator-=(const RingElement& other) {
    for (const auto& [g, c] : other.terms_) add(g, -c);
    return *this;
  }
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(RingElement a) {
    for (auto& [g, c] : a.terms_) c = -c;
    return a;
  }
  RingElement scaled(const BigInt& k) const {
    RingElement out;
    for (const auto& [g, c] : terms_) out.add(g, c * k);
    return out;
  }

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  Terms terms_;
};

// Element of Z[pi \ 1]: the identity coefficient is always zero.
class ReducedElement {
 public:
  ReducedElement() = default;

  const RingElement& ring() const { return value_; }
  const RingElement::Terms& terms() const { return value_.terms(); }
  bool is_zero() const { return value_.is_zero(); }

  ReducedElement& operator+=(const ReducedElement& o) {
    value_ += o.value_;
    return *this;
  }
  ReducedElement& operator-=(const ReducedElement& o) {
    value_ -= o.value_;
    return *this;
  }
  friend ReducedElement operator+(ReducedElement a, const ReducedElement& b) { return a += b; }
  friend ReducedElement operator-(ReducedElement a, const ReducedElement& b) { return a -= b; }
  friend ReducedElement operator-(ReducedElement a) {
    a.value_ = -a.value_;
    return a;
  }
  ReducedElement scaled(const BigInt& k) const {
    ReducedElement out;
    out.value_ = value_.scaled(k);
    return out;
  }

  friend bool operator==(const ReducedElement&, const ReducedElement&) = default;

 private:
  friend ReducedElement reduce_to_nonidentity(const RingElement& x);
  RingElement value_;
};

// Element of Z/2[T]: a set of order-two elements.
using F2TElement = std::set<GroupElement, ElementLess>;

inline RingElement combine(const RingElement& x, const RingElement& y, int sign) {
  if (sign != 1 && sign != -1) throw Error("combine: sign must be +1 or -1");
  return sign == 1 ? x + y : x - y;
}

inline ReducedElement reduce_to_nonidentity(const RingElement& x) {
  ReducedElement out;
  for (const auto& [g, c] : x.terms())
    if (!g.is_identity()) out.value_.add(g, c);
  return out;
}

inline void require_ring(const GroupSpec& spec, const RingElement& x) {
  for (const auto& [g, c] : x.terms()) spec.require(g);
}

// Linear extension of 1 -> 0, g -> g + g^-1.
inline ReducedElement d_hom(const GroupSpec& spec, const RingElement& omega) {
  RingElement image;
  for (const auto& [g, c] : omega.terms()) {
    if (g.is_identity()) continue;
    image.add(g, c);
    image.add(spec.inverse(g), c);
  }
  return reduce_to_nonidentity(image);
}

enum class FqMode {
  drop_infinite,      // g outside T maps to 0
  identify_inverses,  // fold g and g^-1 together first, then keep only T
};

// Keeps the order-two support with coefficients reduced mod 2.
inline F2TElement fq_project(const GroupSpec& spec, const ReducedElement& x,
                             FqMode mode = FqMode::drop_infinite) {
  RingElement source = x.ring();
  if (mode == FqMode::identify_inverses) {
    RingElement folded;
    for (const auto& [g, c] : source.terms()) {
      GroupElement inv = spec.inverse(g);
      folded.add(compare_elements(inv, g) < 0 ? inv : g, c);
    }
    source = folded;
  }
  F2TElement out;
  for (const auto& [g, c] : source.terms())
    if (spec.is_order_two(g) && boost::multiprecision::abs(c) % 2 == 1) out.insert(g);
  return out;
}

// Terms in canonical order as `c*word` joined by ` + `; negative
// coefficients render as `- c*word`; zero renders as `0`.
inline std::string canonical_print(const GroupSpec& spec, const RingElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : x.terms()) {
    BigInt magnitude = boost::multiprecision::abs(c);
    if (first)
      out += c < 0 ? "- " : "";
    else
      out += c < 0 ? " - " : " + ";
    out += to_string(magnitude) + "*" + spec.format(g);
    first = false;
  }
  return out;
}

inline std::string canonical_print(const GroupSpec& spec, const ReducedElement& x) {
  return canonical_print(spec, x.ring());
}

inline std::string canonical_print(const GroupSpec& spec, const F2TElement& x) {
  RingElement r;
  for (const auto& g : x) r.add(g, 1);
  return canonical_print(spec, r);
}

// Ring expressions: signed terms `c*word`, `c` or `word`, joined by `+`/`-`.
// A `-` directly after `^` belongs to an exponent.
inline RingElement parse_ring_expr(const GroupSpec& spec, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw Error("empty ring expression");

  RingElement out;
  int sign = 1;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    sign = text[0] == '-' ? -1 : 1;
    pos = 1;
  }
  while (true) {
    std::size_t end = pos;
    while (end < text.size() && !((text[end] == '+' || text[end] == '-') && (end == 0 || text[end - 1] != '^')))
      ++end;
    std::string_view term = trim(text.substr(pos, end - pos));
    if (term.empty()) throw Error("empty term in ring expression '" + std::string(text) + "'");

    BigInt coefficient = 1;
    std::string_view word = term;
    std::size_t digits = 0;
    while (digits < term.size() && term[digits] >= '0' && term[digits] <= '9') ++digits;
    if (digits > 0) {
      std::string_view rest = trim(term.substr(digits));
      if (rest.empty()) {
        // a bare integer is a multiple of the identity
        coefficient = *parse_bigint(term.substr(0, digits));
        word = "1";
      } else if (rest.front() == '*') {
        coefficient = *parse_bigint(term.substr(0, digits));
        word = trim(rest.substr(1));
      } else {
        throw Error("malformed term '" + std::string(term) + "'");
      }
    }
    out.add(spec.parse_word(word), coefficient * sign);

    if (end == text.size()) break;
    sign = text[end] == '-' ? -1 : 1;
    pos = end + 1;
  }
  return out;
}

}  // namespace daxkit
