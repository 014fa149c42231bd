#pragma once

// Fundamental groups with decidable word problem: free groups and finitely
// generated abelian groups, with normal forms and a canonical total order.

#include "daxkit/bigint.hpp"
#include "daxkit/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace daxkit {

enum class GroupKind { free, abelian };

struct Syllable {
  std::size_t generator = 0;
  BigInt exponent;  // never zero in a normal form

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Normal form of an element. Free case: reduced syllables with adjacent
// generators distinct. Abelian case: one exponent per generator, torsion
// coordinates in [0, d_i). Only GroupSpec produces normal forms.
class GroupElement {
 public:
  GroupElement() = default;

  GroupKind kind() const { return kind_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  const std::vector<BigInt>& exponents() const { return exponents_; }

  bool is_identity() const {
    if (kind_ == GroupKind::free) return syllables_.empty();
    return std::all_of(exponents_.begin(), exponents_.end(),
                       [](const BigInt& e) { return e == 0; });
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  friend class GroupSpec;

  GroupKind kind_ = GroupKind::free;
  std::vector<Syllable> syllables_;
  std::vector<BigInt> exponents_;
};

namespace detail {

// Letter ranking a < a^-1 < b < b^-1 < ...
inline std::size_t letter_rank(const Syllable& s) {
  return 2 * s.generator + (s.exponent < 0 ? 1 : 0);
}

inline BigInt word_length(const std::vector<Syllable>& w) {
  BigInt n = 0;
  for (const auto& s : w) n += boost::multiprecision::abs(s.exponent);
  return n;
}

// Shortlex on the expanded letter sequence, walked syllable by syllable.
inline std::strong_ordering compare_words(const std::vector<Syllable>& a,
                                          const std::vector<Syllable>& b) {
  BigInt la = word_length(a), lb = word_length(b);
  if (la != lb) return la < lb ? std::strong_ordering::less : std::strong_ordering::greater;
  std::size_t i = 0, j = 0;
  BigInt ra = 0, rb = 0;  // letters left in the current syllable
  if (!a.empty()) ra = boost::multiprecision::abs(a[0].exponent);
  if (!b.empty()) rb = boost::multiprecision::abs(b[0].exponent);
  while (i < a.size() && j < b.size()) {
    std::size_t ka = letter_rank(a[i]), kb = letter_rank(b[j]);
    if (ka != kb) return ka <=> kb;
    BigInt step = ra < rb ? ra : rb;
    ra -= step;
    rb -= step;
    if (ra == 0 && ++i < a.size()) ra = boost::multiprecision::abs(a[i].exponent);
    if (rb == 0 && ++j < b.size()) rb = boost::multiprecision::abs(b[j].exponent);
  }
  return std::strong_ordering::equal;
}

// Integer key order 0 < 1 < -1 < 2 < -2 < ..., so the zero vector is least.
inline std::strong_ordering compare_coordinate(const BigInt& x, const BigInt& y) {
  BigInt ax = boost::multiprecision::abs(x), ay = boost::multiprecision::abs(y);
  if (ax != ay) return ax < ay ? std::strong_ordering::less : std::strong_ordering::greater;
  bool nx = x < 0, ny = y < 0;
  return nx <=> ny;
}

inline bool valid_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace detail

// Spec-independent canonical order; identity is the minimum.
inline std::strong_ordering compare_elements(const GroupElement& g, const GroupElement& h) {
  if (g.kind() != h.kind()) return g.kind() <=> h.kind();
  if (g.kind() == GroupKind::free) return detail::compare_words(g.syllables(), h.syllables());
  const auto& x = g.exponents();
  const auto& y = h.exponents();
  if (x.size() != y.size()) return x.size() <=> y.size();
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto c = detail::compare_coordinate(x[k], y[k]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

struct ElementLess {
  bool operator()(const GroupElement& g, const GroupElement& h) const {
    return compare_elements(g, h) < 0;
  }
};

class GroupSpec {
 public:
  GroupSpec() = default;

  static GroupSpec free(std::vector<std::string> names) {
    GroupSpec spec;
    spec.kind_ = GroupKind::free;
    spec.names_ = std::move(names);
    spec.check_names();
    return spec;
  }

  // The last factors.size() names are the torsion generators, in order.
  static GroupSpec abelian(std::vector<std::string> names, std::vector<BigInt> factors) {
    GroupSpec spec;
    spec.kind_ = GroupKind::abelian;
    spec.names_ = std::move(names);
    spec.check_names();
    if (factors.size() > spec.names_.size())
      throw Error("more invariant factors than generator names");
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (factors[k] < 2) throw Error("invariant factor " + to_string(factors[k]) + " is less than 2");
      if (k > 0 && factors[k] % factors[k - 1] != 0)
        throw Error("invariant factors must form a divisibility chain: " + to_string(factors[k - 1]) +
                    " does not divide " + to_string(factors[k]));
    }
    spec.factors_ = std::move(factors);
    return spec;
  }

  GroupKind kind() const { return kind_; }
  std::size_t generator_count() const { return names_.size(); }
  std::size_t free_rank() const { return names_.size() - factors_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<BigInt>& invariant_factors() const { return factors_; }

  // Order of generator k, or nullopt if it has infinite order.
  std::optional<BigInt> torsion_of(std::size_t k) const {
    if (kind_ == GroupKind::free || k < free_rank()) return std::nullopt;
    return factors_[k - free_rank()];
  }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == name) return k;
    return std::nullopt;
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

  GroupElement identity() const {
    GroupElement e;
    e.kind_ = kind_;
    if (kind_ == GroupKind::abelian) e.exponents_.assign(names_.size(), BigInt(0));
    return e;
  }

  GroupElement generator(std::size_t k, const BigInt& exponent = 1) const {
    if (k >= names_.size()) throw Error("generator index out of range");
    if (kind_ == GroupKind::free) return word({Syllable{k, exponent}});
    std::vector<BigInt> v(names_.size(), BigInt(0));
    v[k] = exponent;
    return vector(std::move(v));
  }

  // Freely reduces an arbitrary syllable list.
  GroupElement word(const std::vector<Syllable>& letters) const {
    if (kind_ != GroupKind::free) throw Error("word() requires a free group");
    GroupElement e;
    e.kind_ = GroupKind::free;
    for (const auto& s : letters) {
      if (s.generator >= names_.size()) throw Error("generator index out of range");
      push_reduced(e.syllables_, s);
    }
    return e;
  }

  // Reduces torsion coordinates into [0, d_i).
  GroupElement vector(std::vector<BigInt> exponents) const {
    if (kind_ != GroupKind::abelian) throw Error("vector() requires an abelian group");
    if (exponents.size() != names_.size()) throw Error("exponent vector has wrong length");
    for (std::size_t k = free_rank(); k < exponents.size(); ++k)
      exponents[k] = floor_mod(exponents[k], factors_[k - free_rank()]);
    GroupElement e;
    e.kind_ = GroupKind::abelian;
    e.exponents_ = std::move(exponents);
    return e;
  }

  bool contains(const GroupElement& g) const {
    if (g.kind() != kind_) return false;
    if (kind_ == GroupKind::free) {
      const auto& w = g.syllables();
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].generator >= names_.size() || w[k].exponent == 0) return false;
        if (k > 0 && w[k].generator == w[k - 1].generator) return false;
      }
      return true;
    }
    const auto& v = g.exponents();
    if (v.size() != names_.size()) return false;
    for (std::size_t k = free_rank(); k < v.size(); ++k)
      if (v[k] < 0 || v[k] >= factors_[k - free_rank()]) return false;
    return true;
  }

  void require(const GroupElement& g) const {
    if (!contains(g)) throw Error("element does not belong to this group");
  }

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const {
    require(g);
    require(h);
    if (kind_ == GroupKind::free) {
      GroupElement e = g;
      for (const auto& s : h.syllables()) push_reduced(e.syllables_, s);
      return e;
    }
    std::vector<BigInt> v = g.exponents();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += h.exponents()[k];
    return vector(std::move(v));
  }

  GroupElement inverse(const GroupElement& g) const {
    require(g);
    if (kind_ == GroupKind::free) {
      GroupElement e;
      e.kind_ = GroupKind::free;
      const auto& w = g.syllables();
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        e.syllables_.push_back(Syllable{it->generator, -it->exponent});
      return e;
    }
    std::vector<BigInt> v = g.exponents();
    for (auto& x : v) x = -x;
    return vector(std::move(v));
  }

  // Membership in T, the set of elements of order exactly two.
  bool is_order_two(const GroupElement& g) const {
    require(g);
    if (g.is_identity()) return false;
    if (kind_ == GroupKind::free) return false;
    return multiply(g, g).is_identity();
  }

  std::strong_ordering compare(const GroupElement& g, const GroupElement& h) const {
    require(g);
    require(h);
    return compare_elements(g, h);
  }

  std::string format(const GroupElement& g) const {
    require(g);
    std::string out;
    auto factor = [&](std::size_t k, const BigInt& e) {
      if (!out.empty()) out += '*';
      out += names_[k];
      if (e != 1) out += "^" + to_string(e);
    };
    if (kind_ == GroupKind::free) {
      for (const auto& s : g.syllables()) factor(s.generator, s.exponent);
    } else {
      for (std::size_t k = 0; k < g.exponents().size(); ++k)
        if (g.exponents()[k] != 0) factor(k, g.exponents()[k]);
    }
    return out.empty() ? "1" : out;
  }

  // Word expressions: factors `name`, `name^k` (k a nonzero integer) or `1`,
  // juxtaposed with optional `*` between them.
  GroupElement parse_word(std::string_view text) const {
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    GroupElement result = identity();
    bool any_factor = false;
    bool pending_star = false;
    skip_space();
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '*') {
        if (!any_factor || pending_star) throw Error("dangling '*' in word '" + std::string(text) + "'");
        pending_star = true;
        ++pos;
        skip_space();
        continue;
      }
      if (c == '1') {
        ++pos;
        if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
          throw Error("unexpected number in word '" + std::string(text) + "'");
        if (pos < text.size() && text[pos] == '^')
          throw Error("malformed exponent: the identity '1' takes no exponent");
      } else if (c >= 'a' && c <= 'z') {
        std::size_t start = pos;
        while (pos < text.size() &&
               ((text[pos] >= 'a' && text[pos] <= 'z') || (text[pos] >= '0' && text[pos] <= '9') ||
                text[pos] == '_'))
          ++pos;
        std::string_view name = text.substr(start, pos - start);
        auto index = index_of(name);
        if (!index) throw Error("unknown generator '" + std::string(name) + "'");
        BigInt exponent = 1;
        if (pos < text.size() && text[pos] == '^') {
          std::size_t estart = ++pos;
          if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
          while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
          auto parsed = parse_bigint(text.substr(estart, pos - estart));
          if (!parsed || *parsed == 0)
            throw Error("malformed exponent after '" + std::string(name) + "^'");
          exponent = *parsed;
        }
        result = multiply(result, generator(*index, exponent));
      } else {
        throw Error(std::string("unexpected character '") + c + "' in word '" + std::string(text) + "'");
      }
      any_factor = true;
      pending_star = false;
      skip_space();
    }
    if (!any_factor) throw Error("empty word expression");
    if (pending_star) throw Error("dangling '*' in word '" + std::string(text) + "'");
    return result;
  }

 private:
  void check_names() const {
    for (std::size_t k = 0; k < names_.size(); ++k) {
      if (!detail::valid_name(names_[k])) throw Error("invalid generator name '" + names_[k] + "'");
      for (std::size_t m = 0; m < k; ++m)
        if (names_[m] == names_[k]) throw Error("duplicate generator name '" + names_[k] + "'");
    }
  }

  static void push_reduced(std::vector<Syllable>& w, const Syllable& s) {
    if (s.exponent == 0) return;
    if (!w.empty() && w.back().generator == s.generator) {
      w.back().exponent += s.exponent;
      if (w.back().exponent == 0) w.pop_back();
      return;
    }
    w.push_back(s);
  }

  GroupKind kind_ = GroupKind::free;
  std::vector<std::string> names_;
  std::vector<BigInt> factors_;
};

}  // namespace daxkit
