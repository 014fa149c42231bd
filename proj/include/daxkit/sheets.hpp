#pragma once

// Sheet and swap calculus on the middle level of a regular homotopy made of
// n finger moves followed by n Whitney moves.
//
// Double points are p_1..p_n (positive, preimages x_i, x_i') and q_1..q_n
// (negative, preimages y_i, y_i'). A sheet assignment holds one bit per double
// point: standard puts the unprimed preimage in sheet one, swapped puts the
// primed one there. A Whitney pairing matches each p_i with some q_j; an
// aligned pair has arcs {x_i, y_j}, {x_i', y_j'} and a crossed pair has arcs
// {x_i, y_j'}, {x_i', y_j}. An assignment is compatible with a pairing when
// every arc joins two preimages in the same sheet.

#include "daxkit/error.hpp"
#include "daxkit/group.hpp"
#include "daxkit/group_ring.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace daxkit {

enum class Polarity { positive, negative };

struct PointId {
  Polarity polarity = Polarity::positive;
  std::size_t index = 0;  // 0-based

  int sign() const { return polarity == Polarity::positive ? 1 : -1; }
  friend auto operator<=>(const PointId&, const PointId&) = default;
};

inline PointId pos_id(std::size_t i) { return {Polarity::positive, i}; }
inline PointId neg_id(std::size_t i) { return {Polarity::negative, i}; }

inline std::string format_point(const PointId& id) {
  return (id.polarity == Polarity::positive ? "p" : "q") + std::to_string(id.index + 1);
}

// Elements are read relative to the fixed reference ordering of the sheets.
struct MiddleLevel {
  std::vector<GroupElement> positive;
  std::vector<GroupElement> negative;

  std::size_t size() const { return positive.size(); }
  const GroupElement& element(const PointId& id) const {
    return id.polarity == Polarity::positive ? positive.at(id.index) : negative.at(id.index);
  }

  friend bool operator==(const MiddleLevel&, const MiddleLevel&) = default;
};

struct SheetAssignment {
  std::vector<bool> positive_swapped;
  std::vector<bool> negative_swapped;

  static SheetAssignment standard(std::size_t n) {
    return {std::vector<bool>(n, false), std::vector<bool>(n, false)};
  }

  std::size_t size() const { return positive_swapped.size(); }
  bool swapped(const PointId& id) const {
    return id.polarity == Polarity::positive ? positive_swapped.at(id.index) : negative_swapped.at(id.index);
  }
  void flip(const PointId& id) {
    auto& bits = id.polarity == Polarity::positive ? positive_swapped : negative_swapped;
    bits.at(id.index) = !bits.at(id.index);
  }

  friend bool operator==(const SheetAssignment&, const SheetAssignment&) = default;
};

enum class ArcParity { aligned, crossed };

inline ArcParity toggled(ArcParity p) {
  return p == ArcParity::aligned ? ArcParity::crossed : ArcParity::aligned;
}

struct WhitneyPairing {
  std::vector<std::size_t> partner;  // partner[i] = j when p_i is matched with q_j
  std::vector<ArcParity> parity;

  std::size_t size() const { return partner.size(); }

  bool is_perfect() const {
    if (parity.size() != partner.size()) return false;
    std::vector<bool> used(partner.size(), false);
    for (std::size_t j : partner) {
      if (j >= partner.size() || used[j]) return false;
      used[j] = true;
    }
    return true;
  }

  std::size_t positive_of(std::size_t negative) const {
    for (std::size_t i = 0; i < partner.size(); ++i)
      if (partner[i] == negative) return i;
    throw Error("negative double point q" + std::to_string(negative + 1) + " is unmatched");
  }

  friend bool operator==(const WhitneyPairing&, const WhitneyPairing&) = default;
};

namespace detail {

inline void require_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
}

inline void require_pairing(const WhitneyPairing& m) {
  if (!m.is_perfect()) throw Error("Whitney pairing is not a perfect matching");
}

}  // namespace detail

inline bool compatible(const SheetAssignment& a, const WhitneyPairing& m) {
  detail::require_sizes(a.size(), m.size(), "compatible");
  detail::require_sizes(a.negative_swapped.size(), m.size(), "compatible");
  detail::require_pairing(m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool same = a.positive_swapped[i] == a.negative_swapped[m.partner[i]];
    if (same != (m.parity[i] == ArcParity::aligned)) return false;
  }
  return true;
}

struct Swap {
  PointId id;
  int sign = 1;
  GroupElement element;

  friend bool operator==(const Swap&, const Swap&) = default;
};

// Positives first, then negatives, each in index order.
inline std::vector<Swap> swap_difference(const SheetAssignment& a, const SheetAssignment& b,
                                         const MiddleLevel& mid) {
  detail::require_sizes(a.size(), b.size(), "swap_difference");
  detail::require_sizes(a.size(), mid.size(), "swap_difference");
  detail::require_sizes(mid.negative.size(), mid.size(), "swap_difference");
  std::vector<Swap> out;
  for (Polarity pol : {Polarity::positive, Polarity::negative})
    for (std::size_t i = 0; i < mid.size(); ++i) {
      PointId id{pol, i};
      if (a.swapped(id) != b.swapped(id)) out.push_back(Swap{id, id.sign(), mid.element(id)});
    }
  return out;
}

enum class MatchRule {
  strict,   // (+, g) pairs only with (-, g)
  relaxed,  // additionally (+, g) with (+, g^-1), as a sheet re-ordering allows
};

// Partitions the swaps with nontrivial element into cancelling pairs, given
// as index pairs into `swaps`. Trivial-element swaps are left unmatched.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> match_cancelling_pairs(
    const GroupSpec& spec, const std::vector<Swap>& swaps, MatchRule rule = MatchRule::strict) {
  // Per canonical element: indices that count as positive / negative.
  std::map<GroupElement, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, ElementLess> buckets;
  std::map<GroupElement, std::vector<std::size_t>, ElementLess> involutions;
  for (std::size_t k = 0; k < swaps.size(); ++k) {
    const Swap& s = swaps[k];
    if (s.sign != 1 && s.sign != -1) throw Error("swap sign must be +1 or -1");
    spec.require(s.element);
    if (s.element.is_identity()) continue;
    GroupElement key = s.element;
    int sign = s.sign;
    if (rule == MatchRule::relaxed) {
      GroupElement inv = spec.inverse(key);
      if (inv == key) {
        involutions[key].push_back(k);
        continue;
      }
      if (compare_elements(inv, key) < 0) {
        key = inv;
        sign = -sign;
      }
    }
    auto& bucket = buckets[key];
    (sign == 1 ? bucket.first : bucket.second).push_back(k);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [g, bucket] : buckets) {
    if (bucket.first.size() != bucket.second.size()) return std::nullopt;
    for (std::size_t k = 0; k < bucket.first.size(); ++k) pairs.emplace_back(bucket.first[k], bucket.second[k]);
  }
  for (const auto& [g, members] : involutions) {
    if (members.size() % 2 != 0) return std::nullopt;
    for (std::size_t k = 0; k < members.size(); k += 2) pairs.emplace_back(members[k], members[k + 1]);
  }
  for (auto& p : pairs)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// Sums the Whitney disks of p_i and p_j. With p_i matched to q_a and p_j to
// q_b, the new arcs are {x_i, y_b'}, {x_i', y_b}, {x_j, y_a'}, {x_j', y_a}
// when both old pairs were aligned: p_i takes q_b and p_j takes q_a, each with
// the parity of the other's old pair toggled. The square of the sum is only
// null-homotopic when the swaps at p_i and q_b carry the same element.
inline WhitneyPairing sum_whitney(const WhitneyPairing& m, std::size_t i, std::size_t j, const MiddleLevel& mid,
                                  bool unsafe = false) {
  detail::require_pairing(m);
  detail::require_sizes(m.size(), mid.size(), "sum_whitney");
  if (i >= m.size() || j >= m.size()) throw Error("sum_whitney: index out of range");
  if (i == j) throw Error("sum_whitney: cannot sum a Whitney disk with itself");
  const std::size_t a = m.partner[i], b = m.partner[j];
  if (!unsafe && !(mid.positive[i] == mid.negative[b]))
    throw Error("sum_whitney: elements of p" + std::to_string(i + 1) + " and q" + std::to_string(b + 1) +
                " differ, so the summing square is not null-homotopic");
  WhitneyPairing out = m;
  out.partner[i] = b;
  out.partner[j] = a;
  out.parity[i] = toggled(m.parity[j]);
  out.parity[j] = toggled(m.parity[i]);
  return out;
}

struct SheetMove {
  enum class Kind { flip, sum };
  Kind kind = Kind::flip;
  std::size_t i = 0;  // 0-based positive index
  std::size_t j = 0;  // second positive index for sums

  friend bool operator==(const SheetMove&, const SheetMove&) = default;
};

inline std::string format_move(const SheetMove& m) {
  if (m.kind == SheetMove::Kind::flip) return "flip " + std::to_string(m.i + 1);
  return "sum " + std::to_string(m.i + 1) + " " + std::to_string(m.j + 1);
}

enum class NormalizeStatus { normalized, obstructed, inconclusive };

struct NormalizeFlags {
  bool fq_zero = false;  // caller certifies fq(h) = 0
  bool pi1_iso = false;  // caller certifies pi1(X - G) -> pi1(X) is an isomorphism
};

struct NormalizeResult {
  NormalizeStatus status = NormalizeStatus::inconclusive;
  std::vector<SheetMove> moves;
  SheetAssignment assignment;  // final ascending sheets
  WhitneyPairing ascending;    // final ascending pairing
  std::string explanation;
};

namespace detail {

struct SheetState {
  SheetAssignment sheets;
  WhitneyPairing pairing;
};

inline std::vector<std::uint8_t> state_key(const SheetState& s) {
  std::vector<std::uint8_t> key;
  for (bool b : s.sheets.positive_swapped) key.push_back(b);
  for (bool b : s.sheets.negative_swapped) key.push_back(b);
  for (std::size_t k = 0; k < s.pairing.size(); ++k) {
    key.push_back(static_cast<std::uint8_t>(s.pairing.partner[k]));
    key.push_back(s.pairing.parity[k] == ArcParity::crossed);
  }
  return key;
}

// Depth-first form of the inductive argument against a fixed target: every
// move resolves one cancelling pair (+g at p, -g at q) of the remaining swap
// difference. Case 1 re-chooses the sheets of an ascending pair whose two
// points both need swapping; case 2 sums two Whitney disks so that the pair
// becomes matched and then re-chooses its sheets.
inline bool resolve(const SheetState& state, const SheetAssignment& target, const MiddleLevel& mid,
                    std::set<std::vector<std::uint8_t>>& visited, std::vector<SheetMove>& moves,
                    SheetState& final_state) {
  const std::size_t n = mid.size();
  auto differs = [&](const PointId& id) { return state.sheets.swapped(id) != target.swapped(id); };
  bool done = true;
  for (std::size_t k = 0; k < n && done; ++k)
    if (differs(pos_id(k)) || differs(neg_id(k))) done = false;
  if (done) {
    final_state = state;
    return true;
  }
  if (!visited.insert(state_key(state)).second) return false;

  auto attempt = [&](SheetState next, const SheetMove& move) {
    if (!compatible(next.sheets, next.pairing)) return false;
    moves.push_back(move);
    if (resolve(next, target, mid, visited, moves, final_state)) return true;
    moves.pop_back();
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t q = state.pairing.partner[i];
    if (!differs(pos_id(i)) || !differs(neg_id(q))) continue;
    if (!(mid.positive[i] == mid.negative[q])) continue;
    SheetState next = state;
    next.sheets.flip(pos_id(i));
    next.sheets.flip(neg_id(q));
    if (attempt(std::move(next), SheetMove{SheetMove::Kind::flip, i, 0})) return true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!differs(pos_id(i))) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::size_t q = state.pairing.partner[j];
      if (!differs(neg_id(q)) || !(mid.positive[i] == mid.negative[q])) continue;
      SheetState next = state;
      next.pairing = sum_whitney(state.pairing, i, j, mid);
      next.sheets.flip(pos_id(i));
      next.sheets.flip(neg_id(q));
      if (attempt(std::move(next), SheetMove{SheetMove::Kind::sum, i, j})) return true;
    }
  }
  return false;
}

}  // namespace detail

inline constexpr std::size_t max_normalize_pairs = 16;

// Deforms the ascending data until one pair of sheets is both ascending and
// descending. Targets are the descending-compatible assignments, tried from
// nearest to farthest (Hamming distance to `start`, then by bit pattern).
inline NormalizeResult normalize_sheets(const GroupSpec& spec, const WhitneyPairing& ascending,
                                        const WhitneyPairing& descending, const SheetAssignment& start,
                                        const MiddleLevel& mid, NormalizeFlags flags) {
  const std::size_t n = mid.size();
  detail::require_sizes(mid.negative.size(), n, "normalize_sheets");
  detail::require_sizes(ascending.size(), n, "normalize_sheets");
  detail::require_sizes(descending.size(), n, "normalize_sheets");
  detail::require_sizes(start.size(), n, "normalize_sheets");
  detail::require_pairing(ascending);
  detail::require_pairing(descending);
  for (const auto& g : mid.positive) spec.require(g);
  for (const auto& g : mid.negative) spec.require(g);
  if (!compatible(start, ascending)) throw Error("initial sheets are not ascending");
  if (n > max_normalize_pairs)
    throw Error("normalize_sheets supports at most " + std::to_string(max_normalize_pairs) + " pairs");

  NormalizeResult result;
  result.assignment = start;
  result.ascending = ascending;

  std::vector<std::string> missing;
  if (!flags.fq_zero) missing.push_back("fq-zero");
  if (!flags.pi1_iso) missing.push_back("pi1-iso");
  if (!missing.empty()) {
    result.status = NormalizeStatus::inconclusive;
    for (std::size_t k = 0; k < missing.size(); ++k) result.explanation += (k ? "," : "") + missing[k];
    return result;
  }

  struct Candidate {
    std::size_t distance;
    std::uint32_t mask;
    SheetAssignment sheets;
  };
  std::vector<Candidate> targets;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    SheetAssignment b = SheetAssignment::standard(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool bit = (mask >> i) & 1u;
      b.positive_swapped[i] = bit;
      b.negative_swapped[descending.partner[i]] = bit != (descending.parity[i] == ArcParity::crossed);
    }
    std::size_t distance = 0;
    for (std::size_t i = 0; i < n; ++i)
      distance += (b.positive_swapped[i] != start.positive_swapped[i]) +
                  (b.negative_swapped[i] != start.negative_swapped[i]);
    targets.push_back(Candidate{distance, mask, std::move(b)});
  }
  std::stable_sort(targets.begin(), targets.end(),
                   [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });

  bool any_partition = false;
  for (const auto& target : targets) {
    auto swaps = swap_difference(start, target.sheets, mid);
    std::size_t positives = std::count_if(swaps.begin(), swaps.end(), [](const Swap& s) { return s.sign == 1; });
    if (2 * positives != swaps.size()) continue;
    if (!match_cancelling_pairs(spec, swaps)) continue;
    any_partition = true;

    std::set<std::vector<std::uint8_t>> visited;
    std::vector<SheetMove> moves;
    detail::SheetState final_state;
    if (detail::resolve({start, ascending}, target.sheets, mid, visited, moves, final_state)) {
      result.status = NormalizeStatus::normalized;
      result.moves = std::move(moves);
      result.assignment = final_state.sheets;
      result.ascending = final_state.pairing;
      result.explanation = "sheets are ascending and descending after " + std::to_string(result.moves.size()) +
                           (result.moves.size() == 1 ? " move" : " moves");
      return result;
    }
  }

  result.status = NormalizeStatus::obstructed;
  result.explanation = any_partition
                           ? "cancelling pairs exist but no sequence of sheet re-choices and Whitney sums realizes them"
                           : "no descending sheets differ from the ascending ones by cancelling pairs of swaps";
  return result;
}

}  // namespace daxkit
