#pragma once

// Plat-position model of a homotopy: the double curves of its track form the
// plat closure of a 2k-stranded braid with strands b_i, b_i'. Crossings of
// same-index strands carry a sign and a group element; their signed sum C(h)
// equals the Dax invariant of the homotopy.

#include "daxkit/error.hpp"
#include "daxkit/group.hpp"
#include "daxkit/group_ring.hpp"
#include "daxkit/homotopy.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace daxkit {

struct StrandId {
  std::size_t pair = 1;  // 1-based pair index
  bool primed = false;

  friend bool operator==(const StrandId&, const StrandId&) = default;
};

inline std::string format_strand(const StrandId& s) {
  return std::to_string(s.pair) + (s.primed ? "'" : "");
}

// The four local pictures a same-index crossing can have, left to right.
enum class CrossingType { t1, t2, t3, t4 };

inline int crossing_sign(CrossingType type) {
  switch (type) {
    case CrossingType::t1: return -1;
    case CrossingType::t2: return +1;
    case CrossingType::t3: return +1;
    case CrossingType::t4: return -1;
  }
  return 0;
}

inline std::string format_crossing_type(CrossingType type) {
  return "T" + std::to_string(static_cast<int>(type) + 1);
}

inline std::optional<CrossingType> parse_crossing_type(const std::string& text) {
  if (text == "T1") return CrossingType::t1;
  if (text == "T2") return CrossingType::t2;
  if (text == "T3") return CrossingType::t3;
  if (text == "T4") return CrossingType::t4;
  return std::nullopt;
}

struct PlatCrossing {
  StrandId over;   // smaller K-coordinate
  StrandId under;  // larger K-coordinate
  GroupElement element;
  CrossingType type = CrossingType::t1;

  bool same_index() const { return over.pair == under.pair; }

  friend bool operator==(const PlatCrossing&, const PlatCrossing&) = default;
};

struct PlatDiagram {
  std::size_t pairs = 1;
  std::vector<PlatCrossing> crossings;
  std::string t_min = "t_min";
  std::string t_max = "t_max";

  friend bool operator==(const PlatDiagram&, const PlatDiagram&) = default;
};

inline ReducedElement c_invariant(const PlatDiagram& d) {
  RingElement sum;
  for (const auto& c : d.crossings)
    if (c.same_index() && !c.element.is_identity()) sum.add(c.element, crossing_sign(c.type));
  return reduce_to_nonidentity(sum);
}

inline Diagnostics validate_plat(const PlatDiagram& d, const GroupSpec& spec) {
  Diagnostics out;
  if (d.pairs == 0) out.push_back({std::nullopt, "pair count must be positive"});
  auto in_range = [&](const StrandId& s) { return s.pair >= 1 && s.pair <= d.pairs; };
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& c = d.crossings[i];
    const std::string where = "crossing " + std::to_string(i + 1);
    if (!in_range(c.over))
      out.push_back({i, where + ": over strand " + format_strand(c.over) + " is outside 1.." +
                            std::to_string(d.pairs)});
    if (!in_range(c.under))
      out.push_back({i, where + ": under strand " + format_strand(c.under) + " is outside 1.." +
                            std::to_string(d.pairs)});
    if (c.over == c.under) out.push_back({i, where + ": a strand cannot cross itself"});
    if (!spec.contains(c.element)) out.push_back({i, where + ": element outside the group"});
  }
  return out;
}

// One double point per same-index crossing, in crossing order.
inline HomotopyTrace trace_of_plat(const PlatDiagram& d) {
  HomotopyTrace t{d.t_min, d.t_max, {}};
  for (const auto& c : d.crossings)
    if (c.same_index()) t.points.push_back(DoublePoint{crossing_sign(c.type), c.element});
  return t;
}

struct NewwayReport {
  bool equal = false;
  std::string c_value;
  std::string dax_value;
};

inline NewwayReport check_newway(const GroupSpec& spec, const PlatDiagram& d, const HomotopyTrace& t) {
  for (const auto& c : d.crossings) spec.require(c.element);
  for (const auto& p : t.points) spec.require(p.element);
  ReducedElement c = c_invariant(d);
  ReducedElement delta = dax_of_trace(t);
  return NewwayReport{c == delta, canonical_print(spec, c), canonical_print(spec, delta)};
}

}  // namespace daxkit
