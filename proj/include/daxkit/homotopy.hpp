#pragma once

// A generic regular homotopy recorded as its signed, group-labelled double
// points, and the Dax and Freedman-Quinn invariants read off from it.

#include "daxkit/error.hpp"
#include "daxkit/group.hpp"
#include "daxkit/group_ring.hpp"

#include <string>
#include <utility>
#include <vector>

namespace daxkit {

struct DoublePoint {
  int sign = 1;  // +1 or -1
  GroupElement element;

  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;
};

struct HomotopyTrace {
  std::string source;
  std::string target;
  std::vector<DoublePoint> points;

  friend bool operator==(const HomotopyTrace&, const HomotopyTrace&) = default;
};

// Signed sum of the double point elements; identity-labelled points drop out.
inline ReducedElement dax_of_trace(const HomotopyTrace& t) {
  RingElement sum;
  for (const auto& p : t.points)
    if (!p.element.is_identity()) sum.add(p.element, p.sign);
  return reduce_to_nonidentity(sum);
}

inline F2TElement fq_of_trace(const GroupSpec& spec, const HomotopyTrace& t,
                              FqMode mode = FqMode::drop_infinite) {
  return fq_project(spec, dax_of_trace(t), mode);
}

// Composition: first t1, then t2.
inline HomotopyTrace concat(const HomotopyTrace& t1, const HomotopyTrace& t2) {
  if (t1.target != t2.source)
    throw Error("cannot concatenate: '" + t1.target + "' does not match '" + t2.source + "'");
  HomotopyTrace out{t1.source, t2.target, t1.points};
  out.points.insert(out.points.end(), t2.points.begin(), t2.points.end());
  return out;
}

// Runs the homotopy backwards: time reversal is modelled as formal negation
// of every double point, with the sheet order held fixed.
inline HomotopyTrace reverse(const HomotopyTrace& t) {
  HomotopyTrace out{t.target, t.source, {}};
  out.points.reserve(t.points.size());
  for (auto it = t.points.rbegin(); it != t.points.rend(); ++it)
    out.points.push_back(DoublePoint{-it->sign, it->element});
  return out;
}

inline Diagnostics validate_trace(const HomotopyTrace& t, const GroupSpec& spec) {
  Diagnostics out;
  if (t.source.empty()) out.push_back({std::nullopt, "source label is empty"});
  if (t.target.empty()) out.push_back({std::nullopt, "target label is empty"});
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    const auto& p = t.points[i];
    if (p.sign != 1 && p.sign != -1)
      out.push_back({i, "double point " + std::to_string(i + 1) + " has sign " + std::to_string(p.sign) +
                            ", expected +1 or -1"});
    if (!spec.contains(p.element))
      out.push_back({i, "double point " + std::to_string(i + 1) + " carries an element outside the group"});
  }
  return out;
}

}  // namespace daxkit
