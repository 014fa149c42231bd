#pragma once

// Pair invariants and isotopy verdicts. Hypotheses about the smooth situation
// (common dual sphere, pi1 of the complement) are asserted by the caller.

#include "daxkit/group.hpp"
#include "daxkit/group_ring.hpp"
#include "daxkit/homotopy.hpp"
#include "daxkit/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace daxkit {

struct DaxContext {
  GroupSpec spec;
  std::vector<ReducedElement> dax_gens;  // image of dax: pi3(X) -> Z[pi1 \ 1]
  bool has_common_dual = false;
  bool pi1_complement_iso = false;
};

inline void require_context(const DaxContext& ctx) {
  for (const auto& g : ctx.dax_gens) require_ring(ctx.spec, g.ring());
}

// Representative in Z[pi1 \ 1] of a class in the quotient by dax(pi3).
struct DaxClass {
  ReducedElement representative;
  bool is_zero = false;
  std::optional<std::vector<BigInt>> witness;  // coefficients when zero
};

inline DaxClass class_of(const ReducedElement& x, const DaxContext& ctx) {
  DaxClass out;
  out.representative = x;
  out.witness = lattice_contains(x, ctx.dax_gens);
  out.is_zero = out.witness.has_value();
  return out;
}

inline DaxClass pair_dax_class(const HomotopyTrace& t, const DaxContext& ctx) {
  require_context(ctx);
  for (const auto& p : t.points) ctx.spec.require(p.element);
  return class_of(dax_of_trace(t), ctx);
}

enum class VerdictKind { isotopic, not_isotopic, inconclusive };

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::vector<std::string> failed;  // hypotheses that do not hold
  DaxClass dax;
  std::string explanation;
};

inline std::string format_verdict(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::isotopic: return "ISOTOPIC";
    case VerdictKind::not_isotopic: return "NOT-ISOTOPIC";
    case VerdictKind::inconclusive: break;
  }
  std::string names;
  for (std::size_t k = 0; k < v.failed.size(); ++k) names += (k ? "," : "") + v.failed[k];
  return "INCONCLUSIVE(" + names + ")";
}

// The isotopy criterion needs a common dual, pi1(X - G) = pi1(X) and a trivial dax
// homomorphism; it then says "isotopic away from G" iff Dax(D0, D1) = 0.
inline Verdict decide_isotopy(const HomotopyTrace& t, const DaxContext& ctx) {
  Verdict v;
  v.dax = pair_dax_class(t, ctx);
  if (!ctx.has_common_dual) v.failed.push_back("common-dual");
  if (!ctx.pi1_complement_iso) v.failed.push_back("pi1-iso");
  if (!ctx.dax_gens.empty()) v.failed.push_back("trivial-dax");
  if (!v.failed.empty()) {
    v.kind = VerdictKind::inconclusive;
    v.explanation = std::string("hypotheses not met; the Dax class is ") + (v.dax.is_zero ? "zero" : "nonzero");
    return v;
  }
  v.kind = v.dax.is_zero ? VerdictKind::isotopic : VerdictKind::not_isotopic;
  v.explanation = v.dax.is_zero ? "Dax invariant vanishes; the disks are isotopic rel boundary away from the dual"
                                : "Dax invariant is nonzero";
  return v;
}

// Dax(D, D_omega) is the class of D(omega).
inline DaxClass selfref_class(const RingElement& omega, const DaxContext& ctx) {
  require_context(ctx);
  require_ring(ctx.spec, omega);
  return class_of(d_hom(ctx.spec, omega), ctx);
}

struct SelfrefVerdict {
  bool trivial = false;
  bool algebraic_only = false;  // no common dual asserted
  DaxClass dax;
  std::string explanation;
};

inline SelfrefVerdict selfref_trivial(const RingElement& omega, const DaxContext& ctx) {
  SelfrefVerdict v;
  v.dax = selfref_class(omega, ctx);
  v.trivial = v.dax.is_zero;
  v.algebraic_only = !ctx.has_common_dual;
  if (v.dax.representative.is_zero())
    v.explanation = "D(omega) vanishes identically";
  else if (v.trivial)
    v.explanation = "D(omega) lies in the image of dax";
  else
    v.explanation = "D(omega) is nonzero modulo the image of dax";
  if (v.algebraic_only) v.explanation += " (algebraic only: no common dual asserted)";
  else if (v.trivial) v.explanation += "; D and D_omega are isotopic";
  return v;
}

}  // namespace daxkit
