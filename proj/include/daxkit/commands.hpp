#pragma once

// Command dispatch for the daxkit tool. Output is deterministic: all sums
// are printed in the canonical term order.

#include "daxkit/decision.hpp"
#include "daxkit/document.hpp"
#include "daxkit/error.hpp"
#include "daxkit/group_ring.hpp"
#include "daxkit/homotopy.hpp"
#include "daxkit/plat.hpp"
#include "daxkit/sheets.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace daxkit {

enum ExitCode : int {
  exit_ok = 0,
  exit_parse_error = 1,
  exit_validation_error = 2,
  exit_inconclusive = 3,
  exit_obstruction = 4,
};

struct CommandResult {
  std::string out;
  std::string err;
  int exit_code = exit_ok;

  friend bool operator==(const CommandResult&, const CommandResult&) = default;
};

// Joins lines, terminating each with a newline.
inline std::string format_report(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

inline std::string format_diagnostics(const Diagnostics& diags, std::string_view prefix = {}) {
  std::string out;
  for (const auto& d : diags) {
    out += "error: ";
    if (!prefix.empty()) out += std::string(prefix) + ": ";
    out += d.message + "\n";
  }
  return out;
}

inline std::string format_parse_diagnostics(const Diagnostics& diags) {
  std::string out;
  for (const auto& d : diags) out += "line " + std::to_string(d.index.value_or(0)) + ": " + d.message + "\n";
  return out;
}

namespace detail {

struct CommandArgs {
  std::vector<std::string> positional;
  std::vector<std::string> flags;

  bool has(std::string_view flag) const { return std::find(flags.begin(), flags.end(), flag) != flags.end(); }
};

inline CommandArgs split_args(const std::vector<std::string>& args, std::size_t from) {
  CommandArgs out;
  for (std::size_t k = from; k < args.size(); ++k)
    (args[k].rfind("--", 0) == 0 ? out.flags : out.positional).push_back(args[k]);
  return out;
}

inline CommandResult fail(int code, std::string message) { return {"", "error: " + message + "\n", code}; }

template <class T>
std::string candidate_list(const std::vector<Named<T>>& list) {
  if (list.empty()) return "none declared";
  std::string out;
  for (std::size_t k = 0; k < list.size(); ++k) out += (k ? ", " : "") + list[k].name;
  return out;
}

template <class T>
const T* lookup(const std::vector<Named<T>>& list, const std::string& name, const char* kind, CommandResult& error) {
  if (const T* found = InputDocument::find(list, name)) return found;
  error = fail(exit_validation_error,
               std::string("unknown ") + kind + " '" + name + "'; candidates: " + candidate_list(list));
  return nullptr;
}

inline std::optional<CommandResult> check_shape(const CommandArgs& a, const std::string& command, std::size_t count,
                                                std::vector<std::string_view> allowed, const char* usage) {
  for (const auto& f : a.flags)
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
      return fail(exit_validation_error, "unknown flag '" + f + "' for " + command + "; usage: " + usage);
  if (count != static_cast<std::size_t>(-1) && a.positional.size() != count)
    return fail(exit_validation_error, "usage: " + std::string(usage));
  return std::nullopt;
}

inline std::optional<CommandResult> check_trace(const InputDocument& doc, const std::string& name,
                                                const HomotopyTrace& t) {
  auto diags = validate_trace(t, doc.group);
  if (diags.empty()) return std::nullopt;
  return CommandResult{"", format_diagnostics(diags, "trace " + name), exit_validation_error};
}

inline std::optional<CommandResult> check_plat(const InputDocument& doc, const std::string& name,
                                               const PlatDiagram& d) {
  auto diags = validate_plat(d, doc.group);
  if (diags.empty()) return std::nullopt;
  return CommandResult{"", format_diagnostics(diags, "plat " + name), exit_validation_error};
}

inline DaxContext context_of(const InputDocument& doc, bool dual, bool pi1) {
  return DaxContext{doc.group, doc.dax_gens, dual, pi1};
}

inline CommandResult cmd_dax(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "dax", 1, {}, "dax <trace>")) return *bad;
  CommandResult r;
  const auto* t = lookup(doc.traces, a.positional[0], "trace", r);
  if (!t) return r;
  if (auto bad = check_trace(doc, a.positional[0], *t)) return *bad;
  return {format_report({canonical_print(doc.group, dax_of_trace(*t))}), "", exit_ok};
}

inline CommandResult cmd_fq(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "fq", 1, {"--identify-inverses"}, "fq <trace> [--identify-inverses]")) return *bad;
  CommandResult r;
  const auto* t = lookup(doc.traces, a.positional[0], "trace", r);
  if (!t) return r;
  if (auto bad = check_trace(doc, a.positional[0], *t)) return *bad;
  FqMode mode = a.has("--identify-inverses") ? FqMode::identify_inverses : FqMode::drop_infinite;
  return {format_report({canonical_print(doc.group, fq_of_trace(doc.group, *t, mode))}), "", exit_ok};
}

inline CommandResult cmd_cinv(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "cinv", 1, {}, "cinv <plat>")) return *bad;
  CommandResult r;
  const auto* d = lookup(doc.plats, a.positional[0], "plat", r);
  if (!d) return r;
  if (auto bad = check_plat(doc, a.positional[0], *d)) return *bad;
  return {format_report({canonical_print(doc.group, c_invariant(*d))}), "", exit_ok};
}

inline CommandResult cmd_newway(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "newway", 2, {}, "newway <plat> <trace>")) return *bad;
  CommandResult r;
  const auto* d = lookup(doc.plats, a.positional[0], "plat", r);
  if (!d) return r;
  const auto* t = lookup(doc.traces, a.positional[1], "trace", r);
  if (!t) return r;
  if (auto bad = check_plat(doc, a.positional[0], *d)) return *bad;
  if (auto bad = check_trace(doc, a.positional[1], *t)) return *bad;
  NewwayReport report = check_newway(doc.group, *d, *t);
  if (report.equal) return {format_report({"EQUAL", "C = " + report.c_value}), "", exit_ok};
  return {format_report({"DIFFERENT", "C = " + report.c_value, "Delta = " + report.dax_value}), "", exit_obstruction};
}

inline CommandResult cmd_decide(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "decide", 1, {"--dual", "--pi1-iso"}, "decide <trace> [--dual] [--pi1-iso]"))
    return *bad;
  CommandResult r;
  const auto* t = lookup(doc.traces, a.positional[0], "trace", r);
  if (!t) return r;
  if (auto bad = check_trace(doc, a.positional[0], *t)) return *bad;
  Verdict v = decide_isotopy(*t, context_of(doc, a.has("--dual"), a.has("--pi1-iso")));
  std::vector<std::string> lines{format_verdict(v), "Dax = " + canonical_print(doc.group, v.dax.representative),
                                 v.explanation};
  int code = v.kind == VerdictKind::isotopic       ? exit_ok
             : v.kind == VerdictKind::not_isotopic ? exit_obstruction
                                                   : exit_inconclusive;
  return {format_report(lines), "", code};
}

inline CommandResult cmd_selfref(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "selfref", static_cast<std::size_t>(-1), {"--dual"}, "selfref <ring-expr> [--dual]"))
    return *bad;
  if (a.positional.empty()) return fail(exit_validation_error, "usage: selfref <ring-expr> [--dual]");
  std::string text;
  for (std::size_t k = 0; k < a.positional.size(); ++k) text += (k ? " " : "") + a.positional[k];
  RingElement omega;
  try {
    omega = parse_ring_expr(doc.group, text);
  } catch (const Error& e) {
    return fail(exit_parse_error, e.what());
  }
  SelfrefVerdict v = selfref_trivial(omega, context_of(doc, a.has("--dual"), false));
  std::vector<std::string> lines{"D(omega) = " + canonical_print(doc.group, v.dax.representative),
                                 v.trivial ? "TRIVIAL" : "NONTRIVIAL", v.explanation};
  return {format_report(lines), "", v.trivial ? exit_ok : exit_obstruction};
}

inline std::vector<std::string> sheet_state_lines(const SheetAssignment& s, const WhitneyPairing& m) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < m.size(); ++i)
    lines.push_back("asc p" + std::to_string(i + 1) + " q" + std::to_string(m.partner[i] + 1) +
                    (m.parity[i] == ArcParity::aligned ? " aligned" : " crossed"));
  for (Polarity pol : {Polarity::positive, Polarity::negative})
    for (std::size_t i = 0; i < s.size(); ++i)
      lines.push_back("assign " + format_point({pol, i}) + (s.swapped({pol, i}) ? " swp" : " std"));
  return lines;
}

inline CommandResult cmd_sheets_normalize(const InputDocument& doc, const CommandArgs& a) {
  const char* usage = "sheets-normalize <scenario> [--fq-zero] [--pi1-iso]";
  if (auto bad = check_shape(a, "sheets-normalize", 1, {"--fq-zero", "--pi1-iso"}, usage)) return *bad;
  CommandResult r;
  const auto* s = lookup(doc.sheets, a.positional[0], "sheets scenario", r);
  if (!s) return r;
  auto diags = validate_sheets(*s, doc.group);
  if (!diags.empty()) return {"", format_diagnostics(diags, "sheets " + a.positional[0]), exit_validation_error};
  if (s->mid.size() > max_normalize_pairs)
    return fail(exit_validation_error, "at most " + std::to_string(max_normalize_pairs) + " pairs are supported");

  NormalizeFlags flags{a.has("--fq-zero"), a.has("--pi1-iso")};
  NormalizeResult res = normalize_sheets(doc.group, s->ascending, s->descending, s->assignment, s->mid, flags);
  switch (res.status) {
    case NormalizeStatus::inconclusive:
      return {format_report({"INCONCLUSIVE(" + res.explanation + ")"}), "", exit_inconclusive};
    case NormalizeStatus::obstructed:
      return {format_report({"OBSTRUCTED", res.explanation}), "", exit_obstruction};
    case NormalizeStatus::normalized: break;
  }
  std::vector<std::string> lines{"NORMALIZED"};
  for (const auto& m : res.moves) lines.push_back(format_move(m));
  for (auto& line : sheet_state_lines(res.assignment, res.ascending)) lines.push_back(std::move(line));
  return {format_report(lines), "", exit_ok};
}

inline CommandResult cmd_validate(const InputDocument& doc, const CommandArgs& a) {
  if (auto bad = check_shape(a, "validate", 0, {}, "validate")) return *bad;
  std::string err;
  for (const auto& [name, t] : doc.traces) err += format_diagnostics(validate_trace(t, doc.group), "trace " + name);
  for (const auto& [name, d] : doc.plats) err += format_diagnostics(validate_plat(d, doc.group), "plat " + name);
  for (const auto& [name, s] : doc.sheets) err += format_diagnostics(validate_sheets(s, doc.group), "sheets " + name);
  if (!err.empty()) return {"", err, exit_validation_error};
  return {format_report({"OK"}), "", exit_ok};
}

}  // namespace detail

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"dax",     "fq",      "cinv",  "newway", "decide",
                                              "selfref", "sheets-normalize", "validate"};
  return names;
}

// args[0] is the command name.
inline CommandResult run_command(const InputDocument& doc, const std::vector<std::string>& args) {
  if (args.empty()) return detail::fail(exit_validation_error, "no command given");
  const std::string& name = args[0];
  auto a = detail::split_args(args, 1);
  try {
    if (name == "dax") return detail::cmd_dax(doc, a);
    if (name == "fq") return detail::cmd_fq(doc, a);
    if (name == "cinv") return detail::cmd_cinv(doc, a);
    if (name == "newway") return detail::cmd_newway(doc, a);
    if (name == "decide") return detail::cmd_decide(doc, a);
    if (name == "selfref") return detail::cmd_selfref(doc, a);
    if (name == "sheets-normalize") return detail::cmd_sheets_normalize(doc, a);
    if (name == "validate") return detail::cmd_validate(doc, a);
  } catch (const Error& e) {
    return detail::fail(exit_validation_error, e.what());
  }
  std::string known;
  for (const auto& c : command_names()) known += (known.empty() ? "" : ", ") + c;
  return detail::fail(exit_validation_error, "unknown command '" + name + "'; candidates: " + known);
}

// Parses `text` and runs one command against it.
inline CommandResult run_text(std::string_view text, const std::vector<std::string>& args) {
  ParseResult parsed = parse_input(text);
  if (!parsed.document) return {"", format_parse_diagnostics(parsed.diagnostics), exit_parse_error};
  return run_command(*parsed.document, args);
}

}  // namespace daxkit
