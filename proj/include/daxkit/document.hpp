#pragma once

// Line-oriented input format. `#` starts a comment; blank lines are ignored.
//
//   group free <names...> | group abelian <names...> [torsion <d1> ...]
//   daxgen <ring-expr>
//   trace <name> from <label> to <label>
//     dp <+|-> <word>
//   end
//   plat <name> pairs <k>
//     crossing over <i|i'> under <j|j'> type <T1..T4> g <word>
//   end
//   sheets <name> n <n>
//     pos <i> g <word> | neg <i> g <word>
//     asc <pi> <qj> <aligned|crossed> | desc <pi> <qj> <aligned|crossed>
//     assign <id> <std|swp>
//   end

#include "daxkit/bigint.hpp"
#include "daxkit/error.hpp"
#include "daxkit/group.hpp"
#include "daxkit/group_ring.hpp"
#include "daxkit/homotopy.hpp"
#include "daxkit/plat.hpp"
#include "daxkit/sheets.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace daxkit {

// Marks an asc/desc entry that the document never supplied.
inline constexpr std::size_t unmatched = std::numeric_limits<std::size_t>::max();

struct SheetsScenario {
  MiddleLevel mid;
  WhitneyPairing ascending;
  WhitneyPairing descending;
  SheetAssignment assignment;

  friend bool operator==(const SheetsScenario&, const SheetsScenario&) = default;
};

template <class T>
struct Named {
  std::string name;
  T value;

  friend bool operator==(const Named&, const Named&) = default;
};

struct InputDocument {
  GroupSpec group;
  std::vector<ReducedElement> dax_gens;
  std::vector<Named<HomotopyTrace>> traces;
  std::vector<Named<PlatDiagram>> plats;
  std::vector<Named<SheetsScenario>> sheets;

  template <class T>
  static const T* find(const std::vector<Named<T>>& list, std::string_view name) {
    for (const auto& item : list)
      if (item.name == name) return &item.value;
    return nullptr;
  }

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

inline Diagnostics validate_sheets(const SheetsScenario& s, const GroupSpec& spec) {
  Diagnostics out;
  const std::size_t n = s.mid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!spec.contains(s.mid.positive[i])) out.push_back({i, "p" + std::to_string(i + 1) + ": element outside the group"});
    if (!spec.contains(s.mid.negative[i])) out.push_back({i, "q" + std::to_string(i + 1) + ": element outside the group"});
  }
  auto check = [&](const WhitneyPairing& m, const char* which) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.partner[i] == unmatched) out.push_back({i, std::string(which) + " pairing has no entry for p" + std::to_string(i + 1)});
    if (!m.is_perfect()) {
      out.push_back({std::nullopt, std::string(which) + " pairing is not a perfect matching"});
      return false;
    }
    return true;
  };
  bool asc_ok = check(s.ascending, "asc");
  check(s.descending, "desc");
  if (asc_ok && !compatible(s.assignment, s.ascending))
    out.push_back({std::nullopt, "assigned sheets are not compatible with the asc pairing"});
  return out;
}

struct ParseResult {
  std::optional<InputDocument> document;
  Diagnostics diagnostics;  // index holds the 1-based line number
};

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Text after the first `count` whitespace-separated words.
inline std::string_view rest_after(std::string_view line, std::size_t count) {
  std::size_t pos = 0;
  for (std::size_t k = 0; k < count; ++k) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
  }
  return trim(line.substr(pos));
}

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto ok = [](char c, bool first) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || (!first && c >= '0' && c <= '9');
  };
  if (!ok(s[0], true)) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return ok(c, false); });
}

inline std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

inline std::optional<StrandId> parse_strand(std::string_view s) {
  bool primed = !s.empty() && s.back() == '\'';
  if (primed) s.remove_suffix(1);
  auto pair = parse_count(s);
  if (!pair) return std::nullopt;
  return StrandId{*pair, primed};
}

inline std::optional<PointId> parse_point(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'p' && s[0] != 'q')) return std::nullopt;
  auto k = parse_count(s.substr(1));
  if (!k || *k == 0) return std::nullopt;
  return PointId{s[0] == 'p' ? Polarity::positive : Polarity::negative, *k - 1};
}

class DocumentParser {
 public:
  ParseResult run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      ++line_no;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::string_view line = trim(raw);
      if (!line.empty()) handle(line_no, line);
      if (end == text.size()) break;
      start = end + 1;
    }
    if (block_) error(block_line_, "missing 'end' for " + block_kind() + " '" + block_name_ + "'");
    if (!seen_group_) error(line_no == 0 ? 1 : line_no, "missing group declaration");

    std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                     [](const Diagnostic& x, const Diagnostic& y) { return x.index < y.index; });
    ParseResult result;
    result.diagnostics = std::move(diagnostics_);
    if (result.diagnostics.empty()) result.document = std::move(doc_);
    return result;
  }

 private:
  using Block = std::variant<HomotopyTrace, PlatDiagram, SheetsScenario>;

  void error(std::size_t line, std::string message) { diagnostics_.push_back({line, std::move(message)}); }

  std::string block_kind() const {
    if (!block_) return "";
    if (std::holds_alternative<HomotopyTrace>(*block_)) return "trace";
    if (std::holds_alternative<PlatDiagram>(*block_)) return "plat";
    return "sheets";
  }

  std::optional<GroupElement> word(std::size_t line, std::string_view text) {
    if (!group_ok_) return std::nullopt;
    try {
      return doc_.group.parse_word(text);
    } catch (const Error& e) {
      error(line, e.what());
      return std::nullopt;
    }
  }

  void handle(std::size_t line, std::string_view text) {
    auto words = split_words(text);
    const std::string& head = words[0];

    if (!seen_group_ && head != "group") {
      error(line, "the group declaration must come first");
      seen_group_ = true;  // report once
      group_ok_ = false;
    }
    if (head == "group") return handle_group(line, words);
    if (block_) {
      if (head == "trace" || head == "plat" || head == "sheets" || head == "daxgen") {
        error(block_line_, "missing 'end' for " + block_kind() + " '" + block_name_ + "'");
        block_.reset();
      } else {
        return handle_block_line(line, text, words);
      }
    }
    if (head == "daxgen") return handle_daxgen(line, text);
    if (head == "trace") return open_trace(line, words);
    if (head == "plat") return open_plat(line, words);
    if (head == "sheets") return open_sheets(line, words);
    if (head == "end") return error(line, "'end' without an open block");
    error(line, "unknown directive '" + head + "'");
  }

  void handle_group(std::size_t line, const std::vector<std::string>& words) {
    if (seen_group_) {
      error(line, group_ok_ || !diagnostics_.empty() ? "duplicate group declaration" : "misplaced group declaration");
      return;
    }
    seen_group_ = true;
    if (words.size() < 2 || (words[1] != "free" && words[1] != "abelian")) {
      error(line, "expected 'group free ...' or 'group abelian ...'");
      return;
    }
    std::vector<std::string> names;
    std::vector<BigInt> factors;
    std::size_t k = 2;
    for (; k < words.size() && words[k] != "torsion"; ++k) names.push_back(words[k]);
    if (k < words.size()) {
      if (words[1] == "free") {
        error(line, "a free group has no torsion");
        return;
      }
      if (k + 1 == words.size()) {
        error(line, "'torsion' needs at least one invariant factor");
        return;
      }
      for (++k; k < words.size(); ++k) {
        auto d = parse_bigint(words[k]);
        if (!d) {
          error(line, "malformed invariant factor '" + words[k] + "'");
          return;
        }
        factors.push_back(*d);
      }
    }
    try {
      doc_.group = words[1] == "free" ? GroupSpec::free(std::move(names)) : GroupSpec::abelian(std::move(names), std::move(factors));
      group_ok_ = true;
    } catch (const Error& e) {
      error(line, e.what());
    }
  }

  void handle_daxgen(std::size_t line, std::string_view text) {
    if (!group_ok_) return;
    try {
      RingElement x = parse_ring_expr(doc_.group, rest_after(text, 1));
      if (x.coefficient(doc_.group.identity()) != 0) {
        error(line, "a dax generator has no identity term");
        return;
      }
      doc_.dax_gens.push_back(reduce_to_nonidentity(x));
    } catch (const Error& e) {
      error(line, e.what());
    }
  }

  template <class T>
  bool claim_name(std::size_t line, const std::vector<Named<T>>& list, const std::string& name, const char* kind) {
    if (!valid_identifier(name)) {
      error(line, std::string("invalid ") + kind + " name '" + name + "'");
      return false;
    }
    if (InputDocument::find(list, name)) {
      error(line, std::string("duplicate ") + kind + " name '" + name + "'");
      return false;
    }
    return true;
  }

  void begin(std::size_t line, std::string name, Block block) {
    block_ = std::move(block);
    block_line_ = line;
    block_name_ = std::move(name);
    block_valid_ = true;
  }

  void open_trace(std::size_t line, const std::vector<std::string>& w) {
    HomotopyTrace t;
    bool ok = w.size() == 6 && w[2] == "from" && w[4] == "to";
    if (!ok) error(line, "expected 'trace <name> from <label> to <label>'");
    else {
      ok = claim_name(line, doc_.traces, w[1], "trace");
      for (const auto* label : {&w[3], &w[5]})
        if (!valid_identifier(*label)) {
          error(line, "invalid disk label '" + *label + "'");
          ok = false;
        }
      t.source = w[3];
      t.target = w[5];
    }
    begin(line, w.size() > 1 ? w[1] : "", std::move(t));
    block_valid_ = ok;
  }

  void open_plat(std::size_t line, const std::vector<std::string>& w) {
    PlatDiagram d;
    bool ok = w.size() == 4 && w[2] == "pairs";
    std::optional<std::size_t> pairs;
    if (ok) pairs = parse_count(w[3]);
    if (!ok || !pairs) {
      error(line, "expected 'plat <name> pairs <count>'");
      ok = false;
    } else {
      ok = claim_name(line, doc_.plats, w[1], "plat");
      d.pairs = *pairs;
    }
    begin(line, w.size() > 1 ? w[1] : "", std::move(d));
    block_valid_ = ok;
  }

  void open_sheets(std::size_t line, const std::vector<std::string>& w) {
    SheetsScenario s;
    bool ok = w.size() == 4 && w[2] == "n";
    std::optional<std::size_t> n;
    if (ok) n = parse_count(w[3]);
    if (!ok || !n) {
      error(line, "expected 'sheets <name> n <count>'");
      ok = false;
      n = 0;
    } else {
      ok = claim_name(line, doc_.sheets, w[1], "sheets");
    }
    s.mid.positive.assign(*n, doc_.group.identity());
    s.mid.negative.assign(*n, doc_.group.identity());
    s.ascending = {std::vector<std::size_t>(*n, unmatched), std::vector<ArcParity>(*n, ArcParity::aligned)};
    s.descending = s.ascending;
    s.assignment = SheetAssignment::standard(*n);
    seen_pos_.assign(*n, false);
    seen_neg_.assign(*n, false);
    seen_assign_.assign(2 * *n, false);
    begin(line, w.size() > 1 ? w[1] : "", std::move(s));
    block_valid_ = ok;
  }

  void handle_block_line(std::size_t line, std::string_view text, const std::vector<std::string>& w) {
    if (w[0] == "end") {
      if (w.size() != 1) error(line, "unexpected text after 'end'");
      close_block(line);
      return;
    }
    if (auto* t = std::get_if<HomotopyTrace>(&*block_)) return trace_line(line, text, w, *t);
    if (auto* d = std::get_if<PlatDiagram>(&*block_)) return plat_line(line, text, w, *d);
    sheets_line(line, text, w, std::get<SheetsScenario>(*block_));
  }

  void trace_line(std::size_t line, std::string_view text, const std::vector<std::string>& w, HomotopyTrace& t) {
    if (w[0] != "dp" || w.size() < 3 || (w[1] != "+" && w[1] != "-")) {
      error(line, "expected 'dp <+|-> <word>' inside trace");
      block_valid_ = false;
      return;
    }
    auto g = word(line, rest_after(text, 2));
    if (!g) {
      block_valid_ = false;
      return;
    }
    t.points.push_back(DoublePoint{w[1] == "+" ? 1 : -1, *g});
  }

  void plat_line(std::size_t line, std::string_view text, const std::vector<std::string>& w, PlatDiagram& d) {
    bool shape = w.size() >= 9 && w[0] == "crossing" && w[1] == "over" && w[3] == "under" && w[5] == "type" && w[7] == "g";
    if (!shape) {
      error(line, "expected 'crossing over <i|i'> under <j|j'> type <T1..T4> g <word>' inside plat");
      block_valid_ = false;
      return;
    }
    auto over = parse_strand(w[2]);
    auto under = parse_strand(w[4]);
    auto type = parse_crossing_type(w[6]);
    if (!over) error(line, "malformed strand '" + w[2] + "'");
    if (!under) error(line, "malformed strand '" + w[4] + "'");
    if (!type) error(line, "unknown crossing type '" + w[6] + "'");
    auto g = word(line, rest_after(text, 8));
    if (!over || !under || !type || !g) {
      block_valid_ = false;
      return;
    }
    d.crossings.push_back(PlatCrossing{*over, *under, *g, *type});
  }

  void sheets_line(std::size_t line, std::string_view text, const std::vector<std::string>& w, SheetsScenario& s) {
    const std::size_t n = s.mid.size();
    auto index = [&](const std::string& token) -> std::optional<std::size_t> {
      auto k = parse_count(token);
      if (!k || *k == 0 || *k > n) {
        error(line, "index '" + token + "' is outside 1.." + std::to_string(n));
        return std::nullopt;
      }
      return *k - 1;
    };
    auto point = [&](const std::string& token) -> std::optional<PointId> {
      auto id = parse_point(token);
      if (!id || id->index >= n) {
        error(line, "malformed or out-of-range double point '" + token + "'");
        return std::nullopt;
      }
      return id;
    };
    const std::string& head = w[0];
    if ((head == "pos" || head == "neg") && w.size() >= 4 && w[2] == "g") {
      auto i = index(w[1]);
      auto g = word(line, rest_after(text, 3));
      if (!i || !g) {
        block_valid_ = false;
        return;
      }
      auto& seen = head == "pos" ? seen_pos_ : seen_neg_;
      if (seen[*i]) error(line, "duplicate element for " + std::string(head == "pos" ? "p" : "q") + w[1]);
      seen[*i] = true;
      (head == "pos" ? s.mid.positive : s.mid.negative)[*i] = *g;
      return;
    }
    if ((head == "asc" || head == "desc") && w.size() == 4) {
      auto p = point(w[1]);
      auto q = point(w[2]);
      bool parity_ok = w[3] == "aligned" || w[3] == "crossed";
      if (!parity_ok) error(line, "parity must be 'aligned' or 'crossed'");
      if (p && p->polarity != Polarity::positive) error(line, "first id of a pairing must be a positive point");
      if (q && q->polarity != Polarity::negative) error(line, "second id of a pairing must be a negative point");
      if (!p || !q || !parity_ok || p->polarity != Polarity::positive || q->polarity != Polarity::negative) {
        block_valid_ = false;
        return;
      }
      auto& m = head == "asc" ? s.ascending : s.descending;
      if (m.partner[p->index] != unmatched) error(line, "duplicate " + head + " entry for " + w[1]);
      m.partner[p->index] = q->index;
      m.parity[p->index] = w[3] == "aligned" ? ArcParity::aligned : ArcParity::crossed;
      return;
    }
    if (head == "assign" && w.size() == 3) {
      auto id = point(w[1]);
      bool value_ok = w[2] == "std" || w[2] == "swp";
      if (!value_ok) error(line, "sheet choice must be 'std' or 'swp'");
      if (!id || !value_ok) {
        block_valid_ = false;
        return;
      }
      std::size_t slot = id->index + (id->polarity == Polarity::negative ? n : 0);
      if (seen_assign_[slot]) error(line, "duplicate assign entry for " + w[1]);
      seen_assign_[slot] = true;
      if (s.assignment.swapped(*id) != (w[2] == "swp")) s.assignment.flip(*id);
      return;
    }
    error(line, "unrecognized line inside sheets block");
    block_valid_ = false;
  }

  void close_block(std::size_t line) {
    if (auto* s = std::get_if<SheetsScenario>(&*block_)) {
      for (std::size_t i = 0; i < s->mid.size(); ++i) {
        if (!seen_pos_[i]) error(line, "sheets '" + block_name_ + "' gives no element for p" + std::to_string(i + 1));
        if (!seen_neg_[i]) error(line, "sheets '" + block_name_ + "' gives no element for q" + std::to_string(i + 1));
      }
    }
    if (block_valid_) {
      if (auto* t = std::get_if<HomotopyTrace>(&*block_)) doc_.traces.push_back({block_name_, std::move(*t)});
      else if (auto* d = std::get_if<PlatDiagram>(&*block_)) doc_.plats.push_back({block_name_, std::move(*d)});
      else doc_.sheets.push_back({block_name_, std::move(std::get<SheetsScenario>(*block_))});
    }
    block_.reset();
  }

  InputDocument doc_;
  Diagnostics diagnostics_;
  bool seen_group_ = false;
  bool group_ok_ = false;
  std::optional<Block> block_;
  std::size_t block_line_ = 0;
  std::string block_name_;
  bool block_valid_ = true;
  std::vector<bool> seen_pos_, seen_neg_, seen_assign_;
};

}  // namespace detail

// Collects every diagnostic rather than stopping at the first.
inline ParseResult parse_input(std::string_view text) { return detail::DocumentParser{}.run(text); }

inline std::string serialize(const InputDocument& doc) {
  const GroupSpec& spec = doc.group;
  std::string out = "group ";
  out += spec.kind() == GroupKind::free ? "free" : "abelian";
  for (const auto& name : spec.names()) out += " " + name;
  if (!spec.invariant_factors().empty()) {
    out += " torsion";
    for (const auto& d : spec.invariant_factors()) out += " " + to_string(d);
  }
  out += "\n";
  for (const auto& g : doc.dax_gens) out += "daxgen " + canonical_print(spec, g) + "\n";
  for (const auto& [name, t] : doc.traces) {
    out += "trace " + name + " from " + t.source + " to " + t.target + "\n";
    for (const auto& p : t.points) out += std::string("  dp ") + (p.sign > 0 ? "+" : "-") + " " + spec.format(p.element) + "\n";
    out += "end\n";
  }
  for (const auto& [name, d] : doc.plats) {
    out += "plat " + name + " pairs " + std::to_string(d.pairs) + "\n";
    for (const auto& c : d.crossings)
      out += "  crossing over " + format_strand(c.over) + " under " + format_strand(c.under) + " type " +
             format_crossing_type(c.type) + " g " + spec.format(c.element) + "\n";
    out += "end\n";
  }
  for (const auto& [name, s] : doc.sheets) {
    const std::size_t n = s.mid.size();
    out += "sheets " + name + " n " + std::to_string(n) + "\n";
    for (std::size_t i = 0; i < n; ++i) out += "  pos " + std::to_string(i + 1) + " g " + spec.format(s.mid.positive[i]) + "\n";
    for (std::size_t i = 0; i < n; ++i) out += "  neg " + std::to_string(i + 1) + " g " + spec.format(s.mid.negative[i]) + "\n";
    for (const auto* which : {"asc", "desc"}) {
      const auto& m = std::string(which) == "asc" ? s.ascending : s.descending;
      for (std::size_t i = 0; i < n; ++i)
        if (m.partner[i] != unmatched)
          out += std::string("  ") + which + " p" + std::to_string(i + 1) + " q" + std::to_string(m.partner[i] + 1) +
                 (m.parity[i] == ArcParity::aligned ? " aligned" : " crossed") + "\n";
    }
    for (Polarity pol : {Polarity::positive, Polarity::negative})
      for (std::size_t i = 0; i < n; ++i)
        if (s.assignment.swapped({pol, i})) out += "  assign " + format_point({pol, i}) + " swp\n";
    out += "end\n";
  }
  return out;
}

}  // namespace daxkit
