#pragma once

// Text, CSV and JSON renderings of check results, truth tables and
// generated theories. Every renderer is deterministic.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qepi/classical.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/formula.hpp"
#include "qepi/quantum.hpp"
#include "qepi/rational.hpp"

namespace qepi::report {

using Json = nlohmann::ordered_json;

inline std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

inline std::vector<std::string> rendered(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(render(f));
  return out;
}

inline std::vector<std::string> names(const std::vector<Atom>& as) {
  std::vector<std::string> out;
  for (const auto& a : as) out.push_back(a.name());
  return out;
}

// ---------------------------------------------------------------------------
// Models

// One world per line; '*' marks the designated world.
inline std::string model_text(const EpistemicModel& m, const std::string& label, const std::string& indent = "") {
  std::ostringstream out;
  out << indent << label << ": " << m.size() << (m.size() == 1 ? " world" : " worlds");
  if (!m.atom_order().empty()) out << " over " << join(names(m.atom_order()), ", ");
  out << " (* = designated)\n";
  for (std::size_t w = 0; w < m.size(); ++w) {
    out << indent << (w == m.designated() ? "  * " : "    ") << "w" << w << ":";
    const auto& v = m.cell()[w];
    if (v.atom_order().empty()) out << " (no atoms)";
    for (std::size_t j = 0; j < v.atom_order().size(); ++j) {
      out << " " << v.atom_order()[j].name() << "=" << (v.bits()[j] ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

inline Json model_json(const EpistemicModel& m) {
  Json worlds = Json::array();
  for (const auto& v : m.cell()) {
    Json bits = Json::array();
    for (bool b : v.bits()) bits.push_back(b ? 1 : 0);
    worlds.push_back(bits);
  }
  return Json{{"atoms", names(m.atom_order())}, {"worlds", worlds}, {"designated", m.designated()}};
}

inline const char* model_label(Verdict v) { return v == Verdict::Invalid ? "countermodel" : "model"; }

inline std::string check_text(const CheckResult& r, const std::string& indent = "") {
  std::string out = indent + to_string(r.verdict) + "\n";
  if (r.model) out += model_text(*r.model, model_label(r.verdict), indent);
  return out;
}

inline Json check_json(const Formula& f, const std::string& mode, const Theory& theory, const CheckResult& r) {
  Json j{{"formula", render(f)},
         {"mode", mode},
         {"theory", rendered(theory.axioms())},
         {"verdict", to_string(r.verdict)}};
  if (r.model) {
    j[model_label(r.verdict)] = model_json(*r.model);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Truth tables

// Excluded rows carry '*' in the label column and 'x' in each formula cell.
inline std::string table_text(const TruthTable& t, const std::string& indent = "") {
  std::vector<std::string> headers = rendered(t.formula_columns);
  std::vector<std::size_t> widths;
  for (const auto& h : headers) widths.push_back(std::max<std::size_t>(h.size(), 1));

  std::string atom_header;
  std::vector<std::size_t> atom_w;
  for (std::size_t j = 0; j < t.atom_order.size(); ++j) {
    if (j) atom_header += ' ';
    atom_header += t.atom_order[j].name();
    atom_w.push_back(t.atom_order[j].name().size());
  }

  std::ostringstream out;
  auto line = [&](const std::string& label, const std::string& atoms_part, const std::vector<std::string>& cells) {
    std::string l = indent + label + " |";
    if (!t.atom_order.empty()) l += " " + atoms_part + " |";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      l += " " + (c + 1 == cells.size() ? cells[c] : pad(cells[c], widths[c])) + (c + 1 == cells.size() ? "" : " |");
    }
    while (!l.empty() && l.back() == ' ') l.pop_back();
    out << l << "\n";
  };

  line(" ", atom_header, headers);
  std::string rule = indent + "--+";
  if (!t.atom_order.empty()) rule += std::string(atom_header.size() + 2, '-') + "+";
  for (std::size_t c = 0; c < widths.size(); ++c) {
    rule += std::string(widths[c] + 2, '-');
    if (c + 1 < widths.size()) rule += "+";
  }
  while (!rule.empty() && rule.back() == '+') rule.pop_back();
  out << rule << "\n";

  std::size_t excluded = 0;
  for (const auto& row : t.rows) {
    std::string bits;
    for (std::size_t j = 0; j < t.atom_order.size(); ++j) {
      if (j) bits += ' ';
      bits += pad(row.valuation.bits()[j] ? "1" : "0", atom_w[j]);
    }
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < t.formula_columns.size(); ++c) {
      cells.push_back(row.excluded ? "x" : (row.values[c] ? "1" : "0"));
    }
    if (row.excluded) ++excluded;
    line(row.excluded ? "*" : " ", bits, cells);
  }
  out << indent << "constraints: " << (t.constraints.empty() ? "none" : join(rendered(t.constraints), "; "))
      << "\n";
  out << indent << "excluded: " << excluded << " of " << t.rows.size() << " rows\n";
  return out.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string table_csv(const TruthTable& t) {
  std::ostringstream out;
  std::vector<std::string> header{"excluded"};
  for (const auto& a : t.atom_order) header.push_back(a.name());
  for (const auto& f : t.formula_columns) header.push_back(csv_field(render(f)));
  out << join(header, ",") << "\n";
  for (const auto& row : t.rows) {
    std::vector<std::string> cells{row.excluded ? "*" : ""};
    for (bool b : row.valuation.bits()) cells.push_back(b ? "1" : "0");
    for (std::size_t c = 0; c < t.formula_columns.size(); ++c) {
      cells.push_back(row.excluded ? "x" : (row.values[c] ? "1" : "0"));
    }
    out << join(cells, ",") << "\n";
  }
  return out.str();
}

inline Json table_json(const TruthTable& t) {
  Json rows = Json::array();
  std::size_t excluded = 0;
  for (const auto& row : t.rows) {
    Json bits = Json::array();
    for (bool b : row.valuation.bits()) bits.push_back(b ? 1 : 0);
    Json values = nullptr;
    if (!row.excluded) {
      values = Json::array();
      for (bool b : row.values) values.push_back(b ? 1 : 0);
    } else {
      ++excluded;
    }
    rows.push_back(Json{{"valuation", bits},
                        {"excluded", row.excluded},
                        {"violated", rendered(row.violated)},
                        {"values", values}});
  }
  return Json{{"atoms", names(t.atom_order)},
              {"formulas", rendered(t.formula_columns)},
              {"constraints", rendered(t.constraints)},
              {"rows", rows},
              {"excluded", excluded},
              {"row_count", t.rows.size()}};
}

// ---------------------------------------------------------------------------
// Generated theories

inline std::string provenance_note(const AxiomProvenance& p) {
  return "[widths " + to_string(p.momentum_width) + " * " + to_string(p.position_width) + " = " +
         to_string(p.product) + " < " + to_string(p.bound) + "]";
}

inline std::string axioms_text(const GeneratedTheory& g, const std::string& indent = "") {
  if (g.provenance.empty()) return indent + "no axioms generated\n";
  const auto axioms = rendered(g.epistemic_axioms.axioms());
  std::size_t w = 0;
  for (const auto& a : axioms) w = std::max(w, a.size());
  std::ostringstream out;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    out << indent << pad(axioms[i], w) << "   " << provenance_note(g.provenance[i]) << "\n";
  }
  out << indent << "table constraints: " << join(rendered(g.classical_constraints.items()), "; ") << "\n";
  return out.str();
}

inline Json proposition_json(const IntervalProposition& p) {
  return Json{{"atom", p.atom().name()},
              {"kind", to_string(p.kind())},
              {"lo", to_string(p.lo())},
              {"hi", to_string(p.hi())},
              {"width", to_string(width(p))}};
}

inline Json axioms_json(const GeneratedTheory& g) {
  Json out = Json::array();
  for (std::size_t i = 0; i < g.provenance.size(); ++i) {
    const auto& p = g.provenance[i];
    out.push_back(Json{{"axiom", render(g.epistemic_axioms.axioms()[i])},
                       {"constraint", render(g.classical_constraints.items()[i])},
                       {"momentum", p.momentum.name()},
                       {"position", p.position.name()},
                       {"momentum_width", to_string(p.momentum_width)},
                       {"position_width", to_string(p.position_width)},
                       {"product", to_string(p.product)},
                       {"bound", to_string(p.bound)}});
  }
  return out;
}

}  // namespace qepi::report
