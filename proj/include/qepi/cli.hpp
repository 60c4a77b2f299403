#pragma once

// Command-line front end. Exit codes: 0 affirmative verdict (or plain
// output), 1 negative verdict, 2 usage or input error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qepi/classical.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/formula.hpp"
#include "qepi/io.hpp"
#include "qepi/quantum.hpp"
#include "qepi/report.hpp"

namespace qepi::cli {

inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsageError = 2;

enum class Format { Text, Csv, Json };

struct Options {
  std::string mode = "valid";
  std::string format = "text";
  std::optional<std::size_t> atom_limit;
};

// Raised for bad invocations; mapped to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

namespace detail {

inline Formula parse_argument(const std::string& text, const std::string& what) {
  try {
    return parse(text);
  } catch (const SyntaxError& e) {
    std::string msg = what + ": " + e.what() + "\n  " + text + "\n  " + std::string(e.offset() - 1, ' ') + "^";
    throw InputError(msg);
  }
}

inline Format format_of(const std::string& s, bool csv_allowed) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv" && csv_allowed) return Format::Csv;
  throw UsageError("unsupported --format '" + s + "'" + (csv_allowed ? "" : " (csv is only available for tables)"));
}

inline bool sat_mode(const std::string& mode) {
  if (mode == "valid") return false;
  if (mode == "sat") return true;
  throw UsageError("--mode must be 'valid' or 'sat', got '" + mode + "'");
}

inline std::size_t modal_limit(const Options& o, std::ostream& err) {
  if (!o.atom_limit) return kDefaultModalAtomLimit;
  if (*o.atom_limit > kDefaultModalAtomLimit) {
    err << "note: modal atom limit raised to " << *o.atom_limit << "; the model search may visit up to 2^(2^"
        << *o.atom_limit << ") - 1 cells\n";
  }
  return *o.atom_limit;
}

inline CheckResult run_query(const Formula& f, const Theory& t, bool sat, std::size_t limit) {
  return sat ? is_satisfiable(f, t, limit) : is_valid(f, t, limit);
}

inline void emit_json(std::ostream& out, const report::Json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

inline int cmd_parse(const std::string& text, const Options& o, std::ostream& out) {
  const auto fmt = detail::format_of(o.format, false);
  const Formula f = detail::parse_argument(text, "formula");
  if (fmt == Format::Json) {
    detail::emit_json(out, report::Json{{"formula", render(f)},
                                        {"atoms", report::names(atoms(f))},
                                        {"modal_depth", modal_depth(f)}});
  } else {
    out << "formula: " << render(f) << "\n";
    out << "atoms: " << report::join(report::names(atoms(f)), " ") << "\n";
    out << "modal depth: " << modal_depth(f) << "\n";
  }
  return kAffirmative;
}

inline int cmd_check(const std::string& text, const std::optional<std::string>& theory_path, const Options& o,
                     std::ostream& out, std::ostream& err) {
  const auto fmt = detail::format_of(o.format, false);
  const bool sat = detail::sat_mode(o.mode);
  const Formula f = detail::parse_argument(text, "formula");
  Theory theory;
  if (theory_path) theory = parse_theory(read_file(*theory_path), *theory_path);
  const CheckResult r = detail::run_query(f, theory, sat, detail::modal_limit(o, err));
  if (fmt == Format::Json) {
    detail::emit_json(out, report::check_json(f, o.mode, theory, r));
  } else {
    out << report::check_text(r);
  }
  return r.affirmative() ? kAffirmative : kNegative;
}

inline int cmd_table(const std::vector<std::string>& texts, const std::optional<std::string>& constraints_path,
                     const std::optional<std::string>& quantum_path, const Options& o, std::ostream& out) {
  const auto fmt = detail::format_of(o.format, true);
  std::vector<Formula> formulas;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    formulas.push_back(detail::parse_argument(texts[i], "formula " + std::to_string(i + 1)));
  }
  for (const auto& f : formulas) {
    if (modal_depth(f) != 0) {
      throw ModalOperatorPresent("'" + render(f) +
                                 "' contains the knowledge operator K; truth tables are classical, use `check` for "
                                 "epistemic formulas");
    }
  }
  ConstraintSet constraints;
  if (constraints_path) {
    const Theory file = parse_theory(read_file(*constraints_path), *constraints_path);
    for (const auto& c : file.axioms()) constraints.add(c);
  }
  if (quantum_path) {
    const auto decl = parse_declarations(read_file(*quantum_path), *quantum_path);
    const auto generated = generate(decl.props, decl.config);
    for (const auto& c : generated.classical_constraints.items()) constraints.add(c);
  }
  const auto table = truth_table(formulas, constraints, o.atom_limit.value_or(kDefaultClassicalAtomLimit));
  switch (fmt) {
    case Format::Json:
      detail::emit_json(out, report::table_json(table));
      break;
    case Format::Csv:
      out << report::table_csv(table);
      break;
    case Format::Text:
      out << report::table_text(table);
      break;
  }
  return kAffirmative;
}

struct QuantumRequest {
  std::string decl_path;
  bool list_axioms = false;
  bool echo = false;
  std::optional<std::string> check;
};

inline int cmd_quantum(const QuantumRequest& q, const Options& o, std::ostream& out, std::ostream& err) {
  const auto fmt = detail::format_of(o.format, false);
  const bool sat = detail::sat_mode(o.mode);
  const auto decl = parse_declarations(read_file(q.decl_path), q.decl_path);
  const auto generated = generate(decl.props, decl.config);
  const bool list = q.list_axioms || (!q.check && !q.echo);

  std::optional<Formula> f;
  std::optional<CheckResult> r;
  if (q.check) {
    f = detail::parse_argument(*q.check, "formula");
    r = detail::run_query(*f, generated.epistemic_axioms, sat, detail::modal_limit(o, err));
  }

  if (fmt == Format::Json) {
    report::Json j{{"bound", to_string(decl.config.bound())}};
    report::Json props = report::Json::array();
    for (const auto& p : decl.props) props.push_back(report::proposition_json(p));
    j["propositions"] = props;
    if (q.echo) j["echo"] = echo_declarations(decl);
    if (list) j["axioms"] = report::axioms_json(generated);
    if (r) j["check"] = report::check_json(*f, o.mode, generated.epistemic_axioms, *r);
    detail::emit_json(out, j);
  } else {
    if (q.echo) out << echo_declarations(decl);
    if (list) out << report::axioms_text(generated);
    if (r) out << report::check_text(*r);
  }
  if (r) return r->affirmative() ? kAffirmative : kNegative;
  return kAffirmative;
}

// The worked example: a particle on a line, momentum p in [0, 1/6] and
// position q in [-1, 1], r in [1, 3].
inline std::string demo_text() {
  const IntervalProposition p(Atom("p"), ObservableKind::Momentum, Rational(0), Rational(1, 6));
  const IntervalProposition q(Atom("q"), ObservableKind::Position, Rational(-1), Rational(1));
  const IntervalProposition r(Atom("r"), ObservableKind::Position, Rational(1), Rational(3));
  const IntervalProposition qr_span(Atom("span"), ObservableKind::Position, Rational(-1), Rational(3));
  const PhysicsConfig cfg;

  std::ostringstream out;
  out << "Epistemic reading of the quantum distributive law\n";
  out << "natural units (hbar = c = 1), uncertainty principle dp * dx >= " << to_string(cfg.bound()) << "\n\n";

  out << "(1) Propositions\n";
  for (const auto* x : {&p, &q, &r}) {
    out << "  " << x->atom().name() << "  " << report::pad(to_string(x->kind()), 8) << "  "
        << report::pad("[" + to_string(x->lo()) + ", " + to_string(x->hi()) + "]", 9) << "  width "
        << to_string(width(*x)) << "\n";
  }

  out << "\n(2) Uncertainty products\n";
  auto product_line = [&](const std::string& label, const IntervalProposition& x) {
    const Rational prod = uncertainty_product(p, x);
    const bool ok = compatible(p, x, cfg);
    out << "  " << report::pad(label + ":", 16) << to_string(width(p)) << " * " << to_string(width(x)) << " = "
        << to_string(prod) << (ok ? " >= " : " < ") << to_string(cfg.bound())
        << (ok ? ": compatible" : ": incompatible") << "\n";
  };
  product_line("p with [-1, 3]", qr_span);
  product_line("p with q", q);
  product_line("p with r", r);

  const Formula lhs = parse("p & (q | r)");
  const Formula rhs = parse("(p & q) | (p & r)");
  const Formula law = Formula::Iff(lhs, rhs);
  out << "\n(3) Classical distributive law\n";
  const auto taut = is_tautology(law);
  out << "  " << render(law) << ": " << (taut.is_tautology() ? "TAUTOLOGY" : "FALSIFIED") << " over all "
      << (std::size_t{1} << atoms(law).size()) << " valuations\n";

  const auto generated = generate({p, q, r}, cfg);
  out << "\n(4) Truth table with incompatible rows excluded\n";
  out << report::table_text(truth_table({lhs, rhs}, generated.classical_constraints), "  ");

  out << "\n(5) Generated axioms\n";
  out << report::axioms_text(generated, "  ");

  out << "\n(6) Joint knowledge under the generated axioms\n";
  const Formula joint = parse("K(p) & (K(q) | K(r))");
  out << "  satisfiable? " << render(joint) << "\n";
  out << report::check_text(is_satisfiable(joint, generated.epistemic_axioms), "  ");

  out << "\n(7) K over conjunction and disjunction\n";
  auto valid_line = [&](const std::string& text) {
    const Formula f = parse(text);
    out << "  valid? " << render(f) << "\n";
    out << report::check_text(is_valid(f), "  ");
  };
  valid_line("K(a & b) <-> K(a) & K(b)");
  valid_line("K(a | b) -> K(a) | K(b)");
  valid_line("K(a) | K(b) -> K(a | b)");
  valid_line("K(p & (q | r)) <-> K(p) & K(q | r)");
  valid_line("K(p & q) | K(p & r) <-> K(p) & (K(q) | K(r))");
  valid_line("K(p & (q | r)) <-> K(p & q) | K(p & r)");

  out << "\n(8) A single position measurement s on [-1, 3]\n";
  const IntervalProposition s = merge(q, r, Atom("s"));
  out << "  s = merge(q, r): " << to_string(s.kind()) << " [" << to_string(s.lo()) << ", " << to_string(s.hi())
      << "], width " << to_string(width(s)) << "\n";
  const auto with_s = generate({p, s}, cfg);
  out << "  axioms generated for {p, s}: " << (with_s.provenance.empty() ? "none" : "some") << "\n";
  const Formula conj_law = parse("K(p & s) <-> K(p) & K(s)");
  out << "  satisfiable? " << render(conj_law) << "\n";
  out << report::check_text(is_satisfiable(conj_law), "  ");
  return out.str();
}

inline int cmd_demo(std::ostream& out) {
  out << demo_text();
  return kAffirmative;
}

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epistemic propositional logic for quantum experimental propositions", "qepi"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--format", opt.format, help)->capture_default_str();
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", opt.mode, "valid | sat")->capture_default_str();
  };
  auto add_limit = [&](CLI::App* sub, const std::string& help) { sub->add_option("--atom-limit", opt.atom_limit, help); };

  std::string parse_text;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print its canonical form");
  parse_cmd->add_option("formula", parse_text, "formula")->required();
  add_format(parse_cmd, "text | json");

  std::string check_text;
  std::optional<std::string> theory_path;
  auto* check_cmd = app.add_subcommand("check", "Decide validity or satisfiability over S5 models");
  check_cmd->add_option("formula", check_text, "formula")->required();
  check_cmd->add_option("--theory", theory_path, "theory file: one global axiom per line");
  add_mode(check_cmd);
  add_format(check_cmd, "text | json");
  add_limit(check_cmd, "modal atom limit (default 4, at most 5); the search is doubly exponential");

  std::vector<std::string> table_texts;
  std::optional<std::string> constraints_path;
  std::optional<std::string> table_quantum;
  auto* table_cmd = app.add_subcommand("table", "Print a truth table with constraint-excluded rows");
  table_cmd->add_option("formulas", table_texts, "K-free formulas")->required();
  table_cmd->add_option("--constraints", constraints_path, "constraint file: one K-free formula per line");
  table_cmd->add_option("--quantum", table_quantum, "declaration file whose incompatible pairs exclude rows");
  add_format(table_cmd, "text | csv | json");
  add_limit(table_cmd, "classical atom limit (default 16)");

  QuantumRequest qreq;
  auto* quantum_cmd = app.add_subcommand("quantum", "Generate incompatibility axioms from interval declarations");
  quantum_cmd->add_option("declarations", qreq.decl_path, "declaration file")->required();
  quantum_cmd->add_flag("--list-axioms", qreq.list_axioms, "print generated axioms with provenance");
  quantum_cmd->add_flag("--echo", qreq.echo, "print the declarations in canonical form");
  quantum_cmd->add_option("--check", qreq.check, "formula to check under the generated axioms");
  add_mode(quantum_cmd);
  add_format(quantum_cmd, "text | json");
  add_limit(quantum_cmd, "modal atom limit (default 4, at most 5)");

  auto* demo_cmd = app.add_subcommand("demo", "Run the built-in worked example");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(parse_text, opt, out);
    if (check_cmd->parsed()) return cmd_check(check_text, theory_path, opt, out, err);
    if (table_cmd->parsed()) return cmd_table(table_texts, constraints_path, table_quantum, opt, out);
    if (quantum_cmd->parsed()) return cmd_quantum(qreq, opt, out, err);
    if (demo_cmd->parsed()) return cmd_demo(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qepi::cli
