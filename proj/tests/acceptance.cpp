// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qepi/classical.hpp"
#include "qepi/cli.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/formula.hpp"
#include "qepi/io.hpp"
#include "qepi/quantum.hpp"
#include "support.hpp"

using namespace qepi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const IntervalProposition kP(Atom("p"), ObservableKind::Momentum, Rational(0), Rational(1, 6));
const IntervalProposition kQ(Atom("q"), ObservableKind::Position, Rational(-1), Rational(1));
const IntervalProposition kR(Atom("r"), ObservableKind::Position, Rational(1), Rational(3));
const IntervalProposition kSpan(Atom("span"), ObservableKind::Position, Rational(-1), Rational(3));

Outcome uncertainty_arithmetic() {
  Outcome o;
  o.require(uncertainty_product(kP, kSpan) == Rational(2, 3), "p x [-1,3] != 2/3");
  o.require(uncertainty_product(kP, kQ) == Rational(1, 3), "p x q != 1/3");
  o.require(uncertainty_product(kP, kR) == Rational(1, 3), "p x r != 1/3");
  o.require(compatible(kP, kSpan), "p, [-1,3] should be compatible");
  o.require(!compatible(kP, kQ), "p, q should be incompatible");
  o.require(!compatible(kP, kR), "p, r should be incompatible");
  return o;
}

Outcome classical_distributivity() {
  Outcome o;
  const Formula law = parse("(p & (q | r)) <-> ((p & q) | (p & r))");
  o.require(atoms(law).size() == 3, "expected 8 valuations");
  o.require(is_tautology(law).is_tautology(), "distributive law falsified");
  return o;
}

Outcome constrained_table_reproduction() {
  Outcome o;
  const auto g = generate({kP, kQ, kR});
  const auto t = truth_table({parse("p & (q | r)"), parse("(p & q) | (p & r)")}, g.classical_constraints);
  o.require(t.rows.size() == 8, "row count");
  for (const auto& row : t.rows) {
    const auto i = row.valuation.index();
    const bool should_exclude = i == 5 || i == 6 || i == 7;
    o.require(row.excluded == should_exclude, "row " + std::to_string(i) + " exclusion");
    if (!row.excluded) {
      o.require(row.values == std::vector<bool>{false, false}, "row " + std::to_string(i) + " values");
    }
  }
  std::ostringstream out, err;
  cli::run({"table", "p & (q | r)", "(p & q) | (p & r)", "--quantum", QEPI_SAMPLES_DIR "/particle.decl"}, out, err);
  const std::string golden =
      "  | p q r | p & (q | r) | p & q | p & r\n"
      "--+-------+-------------+---------------\n"
      "  | 0 0 0 | 0           | 0\n"
      "  | 0 0 1 | 0           | 0\n"
      "  | 0 1 0 | 0           | 0\n"
      "  | 0 1 1 | 0           | 0\n"
      "  | 1 0 0 | 0           | 0\n"
      "* | 1 0 1 | x           | x\n"
      "* | 1 1 0 | x           | x\n"
      "* | 1 1 1 | x           | x\n"
      "constraints: !(p & q); !(p & r)\n"
      "excluded: 3 of 8 rows\n";
  o.require(out.str() == golden, "rendered table differs from the expected layout");
  return o;
}

Outcome theory_generation() {
  Outcome o;
  const auto g = generate({kP, kQ, kR});
  o.require(g.epistemic_axioms.axioms() == std::vector<Formula>{parse("K(p) -> !K(q)"), parse("K(p) -> !K(r)")},
            "axioms");
  o.require(g.classical_constraints.items() == std::vector<Formula>{parse("!(p & q)"), parse("!(p & r)")},
            "constraints");
  o.require(g.provenance.size() == 2, "provenance size");
  for (const auto& pv : g.provenance) o.require(pv.product == Rational(1, 3), "provenance product");
  return o;
}

Outcome epistemic_unsatisfiability() {
  Outcome o;
  const auto g = generate({kP, kQ, kR});
  const auto r = is_satisfiable(parse("K(p) & (K(q) | K(r))"), g.epistemic_axioms);
  o.require(r.verdict == Verdict::Unsatisfiable, "expected UNSATISFIABLE");
  return o;
}

Outcome conjunction_and_disjunction() {
  Outcome o;
  o.require(is_valid(parse("K(a & b) <-> K(a) & K(b)")).verdict == Verdict::Valid, "conjunction law");
  const auto r = is_valid(parse("K(a | b) -> K(a) | K(b)"));
  o.require(r.verdict == Verdict::Invalid && r.model.has_value(), "disjunction law should be invalid");
  if (r.model) {
    const auto& m = *r.model;
    o.require(m.size() == 2, "countermodel should have two worlds");
    if (m.size() == 2) {
      const auto& w0 = m.cell()[0].bits();
      const auto& w1 = m.cell()[1].bits();
      o.require(w0[0] != w1[0] && w0[1] != w1[1] && w0[0] != w0[1], "worlds should be a=1,b=0 and a=0,b=1");
    }
  }
  o.require(is_valid(parse("K(a) | K(b) -> K(a | b)")).verdict == Verdict::Valid, "half distribution");
  return o;
}

Outcome equivalence_chain() {
  Outcome o;
  o.require(are_equivalent_modal(parse("K(p & (q | r))"), parse("K(p) & K(q | r)")).verdict == Verdict::Valid,
            "first link");
  o.require(are_equivalent_modal(parse("K(p & q) | K(p & r)"), parse("K(p) & (K(q) | K(r))")).verdict ==
                Verdict::Valid,
            "second link");
  const auto r = are_equivalent_modal(parse("K(p & (q | r))"), parse("K(p & q) | K(p & r)"));
  o.require(r.verdict == Verdict::Invalid && r.model.has_value(), "K over distributive law should fail");
  return o;
}

Outcome merge_and_s() {
  Outcome o;
  const auto s = merge(kQ, kR, Atom("s"));
  o.require(s.kind() == ObservableKind::Position, "kind");
  o.require(s.lo() == Rational(-1) && s.hi() == Rational(3), "interval");
  o.require(width(s) == Rational(4), "width");
  o.require(is_satisfiable(parse("K(p & s) <-> K(p) & K(s)")).verdict == Verdict::Satisfiable, "satisfiable");
  return o;
}

Outcome collapse_property() {
  Outcome o;
  std::mt19937 rng(2015);
  std::uniform_int_distribution<int> count(1, 3);
  const std::vector<std::string> pool{"a", "b", "c"};
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::vector<std::string> names(pool.begin(), pool.begin() + count(rng));
    support::FormulaGen gen{names, 4, 2};
    const Formula f = gen(rng);
    const auto order = atoms(f);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << order.size()); ++v) {
      const auto val = Valuation::from_index(order, v);
      if (eval_modal(f, EpistemicModel(order, {val}, 0), 0) != eval_classical(erase_K(f), val)) {
        o.require(false, "collapse fails for " + render(f));
      }
    }
    if (modal_depth(f) <= 2) ++checked;
  }
  o.require(checked == 1000, "generated formulas exceed modal depth 2");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937 rng(1936);
  std::uniform_int_distribution<int> count(1, 4);
  const std::vector<std::string> pool{"a", "b", "c", "d"};
  int tautologies = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::vector<std::string> names(pool.begin(), pool.begin() + count(rng));
    support::FormulaGen gen{names, 4, 0};
    const Formula f = gen(rng);
    const bool taut = is_tautology(f).is_tautology();
    if ((is_valid(f).verdict == Verdict::Valid) != taut) o.require(false, "disagreement on " + render(f));
    tautologies += taut ? 1 : 0;
  }
  o.require(tautologies > 0 && tautologies < 1000, "sample has no tautologies or no non-tautologies");
  o.note = std::to_string(tautologies) + " tautologies";
  return o;
}

Outcome s5_schemas() {
  Outcome o;
  for (const char* s : {"K(a) -> a", "K(a) -> K(K(a))", "!K(a) -> K(!K(a))", "K(a -> b) -> (K(a) -> K(b))"}) {
    o.require(is_valid(parse(s)).verdict == Verdict::Valid, s);
  }
  return o;
}

Outcome cli_contract() {
  Outcome o;
  auto code = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };
  std::ostringstream demo, err;
  o.require(cli::run({"demo"}, demo, err) == 0, "demo exit code");
  o.require(demo.str() == read_file(QEPI_GOLDEN_DIR "/demo.txt"), "demo output differs from golden file");

  const std::string decl = QEPI_SAMPLES_DIR "/particle.decl";
  const std::string thy = QEPI_SAMPLES_DIR "/particle.thy";
  o.require(code({"check", "K(a & b) <-> (K(a) & K(b))", "--mode", "valid"}) == 0, "check valid");
  o.require(code({"check", "K(p) & (K(q) | K(r))", "--theory", thy, "--mode", "sat"}) == 1, "check unsat");
  o.require(code({"check", "p &"}) == 2, "check syntax error");
  o.require(code({"table", "p & (q | r)", "(p & q) | (p & r)", "--quantum", decl}) == 0, "table constrained");
  o.require(code({"table", "p"}) == 0, "table p");
  o.require(code({"table", "K(p)"}) == 2, "table modal");
  o.require(code({"quantum", decl, "--list-axioms"}) == 0, "quantum list");
  o.require(code({"quantum", decl, "--check", "K(p) & (K(q) | K(r))", "--mode", "sat"}) == 1, "quantum check");
  o.require(code({"quantum", QEPI_SAMPLES_DIR "/empty.decl", "--list-axioms"}) == 0, "quantum empty");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  uncertainty arithmetic (2/3, 1/3, 1/3 exact)", uncertainty_arithmetic},
      {"2  classical distributivity is a tautology", classical_distributivity},
      {"3  constrained truth table excludes 101, 110, 111", constrained_table_reproduction},
      {"4  generated axioms and constraints for {p, q, r}", theory_generation},
      {"5  K(p) & (K(q) | K(r)) unsatisfiable under axioms", epistemic_unsatisfiability},
      {"6  K distributes over & but not over |", conjunction_and_disjunction},
      {"7  equivalence chain", equivalence_chain},
      {"8  merge(q, r) = s on [-1, 3]; K(p & s) law satisfiable", merge_and_s},
      {"9  collapse on singleton cells (1000 formulas)", collapse_property},
      {"10 K-free validity equals tautology (1000 formulas)", oracle_equivalence},
      {"11 S5 schemas T, 4, 5, K are valid", s5_schemas},
      {"12 CLI golden demo and exit codes", cli_contract},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const std::string extra = o.ok ? (o.note.empty() ? "" : "  (" + o.note + ")") : "  -- " + o.detail;
    std::printf("%s  %s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), extra.c_str());
    if (!o.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
