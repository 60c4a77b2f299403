#pragma once

// Two-valued semantics of K-free formulas: valuations, tautology and
// equivalence checking by exhaustive enumeration, and truth tables whose
// rows can be excluded by side constraints.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qepi/error.hpp"
#include "qepi/formula.hpp"

namespace qepi {

inline constexpr std::size_t kDefaultClassicalAtomLimit = 16;

// Total assignment over a sorted, duplicate-free atom list.
class Valuation {
 public:
  Valuation(std::vector<Atom> atom_order, std::vector<bool> bits)
      : atom_order_(std::move(atom_order)), bits_(std::move(bits)) {
    if (bits_.size() != atom_order_.size()) {
      throw InvalidModel("valuation needs one truth value per atom");
    }
    for (std::size_t i = 1; i < atom_order_.size(); ++i) {
      if (!(atom_order_[i - 1] < atom_order_[i])) {
        throw InvalidModel("valuation atoms must be sorted and distinct");
      }
    }
  }

  // Row `index` of the canonical enumeration: the first atom is the most
  // significant bit.
  static Valuation from_index(std::vector<Atom> atom_order, std::uint64_t index) {
    const std::size_t n = atom_order.size();
    std::vector<bool> bits(n);
    for (std::size_t j = 0; j < n; ++j) bits[j] = ((index >> (n - 1 - j)) & 1U) != 0;
    return Valuation(std::move(atom_order), std::move(bits));
  }

  std::uint64_t index() const {
    std::uint64_t i = 0;
    for (bool b : bits_) i = (i << 1) | (b ? 1U : 0U);
    return i;
  }

  const std::vector<Atom>& atom_order() const noexcept { return atom_order_; }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  std::optional<bool> lookup(const Atom& a) const {
    auto it = std::lower_bound(atom_order_.begin(), atom_order_.end(), a);
    if (it == atom_order_.end() || !(*it == a)) return std::nullopt;
    return bits_[static_cast<std::size_t>(it - atom_order_.begin())];
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::vector<Atom> atom_order_;
  std::vector<bool> bits_;
};

inline bool eval_classical(const Formula& f, const Valuation& v) {
  switch (f.op()) {
    case Op::Top:
      return true;
    case Op::Bottom:
      return false;
    case Op::Var: {
      auto b = v.lookup(f.atom());
      if (!b) throw UnknownAtom("atom '" + f.atom().name() + "' is not assigned by the valuation");
      return *b;
    }
    case Op::Not:
      return !eval_classical(f.sub(), v);
    case Op::Know:
      throw ModalOperatorPresent("classical evaluation of a formula containing K: " + render(f));
    default:
      break;
  }
  // Both sides are always evaluated so errors do not depend on values.
  const bool a = eval_classical(f.left(), v);
  const bool b = eval_classical(f.right(), v);
  switch (f.op()) {
    case Op::And:
      return a && b;
    case Op::Or:
      return a || b;
    case Op::Implies:
      return !a || b;
    default:
      return a == b;
  }
}

// K-free side conditions that exclude truth-table rows.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<Formula> fs) {
    for (const auto& f : fs) add(f);
  }
  explicit ConstraintSet(const std::vector<Formula>& fs) {
    for (const auto& f : fs) add(f);
  }

  void add(const Formula& f) {
    if (modal_depth(f) != 0) {
      throw ModalOperatorPresent("constraints must be K-free: " + render(f));
    }
    if (std::find(items_.begin(), items_.end(), f) == items_.end()) items_.push_back(f);
  }

  const std::vector<Formula>& items() const noexcept { return items_; }
  bool empty() const noexcept { return items_.empty(); }

 private:
  std::vector<Formula> items_;
};

struct TruthTableRow {
  Valuation valuation;
  bool excluded = false;
  std::vector<Formula> violated;
  std::vector<bool> values;  // empty iff excluded
};

struct TruthTable {
  std::vector<Atom> atom_order;
  std::vector<Formula> formula_columns;
  std::vector<Formula> constraints;
  std::vector<TruthTableRow> rows;
};

namespace detail {

inline void require_k_free(const Formula& f) {
  if (modal_depth(f) != 0) {
    throw ModalOperatorPresent("formula contains the knowledge operator K: " + render(f));
  }
}

inline std::vector<Atom> checked_atoms(const std::vector<Formula>& fs, std::size_t atom_limit) {
  for (const auto& f : fs) require_k_free(f);
  auto all = atoms_of_all(fs);
  if (all.size() > atom_limit || all.size() >= 63) {
    throw AtomLimitExceeded(std::to_string(all.size()) + " atoms exceed the classical atom limit of " +
                            std::to_string(atom_limit) + " (the table would have 2^" +
                            std::to_string(all.size()) + " rows)");
  }
  return all;
}

}  // namespace detail

inline TruthTable truth_table(const std::vector<Formula>& formulas, const ConstraintSet& constraints,
                              std::size_t atom_limit = kDefaultClassicalAtomLimit) {
  std::vector<Formula> everything = formulas;
  everything.insert(everything.end(), constraints.items().begin(), constraints.items().end());
  TruthTable table;
  table.atom_order = detail::checked_atoms(everything, atom_limit);
  table.formula_columns = formulas;
  table.constraints = constraints.items();

  const std::uint64_t rows = std::uint64_t{1} << table.atom_order.size();
  table.rows.reserve(rows);
  for (std::uint64_t i = 0; i < rows; ++i) {
    TruthTableRow row{Valuation::from_index(table.atom_order, i), false, {}, {}};
    for (const auto& c : constraints.items()) {
      if (!eval_classical(c, row.valuation)) row.violated.push_back(c);
    }
    row.excluded = !row.violated.empty();
    if (!row.excluded) {
      for (const auto& f : formulas) row.values.push_back(eval_classical(f, row.valuation));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

struct TautologyVerdict {
  std::optional<Valuation> falsified;  // first falsifying row, if any
  bool is_tautology() const noexcept { return !falsified.has_value(); }
};

inline TautologyVerdict is_tautology(const Formula& f, std::size_t atom_limit = kDefaultClassicalAtomLimit) {
  const auto order = detail::checked_atoms({f}, atom_limit);
  const std::uint64_t rows = std::uint64_t{1} << order.size();
  for (std::uint64_t i = 0; i < rows; ++i) {
    auto v = Valuation::from_index(order, i);
    if (!eval_classical(f, v)) return {std::move(v)};
  }
  return {};
}

struct EquivalenceVerdict {
  std::optional<Valuation> differs;  // first feasible row where the formulas disagree
  bool is_equivalent() const noexcept { return !differs.has_value(); }
};

// Equivalence restricted to the rows that satisfy every constraint.
inline EquivalenceVerdict are_equivalent_under(const ConstraintSet& constraints, const Formula& f,
                                               const Formula& g,
                                               std::size_t atom_limit = kDefaultClassicalAtomLimit) {
  std::vector<Formula> everything{f, g};
  everything.insert(everything.end(), constraints.items().begin(), constraints.items().end());
  const auto order = detail::checked_atoms(everything, atom_limit);
  const std::uint64_t rows = std::uint64_t{1} << order.size();
  for (std::uint64_t i = 0; i < rows; ++i) {
    auto v = Valuation::from_index(order, i);
    const bool feasible = std::all_of(constraints.items().begin(), constraints.items().end(),
                                      [&](const Formula& c) { return eval_classical(c, v); });
    if (feasible && eval_classical(f, v) != eval_classical(g, v)) return {std::move(v)};
  }
  return {};
}

}  // namespace qepi
