#pragma once

// Single-agent S5 semantics. A model is one equivalence class ("cell") of
// pairwise distinct valuations with a designated world; K(phi) holds at a
// world iff phi holds at every world of the cell.
//
// Satisfiability is decided by enumerating every non-empty cell over the
// valuations of the combined atom set. Truth at a world only depends on its
// own class, and two worlds with the same valuation satisfy the same
// formulas, so these canonical models are exhaustive.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qepi/classical.hpp"
#include "qepi/error.hpp"
#include "qepi/formula.hpp"

namespace qepi {

inline constexpr std::size_t kDefaultModalAtomLimit = 4;
// 2^5 valuations fill a 32-bit cell mask and give 2^32 - 1 cells; beyond that
// the enumeration cannot finish.
inline constexpr std::size_t kMaxModalAtoms = 5;

class EpistemicModel {
 public:
  EpistemicModel(std::vector<Atom> atom_order, std::vector<Valuation> cell, std::size_t designated)
      : atom_order_(std::move(atom_order)), cell_(std::move(cell)), designated_(designated) {
    if (cell_.empty()) throw InvalidModel("an epistemic model needs at least one world");
    if (designated_ >= cell_.size()) throw InvalidModel("designated world is not in the cell");
    for (std::size_t i = 0; i < cell_.size(); ++i) {
      if (cell_[i].atom_order() != atom_order_) {
        throw InvalidModel("world " + std::to_string(i) + " is over a different atom set");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (cell_[i].bits() == cell_[j].bits()) {
          throw InvalidModel("worlds " + std::to_string(j) + " and " + std::to_string(i) +
                             " carry the same valuation");
        }
      }
    }
  }

  const std::vector<Atom>& atom_order() const noexcept { return atom_order_; }
  const std::vector<Valuation>& cell() const noexcept { return cell_; }
  std::size_t designated() const noexcept { return designated_; }
  std::size_t size() const noexcept { return cell_.size(); }

  friend bool operator==(const EpistemicModel&, const EpistemicModel&) = default;

 private:
  std::vector<Atom> atom_order_;
  std::vector<Valuation> cell_;
  std::size_t designated_;
};

// Global axioms: a model satisfies the theory iff every axiom holds at every
// world of its cell.
class Theory {
 public:
  Theory() = default;
  Theory(std::initializer_list<Formula> fs) {
    for (const auto& f : fs) add(f);
  }
  explicit Theory(const std::vector<Formula>& fs) {
    for (const auto& f : fs) add(f);
  }

  void add(const Formula& f) {
    if (std::find(axioms_.begin(), axioms_.end(), f) == axioms_.end()) axioms_.push_back(f);
  }

  const std::vector<Formula>& axioms() const noexcept { return axioms_; }
  bool empty() const noexcept { return axioms_.empty(); }

 private:
  std::vector<Formula> axioms_;
};

enum class Verdict { Valid, Invalid, Satisfiable, Unsatisfiable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Valid:
      return "VALID";
    case Verdict::Invalid:
      return "INVALID";
    case Verdict::Satisfiable:
      return "SATISFIABLE";
    case Verdict::Unsatisfiable:
      return "UNSATISFIABLE";
  }
  return "?";
}

struct CheckResult {
  Verdict verdict;
  // Model for Satisfiable, countermodel for Invalid.
  std::optional<EpistemicModel> model;

  // Valid and Satisfiable are the affirmative answers.
  bool affirmative() const noexcept {
    return verdict == Verdict::Valid || verdict == Verdict::Satisfiable;
  }
};

inline bool eval_modal(const Formula& f, const EpistemicModel& m, std::size_t world) {
  if (world >= m.size()) throw InvalidModel("world index " + std::to_string(world) + " out of range");
  switch (f.op()) {
    case Op::Top:
      return true;
    case Op::Bottom:
      return false;
    case Op::Var: {
      auto b = m.cell()[world].lookup(f.atom());
      if (!b) throw UnknownAtom("atom '" + f.atom().name() + "' is not in the model");
      return *b;
    }
    case Op::Not:
      return !eval_modal(f.sub(), m, world);
    case Op::Know:
      for (std::size_t u = 0; u < m.size(); ++u) {
        if (!eval_modal(f.sub(), m, u)) return false;
      }
      return true;
    default:
      break;
  }
  const bool a = eval_modal(f.left(), m, world);
  const bool b = eval_modal(f.right(), m, world);
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

inline bool satisfies(const EpistemicModel& m, const Theory& theory) {
  for (const auto& ax : theory.axioms()) {
    for (std::size_t w = 0; w < m.size(); ++w) {
      if (!eval_modal(ax, m, w)) return false;
    }
  }
  return true;
}

inline Formula erase_K(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
    case Op::Var:
      return f;
    case Op::Not:
      return Formula::Not(erase_K(f.sub()));
    case Op::Know:
      return erase_K(f.sub());
    case Op::And:
      return Formula::And(erase_K(f.left()), erase_K(f.right()));
    case Op::Or:
      return Formula::Or(erase_K(f.left()), erase_K(f.right()));
    case Op::Implies:
      return Formula::Implies(erase_K(f.left()), erase_K(f.right()));
    case Op::Iff:
      return Formula::Iff(erase_K(f.left()), erase_K(f.right()));
  }
  return f;
}

namespace detail {

using WorldSet = std::uint64_t;  // bit i: valuation i of the canonical order

// A formula flattened to postfix form, evaluated on sets of worlds at once.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::vector<Atom>& order) { emit(f, order); }

  // Worlds of `cell` at which the formula holds. `atom_sets[j]` is the set of
  // valuations making atom j true.
  WorldSet eval(WorldSet cell, const std::vector<WorldSet>& atom_sets, std::vector<WorldSet>& stack) const {
    stack.clear();
    for (const Instr& in : code_) {
      WorldSet r = 0;
      switch (in.op) {
        case Op::Top:
          r = cell;
          break;
        case Op::Bottom:
          r = 0;
          break;
        case Op::Var:
          r = atom_sets[in.atom] & cell;
          break;
        case Op::Not:
          r = cell & ~pop(stack);
          break;
        case Op::Know:
          r = pop(stack) == cell ? cell : 0;
          break;
        default: {
          const WorldSet b = pop(stack);
          const WorldSet a = pop(stack);
          switch (in.op) {
            case Op::And:
              r = a & b;
              break;
            case Op::Or:
              r = a | b;
              break;
            case Op::Implies:
              r = (cell & ~a) | b;
              break;
            default:
              r = cell & ~(a ^ b);
          }
        }
      }
      stack.push_back(r);
    }
    return stack.back();
  }

 private:
  struct Instr {
    Op op;
    std::size_t atom;
  };

  static WorldSet pop(std::vector<WorldSet>& s) {
    const WorldSet v = s.back();
    s.pop_back();
    return v;
  }

  void emit(const Formula& f, const std::vector<Atom>& order) {
    switch (f.op()) {
      case Op::Var: {
        auto it = std::lower_bound(order.begin(), order.end(), f.atom());
        code_.push_back({Op::Var, static_cast<std::size_t>(it - order.begin())});
        return;
      }
      case Op::Not:
      case Op::Know:
        emit(f.sub(), order);
        break;
      case Op::Top:
      case Op::Bottom:
        break;
      default:
        emit(f.left(), order);
        emit(f.right(), order);
    }
    code_.push_back({f.op(), 0});
  }

  std::vector<Instr> code_;
};

inline std::vector<Atom> modal_atoms(const Formula& f, const Theory& theory, std::size_t atom_limit) {
  std::vector<Formula> all = theory.axioms();
  all.push_back(f);
  auto order = atoms_of_all(all);
  const std::size_t n = order.size();
  if (n > atom_limit || n > kMaxModalAtoms) {
    std::string msg = std::to_string(n) + " atoms exceed the modal atom limit of " +
                      std::to_string(std::min(atom_limit, kMaxModalAtoms)) +
                      ": the model search enumerates all 2^(2^" + std::to_string(n) + ") - 1 cells";
    if (n > kMaxModalAtoms) msg += " (at most " + std::to_string(kMaxModalAtoms) + " atoms are supported)";
    throw AtomLimitExceeded(msg);
  }
  return order;
}

}  // namespace detail

// First model, in canonical order, of `f` under `theory`: cells by ascending
// bitmask over the ascending valuations, then designated world ascending.
inline CheckResult is_satisfiable(const Formula& f, const Theory& theory = {},
                                  std::size_t atom_limit = kDefaultModalAtomLimit) {
  const auto order = detail::modal_atoms(f, theory, atom_limit);
  const std::size_t n = order.size();
  const std::size_t valuations = std::size_t{1} << n;

  std::vector<detail::WorldSet> atom_sets(n, 0);
  for (std::size_t i = 0; i < valuations; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((i >> (n - 1 - j)) & 1U) atom_sets[j] |= detail::WorldSet{1} << i;
    }
  }

  const detail::CompiledFormula target(f, order);
  std::vector<detail::CompiledFormula> axioms;
  for (const auto& ax : theory.axioms()) axioms.emplace_back(ax, order);

  std::vector<detail::WorldSet> stack;
  const detail::WorldSet last = (detail::WorldSet{1} << valuations) - 1;
  for (detail::WorldSet cell = 1;; ++cell) {
    const bool admissible = std::all_of(axioms.begin(), axioms.end(), [&](const auto& ax) {
      return ax.eval(cell, atom_sets, stack) == cell;
    });
    if (admissible) {
      const detail::WorldSet hits = target.eval(cell, atom_sets, stack);
      if (hits != 0) {
        std::vector<Valuation> worlds;
        for (std::size_t i = 0; i < valuations; ++i) {
          if ((cell >> i) & 1U) worlds.push_back(Valuation::from_index(order, i));
        }
        const auto first = static_cast<unsigned>(std::countr_zero(hits));
        const detail::WorldSet below = (detail::WorldSet{1} << first) - 1;
        const auto designated = static_cast<std::size_t>(std::popcount(cell & below));
        return {Verdict::Satisfiable, EpistemicModel(order, std::move(worlds), designated)};
      }
    }
    if (cell == last) break;
  }
  return {Verdict::Unsatisfiable, std::nullopt};
}

inline CheckResult is_valid(const Formula& f, const Theory& theory = {},
                            std::size_t atom_limit = kDefaultModalAtomLimit) {
  CheckResult r = is_satisfiable(Formula::Not(f), theory, atom_limit);
  if (r.verdict == Verdict::Unsatisfiable) return {Verdict::Valid, std::nullopt};
  return {Verdict::Invalid, std::move(r.model)};
}

inline CheckResult are_equivalent_modal(const Formula& f, const Formula& g, const Theory& theory = {},
                                        std::size_t atom_limit = kDefaultModalAtomLimit) {
  return is_valid(Formula::Iff(f, g), theory, atom_limit);
}

}  // namespace qepi
