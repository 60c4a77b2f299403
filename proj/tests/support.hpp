#pragma once

// Test-only helpers: random formula generation and brute-force oracles that
// go through the recursive semantics instead of the library's bitmask search.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qepi/classical.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/formula.hpp"

namespace qepi::support {

struct FormulaGen {
  std::vector<std::string> atom_names;
  std::size_t max_size_depth = 4;
  std::size_t max_modal_depth = 0;

  Formula operator()(std::mt19937& rng) const { return gen(rng, max_size_depth, max_modal_depth); }

  Formula gen(std::mt19937& rng, std::size_t depth, std::size_t k_budget) const {
    std::uniform_int_distribution<int> leaf(0, 9);
    if (depth == 0 || leaf(rng) < 2) {
      const int pick = leaf(rng);
      if (pick == 0) return Formula::Top();
      if (pick == 1) return Formula::Bottom();
      std::uniform_int_distribution<std::size_t> a(0, atom_names.size() - 1);
      return Formula::Var(atom_names[a(rng)]);
    }
    std::uniform_int_distribution<int> op(0, k_budget > 0 ? 6 : 5);
    switch (op(rng)) {
      case 0:
        return Formula::Not(gen(rng, depth - 1, k_budget));
      case 1:
        return Formula::And(gen(rng, depth - 1, k_budget), gen(rng, depth - 1, k_budget));
      case 2:
        return Formula::Or(gen(rng, depth - 1, k_budget), gen(rng, depth - 1, k_budget));
      case 3:
        return Formula::Implies(gen(rng, depth - 1, k_budget), gen(rng, depth - 1, k_budget));
      case 4:
        return Formula::Iff(gen(rng, depth - 1, k_budget), gen(rng, depth - 1, k_budget));
      case 5:
        return Formula::Not(Formula::Not(gen(rng, depth - 1, k_budget)));
      default:
        return Formula::Know(gen(rng, depth - 1, k_budget - 1));
    }
  }
};

inline std::vector<Atom> to_atoms(const std::vector<std::string>& names) {
  std::vector<Atom> out;
  for (const auto& n : names) out.emplace_back(n);
  return out;
}

// Same canonical order as the library (cells ascending as bitmasks, then
// designated world ascending), but every candidate is materialized as an
// EpistemicModel and checked with eval_modal.
inline std::optional<EpistemicModel> oracle_first_model(const Formula& f, const Theory& theory,
                                                        const std::vector<Atom>& order) {
  const std::size_t n = order.size();
  const std::uint64_t vals = std::uint64_t{1} << n;
  const std::uint64_t cells = std::uint64_t{1} << vals;
  for (std::uint64_t mask = 1; mask < cells; ++mask) {
    std::vector<Valuation> worlds;
    for (std::uint64_t i = 0; i < vals; ++i) {
      if ((mask >> i) & 1U) worlds.push_back(Valuation::from_index(order, i));
    }
    for (std::size_t d = 0; d < worlds.size(); ++d) {
      EpistemicModel m(order, worlds, d);
      if (satisfies(m, theory) && eval_modal(f, m, d)) return m;
    }
  }
  return std::nullopt;
}

inline std::vector<Atom> combined_atoms(const Formula& f, const Theory& t) {
  std::vector<Formula> all = t.axioms();
  all.push_back(f);
  return atoms_of_all(all);
}

}  // namespace qepi::support
