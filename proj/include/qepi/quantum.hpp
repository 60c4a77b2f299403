#pragma once

// Interval propositions about a particle on a line, their uncertainty
// products, and the axioms and table constraints that incompatible
// momentum/position pairs induce. Natural units (hbar = c = 1); the spread
// of an observable is the width of its declared interval.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qepi/classical.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/error.hpp"
#include "qepi/formula.hpp"
#include "qepi/rational.hpp"

namespace qepi {

enum class ObservableKind { Position, Momentum };

inline const char* to_string(ObservableKind k) {
  return k == ObservableKind::Position ? "position" : "momentum";
}

class IntervalProposition {
 public:
  IntervalProposition(Atom atom, ObservableKind kind, Rational lo, Rational hi)
      : atom_(std::move(atom)), kind_(kind), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!(lo_ < hi_)) {
      throw InvalidInterval("interval of '" + atom_.name() + "' must have lo < hi, got [" + to_string(lo_) +
                            ", " + to_string(hi_) + "]");
    }
  }

  const Atom& atom() const noexcept { return atom_; }
  ObservableKind kind() const noexcept { return kind_; }
  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }

  friend bool operator==(const IntervalProposition&, const IntervalProposition&) = default;

 private:
  Atom atom_;
  ObservableKind kind_;
  Rational lo_;
  Rational hi_;
};

class PhysicsConfig {
 public:
  PhysicsConfig() = default;
  explicit PhysicsConfig(Rational bound) : bound_(std::move(bound)) {
    if (bound_ <= 0) throw InvalidNumber("uncertainty bound must be positive, got " + to_string(bound_));
  }

  // Right-hand side of  dp * dx >= bound.
  const Rational& bound() const noexcept { return bound_; }

 private:
  Rational bound_{1, 2};
};

inline Rational width(const IntervalProposition& p) { return p.hi() - p.lo(); }

namespace detail {

inline void require_momentum_position(const IntervalProposition& m, const IntervalProposition& x) {
  if (m.kind() != ObservableKind::Momentum || x.kind() != ObservableKind::Position) {
    throw KindMismatch("uncertainty product needs (momentum, position), got (" + std::string(to_string(m.kind())) +
                       ", " + to_string(x.kind()) + ") for '" + m.atom().name() + "', '" + x.atom().name() + "'");
  }
}

}  // namespace detail

inline Rational uncertainty_product(const IntervalProposition& m, const IntervalProposition& x) {
  detail::require_momentum_position(m, x);
  return width(m) * width(x);
}

// Equality with the bound counts as compatible.
inline bool compatible(const IntervalProposition& m, const IntervalProposition& x, const PhysicsConfig& cfg = {}) {
  return uncertainty_product(m, x) >= cfg.bound();
}

inline IntervalProposition merge(const IntervalProposition& a, const IntervalProposition& b, Atom new_name) {
  if (a.kind() != b.kind()) {
    throw KindMismatch("cannot merge " + std::string(to_string(a.kind())) + " '" + a.atom().name() + "' with " +
                       to_string(b.kind()) + " '" + b.atom().name() + "'");
  }
  if (std::max(a.lo(), b.lo()) > std::min(a.hi(), b.hi())) {
    throw DisjointIntervals("intervals of '" + a.atom().name() + "' and '" + b.atom().name() +
                            "' have a gap; their union is not an interval");
  }
  return IntervalProposition(std::move(new_name), a.kind(), std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

struct AxiomProvenance {
  Atom momentum;
  Atom position;
  Rational momentum_width;
  Rational position_width;
  Rational product;
  Rational bound;
};

struct GeneratedTheory {
  Theory epistemic_axioms;             // K(m) -> !K(x)
  ConstraintSet classical_constraints;  // !(m & x)
  std::vector<AxiomProvenance> provenance;  // parallel to both lists
};

// One axiom and one constraint per incompatible (momentum, position) pair,
// in declaration order of the momentum proposition, then the position one.
inline GeneratedTheory generate(const std::vector<IntervalProposition>& props, const PhysicsConfig& cfg = {}) {
  for (std::size_t i = 0; i < props.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (props[i].atom() == props[j].atom()) {
        throw DuplicateAtom("atom '" + props[i].atom().name() + "' is declared twice");
      }
    }
  }
  GeneratedTheory out;
  for (const auto& m : props) {
    if (m.kind() != ObservableKind::Momentum) continue;
    for (const auto& x : props) {
      if (x.kind() != ObservableKind::Position || compatible(m, x, cfg)) continue;
      const Formula km = Formula::Know(Formula::Var(m.atom()));
      const Formula kx = Formula::Know(Formula::Var(x.atom()));
      out.epistemic_axioms.add(Formula::Implies(km, Formula::Not(kx)));
      out.classical_constraints.add(Formula::Not(Formula::And(Formula::Var(m.atom()), Formula::Var(x.atom()))));
      out.provenance.push_back({m.atom(), x.atom(), width(m), width(x), uncertainty_product(m, x), cfg.bound()});
    }
  }
  return out;
}

}  // namespace qepi
