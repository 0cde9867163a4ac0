#pragma once

#include <functional>

namespace relfix {

/// Deterministic endomap on a carrier. Must be total on the elements it is
/// applied to.
template <class Element>
using SelfMap = std::function<Element(const Element&)>;

/// Membership predicate of a relation on a carrier that is not enumerated
/// explicitly (points of the plane, grid functions, ...).
template <class Element>
using RelationView = std::function<bool(const Element&, const Element&)>;

/// Which element patterns the triangle property of a g-functional is
/// asserted on.
enum class DomainMode {
  global,              ///< all triples
  relation_restricted  ///< only (r,u) related and (t,u) related
};

/// Real-valued pair function standing in for a metric.
template <class Element>
struct GFunctional {
  std::function<double(const Element&, const Element&)> evaluate;
  DomainMode mode = DomainMode::relation_restricted;

  double operator()(const Element& a, const Element& b) const { return evaluate(a, b); }
};

/// The relation that relates every pair. Turns the relational framework back
/// into the classical one.
template <class Element>
RelationView<Element> universal_relation() {
  return [](const Element&, const Element&) { return true; };
}

}  // namespace relfix
