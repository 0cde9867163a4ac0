#pragma once

#include <json.hpp>

#include "relfix/finite_oracle.hpp"
#include "relfix/gspace.hpp"
#include "relfix/plane.hpp"
#include "relfix/relation.hpp"

namespace relfix {

/// {"n": <int>, "pairs": [[r, s], ...]}
nlohmann::json relation_to_json(const FiniteRelation& rel);

/// Throws std::invalid_argument when the document does not follow the schema
/// or violates the relation invariants.
FiniteRelation relation_from_json(const nlohmann::json& doc);

/// {"n": <int>, "pairs": [[r,s],...], "map": [...], "g": [[...], ...],
///  "alpha": [num, den]}; "alpha" is optional.
nlohmann::json instance_to_json(const FiniteInstance& inst);
FiniteInstance instance_from_json(const nlohmann::json& doc);

nlohmann::json verdict_to_json(const HypothesisVerdict& verdict);
nlohmann::json oracle_report_to_json(const OracleReport& report);

nlohmann::json point_to_json(const plane::PlanePoint& p);

/// Witnesses are written as arrays of elements, or null when absent.
template <class Element, class ElementToJson>
nlohmann::json property_report_to_json(const PropertyReport<Element>& report, ElementToJson&& element) {
  nlohmann::json doc;
  doc["samples_checked"] = report.samples_checked;
  doc["g1_witness"] = report.g1_witness
                          ? nlohmann::json::array({element(report.g1_witness->first), element(report.g1_witness->second)})
                          : nlohmann::json(nullptr);
  doc["g2_witness"] = report.g2_witness
                          ? nlohmann::json::array({element(report.g2_witness->first), element(report.g2_witness->second)})
                          : nlohmann::json(nullptr);
  if (report.g3_witness) {
    const auto& [r, u, t] = *report.g3_witness;
    doc["g3_witness"] = nlohmann::json::array({element(r), element(u), element(t)});
  } else {
    doc["g3_witness"] = nullptr;
  }
  return doc;
}

}  // namespace relfix
