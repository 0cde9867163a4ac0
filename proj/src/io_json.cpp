#include "relfix/io_json.hpp"

#include <stdexcept>
#include <limits>
#include <string>

namespace relfix {

using nlohmann::json;

namespace {

std::size_t read_size(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<long long>() < 1) {
    throw std::invalid_argument(std::string("expected positive integer field \"") + key + "\"");
  }
  return doc.at(key).get<std::size_t>();
}

std::vector<IndexPair> read_pairs(const json& doc) {
  if (!doc.contains("pairs") || !doc.at("pairs").is_array()) throw std::invalid_argument("expected array field \"pairs\"");
  std::vector<IndexPair> pairs;
  for (const auto& p : doc.at("pairs")) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      throw std::invalid_argument("each pair must be [r, s] with nonnegative integers");
    }
    pairs.emplace_back(p[0].get<Index>(), p[1].get<Index>());
  }
  return pairs;
}

}  // namespace

json relation_to_json(const FiniteRelation& rel) {
  json pairs = json::array();
  for (const auto& [r, s] : rel.pairs()) pairs.push_back({r, s});
  return {{"n", rel.ground_size()}, {"pairs", std::move(pairs)}};
}

FiniteRelation relation_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("relation document must be a JSON object");
  return {read_size(doc, "n"), read_pairs(doc)};
}

json instance_to_json(const FiniteInstance& inst) {
  json doc = relation_to_json(inst.rel);
  doc["map"] = inst.map;
  json rows = json::array();
  for (std::size_t i = 0; i < inst.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < inst.n; ++j) row.push_back(inst.g_at(i, j));
    rows.push_back(std::move(row));
  }
  doc["g"] = std::move(rows);
  if (inst.alpha) doc["alpha"] = {inst.alpha->num, inst.alpha->den};
  return doc;
}

FiniteInstance instance_from_json(const json& doc) {
  FiniteInstance inst;
  inst.rel = relation_from_json(doc);
  inst.n = inst.rel.ground_size();
  if (!doc.contains("map") || !doc.at("map").is_array()) throw std::invalid_argument("expected array field \"map\"");
  for (const auto& v : doc.at("map")) {
    if (!v.is_number_unsigned()) throw std::invalid_argument("map entries must be nonnegative integers");
    inst.map.push_back(v.get<Index>());
  }
  if (!doc.contains("g") || !doc.at("g").is_array() || doc.at("g").size() != inst.n) {
    throw std::invalid_argument("expected n x n integer matrix \"g\"");
  }
  for (const auto& row : doc.at("g")) {
    if (!row.is_array() || row.size() != inst.n) throw std::invalid_argument("expected n x n integer matrix \"g\"");
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw std::invalid_argument("g entries must be integers");
      inst.g.push_back(v.get<int>());
    }
  }
  if (doc.contains("alpha")) {
    const auto& a = doc.at("alpha");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer()) {
      throw std::invalid_argument("alpha must be [num, den]");
    }
    inst.alpha = Rational{a[0].get<int>(), a[1].get<int>()};
  }
  inst.validate(std::numeric_limits<int>::max());
  return inst;
}

json verdict_to_json(const HypothesisVerdict& verdict) {
  json doc{{"holds", verdict.holds}, {"reason", verdict.reason}};
  doc["alpha"] = verdict.alpha ? json::array({verdict.alpha->num, verdict.alpha->den}) : json(nullptr);
  return doc;
}

json oracle_report_to_json(const OracleReport& report) {
  json sweeps = json::array();
  for (const auto& s : report.sweeps) {
    json ces = json::array();
    for (const auto& c : s.counterexamples) {
      ces.push_back({{"index", c.index}, {"kind", c.kind}, {"instance", instance_to_json(c.instance)}});
    }
    sweeps.push_back({{"n", s.n},
                      {"g_max", s.g_max},
                      {"rel_count_cap", s.rel_count_cap},
                      {"relations_enumerated", s.relations_enumerated},
                      {"instances_checked", s.instances_checked},
                      {"hypotheses_satisfied", s.hypotheses_satisfied},
                      {"uniqueness_filtered", s.uniqueness_filtered},
                      {"counterexample_total", s.counterexample_total},
                      {"counterexamples", std::move(ces)}});
  }
  return {{"sweeps", std::move(sweeps)},
          {"readings", report.readings},
          {"instances_checked", report.instances_checked()},
          {"counterexamples", report.counterexample_count()}};
}

json point_to_json(const plane::PlanePoint& p) { return json::array({p.first, p.second}); }

}  // namespace relfix
