#include "kolab/report.hpp"

namespace kolab {

Json report_envelope(std::string_view command, const RunConfig& config) {
  Json cfg = Json::object();
  for (const auto& key : RunConfig::keys()) cfg[key] = config.get(key);
  return Json{{"schema_version", kSchemaVersion},
              {"command", std::string(command)},
              {"config", std::move(cfg)},
              {"config_hash", hex64(config.hash())},
              {"params_hash", hex64(config.params.hash())},
              {"seed", config.seed}};
}

Json to_json(const ReductionReport& r) {
  Json per_k = Json::array();
  for (const auto& s : r.per_k) {
    per_k.push_back({{"k", s.k}, {"fired", s.fired}, {"m", s.m}, {"fired_fraction", s.fraction()}});
  }
  return Json{
      {"x", to_hex(r.x)},
      {"l", r.l},
      {"p_l", r.p_l},
      {"n", r.n},
      {"verdict", r.halts ? "HALTS" : "LOOPS"},
      {"firing_k", r.firing_k ? Json(*r.firing_k) : Json(nullptr)},
      {"per_k", std::move(per_k)},
      {"ground_truth", r.ground_truth ? "HALTS" : "LOOPS"},
      {"correct", r.halts == r.ground_truth},
      {"seed", r.seed},
      {"params_hash", hex64(r.params_hash)},
      {"oracle_mode", std::string(to_string(r.mode))},
      {"m", r.m},
      {"threshold", r.threshold},
      {"k_filter", std::string(to_string(r.k_filter))},
      {"costs", {{"oracle_queries", r.oracle_queries}, {"logical_executions", r.logical_executions}}},
      {"hoeffding_bound_negative_side",
       r.hoeffding_negative_side ? Json(*r.hoeffding_negative_side) : Json(nullptr)},
      {"wall_time", r.wall_time},
  };
}

Json to_json(const SpuriousEstimate& e) {
  return Json{{"x", to_hex(e.x)},
              {"k", e.k},
              {"trials", e.trials},
              {"fired", e.fired},
              {"frequency", e.frequency},
              {"ci95", {e.ci_low, e.ci_high}},
              {"bound", e.bound},
              {"within_bound", e.within_bound},
              {"seed", e.seed}};
}

Json to_json(const GCalibration& c) {
  return Json{{"G_star", c.g_star},
              {"worst_gap", c.worst_gap},
              {"witness", to_hex(c.witness)},
              {"checked", c.checked},
              {"qualifying", c.qualifying},
              {"params_hash", hex64(c.params_hash)}};
}

Json to_json(const OracleVerdict& v) {
  return Json{{"q", to_hex(v.q)},
              {"random", v.random},
              {"mode", std::string(to_string(v.mode))},
              {"witness", v.witness ? Json(to_hex(*v.witness)) : Json(nullptr)},
              {"cost", v.cost}};
}

Json to_json(const CrossValidation& cv) {
  Json rows = Json::array();
  for (const auto& r : cv.per_length) {
    rows.push_back({{"length", r.length},
                    {"exhaustive", r.exhaustive},
                    {"checked", r.checked},
                    {"agreed", r.agreed},
                    {"nonrandom", r.nonrandom}});
  }
  Json bad = Json::array();
  for (const auto& q : cv.disagreements) bad.push_back(to_hex(q));
  return Json{{"per_length", std::move(rows)},
              {"checked", cv.checked},
              {"agreed", cv.agreed},
              {"agreement", cv.agreement()},
              {"disagreements", std::move(bad)},
              {"params_hash", hex64(cv.params_hash)}};
}

Json to_json(const PairLemmaCheck& r) {
  return Json{{"p", r.p},
              {"k", r.k},
              {"n", r.n},
              {"l", r.l},
              {"strings", r.strings},
              {"hypothesis", r.hypothesis},
              {"counterexamples", r.counterexamples},
              {"first_counterexample", r.first_counterexample ? Json(to_hex(*r.first_counterexample)) : Json(nullptr)},
              {"params_hash", hex64(r.params_hash)}};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

Json without_wall_time(Json report) {
  if (report.is_object()) {
    report.erase("wall_time");
    for (auto& [key, value] : report.items()) value = without_wall_time(std::move(value));
  } else if (report.is_array()) {
    for (auto& value : report) value = without_wall_time(std::move(value));
  }
  return report;
}

}  // namespace kolab
