#include "tightpack/report.hpp"

namespace tightpack {

using nlohmann::json;

namespace {

json row_json(std::int64_t t, const ScheduleStep& s) {
  return json{{"t", t}, {"epsilon", s.epsilon}, {"p", s.p}, {"kappa", s.kappa}, {"r", s.r}};
}

template <typename Log>
json round_common(const Log& log) {
  json j{{"round", log.round}, {"epsilon", log.epsilon}, {"p", log.p},
         {"r", log.r},         {"edges_before", log.edges_before},
         {"cycles", log.cycles}, {"edges_removed", log.edges_removed}};
  j["recheck_worst_ratio"] = log.recheck_worst_ratio ? json(*log.recheck_worst_ratio) : json(nullptr);
  return j;
}

}  // namespace

json to_json(const UniformityReport& report) {
  json j{{"uniform", report.uniform},       {"epsilon", report.epsilon},
         {"p", report.p},                   {"worst_ratio", report.worst_ratio},
         {"sites_tested", report.sites_tested}, {"mode", to_string(report.mode)}};
  if (report.witness) {
    j["witness"] = json{{"pattern", report.witness->pattern},
                        {"site", report.witness->site},
                        {"observed", report.witness->observed},
                        {"expected", report.witness->expected}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const Schedule& s) {
  json steps = json::array();
  for (std::size_t t = 0; t < s.steps.size(); ++t) steps.push_back(row_json(static_cast<std::int64_t>(t), s.steps[t]));
  return json{{"kind", to_string(s.kind)},
              {"variant", s.fixed_kappa ? "fixed-kappa" : "analytic"},
              {"n", s.n},
              {"epsilon", s.epsilon},
              {"p", s.p},
              {"stop_threshold", s.stop_threshold},
              {"T", s.T},
              {"truncated", s.truncated},
              {"steps", steps},
              {"before_stop", row_json(s.T > 0 ? s.T - 1 : 0, s.before_stop)},
              {"at_stop", row_json(s.T, s.at_stop)},
              {"monotone", s.monotone},
              {"epsilon_bound", s.epsilon_bound},
              {"bound_holds", s.bound_holds}};
}

json to_json(const PackOptions& o) {
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  return json{{"profile", to_string(o.profile)},
              {"seed", o.seed},
              {"kappa", opt(o.kappa)},
              {"r", opt(o.r)},
              {"r_cap", opt(o.r_cap)},
              {"rounds_cap", opt(o.rounds_cap)},
              {"patience", o.patience},
              {"copies_budget", o.copies_budget},
              {"recheck", o.recheck},
              {"recheck_sites", o.recheck_sites}};
}

json to_json(const CensusResult& c) {
  return json{{"max_condensed", c.max_count},
              {"witness", c.witness ? json(*c.witness) : json(nullptr)},
              {"sets_tested", c.sets_tested},
              {"exhaustive", c.exhaustive}};
}

json matching_report(const MatchingPacking& packing, double epsilon, double p) {
  return json{{"m", packing.m},
              {"k", packing.k},
              {"analytic_k", packing.analytic_k},
              {"reached_analytic", packing.reached_analytic},
              {"leftover_fraction", packing.leftover_fraction()},
              {"leftover_edges", packing.leftover.size()},
              {"epsilon", epsilon},
              {"p", p}};
}

json digraph_pack_report(const PackReport& report, const PackOptions& options) {
  json rounds = json::array();
  for (const RoundLog& log : report.rounds) {
    json j = round_common(log);
    j["kept_edges"] = log.kept_edges;
    rounds.push_back(j);
  }
  return json{{"n", report.result.n},
              {"rounds", report.rounds.size()},
              {"cycles", report.result.cycles.size()},
              {"covered_arcs", report.result.covered_edges},
              {"total_arcs", report.result.total_edges},
              {"coverage_fraction", report.result.coverage_fraction()},
              {"stop_reason", report.stop_reason},
              {"options", to_json(options)},
              {"schedule", to_json(report.schedule)},
              {"round_log", rounds}};
}

json hyper_pack_report(const HyperPackReport& report, const PackOptions& options) {
  json rounds = json::array();
  for (const HyperRoundLog& log : report.rounds) {
    json j = round_common(log);
    j["kept_arcs"] = log.kept_arcs;
    rounds.push_back(j);
  }
  return json{{"n", report.result.n},
              {"rounds", report.rounds.size()},
              {"cycles", report.result.cycles.size()},
              {"covered_edges", report.result.covered_edges},
              {"total_edges", report.result.total_edges},
              {"coverage_fraction", report.result.coverage_fraction()},
              {"stop_reason", report.stop_reason},
              {"options", to_json(options)},
              {"schedule", to_json(report.schedule)},
              {"diagnostics", json{{"round_log", rounds}, {"condensed_census", to_json(report.census)}}}};
}

json certification_report(const PackingResult& result, const Certification& cert) {
  return json{{"kind", result.kind == CycleKind::tight ? "tight-3graph" : "directed"},
              {"n", result.n},
              {"num_cycles", result.cycles.size()},
              {"coverage_fraction", result.coverage_fraction()},
              {"certified", cert.certified},
              {"violations", cert.violations}};
}

}  // namespace tightpack
