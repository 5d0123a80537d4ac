#pragma once

#include <string>

#include <json.hpp>

#include "tightpack/bipartite_pack.hpp"
#include "tightpack/digraph_pack.hpp"
#include "tightpack/hyper_pack.hpp"
#include "tightpack/schedule.hpp"
#include "tightpack/uniformity.hpp"
#include "tightpack/verify.hpp"

namespace tightpack {

// JSON documents written by the CLI. None of them carry timestamps, so the
// same inputs and seed give byte-identical output.

nlohmann::json to_json(const UniformityReport& report);
nlohmann::json to_json(const Schedule& schedule);
nlohmann::json to_json(const PackOptions& options);
nlohmann::json to_json(const CensusResult& census);

/// {m, k, analytic_k, reached_analytic, leftover_fraction, epsilon, p}
nlohmann::json matching_report(const MatchingPacking& packing, double epsilon, double p);

/// {n, rounds, cycles, covered_arcs, coverage_fraction, schedule, ...}
nlohmann::json digraph_pack_report(const PackReport& report, const PackOptions& options);

/// {n, rounds, cycles, covered_edges, coverage_fraction, schedule, diagnostics, ...}
nlohmann::json hyper_pack_report(const HyperPackReport& report, const PackOptions& options);

/// {kind, n, num_cycles, coverage_fraction, certified, violations}
nlohmann::json certification_report(const PackingResult& result, const Certification& cert);

}  // namespace tightpack
