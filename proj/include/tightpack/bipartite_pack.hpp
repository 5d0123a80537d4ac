#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tightpack/graphs.hpp"

namespace tightpack {

/// Perfect matching as m edges sorted by A endpoint.
using PerfectMatching = std::vector<BiEdge>;

struct MatchingPacking {
  int m = 0;
  int k = 0;
  /// floor((1 - 3 eps^{1/3}) m p), clamped to [0, m].
  int analytic_k = 0;
  bool reached_analytic = false;
  std::vector<PerfectMatching> matchings;
  std::vector<BiEdge> leftover;
  std::size_t total_edges = 0;

  double leftover_fraction() const {
    return total_edges == 0 ? 0.0 : static_cast<double>(leftover.size()) / static_cast<double>(total_edges);
  }
};

/// Edge set of a k-regular spanning subgraph of g, found through the
/// source -k-> A -1-> B -k-> sink network; nullopt when the max flow is
/// below k m. Requires 0 <= k <= m.
std::optional<std::vector<BiEdge>> max_k_regular(const BipartiteGraph& g, int k);

/// Largest k for which max_k_regular(g, k) exists (binary search).
int largest_k(const BipartiteGraph& g);

/// A cut with X subset of A on the source side and Y subset of B on the
/// sink side. `value` = k(m - |X|) + k(m - |Y|) + e(X, Y).
struct FlowCut {
  std::vector<Vertex> x;
  std::vector<Vertex> y;
  std::int64_t value = 0;
};

/// Minimum cut of the k-regular network, returned only when its value is
/// below k m (i.e. when max_k_regular(g, k) is absent).
std::optional<FlowCut> find_violating_cut(const BipartiteGraph& g, int k);

/// Maximum matching by Hopcroft-Karp; mate_of_a[a] is -1 when unmatched.
/// Vertices and neighbours are scanned in ascending order.
std::vector<Vertex> hopcroft_karp(const BipartiteGraph& g);

/// Splits a k-regular spanning bipartite edge set into k disjoint perfect
/// matchings. Throws std::invalid_argument naming a vertex whose degree is
/// not k. The output is re-checked (sizes, disjointness, union) before return.
std::vector<PerfectMatching> decompose_regular(int m, std::span<const BiEdge> edges);

/// Packs largest_k(g) edge-disjoint perfect matchings. epsilon and p only
/// feed the reported analytic target.
MatchingPacking pack_matchings(const BipartiteGraph& g, double epsilon, double p);

enum class DistributionVerdict { holds, violated, not_applicable };

/// e(X, Y) >= (1 - 3 eps^{1/3}) |X||Y| p, when |X| >= 1/(eps p) and
/// |Y| >= eps^{1/3} m; otherwise not_applicable.
DistributionVerdict edge_distribution_check(const BipartiteGraph& g, std::span<const Vertex> x,
                                            std::span<const Vertex> y, double epsilon, double p);

}  // namespace tightpack
