#include "tightpack/bipartite_pack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "tightpack/max_flow.hpp"

namespace tightpack {

namespace {

// Node layout: source 0, A at 1..m, B at m+1..2m, sink 2m+1.
struct RegularNetwork {
  FlowNetwork net;
  std::vector<int> middle_arcs;
  std::vector<BiEdge> middle_edges;
  int source = 0, sink = 0;

  RegularNetwork(const BipartiteGraph& g, int k) : net(2 * g.m() + 2) {
    const int m = g.m();
    sink = 2 * m + 1;
    for (Vertex a = 0; a < m; ++a) net.add_arc(source, 1 + a, k);
    for (const BiEdge& e : g.edges()) {
      middle_arcs.push_back(net.add_arc(1 + e.a, 1 + m + e.b, 1));
      middle_edges.push_back(e);
    }
    for (Vertex b = 0; b < m; ++b) net.add_arc(1 + m + b, sink, k);
  }
};

void check_k(const BipartiteGraph& g, int k) {
  if (k < 0 || k > g.m()) {
    throw std::invalid_argument("max_k_regular: k=" + std::to_string(k) + " outside [0, " +
                                std::to_string(g.m()) + "]");
  }
}

}  // namespace

std::optional<std::vector<BiEdge>> max_k_regular(const BipartiteGraph& g, int k) {
  check_k(g, k);
  if (k == 0) return std::vector<BiEdge>{};
  RegularNetwork rn(g, k);
  const std::int64_t flow = rn.net.max_flow(rn.source, rn.sink);
  if (flow != static_cast<std::int64_t>(k) * g.m()) return std::nullopt;
  std::vector<BiEdge> chosen;
  chosen.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(g.m()));
  for (std::size_t i = 0; i < rn.middle_arcs.size(); ++i) {
    if (rn.net.flow_on(rn.middle_arcs[i]) == 1) chosen.push_back(rn.middle_edges[i]);
  }
  return chosen;
}

int largest_k(const BipartiteGraph& g) {
  const int m = g.m();
  int hi = m;
  for (Vertex v = 0; v < m; ++v) {
    hi = std::min<int>(hi, static_cast<int>(std::min(g.degree_a(v), g.degree_b(v))));
  }
  int lo = 0;  // feasible
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (max_k_regular(g, mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::optional<FlowCut> find_violating_cut(const BipartiteGraph& g, int k) {
  check_k(g, k);
  const int m = g.m();
  RegularNetwork rn(g, k);
  const std::int64_t flow = rn.net.max_flow(rn.source, rn.sink);
  if (flow >= static_cast<std::int64_t>(k) * m) return std::nullopt;
  const std::vector<char> side = rn.net.source_side(rn.source);
  FlowCut cut;
  for (Vertex a = 0; a < m; ++a) {
    if (side[1 + a]) cut.x.push_back(a);
  }
  for (Vertex b = 0; b < m; ++b) {
    if (!side[1 + m + b]) cut.y.push_back(b);
  }
  std::int64_t crossing = 0;
  for (Vertex a : cut.x) {
    for (Vertex b : cut.y) crossing += g.has_edge(a, b) ? 1 : 0;
  }
  cut.value = static_cast<std::int64_t>(k) * (m - static_cast<std::int64_t>(cut.x.size())) +
              static_cast<std::int64_t>(k) * (m - static_cast<std::int64_t>(cut.y.size())) + crossing;
  return cut;
}

std::vector<Vertex> hopcroft_karp(const BipartiteGraph& g) {
  const int m = g.m();
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(m));
  for (Vertex a = 0; a < m; ++a) adj[a] = g.neighbors_a(a);
  std::vector<Vertex> mate_a(static_cast<std::size_t>(m), -1), mate_b(static_cast<std::size_t>(m), -1);
  std::vector<int> dist(static_cast<std::size_t>(m));

  auto bfs = [&]() {
    std::queue<Vertex> queue;
    bool found = false;
    for (Vertex a = 0; a < m; ++a) {
      if (mate_a[a] < 0) {
        dist[a] = 0;
        queue.push(a);
      } else {
        dist[a] = kInf;
      }
    }
    while (!queue.empty()) {
      const Vertex a = queue.front();
      queue.pop();
      for (Vertex b : adj[a]) {
        const Vertex next = mate_b[b];
        if (next < 0) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[a] + 1;
          queue.push(next);
        }
      }
    }
    return found;
  };

  auto dfs = [&](auto&& self, Vertex a) -> bool {
    for (Vertex b : adj[a]) {
      const Vertex next = mate_b[b];
      if (next < 0 || (dist[next] == dist[a] + 1 && self(self, next))) {
        mate_a[a] = b;
        mate_b[b] = a;
        return true;
      }
    }
    dist[a] = kInf;
    return false;
  };

  while (bfs()) {
    for (Vertex a = 0; a < m; ++a) {
      if (mate_a[a] < 0) dfs(dfs, a);
    }
  }
  return mate_a;
}

std::vector<PerfectMatching> decompose_regular(int m, std::span<const BiEdge> edges) {
  BipartiteGraph current(m, edges);
  if (m == 0) return {};
  const std::size_t k = current.degree_a(0);
  for (Vertex v = 0; v < m; ++v) {
    if (current.degree_a(v) != k) {
      throw std::invalid_argument("decompose_regular: vertex a" + std::to_string(v) + " has degree " +
                                  std::to_string(current.degree_a(v)) + ", expected " + std::to_string(k));
    }
    if (current.degree_b(v) != k) {
      throw std::invalid_argument("decompose_regular: vertex b" + std::to_string(v) + " has degree " +
                                  std::to_string(current.degree_b(v)) + ", expected " + std::to_string(k));
    }
  }

  std::vector<PerfectMatching> matchings;
  std::vector<BiEdge> remaining(edges.begin(), edges.end());
  for (std::size_t round = 0; round < k; ++round) {
    const std::vector<Vertex> mate = hopcroft_karp(current);
    PerfectMatching matching;
    for (Vertex a = 0; a < m; ++a) {
      // A regular bipartite graph always has a perfect matching.
      if (mate[a] < 0) throw std::logic_error("decompose_regular: no perfect matching in regular graph");
      matching.push_back(BiEdge{a, mate[a]});
    }
    std::sort(remaining.begin(), remaining.end());
    std::vector<BiEdge> rest;
    rest.reserve(remaining.size() - static_cast<std::size_t>(m));
    std::set_difference(remaining.begin(), remaining.end(), matching.begin(), matching.end(),
                        std::back_inserter(rest));
    remaining = std::move(rest);
    current = BipartiteGraph(m, remaining);
    matchings.push_back(std::move(matching));
  }

  // Self-certification: sizes, disjointness and exact re-union.
  std::vector<BiEdge> reunion;
  for (const auto& matching : matchings) {
    std::vector<char> seen_b(static_cast<std::size_t>(m), 0);
    for (const BiEdge& e : matching) {
      if (seen_b[e.b]) throw std::logic_error("decompose_regular: matching reuses a B vertex");
      seen_b[e.b] = 1;
    }
    reunion.insert(reunion.end(), matching.begin(), matching.end());
  }
  std::sort(reunion.begin(), reunion.end());
  std::vector<BiEdge> input(edges.begin(), edges.end());
  std::sort(input.begin(), input.end());
  if (reunion != input) throw std::logic_error("decompose_regular: matchings do not re-compose the input");
  return matchings;
}

MatchingPacking pack_matchings(const BipartiteGraph& g, double epsilon, double p) {
  MatchingPacking packing;
  packing.m = g.m();
  packing.total_edges = g.num_edges();
  const double target = std::floor((1.0 - 3.0 * std::cbrt(epsilon)) * g.m() * p);
  packing.analytic_k = static_cast<int>(std::clamp(target, 0.0, static_cast<double>(g.m())));

  packing.k = largest_k(g);
  std::vector<BiEdge> regular = max_k_regular(g, packing.k).value();
  packing.matchings = decompose_regular(g.m(), regular);
  packing.reached_analytic = packing.k >= packing.analytic_k;

  std::vector<BiEdge> all = g.edges();
  std::sort(regular.begin(), regular.end());
  std::set_difference(all.begin(), all.end(), regular.begin(), regular.end(), std::back_inserter(packing.leftover));
  return packing;
}

DistributionVerdict edge_distribution_check(const BipartiteGraph& g, std::span<const Vertex> x,
                                            std::span<const Vertex> y, double epsilon, double p) {
  const double cbrt_eps = std::cbrt(epsilon);
  if (static_cast<double>(x.size()) < 1.0 / (epsilon * p) ||
      static_cast<double>(y.size()) < cbrt_eps * g.m()) {
    return DistributionVerdict::not_applicable;
  }
  std::size_t crossing = 0;
  for (Vertex a : x) {
    for (Vertex b : y) crossing += g.has_edge(a, b) ? 1 : 0;
  }
  const double bound = (1.0 - 3.0 * cbrt_eps) * static_cast<double>(x.size()) * static_cast<double>(y.size()) * p;
  return static_cast<double>(crossing) >= bound ? DistributionVerdict::holds : DistributionVerdict::violated;
}

}  // namespace tightpack
