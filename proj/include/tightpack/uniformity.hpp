#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tightpack/graphs.hpp"

namespace tightpack {

/// Simple graph on {0..t-1} with t <= 7 and at most 6 edges. Anchor i of an
/// extension count plays the role of vertex i.
struct AuxiliaryGraph {
  std::string name;
  int t = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws std::invalid_argument unless the graph is simple and within
  /// the size limits.
  void validate() const;
  int s() const { return static_cast<int>(edges.size()); }
};

/// The five patterns the hypergraph -> digraph reduction depends on.
///   gamma1: edge {0,1}                              (t=2, s=1)
///   gamma2: disjoint edges {0,1},{2,3}              (t=4, s=2)
///   gamma3: cherry {0,1},{1,2} centred at 1          (t=3, s=2)
///   gamma4: path {0,1},{1,2},{2,3}                  (t=4, s=3)
///   gamma5: b,x,d,e,f,g,h = 0..6 with edges bx, xe, ef, dx, xg, gh  (t=7, s=6)
const std::vector<AuxiliaryGraph>& gamma_catalog();

/// One representative per isomorphism class of simple graphs with
/// 1 <= t <= 7 vertices and s <= 6 edges. Built on first use.
const std::vector<AuxiliaryGraph>& full_auxiliary_catalog();

/// Thrown when an exhaustive enumeration would exceed the site budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of x outside the anchors with {anchors[i], anchors[j], x} an edge
/// for every edge ij of gamma. `contains(u, v, w)` is any membership oracle.
template <typename Contains>
std::size_t extension_count_with(const Contains& contains, int n, const AuxiliaryGraph& gamma,
                                 std::span<const Vertex> anchors) {
  std::size_t count = 0;
  for (Vertex x = 0; x < n; ++x) {
    bool ok = true;
    for (Vertex v : anchors) {
      if (v == x) {
        ok = false;
        break;
      }
    }
    for (std::size_t e = 0; ok && e < gamma.edges.size(); ++e) {
      ok = contains(anchors[gamma.edges[e].first], anchors[gamma.edges[e].second], x);
    }
    if (ok) ++count;
  }
  return count;
}

/// d_Gamma(anchors). Throws unless anchors are distinct, in range, and
/// anchors.size() == gamma.t.
std::size_t extension_count(const Hypergraph3& h, const AuxiliaryGraph& gamma,
                            std::span<const Vertex> anchors);

enum class CheckMode { automatic, exhaustive, sampled };

std::string to_string(CheckMode mode);

struct CheckOptions {
  CheckMode mode = CheckMode::automatic;
  /// Sites per pattern in sampled mode. When this reaches the pattern's full
  /// site count, every site is enumerated instead.
  std::uint64_t sample_sites = 10'000;
  std::uint64_t seed = 0;
  /// Exhaustive mode refuses when the total site count exceeds this.
  std::uint64_t site_budget = 100'000'000;
  /// automatic mode samples above this vertex count.
  int exhaustive_max_n = 60;
  /// Use every auxiliary graph with t <= 7, s <= 6 instead of gamma1..gamma5.
  bool full_catalog = false;
};

struct UniformityWitness {
  std::string pattern;  // auxiliary graph or digraph/bipartite property name
  std::vector<Vertex> site;
  double observed = 0.0;
  double expected = 0.0;
};

struct UniformityReport {
  bool uniform = true;
  double epsilon = 0.0;
  double p = 0.0;
  double worst_ratio = 0.0;  // max over sites of |observed / expected - 1|
  std::optional<UniformityWitness> witness;
  std::uint64_t sites_tested = 0;
  CheckMode mode = CheckMode::exhaustive;  // mode actually used
};

/// (epsilon, p)-uniformity of a 3-graph against the configured catalog.
/// Requires epsilon >= 0 and 0 < p <= 1.
UniformityReport check_3graph_uniform(const Hypergraph3& h, double epsilon, double p,
                                      const CheckOptions& options = {});

/// (epsilon, p)-uniformity of a digraph: (i) in/out degrees of every vertex,
/// (ii) common out, common in and out-in counts of every ordered pair, and
/// (iii) the four-way count of every (a,b,c,d), distinct except maybe b = c.
/// Degrees are always checked in full; sampled mode samples (ii) and (iii).
UniformityReport check_digraph_uniform(const Digraph& d, double epsilon, double p,
                                       const CheckOptions& options = {});

/// Degree window (1 +- eps) m p on all 2m vertices and codegree upper bound
/// (1 + eps) m p^2 on all same-side pairs.
UniformityReport check_bipartite_hypotheses(const BipartiteGraph& g, double epsilon, double p);

}  // namespace tightpack
