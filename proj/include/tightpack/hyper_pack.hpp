#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tightpack/digraph_pack.hpp"
#include "tightpack/graphs.hpp"
#include "tightpack/rng.hpp"

namespace tightpack {

/// A permutation v_1..v_n read as n/2 ordered pairs (v_1,v_2), (v_3,v_4), ...
/// Pair k becomes vertex k of the derived digraph.
class PairPermutation {
 public:
  /// Throws std::invalid_argument unless `order` is a permutation of 0..n-1
  /// with n even and n >= 2.
  explicit PairPermutation(std::vector<Vertex> order);

  int n() const { return static_cast<int>(order_.size()); }
  int num_pairs() const { return n() / 2; }
  const std::vector<Vertex>& order() const { return order_; }
  Vertex first(int k) const { return order_[2 * k]; }
  Vertex second(int k) const { return order_[2 * k + 1]; }
  int pair_of(Vertex v) const { return pair_of_[v]; }
  /// The other vertex of v's pair.
  Vertex mate(Vertex v) const;

 private:
  std::vector<Vertex> order_;
  std::vector<int> pair_of_;
};

/// The digraph of one Procedure 3 run. Arc (i, j) stands for the two
/// hyperedges e = {x_i, y_i, x_j} and f = {y_i, x_j, y_j}, which are partners.
struct PairedDigraph {
  PairPermutation pairing;
  Digraph digraph;

  std::pair<Triple, Triple> hyperedges(const Arc& arc) const;
  /// The arc of this draw that claims hyperedge t, if any. Each hyperedge is
  /// claimed by at most one arc of a fixed pairing.
  std::optional<Arc> claiming_arc(const Triple& t) const;
  /// phi(t): the partner of t, when t is claimed.
  std::optional<Triple> partner(const Triple& t) const;
};

/// Procedure 3 with a forced / drawn pairing. Throws on odd n.
PairedDigraph procedure3(const Hypergraph3& h, const PairPermutation& pairing);
PairedDigraph procedure3(const Hypergraph3& h, Rng& rng);

/// Procedure 3 over any membership oracle, for graphs too large to store.
template <typename Contains>
Digraph procedure3_digraph_with(const Contains& contains, const PairPermutation& pairing) {
  const int k = pairing.num_pairs();
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) {
    const Vertex xi = pairing.first(i), yi = pairing.second(i);
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const Vertex xj = pairing.first(j), yj = pairing.second(j);
      if (contains(xi, yi, xj) && contains(yi, xj, yj)) arcs.push_back(Arc{i, j});
    }
  }
  return Digraph(k, arcs);
}

/// Uniformly random pairing drawn from rng (Fisher-Yates over 0..n-1).
PairPermutation random_pairing(int n, Rng& rng);

/// Concatenates the pairs along a Hamilton cycle C of the paired digraph:
/// x_{c0}, y_{c0}, x_{c1}, y_{c1}, ... Throws std::invalid_argument when C is
/// not a Hamilton cycle of pd.digraph; throws std::logic_error if two arcs of
/// C claim the same hyperedge.
std::vector<Vertex> lift_cycle(const PairedDigraph& pd, std::span<const Vertex> cycle);

struct Procedure4Result {
  /// kept[i].digraph is D'_i (with the i-th pairing); kept_edges[i] is H'_i.
  std::vector<PairedDigraph> kept;
  std::vector<std::vector<Triple>> kept_edges;
  /// Per hyperedge of H (dense edge_index order).
  std::vector<std::uint32_t> cover;
  std::vector<std::int32_t> label;
};

/// r independent Procedure 3 copies with pairings from Rng(seed).child(i),
/// one uniform label per covered hyperedge, and D'_i keeping arc uv iff both
/// of its hyperedges carry label i. Asserts H'_i pairwise disjoint and
/// e(H'_i) = 2 e(D'_i).
Procedure4Result procedure4(const Hypergraph3& h, int r, std::uint64_t seed);

/// Per-hyperedge cover counts of r copies, without storing them.
std::vector<std::uint32_t> hyper_cover_counts(const Hypergraph3& h, int r, std::uint64_t seed);

struct HyperRoundLog {
  int round = 0;
  double epsilon = 0.0;
  double p = 0.0;
  int r = 0;
  std::size_t edges_before = 0;
  std::size_t kept_arcs = 0;  // total arcs over all D'_i
  std::size_t cycles = 0;
  std::size_t edges_removed = 0;
  std::optional<double> recheck_worst_ratio;
};

struct CensusResult {
  std::size_t max_count = 0;
  std::optional<std::array<Vertex, 4>> witness;  // a 4-set reaching max_count
  std::uint64_t sets_tested = 0;
  bool exhaustive = false;
};

struct HyperPackReport {
  PackingResult result;
  Schedule schedule;
  std::vector<HyperRoundLog> rounds;
  std::string stop_reason;
  CensusResult census;  // condensed 4-sets over every pairing drawn
};

/// Iterated Procedure 4. Every D'_i is packed by pack_digraph and its cycles
/// lifted to tight cycles; the covered hyperedges are deleted. Requires
/// n divisible by 4.
HyperPackReport pack_3graph(const Hypergraph3& h, double epsilon, double p, const PackOptions& options);

/// How many pairings condense S, i.e. contain two pairs whose union is S.
std::size_t condensed_count(std::span<const PairPermutation> pairings, const std::array<Vertex, 4>& s);

/// Maximum condensed count over 4-sets. Exhaustive mode counts pair unions
/// directly (r * C(n/2, 2) work) and throws BudgetExceeded above `budget`;
/// sampled mode draws `samples` uniform 4-sets.
CensusResult condensed_census(std::span<const PairPermutation> pairings, bool exhaustive,
                              std::uint64_t samples = 100'000, std::uint64_t seed = 0,
                              std::uint64_t budget = 100'000'000);

}  // namespace tightpack
