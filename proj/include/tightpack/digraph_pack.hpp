#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tightpack/bipartite_pack.hpp"
#include "tightpack/graphs.hpp"
#include "tightpack/rng.hpp"
#include "tightpack/schedule.hpp"
#include "tightpack/uniformity.hpp"
#include "tightpack/verify.hpp"

namespace tightpack {

/// A permutation v_1..v_n split into halves A (first n/2) and B (last n/2),
/// each closed into a cycle by the successor map.
class HalfPermutation {
 public:
  /// Throws std::invalid_argument unless `order` is a permutation of 0..n-1
  /// with n even and n >= 2.
  explicit HalfPermutation(std::vector<Vertex> order);

  int n() const { return static_cast<int>(order_.size()); }
  int half() const { return n() / 2; }
  const std::vector<Vertex>& order() const { return order_; }
  int position(Vertex v) const { return position_[v]; }
  bool in_a(Vertex v) const { return position_[v] < half(); }

  Vertex successor(Vertex v) const;
  Vertex predecessor(Vertex v) const;

  /// Vertex at index i of part A / B (i in 0..n/2-1).
  Vertex a_vertex(int i) const { return order_[i]; }
  Vertex b_vertex(int j) const { return order_[half() + j]; }

 private:
  std::vector<Vertex> order_;
  std::vector<int> position_;
};

/// The bipartite graph of one Procedure 1 run. Base edge (i, j) joins
/// a = a_vertex(i) and b = b_vertex(j); it lifts to the arcs a -> b and
/// b -> successor(a).
struct GammaGraph {
  HalfPermutation perm;
  BipartiteGraph base;

  std::pair<Arc, Arc> lift(const BiEdge& e) const;
  /// All lifted arcs. Throws std::logic_error if two base edges share an arc.
  std::vector<Arc> lifted_arcs() const;
  Digraph lifted() const;
};

/// Procedure 1 with a drawn permutation. Throws on odd n.
GammaGraph procedure1(const Digraph& d, Rng& rng);
/// Procedure 1 with a forced permutation.
GammaGraph procedure1(const Digraph& d, const HalfPermutation& perm);

/// v_1, M(v_1), v_2, M(v_2), ... for a perfect matching M of the base graph.
/// Throws std::invalid_argument unless M is a perfect matching of the halves.
std::vector<Vertex> associated_cycle(const PerfectMatching& m, const HalfPermutation& perm);

struct Procedure2Result {
  /// kept[i].base is Gamma'_i; kept[i].perm is the i-th drawn permutation.
  std::vector<GammaGraph> kept;
  /// Per arc of D (dense arc_index order): |I_e| and the chosen label
  /// (copy index, -1 when uncovered).
  std::vector<std::uint32_t> cover;
  std::vector<std::int32_t> label;
};

/// r independent Procedure 1 copies, one uniform label per covered arc,
/// and Gamma'_i keeps edge ab iff both its arcs carry label i. The lifted
/// Gamma'_i are checked pairwise arc-disjoint before returning.
/// Copy i uses Rng(seed).child(i).
Procedure2Result procedure2(const Digraph& d, int r, std::uint64_t seed);

/// Per-arc cover counts of r Procedure 1 copies, without storing the copies.
/// Uses the same permutation streams as procedure2.
std::vector<std::uint32_t> digraph_cover_counts(const Digraph& d, int r, std::uint64_t seed);

enum class Profile { paper, desk };
std::string to_string(Profile profile);

struct PackOptions {
  Profile profile = Profile::desk;
  std::uint64_t seed = 0;
  // Desk overrides. Profile::paper rejects any that are set.
  std::optional<double> kappa;      // default kDefaultDeskKappa
  std::optional<int> r;             // copies per round; default min(r_cap, formula)
  std::optional<int> r_cap;         // default kDefaultDeskRCap
  std::optional<int> rounds_cap;    // replaces the schedule's T when set
  /// Stop after this many consecutive rounds that extract no cycle.
  int patience = 3;
  /// Paper profile refuses rounds needing more copies than this.
  double copies_budget = 1e6;
  /// Log an empirical uniformity re-check after each deletion.
  bool recheck = true;
  std::uint64_t recheck_sites = 2000;
};

// At desk sizes every extra copy thins the kept graphs through the label
// lottery, and two nested levels of it leave no perfect matchings at n = 64.
// One copy per round, repeated over fresh permutations, packs far more.
inline constexpr double kDefaultDeskKappa = 5.0;
inline constexpr int kDefaultDeskRCap = 1;

struct RoundLog {
  int round = 0;
  double epsilon = 0.0;  // schedule value for this round
  double p = 0.0;
  int r = 0;
  std::size_t edges_before = 0;
  std::size_t kept_edges = 0;  // total base edges of all Gamma'_i (or D'_i arcs)
  std::size_t cycles = 0;
  std::size_t edges_removed = 0;
  std::optional<double> recheck_worst_ratio;
};

struct PackReport {
  PackingResult result;
  Schedule schedule;
  std::vector<RoundLog> rounds;
  std::string stop_reason;
};

/// Iterated Procedure 2: each round packs every Gamma'_i with perfect
/// matchings, lifts them to Hamilton cycles of D and deletes those arcs.
/// Stops at the schedule's T (or rounds_cap), after `patience` empty
/// rounds, or when no arcs remain. Throws std::invalid_argument on odd n,
/// nonpositive overrides, or overrides under Profile::paper.
PackReport pack_digraph(const Digraph& d, double epsilon, double p, const PackOptions& options);

/// Copies for a round with schedule row `row`: the row's r_t under Profile::paper,
/// otherwise the r override or min(r_cap, ceil(r_t)). At least 1.
int copies_for_round(const PackOptions& options, const ScheduleStep& row);

/// The schedule a driver follows: the analytic one under Profile::paper,
/// the fixed-kappa one under the desk profile.
Schedule schedule_for(const PackOptions& options, ScheduleKind kind, double n, double epsilon, double p);

/// Validates option combinations shared by both drivers.
void validate_options(const PackOptions& options);

}  // namespace tightpack
