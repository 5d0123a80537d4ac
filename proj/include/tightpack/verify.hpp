#pragma once

#include <span>
#include <string>
#include <vector>

#include "tightpack/edge_list_io.hpp"
#include "tightpack/graphs.hpp"

namespace tightpack {

/// Output of a packer: cycles as vertex orders plus edge accounting.
/// For kind == tight the edges are triples, for kind == directed arcs.
struct PackingResult {
  CycleKind kind = CycleKind::tight;
  int n = 0;
  std::vector<std::vector<Vertex>> cycles;
  std::size_t total_edges = 0;
  std::size_t covered_edges = 0;
  std::vector<Triple> leftover_triples;  // tight only, lexicographic
  std::vector<Arc> leftover_arcs;        // directed only, lexicographic

  double coverage_fraction() const {
    return total_edges == 0 ? 0.0 : static_cast<double>(covered_edges) / static_cast<double>(total_edges);
  }
};

struct CycleCheck {
  bool ok = true;
  std::string diagnostic;  // empty when ok
};

/// True iff `order` is a permutation of V(H), every cyclic window of three
/// is an edge, and the n windows are pairwise distinct. Odd n is fine.
/// Throws std::invalid_argument when order.size() != n.
CycleCheck validate_tight_cycle(const Hypergraph3& h, std::span<const Vertex> order);

/// True iff `order` is a permutation of V(D) and every cyclic step is an arc.
/// Throws std::invalid_argument when order.size() != n.
CycleCheck validate_directed_cycle(const Digraph& d, std::span<const Vertex> order);

struct Certification {
  bool certified = true;
  std::vector<std::string> violations;  // first entry names the first violation
};

/// Re-derives everything from the raw edge list of the input: each cycle is
/// valid, cycles are pairwise edge-disjoint, covered_edges and the leftover
/// list are exact, and total_edges matches. Pure.
Certification certify_packing(const Hypergraph3& h, const PackingResult& result);
Certification certify_packing(const Digraph& d, const PackingResult& result);

/// Builds a result from bare cycles (as read back from a cycles file),
/// filling in the accounting from the graph. Used by the verify command.
PackingResult result_from_cycles(const Hypergraph3& h, const CycleFile& file);
PackingResult result_from_cycles(const Digraph& d, const CycleFile& file);

}  // namespace tightpack
