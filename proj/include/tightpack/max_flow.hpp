#pragma once

#include <cstdint>
#include <vector>

namespace tightpack {

/// Integer max-flow by blocking flows on the BFS level graph (Dinic).
/// On unit-capacity bipartite layers this runs in O(E sqrt(V)).
class FlowNetwork {
 public:
  explicit FlowNetwork(int num_nodes);

  /// Adds u -> v with the given capacity; returns an arc handle.
  int add_arc(int u, int v, std::int64_t capacity);

  std::int64_t max_flow(int source, int sink);

  std::int64_t flow_on(int arc) const;
  std::int64_t capacity_of(int arc) const { return arcs_[arc].capacity; }
  int tail(int arc) const { return arcs_[arc ^ 1].head; }
  int head(int arc) const { return arcs_[arc].head; }

  /// After max_flow: nodes reachable from the source in the residual
  /// graph, i.e. the source side of a minimum cut.
  std::vector<char> source_side(int source) const;

 private:
  struct ArcData {
    int head;
    std::int64_t residual;
    std::int64_t capacity;
  };

  bool build_levels(int source, int sink);
  std::int64_t push(int node, int sink, std::int64_t limit);

  std::vector<ArcData> arcs_;  // arc i and i^1 are mutual reverses
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace tightpack
