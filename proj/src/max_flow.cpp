#include "tightpack/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace tightpack {

FlowNetwork::FlowNetwork(int num_nodes) : out_(static_cast<std::size_t>(num_nodes)) {}

int FlowNetwork::add_arc(int u, int v, std::int64_t capacity) {
  if (capacity < 0) throw std::invalid_argument("FlowNetwork: negative capacity");
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back(ArcData{v, capacity, capacity});
  arcs_.push_back(ArcData{u, 0, 0});
  out_[u].push_back(id);
  out_[v].push_back(id + 1);
  return id;
}

std::int64_t FlowNetwork::flow_on(int arc) const { return arcs_[arc].capacity - arcs_[arc].residual; }

bool FlowNetwork::build_levels(int source, int sink) {
  level_.assign(out_.size(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int id : out_[u]) {
      const ArcData& arc = arcs_[id];
      if (arc.residual > 0 && level_[arc.head] < 0) {
        level_[arc.head] = level_[u] + 1;
        queue.push(arc.head);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t FlowNetwork::push(int node, int sink, std::int64_t limit) {
  if (node == sink) return limit;
  for (std::size_t& i = cursor_[node]; i < out_[node].size(); ++i) {
    const int id = out_[node][i];
    ArcData& arc = arcs_[id];
    if (arc.residual <= 0 || level_[arc.head] != level_[node] + 1) continue;
    const std::int64_t sent = push(arc.head, sink, std::min(limit, arc.residual));
    if (sent > 0) {
      arc.residual -= sent;
      arcs_[id ^ 1].residual += sent;
      return sent;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::max_flow(int source, int sink) {
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    cursor_.assign(out_.size(), 0);
    while (std::int64_t sent = push(source, sink, std::numeric_limits<std::int64_t>::max())) total += sent;
  }
  return total;
}

std::vector<char> FlowNetwork::source_side(int source) const {
  std::vector<char> seen(out_.size(), 0);
  std::queue<int> queue;
  seen[source] = 1;
  queue.push(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int id : out_[u]) {
      const ArcData& arc = arcs_[id];
      if (arc.residual > 0 && !seen[arc.head]) {
        seen[arc.head] = 1;
        queue.push(arc.head);
      }
    }
  }
  return seen;
}

}  // namespace tightpack
