#pragma once

#include <cstdint>

#include "tightpack/graphs.hpp"

namespace tightpack {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Binomial random 3-graph H_{n,p;3}: every triple independently with
/// probability p. Requires n >= 3 and p in [0, 1].
Hypergraph3 gen_random_3graph(int n, double p, RngSeed seed);

/// Each of the n(n-1) ordered pairs independently with probability p.
/// Requires n >= 2 and p in [0, 1].
Digraph gen_random_digraph(int n, double p, RngSeed seed);

/// Each of the m^2 pairs (a, b) independently with probability p.
BipartiteGraph gen_random_bipartite(int m, double p, RngSeed seed);

/// Membership view of H_{n,p;3} that never materialises the edge set.
/// Agrees triple-for-triple with gen_random_3graph(n, p, seed), which makes
/// it usable for Monte-Carlo work at sizes where C(n,3) bits do not fit.
class RandomTripleOracle {
 public:
  RandomTripleOracle(int n, double p, RngSeed seed);

  int n() const { return n_; }
  bool contains(Vertex u, Vertex v, Vertex w) const;

 private:
  int n_;
  double p_;
  std::uint64_t key_;
};

}  // namespace tightpack
