#include "tightpack/generators.hpp"

#include <stdexcept>
#include <string>

#include "tightpack/rng.hpp"

namespace tightpack {

namespace {

// Domain tags keep the three generator families on unrelated coin streams.
constexpr std::uint64_t kTripleTag = 0x3a3a'0001ULL;
constexpr std::uint64_t kArcTag = 0x3a3a'0002ULL;
constexpr std::uint64_t kBiEdgeTag = 0x3a3a'0003ULL;

void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": probability must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

std::uint64_t stream_key(RngSeed seed, std::uint64_t tag) { return mix64(seed.value ^ mix64(tag)); }

std::uint64_t triple_counter(const Triple& t) {
  return (static_cast<std::uint64_t>(t.a) << 42) | (static_cast<std::uint64_t>(t.b) << 21) |
         static_cast<std::uint64_t>(t.c);
}

}  // namespace

RandomTripleOracle::RandomTripleOracle(int n, double p, RngSeed seed)
    : n_(n), p_(p), key_(stream_key(seed, kTripleTag)) {
  if (n < 3) throw std::invalid_argument("gen_random_3graph: need n >= 3");
  if (n >= (1 << 21)) throw std::invalid_argument("gen_random_3graph: n too large");
  check_probability(p, "gen_random_3graph");
}

bool RandomTripleOracle::contains(Vertex u, Vertex v, Vertex w) const {
  const Triple t = Triple::sorted(u, v, w);
  if (!t.distinct()) return false;
  return counter_coin(key_, triple_counter(t), p_);
}

Hypergraph3 gen_random_3graph(int n, double p, RngSeed seed) {
  const RandomTripleOracle oracle(n, p, seed);
  Hypergraph3Builder builder(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        if (oracle.contains(a, b, c)) builder.insert(Triple{a, b, c});
      }
    }
  }
  return std::move(builder).build();
}

Digraph gen_random_digraph(int n, double p, RngSeed seed) {
  if (n < 2) throw std::invalid_argument("gen_random_digraph: need n >= 2");
  check_probability(p, "gen_random_digraph");
  const std::uint64_t key = stream_key(seed, kArcTag);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      const std::uint64_t counter = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
      if (counter_coin(key, counter, p)) arcs.push_back(Arc{u, v});
    }
  }
  return Digraph(n, arcs);
}

BipartiteGraph gen_random_bipartite(int m, double p, RngSeed seed) {
  if (m < 0) throw std::invalid_argument("gen_random_bipartite: negative part size");
  check_probability(p, "gen_random_bipartite");
  const std::uint64_t key = stream_key(seed, kBiEdgeTag);
  std::vector<BiEdge> edges;
  for (Vertex a = 0; a < m; ++a) {
    for (Vertex b = 0; b < m; ++b) {
      const std::uint64_t counter = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
      if (counter_coin(key, counter, p)) edges.push_back(BiEdge{a, b});
    }
  }
  return BipartiteGraph(m, edges);
}

}  // namespace tightpack
