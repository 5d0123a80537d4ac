#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "tightpack/bipartite_pack.hpp"
#include "tightpack/generators.hpp"
#include "tightpack/rng.hpp"

using namespace tightpack;

namespace {

BipartiteGraph complete_bipartite(int m) {
  std::vector<BiEdge> e;
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = 0; b < m; ++b) e.push_back({a, b});
  return BipartiteGraph(m, e);
}

bool is_k_regular_subgraph(const BipartiteGraph& g, const std::vector<BiEdge>& edges, int k) {
  std::vector<int> da(g.m(), 0), db(g.m(), 0);
  std::set<BiEdge> seen;
  for (const BiEdge& e : edges) {
    if (!g.has_edge(e.a, e.b) || !seen.insert(e).second) return false;
    ++da[e.a];
    ++db[e.b];
  }
  for (int v = 0; v < g.m(); ++v)
    if (da[v] != k || db[v] != k) return false;
  return true;
}

// Matchings are perfect, disjoint, and together with leftover give E(G).
void check_packing(const BipartiteGraph& g, const MatchingPacking& p) {
  std::set<BiEdge> all;
  for (const auto& m : p.matchings) {
    REQUIRE(static_cast<int>(m.size()) == g.m());
    std::set<int> as, bs;
    for (const BiEdge& e : m) {
      REQUIRE(g.has_edge(e.a, e.b));
      as.insert(e.a);
      bs.insert(e.b);
      REQUIRE(all.insert(e).second);
    }
    REQUIRE(static_cast<int>(as.size()) == g.m());
    REQUIRE(static_cast<int>(bs.size()) == g.m());
  }
  for (const BiEdge& e : p.leftover) REQUIRE(all.insert(e).second);
  const auto edges = g.edges();
  CHECK(std::set<BiEdge>(edges.begin(), edges.end()) == all);
  CHECK(p.total_edges == g.num_edges());
}

}  // namespace

TEST_CASE("max_k_regular examples") {
  const BipartiteGraph k33 = complete_bipartite(3);
  const auto full = max_k_regular(k33, 3);
  REQUIRE(full.has_value());
  CHECK(full->size() == 9);

  const std::vector<BiEdge> star = {{0, 0}, {1, 0}};
  const BipartiteGraph hall(2, star);
  CHECK_FALSE(max_k_regular(hall, 1).has_value());
  const auto zero = max_k_regular(hall, 0);
  REQUIRE(zero.has_value());
  CHECK(zero->empty());
}

TEST_CASE("max_k_regular on G(8, 0.6, seed 11) matches exhaustive search for every k") {
  const BipartiteGraph g = gen_random_bipartite(8, 0.6, RngSeed{11});
  oracle::RegularSearch search(8, g.edges());
  for (int k = 0; k <= 8; ++k) {
    const auto sub = max_k_regular(g, k);
    CHECK(sub.has_value() == search.feasible(k));
    if (sub) CHECK(is_k_regular_subgraph(g, *sub, k));
  }
}

TEST_CASE("largest_k examples and oracle") {
  CHECK(largest_k(complete_bipartite(5)) == 5);
  std::vector<BiEdge> e;
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = 0; b < 3; ++b) e.push_back({a, b});  // b = 3 isolated
  CHECK(largest_k(BipartiteGraph(4, e)) == 0);

  const BipartiteGraph g = gen_random_bipartite(7, 0.5, RngSeed{2});
  CHECK(largest_k(g) == oracle::RegularSearch(7, g.edges()).largest());
}

TEST_CASE("feasibility is monotone and infeasibility has a violating cut") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int m = 5 + static_cast<int>(seed % 6);
    const BipartiteGraph g = gen_random_bipartite(m, 0.55, RngSeed{seed});
    const int best = largest_k(g);
    for (int k = 0; k <= m; ++k) {
      const bool present = max_k_regular(g, k).has_value();
      CHECK(present == (k <= best));
      const auto cut = find_violating_cut(g, k);
      CHECK(cut.has_value() == !present);
      if (cut) {
        std::size_t exy = 0;
        for (Vertex x : cut->x)
          for (Vertex y : cut->y) exy += g.has_edge(x, y);
        const std::int64_t value = static_cast<std::int64_t>(k) * (m - static_cast<int>(cut->x.size())) +
                                   static_cast<std::int64_t>(k) * (m - static_cast<int>(cut->y.size())) +
                                   static_cast<std::int64_t>(exy);
        CHECK(value == cut->value);
        CHECK(value < static_cast<std::int64_t>(k) * m);
      }
    }
  }
}

TEST_CASE("hopcroft_karp finds maximum matchings") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int m = 2 + static_cast<int>(seed % 7);
    const BipartiteGraph g = gen_random_bipartite(m, 0.35, RngSeed{seed});
    const auto mate = hopcroft_karp(g);
    int size = 0;
    std::set<int> used;
    for (int a = 0; a < m; ++a) {
      if (mate[a] < 0) continue;
      ++size;
      CHECK(g.has_edge(a, mate[a]));
      CHECK(used.insert(mate[a]).second);
    }
    // A perfect matching is a 1-regular spanning subgraph.
    CHECK((size == m) == oracle::RegularSearch(m, g.edges()).feasible(1));
  }
}

TEST_CASE("decompose_regular examples") {
  const std::vector<BiEdge> perfect = {{0, 1}, {1, 2}, {2, 0}};
  const auto one = decompose_regular(3, perfect);
  REQUIRE(one.size() == 1);
  CHECK(std::set<BiEdge>(one[0].begin(), one[0].end()) == std::set<BiEdge>(perfect.begin(), perfect.end()));

  const std::vector<BiEdge> square = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const auto two = decompose_regular(2, square);
  REQUIRE(two.size() == 2);
  std::set<std::set<BiEdge>> got;
  for (const auto& m : two) got.insert(std::set<BiEdge>(m.begin(), m.end()));
  const std::set<std::set<BiEdge>> want = {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
  CHECK(got == want);

  // 3-regular at m = 6: circulant b = a, a+1, a+3.
  std::vector<BiEdge> circ;
  for (Vertex a = 0; a < 6; ++a)
    for (int s : {0, 1, 3}) circ.push_back({a, (a + s) % 6});
  const auto three = decompose_regular(6, circ);
  REQUIRE(three.size() == 3);
  std::set<BiEdge> uni;
  for (const auto& m : three) {
    CHECK(m.size() == 6);
    for (const BiEdge& e : m) CHECK(uni.insert(e).second);
  }
  CHECK(uni == std::set<BiEdge>(circ.begin(), circ.end()));
}

TEST_CASE("decompose_regular rejects non-regular input and names a vertex") {
  const std::vector<BiEdge> lopsided = {{0, 0}, {0, 1}, {1, 1}};
  try {
    decompose_regular(2, lopsided);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK((what.find("a0") != std::string::npos || what.find("a1") != std::string::npos ||
           what.find("b0") != std::string::npos || what.find("b1") != std::string::npos));
  }
}

TEST_CASE("pack_matchings examples") {
  const MatchingPacking k44 = pack_matchings(complete_bipartite(4), 0.1, 1.0);
  CHECK(k44.k == 4);
  CHECK(k44.leftover.empty());
  check_packing(complete_bipartite(4), k44);

  const MatchingPacking empty = pack_matchings(BipartiteGraph(5), 0.1, 0.5);
  CHECK(empty.k == 0);
  CHECK(empty.leftover.empty());
  CHECK(empty.leftover_fraction() == 0.0);

  const BipartiteGraph g = gen_random_bipartite(200, 0.5, RngSeed{13});
  const MatchingPacking p = pack_matchings(g, 0.01, 0.5);
  check_packing(g, p);
  CHECK(p.leftover_fraction() < 4 * std::cbrt(0.01));
  CHECK(p.analytic_k == static_cast<int>(std::floor((1 - 3 * std::cbrt(0.01)) * 200 * 0.5)));
  CHECK(p.reached_analytic == (p.k >= p.analytic_k));
}

TEST_CASE("pack_matchings packs are exact on random instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BipartiteGraph g = gen_random_bipartite(20 + static_cast<int>(seed), 0.6, RngSeed{seed});
    const MatchingPacking p = pack_matchings(g, 0.1, 0.6);
    CHECK(p.k == largest_k(g));
    check_packing(g, p);
  }
}

TEST_CASE("edge_distribution_check") {
  const int m = 300;
  auto take = [](int count, Rng& rng, int m) {
    std::vector<Vertex> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    rng.shuffle(std::span<Vertex>(all));
    all.resize(count);
    return all;
  };
  Rng rng(4);
  const BipartiteGraph full = complete_bipartite(m);
  const BipartiteGraph none(m);
  const BipartiteGraph g = gen_random_bipartite(m, 0.5, RngSeed{4});
  const double eps = 0.01;
  const int min_x = static_cast<int>(std::ceil(1 / (eps * 0.5)));
  const int min_y = static_cast<int>(std::ceil(std::cbrt(eps) * m));
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = take(min_x + static_cast<int>(rng.below(m - min_x)), rng, m);
    const auto y = take(min_y + static_cast<int>(rng.below(m - min_y)), rng, m);
    CHECK(edge_distribution_check(g, x, y, eps, 0.5) == DistributionVerdict::holds);
    CHECK(edge_distribution_check(full, x, y, eps, 1.0) == DistributionVerdict::holds);
    CHECK(edge_distribution_check(none, x, y, eps, 0.5) == DistributionVerdict::violated);
  }
  const std::vector<Vertex> tiny = {0};
  const auto y = take(min_y, rng, m);
  CHECK(edge_distribution_check(g, tiny, y, eps, 0.5) == DistributionVerdict::not_applicable);
}
