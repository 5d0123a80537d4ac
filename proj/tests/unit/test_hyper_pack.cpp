#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "tightpack/generators.hpp"
#include "tightpack/hyper_pack.hpp"
#include "tightpack/verify.hpp"

using namespace tightpack;

namespace {

Hypergraph3 complete_3graph(int n) { return gen_random_3graph(n, 1.0, RngSeed{0}); }

PairPermutation identity_pairing(int n) {
  std::vector<Vertex> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return PairPermutation(order);
}

// Random cyclic order of 0..k-1.
std::vector<Vertex> random_cycle(int k, Rng& rng) {
  std::vector<Vertex> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  rng.shuffle(std::span<Vertex>(c));
  return c;
}

}  // namespace

TEST_CASE("PairPermutation") {
  const PairPermutation pp({3, 0, 2, 1});
  CHECK(pp.num_pairs() == 2);
  CHECK(pp.first(0) == 3);
  CHECK(pp.second(1) == 1);
  CHECK(pp.pair_of(2) == 1);
  CHECK(pp.mate(0) == 3);
  CHECK(pp.mate(2) == 1);
  CHECK_THROWS_AS(PairPermutation({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(PairPermutation({0, 1, 1, 2}), std::invalid_argument);
}

TEST_CASE("procedure3 examples") {
  // sigma = (v1..v4) = (0..3) and H = {{v1,v2,v3},{v2,v3,v4}}.
  const std::vector<Triple> edges = {{0, 1, 2}, {1, 2, 3}};
  const Hypergraph3 h(4, edges);
  const PairedDigraph pd = procedure3(h, identity_pairing(4));
  const std::vector<Arc> expect = {{0, 1}};
  CHECK(pd.digraph.arcs() == expect);
  CHECK(pd.partner(Triple{0, 1, 2}) == Triple{1, 2, 3});
  CHECK(pd.partner(Triple{1, 2, 3}) == Triple{0, 1, 2});
  CHECK(pd.claiming_arc(Triple{0, 1, 2}) == Arc{0, 1});

  Rng rng(2);
  CHECK(procedure3(Hypergraph3(8), rng).digraph.num_arcs() == 0);
  CHECK(procedure3(complete_3graph(8), rng).digraph.num_arcs() == 12);
  CHECK_THROWS_AS(procedure3(Hypergraph3(7), rng), std::invalid_argument);
}

TEST_CASE("procedure3 is faithful to H") {
  Rng rng(4);
  for (int n : {10, 40, 100}) {
    const Hypergraph3 h = gen_random_3graph(n, 0.6, RngSeed{static_cast<std::uint64_t>(n)});
    const PairedDigraph pd = procedure3(h, rng);
    const auto& pp = pd.pairing;
    for (int i = 0; i < n / 2; ++i) {
      for (int j = 0; j < n / 2; ++j) {
        if (i == j) continue;
        const bool both = h.contains(pp.first(i), pp.second(i), pp.first(j)) &&
                          h.contains(pp.second(i), pp.first(j), pp.second(j));
        REQUIRE(pd.digraph.has_arc(i, j) == both);
      }
    }
    // Each hyperedge is claimed by at most one arc.
    std::set<Triple> claimed;
    for (const Arc& a : pd.digraph.arcs()) {
      auto [e, f] = pd.hyperedges(a);
      REQUIRE(claimed.insert(e).second);
      REQUIRE(claimed.insert(f).second);
      REQUIRE(pd.claiming_arc(e) == a);
      REQUIRE(pd.partner(e) == f);
    }
    // The oracle-driven variant sees the same digraph.
    CHECK(procedure3_digraph_with([&](Vertex u, Vertex v, Vertex w) { return h.contains(u, v, w); }, pp) ==
          pd.digraph);
  }
}

TEST_CASE("lift_cycle examples") {
  const PairedDigraph pd = procedure3(complete_3graph(4), identity_pairing(4));
  const std::vector<Vertex> cycle = {0, 1};
  const std::vector<Vertex> order = lift_cycle(pd, cycle);
  const std::vector<Vertex> expect = {0, 1, 2, 3};
  CHECK(order == expect);
  const auto triples = oracle::cycle_triples(order);
  const std::set<Triple> want = {{0, 1, 2}, {1, 2, 3}, {0, 2, 3}, {0, 1, 3}};
  CHECK(std::set<Triple>(triples.begin(), triples.end()) == want);

  const Hypergraph3 k8 = complete_3graph(8);
  Rng rng(1);
  const PairedDigraph pd8 = procedure3(k8, rng);
  const auto lifted = lift_cycle(pd8, random_cycle(4, rng));
  CHECK(validate_tight_cycle(k8, lifted).ok);
  const auto t8 = oracle::cycle_triples(lifted);
  CHECK(std::set<Triple>(t8.begin(), t8.end()).size() == 8);

  const std::vector<Vertex> repeat = {0, 0};
  CHECK_THROWS_AS(lift_cycle(pd, repeat), std::invalid_argument);
  const std::vector<Vertex> wrong_length = {0};
  CHECK_THROWS_AS(lift_cycle(pd, wrong_length), std::invalid_argument);
  const std::vector<Triple> only_forward = {{0, 1, 2}, {1, 2, 3}};
  const PairedDigraph one_arc = procedure3(Hypergraph3(4, only_forward), identity_pairing(4));
  CHECK_THROWS_AS(lift_cycle(one_arc, cycle), std::invalid_argument);
}

TEST_CASE("arc-disjoint cycles lift to edge-disjoint tight cycles") {
  Rng rng(30);
  int pairs_tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 5 + static_cast<int>(rng.below(8));
    const int n = 2 * k;
    const PairPermutation pairing = random_pairing(n, rng);
    const auto c1 = random_cycle(k, rng);
    const auto c2 = random_cycle(k, rng);
    if (!oracle::disjoint(oracle::cycle_arcs(c1), oracle::cycle_arcs(c2))) continue;
    // H holds exactly the hyperedges of both cycles plus noise.
    PairedDigraph skeleton{pairing, Digraph(k)};
    std::set<Triple> edges;
    for (const auto* c : {&c1, &c2})
      for (const Arc& a : oracle::cycle_arcs(*c)) {
        auto [e, f] = skeleton.hyperedges(a);
        edges.insert(e);
        edges.insert(f);
      }
    const Hypergraph3 noise = gen_random_3graph(n, 0.2, RngSeed{static_cast<std::uint64_t>(trial)});
    for (const Triple& t : noise.edges()) edges.insert(t);
    const Hypergraph3 h(n, std::vector<Triple>(edges.begin(), edges.end()));
    const PairedDigraph pd = procedure3(h, pairing);
    const auto t1 = lift_cycle(pd, c1), t2 = lift_cycle(pd, c2);
    REQUIRE(validate_tight_cycle(h, t1).ok);
    REQUIRE(validate_tight_cycle(h, t2).ok);
    REQUIRE(oracle::disjoint(oracle::cycle_triples(t1), oracle::cycle_triples(t2)));
    ++pairs_tested;
  }
  CHECK(pairs_tested > 30);
}

TEST_CASE("procedure4 examples") {
  SUBCASE("r = 1 keeps all of D_1") {
    const Hypergraph3 h = gen_random_3graph(12, 0.7, RngSeed{5});
    const Procedure4Result res = procedure4(h, 1, 8);
    Rng rng = Rng(8).child(0);
    REQUIRE(res.kept.size() == 1);
    CHECK(res.kept[0].digraph == procedure3(h, rng).digraph);
  }
  SUBCASE("empty 3-graph") {
    const Procedure4Result res = procedure4(Hypergraph3(8), 3, 1);
    for (const auto& k : res.kept) CHECK(k.digraph.num_arcs() == 0);
    for (const auto& e : res.kept_edges) CHECK(e.empty());
  }
  SUBCASE("complete n=8, r=6, seed 5") {
    const Hypergraph3 h = complete_3graph(8);
    const Procedure4Result res = procedure4(h, 6, 5);
    std::set<Triple> used;
    for (std::size_t i = 0; i < res.kept.size(); ++i) {
      CHECK(res.kept_edges[i].size() == 2 * res.kept[i].digraph.num_arcs());
      Rng rng = Rng(5).child(i);
      const PairedDigraph full = procedure3(h, rng);
      for (const Arc& a : res.kept[i].digraph.arcs()) {
        CHECK(full.digraph.has_arc(a.from, a.to));
        auto [e, f] = res.kept[i].hyperedges(a);
        CHECK(res.label[h.edge_index(e)] == static_cast<int>(i));
        CHECK(res.label[h.edge_index(f)] == static_cast<int>(i));
      }
      for (const Triple& t : res.kept_edges[i]) {
        CHECK(h.contains(t));
        CHECK(used.insert(t).second);
      }
    }
    CHECK(hyper_cover_counts(h, 6, 5) == res.cover);
  }
}

TEST_CASE("hyper cover counts have mean r 3p / n") {
  const Hypergraph3 h = gen_random_3graph(40, 0.5, RngSeed{3});
  const int r = 400;
  const auto cover = hyper_cover_counts(h, r, 3);
  double sum = 0;
  for (auto c : cover) sum += c;
  // A hyperedge is claimed when one of its three vertex pairs is a pair
  // of the pairing (probability 3/(n-1)) and its partner is present.
  const double expect = r * 3.0 / (40 - 1) * 0.5;
  CHECK(sum / cover.size() == doctest::Approx(expect).epsilon(0.08));
}

TEST_CASE("condensed census") {
  const PairPermutation pp = identity_pairing(8);
  const std::vector<PairPermutation> one = {pp};
  CHECK(condensed_count(one, {0, 1, 2, 3}) == 1);
  CHECK(condensed_count(one, {0, 2, 4, 6}) == 0);
  CHECK(condensed_count(one, {1, 0, 7, 6}) == 1);

  const CensusResult ex = condensed_census(one, true);
  CHECK(ex.exhaustive);
  CHECK(ex.max_count == 1);
  REQUIRE(ex.witness.has_value());
  CHECK(condensed_count(one, *ex.witness) == 1);

  Rng rng(200);
  std::vector<PairPermutation> many;
  for (int i = 0; i < 100; ++i) many.push_back(random_pairing(200, rng));
  const CensusResult sampled = condensed_census(many, false, 100'000, 7);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.sets_tested == 100'000);
  CHECK(sampled.max_count <= 9);

  CHECK_THROWS_AS(condensed_census(many, true, 0, 0, 1000), BudgetExceeded);
}

TEST_CASE("pack_3graph examples") {
  PackOptions o;
  o.seed = 1;
  SUBCASE("complete n=8") {
    const Hypergraph3 h = complete_3graph(8);
    const HyperPackReport rep = pack_3graph(h, 0.1, 1.0, o);
    CHECK(rep.result.cycles.size() >= 1);
    for (const auto& c : rep.result.cycles) CHECK(validate_tight_cycle(h, c).ok);
    CHECK(certify_packing(h, rep.result).certified);
  }
  SUBCASE("an isolated vertex allows no cycle") {
    std::vector<Triple> edges;
    for (const Triple& t : complete_3graph(8).edges())
      if (!t.contains(7)) edges.push_back(t);
    const Hypergraph3 h(8, edges);
    const HyperPackReport rep = pack_3graph(h, 0.1, 0.6, o);
    CHECK(rep.result.cycles.empty());
    CHECK(rep.result.leftover_triples.size() == h.num_edges());
    CHECK(certify_packing(h, rep.result).certified);
  }
  SUBCASE("H(64, 0.7) seed 1") {
    const Hypergraph3 h = gen_random_3graph(64, 0.7, RngSeed{1});
    const double p = h.num_edges() / (64.0 * 63 * 62 / 6);
    const HyperPackReport rep = pack_3graph(h, 0.1, p, o);
    CHECK(certify_packing(h, rep.result).certified);
    // Golden for stream version 1 and the default desk options.
    CHECK(rep.result.cycles.size() == 6);
    CHECK(rep.result.coverage_fraction() == doctest::Approx(0.013233165621338479));
    CHECK(rep.census.max_count <= 9);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(pack_3graph(Hypergraph3(10), 0.1, 0.5, o), std::invalid_argument);
    CHECK_THROWS_AS(pack_3graph(Hypergraph3(7), 0.1, 0.5, o), std::invalid_argument);
  }
}
