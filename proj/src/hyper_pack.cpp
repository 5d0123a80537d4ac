#include "tightpack/hyper_pack.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "tightpack/uniformity.hpp"

namespace tightpack {

namespace {

constexpr std::uint64_t kHyperLabelTag = 0x6c6162656c730004ULL;

void require_even(int n, const char* who) {
  if (n % 2 != 0 || n < 2) {
    throw std::invalid_argument(std::string(who) + ": vertex count must be even and at least 2, got " +
                                std::to_string(n));
  }
}

}  // namespace

PairPermutation::PairPermutation(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  require_even(n, "PairPermutation");
  pair_of_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order_[i];
    if (v < 0 || v >= n || pair_of_[v] >= 0) {
      throw std::invalid_argument("PairPermutation: order is not a permutation of 0..n-1");
    }
    pair_of_[v] = i / 2;
  }
}

Vertex PairPermutation::mate(Vertex v) const {
  const int k = pair_of_[v];
  return first(k) == v ? second(k) : first(k);
}

std::pair<Triple, Triple> PairedDigraph::hyperedges(const Arc& arc) const {
  const Vertex xi = pairing.first(arc.from), yi = pairing.second(arc.from);
  const Vertex xj = pairing.first(arc.to), yj = pairing.second(arc.to);
  return {Triple::sorted(xi, yi, xj), Triple::sorted(yi, xj, yj)};
}

std::optional<Arc> PairedDigraph::claiming_arc(const Triple& t) const {
  const Vertex v[3] = {t.a, t.b, t.c};
  for (int s = 0; s < 3; ++s) {
    const Vertex u = v[s], w1 = v[(s + 1) % 3], w2 = v[(s + 2) % 3];
    // w is the odd vertex out when {u, mate(u)} sits inside t.
    Vertex w = -1;
    if (pairing.mate(u) == w1) w = w2;
    if (pairing.mate(u) == w2) w = w1;
    if (w < 0) continue;
    const int k = pairing.pair_of(u), j = pairing.pair_of(w);
    // {x_k, y_k, x_j} is e of k -> j; {x_k, y_k, y_j} is f of j -> k.
    const Arc arc = pairing.first(j) == w ? Arc{k, j} : Arc{j, k};
    if (digraph.has_arc(arc.from, arc.to)) return arc;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Triple> PairedDigraph::partner(const Triple& t) const {
  const std::optional<Arc> arc = claiming_arc(t);
  if (!arc) return std::nullopt;
  auto [e, f] = hyperedges(*arc);
  return e == t ? f : e;
}

PairedDigraph procedure3(const Hypergraph3& h, const PairPermutation& pairing) {
  require_even(h.n(), "procedure3");
  if (pairing.n() != h.n()) throw std::invalid_argument("procedure3: pairing size differs from 3-graph");
  Digraph d = procedure3_digraph_with([&h](Vertex x, Vertex y, Vertex z) { return h.contains(x, y, z); }, pairing);
  return PairedDigraph{pairing, std::move(d)};
}

PairPermutation random_pairing(int n, Rng& rng) {
  require_even(n, "random_pairing");
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<Vertex>(order));
  return PairPermutation(std::move(order));
}

PairedDigraph procedure3(const Hypergraph3& h, Rng& rng) {
  require_even(h.n(), "procedure3");
  return procedure3(h, random_pairing(h.n(), rng));
}

std::vector<Vertex> lift_cycle(const PairedDigraph& pd, std::span<const Vertex> cycle) {
  const int k = pd.pairing.num_pairs();
  if (static_cast<int>(cycle.size()) != k) {
    throw std::invalid_argument("lift_cycle: cycle has " + std::to_string(cycle.size()) + " vertices, digraph has " +
                                std::to_string(k));
  }
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (Vertex c : cycle) {
    if (c < 0 || c >= k || seen[c]) throw std::invalid_argument("lift_cycle: not a Hamilton cycle (vertex repeats)");
    seen[c] = 1;
  }
  std::vector<Triple> claimed;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Arc arc{cycle[i], cycle[(i + 1) % cycle.size()]};
    if (arc.from == arc.to || !pd.digraph.has_arc(arc.from, arc.to)) {
      throw std::invalid_argument("lift_cycle: missing arc " + std::to_string(arc.from) + "->" +
                                  std::to_string(arc.to));
    }
    auto [e, f] = pd.hyperedges(arc);
    claimed.push_back(e);
    claimed.push_back(f);
  }
  std::sort(claimed.begin(), claimed.end());
  if (std::adjacent_find(claimed.begin(), claimed.end()) != claimed.end()) {
    throw std::logic_error("lift_cycle: two arcs of the cycle claim the same hyperedge");
  }
  std::vector<Vertex> order;
  order.reserve(2 * cycle.size());
  for (Vertex c : cycle) {
    order.push_back(pd.pairing.first(c));
    order.push_back(pd.pairing.second(c));
  }
  return order;
}

namespace {

template <typename Keep, typename Visit>
void run_hyper_copies(const Hypergraph3& h, int r, std::uint64_t seed, Keep&& keep, Visit&& visit) {
  require_even(h.n(), "procedure4");
  if (r < 1) throw std::invalid_argument("procedure4: r must be at least 1");
  const Rng root(seed);
  std::vector<std::int32_t> last_copy(h.num_edges(), -1);
  for (int i = 0; i < r; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    PairedDigraph pd = procedure3(h, rng);
    for (const Arc& arc : pd.digraph.arcs()) {
      auto [e, f] = pd.hyperedges(arc);
      for (const Triple& t : {e, f}) {
        const std::size_t idx = h.edge_index(t);
        if (last_copy[idx] == i) throw std::logic_error("procedure4: hyperedge claimed twice by one copy");
        last_copy[idx] = i;
        visit(i, idx);
      }
    }
    keep(std::move(pd));
  }
}

}  // namespace

Procedure4Result procedure4(const Hypergraph3& h, int r, std::uint64_t seed) {
  Procedure4Result out;
  out.cover.assign(h.num_edges(), 0);
  out.label.assign(h.num_edges(), -1);
  Rng labels(mix64(seed ^ kHyperLabelTag));
  std::vector<PairedDigraph> copies;
  run_hyper_copies(
      h, r, seed, [&](PairedDigraph&& pd) { copies.push_back(std::move(pd)); },
      [&](int i, std::size_t idx) {
        const std::uint32_t c = ++out.cover[idx];
        if (labels.below(c) == 0) out.label[idx] = i;
      });

  std::vector<char> taken(h.num_edges(), 0);
  for (int i = 0; i < r; ++i) {
    const PairedDigraph& pd = copies[i];
    std::vector<Arc> arcs;
    std::vector<Triple> edges;
    for (const Arc& arc : pd.digraph.arcs()) {
      auto [e, f] = pd.hyperedges(arc);
      const std::size_t x = h.edge_index(e), y = h.edge_index(f);
      if (out.label[x] == i && out.label[y] == i) {
        if (taken[x] || taken[y]) throw std::logic_error("procedure4: kept 3-graphs overlap");
        taken[x] = taken[y] = 1;
        arcs.push_back(arc);
        edges.push_back(e);
        edges.push_back(f);
      }
    }
    if (edges.size() != 2 * arcs.size()) throw std::logic_error("procedure4: e(H'_i) != 2 e(D'_i)");
    out.kept.push_back(PairedDigraph{pd.pairing, Digraph(pd.pairing.num_pairs(), arcs)});
    out.kept_edges.push_back(std::move(edges));
  }
  return out;
}

std::vector<std::uint32_t> hyper_cover_counts(const Hypergraph3& h, int r, std::uint64_t seed) {
  std::vector<std::uint32_t> cover(h.num_edges(), 0);
  run_hyper_copies(h, r, seed, [](PairedDigraph&&) {}, [&](int, std::size_t idx) { ++cover[idx]; });
  return cover;
}

std::size_t condensed_count(std::span<const PairPermutation> pairings, const std::array<Vertex, 4>& s) {
  std::size_t count = 0;
  for (const PairPermutation& pp : pairings) {
    bool closed = true;
    for (Vertex v : s) {
      if (v < 0 || v >= pp.n()) throw std::out_of_range("condensed_count: vertex out of range");
      const Vertex m = pp.mate(v);
      closed = closed && std::find(s.begin(), s.end(), m) != s.end();
    }
    if (closed) ++count;
  }
  return count;
}

CensusResult condensed_census(std::span<const PairPermutation> pairings, bool exhaustive, std::uint64_t samples,
                              std::uint64_t seed, std::uint64_t budget) {
  CensusResult out;
  out.exhaustive = exhaustive;
  if (pairings.empty()) return out;
  const int n = pairings.front().n();
  for (const auto& pp : pairings) {
    if (pp.n() != n) throw std::invalid_argument("condensed_census: pairings differ in size");
  }
  if (n < 4) return out;

  if (exhaustive) {
    const std::uint64_t k = static_cast<std::uint64_t>(n / 2);
    const std::uint64_t work = pairings.size() * (k * (k - 1) / 2);
    if (work > budget) {
      throw BudgetExceeded("condensed census needs " + std::to_string(work) + " pair unions, budget is " +
                           std::to_string(budget));
    }
    // A 4-set is condensed by a pairing iff it is the union of two of its
    // pairs, so counting those unions covers every set with a nonzero count.
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    auto key = [](std::array<Vertex, 4> s) {
      std::sort(s.begin(), s.end());
      std::uint64_t x = 0;
      for (Vertex v : s) x = (x << 16) | static_cast<std::uint64_t>(v);
      return x;
    };
    for (const auto& pp : pairings) {
      for (int i = 0; i < pp.num_pairs(); ++i) {
        for (int j = i + 1; j < pp.num_pairs(); ++j) {
          const std::array<Vertex, 4> s{pp.first(i), pp.second(i), pp.first(j), pp.second(j)};
          const std::uint32_t c = ++counts[key(s)];
          ++out.sets_tested;
          if (c > out.max_count) {
            out.max_count = c;
            std::array<Vertex, 4> sorted = s;
            std::sort(sorted.begin(), sorted.end());
            out.witness = sorted;
          }
        }
      }
    }
    return out;
  }

  Rng rng(seed);
  for (std::uint64_t t = 0; t < samples; ++t) {
    std::array<Vertex, 4> s{};
    for (int i = 0; i < 4; ++i) {
      bool clash;
      do {
        s[i] = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        clash = std::find(s.begin(), s.begin() + i, s[i]) != s.begin() + i;
      } while (clash);
    }
    std::sort(s.begin(), s.end());
    const std::size_t c = condensed_count(pairings, s);
    ++out.sets_tested;
    if (!out.witness || c > out.max_count) {
      out.max_count = c;
      out.witness = s;
    }
  }
  return out;
}

HyperPackReport pack_3graph(const Hypergraph3& h, double epsilon, double p, const PackOptions& options) {
  if (h.n() % 4 != 0 || h.n() < 4) {
    throw std::invalid_argument("pack_3graph: vertex count must be a positive multiple of 4, got " +
                                std::to_string(h.n()));
  }
  validate_options(options);

  HyperPackReport report;
  report.schedule = schedule_for(options, ScheduleKind::hypergraph, h.n(), epsilon, p);
  const std::int64_t rounds_limit = options.rounds_cap ? *options.rounds_cap : report.schedule.T;
  copies_for_round(options, report.schedule.step(0));

  const Rng root(options.seed);
  const int k = h.n() / 2;
  Hypergraph3 current = h;
  std::vector<PairPermutation> all_pairings;
  int empty_rounds = 0;
  report.stop_reason = "schedule";
  for (std::int64_t t = 0; t < rounds_limit; ++t) {
    if (current.num_edges() == 0) {
      report.stop_reason = "exhausted";
      break;
    }
    const ScheduleStep row = report.schedule.step(t);
    int r = 0;
    try {
      r = copies_for_round(options, row);
    } catch (const BudgetExceeded&) {
      report.stop_reason = "copies-budget";
      break;
    }

    HyperRoundLog log;
    log.round = static_cast<int>(t);
    log.epsilon = row.epsilon;
    log.p = row.p;
    log.r = r;
    log.edges_before = current.num_edges();

    const Rng round_rng = root.child(static_cast<std::uint64_t>(t));
    const Procedure4Result p4 = procedure4(current, r, round_rng.seed());
    std::vector<char> used(current.num_edges(), 0);
    std::vector<Triple> removed;
    for (std::size_t i = 0; i < p4.kept.size(); ++i) {
      const PairedDigraph& pd = p4.kept[i];
      all_pairings.push_back(pd.pairing);
      const std::size_t arcs = pd.digraph.num_arcs();
      log.kept_arcs += arcs;
      if (arcs == 0) continue;

      PackOptions inner;
      inner.profile = options.profile;
      inner.kappa = options.kappa;
      inner.r_cap = options.r_cap;
      inner.rounds_cap = options.rounds_cap;
      inner.patience = options.patience;
      inner.copies_budget = options.copies_budget;
      inner.recheck = false;
      inner.seed = round_rng.child(static_cast<std::uint64_t>(r) + i).seed();
      double eps_in = 0.0, p_in = 0.0;
      if (options.profile == Profile::paper) {
        eps_in = 16.0 * row.epsilon;
        p_in = (row.p / row.kappa) * (row.p / row.kappa);
      } else {
        eps_in = std::min(16.0 * row.epsilon, 0.9);
        p_in = static_cast<double>(arcs) / (static_cast<double>(k) * (k - 1));
      }
      const PackReport inner_report = pack_digraph(pd.digraph, eps_in, p_in, inner);

      for (const auto& cycle : inner_report.result.cycles) {
        std::vector<Vertex> tight = lift_cycle(pd, cycle);
        const CycleCheck check = validate_tight_cycle(current, tight);
        if (!check.ok) throw std::logic_error("pack_3graph: lifted cycle invalid: " + check.diagnostic);
        for (std::size_t j = 0; j < tight.size(); ++j) {
          const Triple tr =
              Triple::sorted(tight[j], tight[(j + 1) % tight.size()], tight[(j + 2) % tight.size()]);
          const std::size_t idx = current.edge_index(tr);
          if (used[idx]) throw std::logic_error("pack_3graph: tight cycles of one round share an edge");
          used[idx] = 1;
          removed.push_back(tr);
        }
        report.result.cycles.push_back(std::move(tight));
        ++log.cycles;
      }
    }
    log.edges_removed = removed.size();
    current = current.without(removed);

    if (options.recheck && current.num_edges() > 0) {
      const ScheduleStep next = report.schedule.step(t + 1);
      if (next.p > 0.0 && next.p <= 1.0) {
        CheckOptions co;
        co.mode = CheckMode::sampled;
        co.sample_sites = options.recheck_sites;
        co.seed = round_rng.seed();
        log.recheck_worst_ratio = check_3graph_uniform(current, next.epsilon, next.p, co).worst_ratio;
      }
    }
    report.rounds.push_back(log);

    empty_rounds = log.cycles == 0 ? empty_rounds + 1 : 0;
    if (empty_rounds >= options.patience) {
      report.stop_reason = "stagnation";
      break;
    }
    if (t + 1 == rounds_limit) report.stop_reason = options.rounds_cap ? "rounds-cap" : "schedule";
  }

  // Sampled census: the exhaustive variant is available directly.
  report.census = condensed_census(all_pairings, false, 10'000, options.seed);

  PackingResult& result = report.result;
  result.kind = CycleKind::tight;
  result.n = h.n();
  result.total_edges = h.num_edges();
  result.leftover_triples = current.edges();
  result.covered_edges = h.num_edges() - current.num_edges();
  return report;
}

}  // namespace tightpack
