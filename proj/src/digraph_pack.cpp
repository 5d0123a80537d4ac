#include "tightpack/digraph_pack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tightpack {

namespace {

constexpr std::uint64_t kLabelStreamTag = 0x6c6162656c730002ULL;

void require_even(int n, const char* who) {
  if (n % 2 != 0 || n < 2) {
    throw std::invalid_argument(std::string(who) + ": vertex count must be even and at least 2, got " +
                                std::to_string(n));
  }
}

}  // namespace

HalfPermutation::HalfPermutation(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  require_even(n, "HalfPermutation");
  position_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order_[i];
    if (v < 0 || v >= n || position_[v] >= 0) {
      throw std::invalid_argument("HalfPermutation: order is not a permutation of 0..n-1");
    }
    position_[v] = i;
  }
}

Vertex HalfPermutation::successor(Vertex v) const {
  const int i = position_[v], m = half();
  return i < m ? order_[(i + 1) % m] : order_[m + (i - m + 1) % m];
}

Vertex HalfPermutation::predecessor(Vertex v) const {
  const int i = position_[v], m = half();
  return i < m ? order_[(i + m - 1) % m] : order_[m + (i - m + m - 1) % m];
}

std::pair<Arc, Arc> GammaGraph::lift(const BiEdge& e) const {
  const Vertex a = perm.a_vertex(e.a);
  const Vertex b = perm.b_vertex(e.b);
  return {Arc{a, b}, Arc{b, perm.successor(a)}};
}

std::vector<Arc> GammaGraph::lifted_arcs() const {
  std::vector<Arc> arcs;
  arcs.reserve(2 * base.num_edges());
  for (const BiEdge& e : base.edges()) {
    auto [first, second] = lift(e);
    arcs.push_back(first);
    arcs.push_back(second);
  }
  std::vector<Arc> sorted = arcs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::logic_error("Gamma lift is not injective: two base edges share an arc");
  }
  return arcs;
}

Digraph GammaGraph::lifted() const { return Digraph(perm.n(), lifted_arcs()); }

GammaGraph procedure1(const Digraph& d, const HalfPermutation& perm) {
  require_even(d.n(), "procedure1");
  if (perm.n() != d.n()) throw std::invalid_argument("procedure1: permutation size differs from digraph");
  const int m = perm.half();
  std::vector<BiEdge> edges;
  for (int i = 0; i < m; ++i) {
    const Vertex a = perm.a_vertex(i);
    const Vertex next = perm.successor(a);
    for (int j = 0; j < m; ++j) {
      const Vertex b = perm.b_vertex(j);
      if (d.has_arc(a, b) && d.has_arc(b, next)) edges.push_back(BiEdge{i, j});
    }
  }
  return GammaGraph{perm, BipartiteGraph(m, edges)};
}

GammaGraph procedure1(const Digraph& d, Rng& rng) {
  require_even(d.n(), "procedure1");
  std::vector<Vertex> order(static_cast<std::size_t>(d.n()));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<Vertex>(order));
  return procedure1(d, HalfPermutation(std::move(order)));
}

std::vector<Vertex> associated_cycle(const PerfectMatching& matching, const HalfPermutation& perm) {
  const int m = perm.half();
  if (static_cast<int>(matching.size()) != m) {
    throw std::invalid_argument("associated_cycle: matching has " + std::to_string(matching.size()) +
                                " edges, a perfect matching needs " + std::to_string(m));
  }
  std::vector<Vertex> mate(static_cast<std::size_t>(m), -1);
  std::vector<char> b_used(static_cast<std::size_t>(m), 0);
  for (const BiEdge& e : matching) {
    if (e.a < 0 || e.a >= m || e.b < 0 || e.b >= m || mate[e.a] >= 0 || b_used[e.b]) {
      throw std::invalid_argument("associated_cycle: not a perfect matching");
    }
    mate[e.a] = e.b;
    b_used[e.b] = 1;
  }
  std::vector<Vertex> cycle;
  cycle.reserve(static_cast<std::size_t>(perm.n()));
  for (int i = 0; i < m; ++i) {
    cycle.push_back(perm.a_vertex(i));
    cycle.push_back(perm.b_vertex(mate[i]));
  }
  return cycle;
}

namespace {

// Runs the r Procedure 1 copies, feeding each lifted arc's dense index to
// `visit(copy, arc_index)`. A repeat within one copy means the lift was not
// injective.
template <typename Keep, typename Visit>
void run_copies(const Digraph& d, int r, std::uint64_t seed, Keep&& keep, Visit&& visit) {
  require_even(d.n(), "procedure2");
  if (r < 1) throw std::invalid_argument("procedure2: r must be at least 1");
  const Rng root(seed);
  std::vector<std::int32_t> last_copy(d.num_arcs(), -1);
  for (int i = 0; i < r; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i));
    GammaGraph g = procedure1(d, rng);
    for (const BiEdge& e : g.base.edges()) {
      auto [first, second] = g.lift(e);
      for (const Arc& arc : {first, second}) {
        const std::size_t idx = d.arc_index(arc.from, arc.to);
        if (last_copy[idx] == i) throw std::logic_error("procedure2: arc lifted twice by one copy");
        last_copy[idx] = i;
        visit(i, idx);
      }
    }
    keep(std::move(g));
  }
}

}  // namespace

Procedure2Result procedure2(const Digraph& d, int r, std::uint64_t seed) {
  Procedure2Result out;
  out.cover.assign(d.num_arcs(), 0);
  out.label.assign(d.num_arcs(), -1);
  // Reservoir sampling of size one: after the last copy each label is
  // uniform over I_e.
  Rng labels(mix64(seed ^ kLabelStreamTag));
  std::vector<GammaGraph> copies;
  run_copies(
      d, r, seed, [&](GammaGraph&& g) { copies.push_back(std::move(g)); },
      [&](int i, std::size_t idx) {
        const std::uint32_t c = ++out.cover[idx];
        if (labels.below(c) == 0) out.label[idx] = i;
      });

  std::vector<char> taken(d.num_arcs(), 0);
  for (int i = 0; i < r; ++i) {
    const GammaGraph& g = copies[i];
    std::vector<BiEdge> kept;
    for (const BiEdge& e : g.base.edges()) {
      auto [first, second] = g.lift(e);
      const std::size_t x = d.arc_index(first.from, first.to);
      const std::size_t y = d.arc_index(second.from, second.to);
      if (out.label[x] == i && out.label[y] == i) {
        if (taken[x] || taken[y]) throw std::logic_error("procedure2: kept graphs overlap");
        taken[x] = taken[y] = 1;
        kept.push_back(e);
      }
    }
    out.kept.push_back(GammaGraph{g.perm, BipartiteGraph(g.base.m(), kept)});
  }
  return out;
}

std::vector<std::uint32_t> digraph_cover_counts(const Digraph& d, int r, std::uint64_t seed) {
  std::vector<std::uint32_t> cover(d.num_arcs(), 0);
  run_copies(d, r, seed, [](GammaGraph&&) {}, [&](int, std::size_t idx) { ++cover[idx]; });
  return cover;
}

std::string to_string(Profile profile) { return profile == Profile::paper ? "paper" : "desk"; }

void validate_options(const PackOptions& o) {
  if (o.profile == Profile::paper && (o.kappa || o.r || o.r_cap || o.rounds_cap)) {
    throw std::invalid_argument("profile paper does not accept kappa, r, r_cap or rounds_cap overrides");
  }
  if (o.kappa && !(*o.kappa >= 1.0)) throw std::invalid_argument("kappa must be at least 1");
  if (o.r && *o.r < 1) throw std::invalid_argument("r must be positive");
  if (o.r_cap && *o.r_cap < 1) throw std::invalid_argument("r_cap must be positive");
  if (o.rounds_cap && *o.rounds_cap < 1) throw std::invalid_argument("rounds_cap must be positive");
  if (o.patience < 1) throw std::invalid_argument("patience must be positive");
}

int copies_for_round(const PackOptions& options, const ScheduleStep& row) {
  if (options.profile == Profile::paper) {
    if (!(row.r <= options.copies_budget)) {
      throw BudgetExceeded("paper schedule needs r_t = " + std::to_string(row.r) +
                           " copies, above the copies budget " + std::to_string(options.copies_budget));
    }
    return std::max(1, static_cast<int>(std::ceil(row.r)));
  }
  if (options.r) return *options.r;
  const int cap = options.r_cap.value_or(kDefaultDeskRCap);
  if (!(row.r < cap)) return cap;
  return std::max(1, static_cast<int>(std::ceil(row.r)));
}

Schedule schedule_for(const PackOptions& options, ScheduleKind kind, double n, double epsilon, double p) {
  if (options.profile == Profile::paper) {
    return kind == ScheduleKind::digraph ? digraph_schedule(n, epsilon, p) : hyper_schedule(n, epsilon, p);
  }
  return fixed_kappa_schedule(kind, n, epsilon, p, options.kappa.value_or(kDefaultDeskKappa));
}

PackReport pack_digraph(const Digraph& d, double epsilon, double p, const PackOptions& options) {
  require_even(d.n(), "pack_digraph");
  validate_options(options);

  PackReport report;
  report.schedule = schedule_for(options, ScheduleKind::digraph, d.n(), epsilon, p);
  const std::int64_t rounds_limit = options.rounds_cap ? *options.rounds_cap : report.schedule.T;
  // Refuse up front rather than after partial work.
  copies_for_round(options, report.schedule.step(0));

  const Rng root(options.seed);
  Digraph current = d;
  int empty_rounds = 0;
  report.stop_reason = "schedule";
  for (std::int64_t t = 0; t < rounds_limit; ++t) {
    if (current.num_arcs() == 0) {
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

    RoundLog log;
    log.round = static_cast<int>(t);
    log.epsilon = row.epsilon;
    log.p = row.p;
    log.r = r;
    log.edges_before = current.num_arcs();

    const Procedure2Result p2 = procedure2(current, r, root.child(static_cast<std::uint64_t>(t)).seed());
    std::vector<char> used(current.num_arcs(), 0);
    std::vector<Arc> removed;
    for (const GammaGraph& g : p2.kept) {
      const std::size_t e = g.base.num_edges();
      log.kept_edges += e;
      if (e == 0) continue;
      const int m = g.base.m();
      const double p_hat = static_cast<double>(e) / (static_cast<double>(m) * m);
      const double eps_hat = check_bipartite_hypotheses(g.base, 0.0, p_hat).worst_ratio;
      const MatchingPacking packing = pack_matchings(g.base, eps_hat, p_hat);
      for (const PerfectMatching& matching : packing.matchings) {
        std::vector<Vertex> cycle = associated_cycle(matching, g.perm);
        const CycleCheck check = validate_directed_cycle(current, cycle);
        if (!check.ok) throw std::logic_error("pack_digraph: lifted cycle invalid: " + check.diagnostic);
        for (std::size_t i = 0; i < cycle.size(); ++i) {
          const Arc arc{cycle[i], cycle[(i + 1) % cycle.size()]};
          const std::size_t idx = current.arc_index(arc.from, arc.to);
          if (used[idx]) throw std::logic_error("pack_digraph: cycles of one round share an arc");
          used[idx] = 1;
          removed.push_back(arc);
        }
        report.result.cycles.push_back(std::move(cycle));
        ++log.cycles;
      }
    }
    log.edges_removed = removed.size();
    current = current.without(removed);

    if (options.recheck && current.num_arcs() > 0) {
      const ScheduleStep next = report.schedule.step(t + 1);
      if (next.p > 0.0 && next.p <= 1.0) {
        CheckOptions co;
        co.sample_sites = options.recheck_sites;
        co.mode = CheckMode::sampled;
        co.seed = root.child(static_cast<std::uint64_t>(t)).seed();
        log.recheck_worst_ratio = check_digraph_uniform(current, next.epsilon, next.p, co).worst_ratio;
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

  PackingResult& result = report.result;
  result.kind = CycleKind::directed;
  result.n = d.n();
  result.total_edges = d.num_arcs();
  result.leftover_arcs = current.arcs();
  result.covered_edges = d.num_arcs() - current.num_arcs();
  return report;
}

}  // namespace tightpack
