#include "tightpack/uniformity.hpp"

#include <cmath>
#include <limits>

#include "tightpack/rng.hpp"

namespace tightpack {

std::string to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::automatic: return "automatic";
    case CheckMode::exhaustive: return "exhaustive";
    case CheckMode::sampled: return "sampled";
  }
  return "unknown";
}

namespace {

void check_parameters(double epsilon, double p) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("uniformity check: epsilon must be >= 0");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("uniformity check: p must lie in (0, 1]");
}

double deviation(double observed, double expected) {
  if (expected == 0.0) return observed == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(observed / expected - 1.0);
}

// Accumulates the worst site. Merging is a max, so the verdict does not
// depend on evaluation order.
class Tracker {
 public:
  explicit Tracker(UniformityReport& report) : report_(report) {}

  void record(const std::string& pattern, std::span<const Vertex> site, double observed,
              double expected, double ratio) {
    ++report_.sites_tested;
    if (!report_.witness || ratio > report_.worst_ratio) {
      report_.worst_ratio = ratio;
      report_.witness = UniformityWitness{pattern, {site.begin(), site.end()}, observed, expected};
    }
  }
  void record(const std::string& pattern, std::span<const Vertex> site, double observed,
              double expected) {
    record(pattern, site, observed, expected, deviation(observed, expected));
  }

 private:
  UniformityReport& report_;
};

void finish(UniformityReport& report) { report.uniform = report.worst_ratio <= report.epsilon; }

// n (n-1) ... (n-t+1), saturating.
std::uint64_t ordered_tuples(int n, int t) {
  if (t > n) return 0;
  std::uint64_t total = 1;
  for (int i = 0; i < t; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - i);
    if (total > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= factor;
  }
  return total;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

// Calls f(tuple) for every ordered tuple of t distinct vertices.
template <typename F>
void for_each_tuple(int n, int t, F&& f) {
  std::vector<Vertex> tuple(static_cast<std::size_t>(t));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == t) {
      f(std::span<const Vertex>(tuple));
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      tuple[depth] = v;
      self(self, depth + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);
}

void draw_distinct(Rng& rng, int n, std::vector<Vertex>& out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    Vertex v;
    bool clash;
    do {
      v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      clash = false;
      for (std::size_t j = 0; j < i; ++j) clash = clash || out[j] == v;
    } while (clash);
    out[i] = v;
  }
}

CheckMode resolve_mode(const CheckOptions& options, int n, std::uint64_t total_sites) {
  if (options.mode != CheckMode::automatic) return options.mode;
  return (n <= options.exhaustive_max_n && total_sites <= options.site_budget) ? CheckMode::exhaustive
                                                                              : CheckMode::sampled;
}

void refuse_if_over_budget(std::uint64_t total_sites, const CheckOptions& options) {
  if (total_sites > options.site_budget) {
    throw BudgetExceeded("exhaustive uniformity check needs " + std::to_string(total_sites) +
                         " sites, budget is " + std::to_string(options.site_budget));
  }
}

}  // namespace

std::size_t extension_count(const Hypergraph3& h, const AuxiliaryGraph& gamma,
                            std::span<const Vertex> anchors) {
  if (static_cast<int>(anchors.size()) != gamma.t) {
    throw std::invalid_argument("extension_count: " + std::to_string(anchors.size()) +
                                " anchors given for an auxiliary graph on " + std::to_string(gamma.t) +
                                " vertices");
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (anchors[i] < 0 || anchors[i] >= h.n()) throw std::out_of_range("extension_count: anchor out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (anchors[i] == anchors[j]) throw std::invalid_argument("extension_count: anchors must be distinct");
    }
  }
  return extension_count_with([&h](Vertex u, Vertex v, Vertex w) { return h.contains(u, v, w); }, h.n(), gamma,
                              anchors);
}

UniformityReport check_3graph_uniform(const Hypergraph3& h, double epsilon, double p,
                                      const CheckOptions& options) {
  check_parameters(epsilon, p);
  const auto& catalog = options.full_catalog ? full_auxiliary_catalog() : gamma_catalog();
  const int n = h.n();

  std::uint64_t total_sites = 0;
  for (const auto& gamma : catalog) total_sites = saturating_add(total_sites, ordered_tuples(n, gamma.t));

  UniformityReport report;
  report.epsilon = epsilon;
  report.p = p;
  report.mode = resolve_mode(options, n, total_sites);
  if (report.mode == CheckMode::exhaustive) refuse_if_over_budget(total_sites, options);

  Tracker tracker(report);
  auto contains = [&h](Vertex u, Vertex v, Vertex w) { return h.contains(u, v, w); };
  const Rng root(options.seed);
  for (std::size_t g = 0; g < catalog.size(); ++g) {
    const AuxiliaryGraph& gamma = catalog[g];
    const double expected = n * std::pow(p, gamma.s());
    auto evaluate = [&](std::span<const Vertex> site) {
      tracker.record(gamma.name, site, static_cast<double>(extension_count_with(contains, n, gamma, site)),
                     expected);
    };
    const std::uint64_t sites = ordered_tuples(n, gamma.t);
    if (sites == 0) continue;
    if (report.mode == CheckMode::exhaustive || options.sample_sites >= sites) {
      for_each_tuple(n, gamma.t, evaluate);
    } else {
      Rng rng = root.child(g);
      std::vector<Vertex> site(static_cast<std::size_t>(gamma.t));
      for (std::uint64_t k = 0; k < options.sample_sites; ++k) {
        draw_distinct(rng, n, site);
        evaluate(site);
      }
    }
  }
  finish(report);
  return report;
}

UniformityReport check_digraph_uniform(const Digraph& d, double epsilon, double p,
                                       const CheckOptions& options) {
  check_parameters(epsilon, p);
  const int n = d.n();
  const std::uint64_t pair_sites = ordered_tuples(n, 2);
  const std::uint64_t quad_distinct = ordered_tuples(n, 4);
  const std::uint64_t quad_bc = ordered_tuples(n, 3);
  const std::uint64_t quad_sites = saturating_add(quad_distinct, quad_bc);
  const std::uint64_t total_sites = saturating_add(saturating_add(static_cast<std::uint64_t>(n), pair_sites), quad_sites);

  UniformityReport report;
  report.epsilon = epsilon;
  report.p = p;
  report.mode = resolve_mode(options, n, total_sites);
  if (report.mode == CheckMode::exhaustive) refuse_if_over_budget(total_sites, options);
  Tracker tracker(report);

  const double e1 = n * p;
  const double e2 = n * p * p;
  const double e4 = e2 * p * p;

  for (Vertex a = 0; a < n; ++a) {
    const Vertex site[] = {a};
    tracker.record("out-degree", site, static_cast<double>(d.out_degree(a)), e1);
    tracker.record("in-degree", site, static_cast<double>(d.in_degree(a)), e1);
  }

  auto pair_site = [&](Vertex a, Vertex b) {
    const Vertex site[] = {a, b};
    tracker.record("common-out", site, static_cast<double>(d.common_out(a, b)), e2);
    tracker.record("common-in", site, static_cast<double>(d.common_in(a, b)), e2);
    tracker.record("out-in", site, static_cast<double>(d.out_in(a, b)), e2);
  };
  auto quad_site = [&](Vertex a, Vertex b, Vertex c, Vertex dd) {
    const Vertex site[] = {a, b, c, dd};
    tracker.record("four-way", site, static_cast<double>(d.four_way(a, b, c, dd)), e4);
  };

  const bool full_pairs = report.mode == CheckMode::exhaustive || options.sample_sites >= pair_sites;
  const bool full_quads = report.mode == CheckMode::exhaustive || options.sample_sites >= quad_sites;
  const Rng root(options.seed);

  if (full_pairs) {
    for_each_tuple(n, 2, [&](std::span<const Vertex> s) { pair_site(s[0], s[1]); });
  } else {
    Rng rng = root.child(0);
    std::vector<Vertex> s(2);
    for (std::uint64_t k = 0; k < options.sample_sites; ++k) {
      draw_distinct(rng, n, s);
      pair_site(s[0], s[1]);
    }
  }

  if (full_quads) {
    for_each_tuple(n, 4, [&](std::span<const Vertex> s) { quad_site(s[0], s[1], s[2], s[3]); });
    for_each_tuple(n, 3, [&](std::span<const Vertex> s) { quad_site(s[0], s[1], s[1], s[2]); });
  } else if (quad_sites > 0) {
    // Uniform over the union of both site families.
    Rng rng = root.child(1);
    std::vector<Vertex> s4(4), s3(3);
    for (std::uint64_t k = 0; k < options.sample_sites; ++k) {
      if (rng.below(quad_sites) < quad_bc) {
        draw_distinct(rng, n, s3);
        quad_site(s3[0], s3[1], s3[1], s3[2]);
      } else {
        draw_distinct(rng, n, s4);
        quad_site(s4[0], s4[1], s4[2], s4[3]);
      }
    }
  }
  finish(report);
  return report;
}

UniformityReport check_bipartite_hypotheses(const BipartiteGraph& g, double epsilon, double p) {
  UniformityReport report;
  report.epsilon = epsilon;
  report.p = p;
  report.mode = CheckMode::exhaustive;
  Tracker tracker(report);
  const int m = g.m();
  const double degree = m * p;
  const double codegree = m * p * p;

  for (Vertex v = 0; v < m; ++v) {
    const Vertex site[] = {v};
    tracker.record("degree-a", site, static_cast<double>(g.degree_a(v)), degree);
    tracker.record("degree-b", site, static_cast<double>(g.degree_b(v)), degree);
  }
  // Only the upper side of the codegree window is a hypothesis.
  auto upper = [](double observed, double expected) {
    if (expected == 0.0) return observed == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::max(0.0, observed / expected - 1.0);
  };
  for (Vertex u = 0; u < m; ++u) {
    for (Vertex v = u + 1; v < m; ++v) {
      const Vertex site[] = {u, v};
      const double ca = static_cast<double>(g.codegree_a(u, v));
      const double cb = static_cast<double>(g.codegree_b(u, v));
      tracker.record("codegree-a", site, ca, codegree, upper(ca, codegree));
      tracker.record("codegree-b", site, cb, codegree, upper(cb, codegree));
    }
  }
  finish(report);
  return report;
}

}  // namespace tightpack
