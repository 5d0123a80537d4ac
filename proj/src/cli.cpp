#include "tightpack/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tightpack/bipartite_pack.hpp"
#include "tightpack/digraph_pack.hpp"
#include "tightpack/edge_list_io.hpp"
#include "tightpack/generators.hpp"
#include "tightpack/hyper_pack.hpp"
#include "tightpack/report.hpp"
#include "tightpack/uniformity.hpp"
#include "tightpack/verify.hpp"

namespace tightpack {

namespace {

// Thrown for problems the user can fix; mapped to kExitInvalid.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" + env + "'");
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return in;
}

// Writes through `write` into a file, or into `fallback` for "-" / empty.
template <typename Write>
void emit(const std::string& path, std::ostream& fallback, Write&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  write(file);
  if (!file) throw UsageError("write to '" + path + "' failed");
}

void emit_json(const std::string& path, std::ostream& fallback, const nlohmann::json& j) {
  emit(path, fallback, [&j](std::ostream& o) { o << j.dump(2) << '\n'; });
}

template <typename Graph>
Graph read_graph_file(const std::string& path, Graph (*reader)(std::istream&)) {
  std::ifstream in = open_input(path);
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

AnyGraph read_any_file(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return read_any_graph(in);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct PackFlags {
  std::string in, out, report;
  double epsilon = 0.1;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string profile = "desk";
  double kappa = kDefaultDeskKappa;
  int r = 0, r_cap = kDefaultDeskRCap, rounds_cap = 0, patience = 3;
  double copies_budget = 1e6;
  bool recheck = true;
  CLI::Option *kappa_opt = nullptr, *r_opt = nullptr, *r_cap_opt = nullptr, *rounds_opt = nullptr;
  CLI::Option* p_opt = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("--in", in, "input graph file")->required();
    sub->add_option("--out", out, "cycles file to write");
    sub->add_option("--report", report, "JSON report path (default: stdout)");
    sub->add_option("--epsilon", epsilon, "uniformity parameter")->capture_default_str();
    p_opt = sub->add_option("--p", p, "density parameter (default: empirical density)");
    sub->add_option("--seed", seed, "seed (default: $TIGHTPACK_SEED or 0)");
    sub->add_option("--profile", profile, "parameter profile")
        ->check(CLI::IsMember({"paper", "desk"}))
        ->capture_default_str();
    kappa_opt = sub->add_option("--kappa", kappa, "desk: cover multiplicity kappa (>= 1)");
    r_opt = sub->add_option("--r", r, "desk: copies per round");
    r_cap_opt = sub->add_option("--r-cap", r_cap, "desk: cap on copies per round");
    rounds_opt = sub->add_option("--rounds-cap", rounds_cap, "desk: maximum rounds");
    sub->add_option("--patience", patience, "empty rounds tolerated before stopping")->capture_default_str();
    sub->add_option("--copies-budget", copies_budget, "paper: refuse rounds needing more copies")
        ->capture_default_str();
    sub->add_flag("--recheck,!--no-recheck", recheck, "log a uniformity re-check after each round");
  }

  PackOptions options() const {
    PackOptions o;
    o.profile = profile == "paper" ? Profile::paper : Profile::desk;
    o.seed = seed;
    if (kappa_opt->count()) o.kappa = kappa;
    if (r_opt->count()) o.r = r;
    if (r_cap_opt->count()) o.r_cap = r_cap;
    if (rounds_opt->count()) o.rounds_cap = rounds_cap;
    o.patience = patience;
    o.copies_budget = copies_budget;
    o.recheck = recheck;
    try {
      validate_options(o);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return o;
  }
};

double density_3graph(const Hypergraph3& h) {
  const double n = h.n();
  const double triples = n * (n - 1) * (n - 2) / 6.0;
  return triples > 0 ? static_cast<double>(h.num_edges()) / triples : 0.0;
}

double density_digraph(const Digraph& d) {
  const double n = d.n();
  return n > 1 ? static_cast<double>(d.num_arcs()) / (n * (n - 1)) : 0.0;
}

// Packing parameters must be usable by the schedule even when the graph is
// empty; fall back to the empirical density, clamped into (0, 1].
double resolve_p(const PackFlags& flags, double empirical) {
  if (flags.p_opt->count()) return flags.p;
  return std::clamp(empirical, 1e-9, 1.0);
}

CheckMode parse_mode(const std::string& s) {
  if (s == "exhaustive") return CheckMode::exhaustive;
  if (s == "sampled") return CheckMode::sampled;
  return CheckMode::automatic;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tight Hamilton cycle packing of pseudo-random 3-graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed_default = 0;
  try {
    seed_default = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random graph");
  std::string gen_kind = "3graph", gen_out;
  int gen_n = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = seed_default;
  gen->add_option("--kind", gen_kind, "graph kind")
      ->check(CLI::IsMember({"3graph", "digraph", "bipartite"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "vertex count (part size m for bipartite)")->required();
  gen->add_option("--p", gen_p, "edge probability")->required();
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  // check
  auto* check = app.add_subcommand("check", "test (epsilon, p)-uniformity");
  std::string check_in, check_report, check_mode = "auto";
  double check_eps = 0.0, check_p = 0.0;
  CheckOptions check_opts;
  check_opts.seed = seed_default;
  check->add_option("--in", check_in, "graph file")->required();
  check->add_option("--epsilon", check_eps, "epsilon")->required();
  check->add_option("--p", check_p, "p")->required();
  check->add_option("--mode", check_mode, "site enumeration")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}))
      ->capture_default_str();
  check->add_option("--sample-sites", check_opts.sample_sites, "sites per pattern when sampling")
      ->capture_default_str();
  check->add_option("--seed", check_opts.seed, "sampling seed");
  check->add_option("--site-budget", check_opts.site_budget, "exhaustive refusal threshold")
      ->capture_default_str();
  check->add_flag("--full-catalog", check_opts.full_catalog, "every auxiliary graph with t<=7, s<=6");
  check->add_option("--report", check_report, "JSON report path (default: stdout)");

  // pack-bipartite
  auto* packb = app.add_subcommand("pack-bipartite", "pack perfect matchings");
  std::string pb_in, pb_out, pb_report;
  double pb_eps = 0.1, pb_p = 0.0;
  packb->add_option("--in", pb_in, "bipartite graph file")->required();
  packb->add_option("--epsilon", pb_eps, "epsilon for the analytic target")->capture_default_str();
  auto* pb_p_opt = packb->add_option("--p", pb_p, "p for the analytic target (default: e/m^2)");
  packb->add_option("--out", pb_out, "matchings file to write");
  packb->add_option("--report", pb_report, "JSON report path (default: stdout)");

  // pack-digraph / pack-3graph
  auto* packd = app.add_subcommand("pack-digraph", "pack directed Hamilton cycles");
  PackFlags dflags;
  dflags.seed = seed_default;
  dflags.attach(packd);

  auto* packh = app.add_subcommand("pack-3graph", "pack tight Hamilton cycles");
  PackFlags hflags;
  hflags.seed = seed_default;
  hflags.attach(packh);
  bool require_div4 = true;
  packh->add_option("--require-div4", require_div4,
                    "reject n not divisible by 4 (false: write an empty report instead)")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "certify a cycles file against a graph");
  std::string v_graph, v_cycles, v_report;
  verify->add_option("--graph", v_graph, "graph file")->required();
  verify->add_option("--cycles", v_cycles, "cycles file")->required();
  verify->add_option("--report", v_report, "JSON report path (default: stdout)");

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "schedules, cover counts and condensed census");
  std::string d_what = "schedule", d_kind = "digraph", d_in, d_report;
  double d_n = 0.0, d_eps = 0.1, d_p = 0.5;
  int d_r = 100;
  std::uint64_t d_seed = seed_default, d_samples = 100'000;
  bool d_exhaustive = false;
  std::size_t d_rows = 64;
  diag->add_option("--what", d_what, "diagnostic")
      ->check(CLI::IsMember({"schedule", "cover", "census"}))
      ->capture_default_str();
  diag->add_option("--kind", d_kind, "schedule kind")
      ->check(CLI::IsMember({"digraph", "hypergraph"}))
      ->capture_default_str();
  diag->add_option("--n", d_n, "vertex count (real for schedules)");
  diag->add_option("--epsilon", d_eps, "epsilon")->capture_default_str();
  diag->add_option("--p", d_p, "p")->capture_default_str();
  diag->add_option("--r", d_r, "copies")->capture_default_str();
  diag->add_option("--in", d_in, "graph file (cover)");
  diag->add_option("--seed", d_seed, "seed");
  diag->add_option("--samples", d_samples, "sampled 4-sets (census)")->capture_default_str();
  diag->add_flag("--exhaustive", d_exhaustive, "exhaustive census");
  diag->add_option("--rows", d_rows, "schedule rows to keep")->capture_default_str();
  diag->add_option("--report", d_report, "JSON report path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (gen->parsed()) {
      if (!(gen_p >= 0.0 && gen_p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
      const RngSeed seed{gen_seed};
      emit(gen_out, out, [&](std::ostream& o) {
        if (gen_kind == "3graph") {
          write_3graph(o, gen_random_3graph(gen_n, gen_p, seed));
        } else if (gen_kind == "digraph") {
          write_digraph(o, gen_random_digraph(gen_n, gen_p, seed));
        } else {
          write_bipartite(o, gen_random_bipartite(gen_n, gen_p, seed));
        }
      });
      return kExitOk;
    }

    if (check->parsed()) {
      check_opts.mode = parse_mode(check_mode);
      const AnyGraph g = read_any_file(check_in);
      UniformityReport report;
      if (const auto* h = std::get_if<Hypergraph3>(&g)) {
        report = check_3graph_uniform(*h, check_eps, check_p, check_opts);
      } else if (const auto* d = std::get_if<Digraph>(&g)) {
        report = check_digraph_uniform(*d, check_eps, check_p, check_opts);
      } else {
        report = check_bipartite_hypotheses(std::get<BipartiteGraph>(g), check_eps, check_p);
      }
      emit_json(check_report, out, to_json(report));
      return report.uniform ? kExitOk : kExitFailed;
    }

    if (packb->parsed()) {
      const BipartiteGraph g = read_graph_file(pb_in, &read_bipartite);
      const double m2 = static_cast<double>(g.m()) * g.m();
      const double p = pb_p_opt->count() ? pb_p : (m2 > 0 ? static_cast<double>(g.num_edges()) / m2 : 0.0);
      const MatchingPacking packing = pack_matchings(g, pb_eps, p);
      if (!pb_out.empty()) emit(pb_out, out, [&](std::ostream& o) { write_matchings(o, g.m(), packing.matchings); });
      emit_json(pb_report, out, matching_report(packing, pb_eps, p));
      return kExitOk;
    }

    if (packd->parsed()) {
      const Digraph d = read_graph_file(dflags.in, &read_digraph);
      const PackOptions options = dflags.options();
      if (d.n() % 2 != 0) throw UsageError("pack-digraph: n=" + std::to_string(d.n()) + " is odd");
      const PackReport report = pack_digraph(d, dflags.epsilon, resolve_p(dflags, density_digraph(d)), options);
      const Certification cert = certify_packing(d, report.result);
      if (!dflags.out.empty()) {
        emit(dflags.out, out, [&](std::ostream& o) {
          write_cycles(o, CycleFile{CycleKind::directed, d.n(), report.result.cycles});
        });
      }
      nlohmann::json j = digraph_pack_report(report, options);
      j["certification"] = certification_report(report.result, cert);
      emit_json(dflags.report, out, j);
      if (!cert.certified) err << "certification failed: " << cert.violations.front() << '\n';
      return cert.certified ? kExitOk : kExitFailed;
    }

    if (packh->parsed()) {
      const Hypergraph3 h = read_graph_file(hflags.in, &read_3graph);
      const PackOptions options = hflags.options();
      if (h.n() % 4 != 0) {
        const std::string why = "n=" + std::to_string(h.n()) + " is not divisible by 4";
        if (require_div4) throw UsageError("pack-3graph: " + why);
        // Documented soft path: an empty, trivially certified result.
        PackingResult empty;
        empty.kind = CycleKind::tight;
        empty.n = h.n();
        empty.total_edges = h.num_edges();
        empty.leftover_triples = h.edges();
        const Certification cert = certify_packing(h, empty);
        nlohmann::json j{{"n", h.n()},
                         {"rounds", 0},
                         {"cycles", 0},
                         {"covered_edges", 0},
                         {"total_edges", h.num_edges()},
                         {"coverage_fraction", 0.0},
                         {"stop_reason", "not-divisible-by-4"},
                         {"options", to_json(options)},
                         {"schedule", nullptr},
                         {"diagnostics", {{"error", why}}}};
        j["certification"] = certification_report(empty, cert);
        if (!hflags.out.empty()) {
          emit(hflags.out, out, [&](std::ostream& o) { write_cycles(o, CycleFile{CycleKind::tight, h.n(), {}}); });
        }
        emit_json(hflags.report, out, j);
        err << "warning: " << why << "; wrote an empty packing\n";
        return kExitOk;
      }
      const HyperPackReport report = pack_3graph(h, hflags.epsilon, resolve_p(hflags, density_3graph(h)), options);
      const Certification cert = certify_packing(h, report.result);
      if (!hflags.out.empty()) {
        emit(hflags.out, out, [&](std::ostream& o) {
          write_cycles(o, CycleFile{CycleKind::tight, h.n(), report.result.cycles});
        });
      }
      nlohmann::json j = hyper_pack_report(report, options);
      j["certification"] = certification_report(report.result, cert);
      emit_json(hflags.report, out, j);
      if (!cert.certified) err << "certification failed: " << cert.violations.front() << '\n';
      return cert.certified ? kExitOk : kExitFailed;
    }

    if (verify->parsed()) {
      const AnyGraph g = read_any_file(v_graph);
      CycleFile cycles;
      {
        std::ifstream in = open_input(v_cycles);
        try {
          cycles = read_cycles(in);
        } catch (const ParseError& e) {
          throw UsageError(v_cycles + ":" + std::to_string(e.line()) + ": " + e.what());
        }
      }
      PackingResult result;
      Certification cert;
      if (const auto* h = std::get_if<Hypergraph3>(&g)) {
        result = result_from_cycles(*h, cycles);
        cert = certify_packing(*h, result);
      } else if (const auto* d = std::get_if<Digraph>(&g)) {
        result = result_from_cycles(*d, cycles);
        cert = certify_packing(*d, result);
      } else {
        throw UsageError("verify: bipartite graphs have no cycle packings");
      }
      emit_json(v_report, out, certification_report(result, cert));
      if (!cert.certified) err << "certification failed: " << cert.violations.front() << '\n';
      return cert.certified ? kExitOk : kExitFailed;
    }

    if (diag->parsed()) {
      nlohmann::json j;
      if (d_what == "schedule") {
        if (!(d_n > 1.0)) throw UsageError("diagnose schedule: --n must exceed 1");
        const Schedule s = d_kind == "digraph" ? digraph_schedule(d_n, d_eps, d_p, d_rows)
                                               : hyper_schedule(d_n, d_eps, d_p, d_rows);
        j = to_json(s);
      } else if (d_what == "cover") {
        if (d_in.empty()) throw UsageError("diagnose cover: --in is required");
        const AnyGraph g = read_any_file(d_in);
        std::vector<std::uint32_t> cover;
        double expected = 0.0;
        if (const auto* h = std::get_if<Hypergraph3>(&g)) {
          cover = hyper_cover_counts(*h, d_r, d_seed);
          expected = d_r * 3.0 * density_3graph(*h) / h->n();
        } else if (const auto* d = std::get_if<Digraph>(&g)) {
          cover = digraph_cover_counts(*d, d_r, d_seed);
          expected = d_r * density_digraph(*d) / 2.0;
        } else {
          throw UsageError("diagnose cover: needs a 3-graph or digraph");
        }
        std::size_t within = 0;
        double sum = 0.0;
        for (std::uint32_t c : cover) {
          sum += c;
          if (expected > 0 && std::abs(c / expected - 1.0) <= 0.3) ++within;
        }
        const double count = static_cast<double>(cover.size());
        j = nlohmann::json{{"r", d_r},
                           {"edges", cover.size()},
                           {"expected_cover", expected},
                           {"mean_cover", count > 0 ? sum / count : 0.0},
                           {"min_cover", cover.empty() ? 0u : *std::min_element(cover.begin(), cover.end())},
                           {"max_cover", cover.empty() ? 0u : *std::max_element(cover.begin(), cover.end())},
                           {"fraction_within_30pct", count > 0 ? within / count : 0.0}};
      } else {
        const int n = static_cast<int>(d_n);
        if (n < 2 || n % 2 != 0) throw UsageError("diagnose census: --n must be even and at least 2");
        if (d_r < 1) throw UsageError("diagnose census: --r must be positive");
        const Rng root(d_seed);
        std::vector<PairPermutation> pairings;
        for (int i = 0; i < d_r; ++i) {
          Rng rng = root.child(static_cast<std::uint64_t>(i));
          pairings.push_back(random_pairing(n, rng));
        }
        j = to_json(condensed_census(pairings, d_exhaustive, d_samples, d_seed));
      }
      emit_json(d_report, out, j);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace tightpack
