#include "tightpack/verify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

// Deliberately self-contained: the certifier works from std::set copies of the
// input edge list and never calls into the packing code.

namespace tightpack {

namespace {

using RawTriple = std::array<Vertex, 3>;
using RawArc = std::array<Vertex, 2>;

RawTriple raw(Vertex x, Vertex y, Vertex z) {
  RawTriple t{x, y, z};
  std::sort(t.begin(), t.end());
  return t;
}

std::string show(const RawTriple& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}
std::string show(const RawArc& a) { return std::to_string(a[0]) + "->" + std::to_string(a[1]); }

std::string permutation_problem(int n, std::span<const Vertex> order) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    if (v < 0 || v >= n) return "position " + std::to_string(i) + " holds out-of-range vertex " + std::to_string(v);
    if (seen[v]) return "vertex " + std::to_string(v) + " repeated at position " + std::to_string(i);
    seen[v] = 1;
  }
  return {};
}

void check_length(int n, std::span<const Vertex> order) {
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("cycle has " + std::to_string(order.size()) + " vertices, graph has " +
                                std::to_string(n));
  }
}

template <typename Has>
CycleCheck tight_check(int n, std::span<const Vertex> order, const Has& has) {
  if (std::string bad = permutation_problem(n, order); !bad.empty()) return {false, bad};
  std::set<RawTriple> windows;
  const std::size_t len = order.size();
  for (std::size_t i = 0; i < len; ++i) {
    const RawTriple t = raw(order[i], order[(i + 1) % len], order[(i + 2) % len]);
    if (t[0] == t[1] || t[1] == t[2]) return {false, "window at position " + std::to_string(i) + " is degenerate"};
    if (!has(t)) return {false, "missing edge " + show(t) + " at position " + std::to_string(i)};
    if (!windows.insert(t).second) return {false, "edge " + show(t) + " used twice in one cycle"};
  }
  return {};
}

template <typename Has>
CycleCheck directed_check(int n, std::span<const Vertex> order, const Has& has) {
  if (std::string bad = permutation_problem(n, order); !bad.empty()) return {false, bad};
  const std::size_t len = order.size();
  for (std::size_t i = 0; i < len; ++i) {
    const RawArc a{order[i], order[(i + 1) % len]};
    if (!has(a)) return {false, "missing arc " + show(a) + " at position " + std::to_string(i)};
  }
  return {};
}

}  // namespace

CycleCheck validate_tight_cycle(const Hypergraph3& h, std::span<const Vertex> order) {
  check_length(h.n(), order);
  return tight_check(h.n(), order, [&h](const RawTriple& t) { return h.contains(t[0], t[1], t[2]); });
}

CycleCheck validate_directed_cycle(const Digraph& d, std::span<const Vertex> order) {
  check_length(d.n(), order);
  return directed_check(d.n(), order, [&d](const RawArc& a) { return a[0] != a[1] && d.has_arc(a[0], a[1]); });
}

Certification certify_packing(const Hypergraph3& h, const PackingResult& result) {
  Certification cert;
  auto fail = [&cert](const std::string& m) {
    cert.certified = false;
    cert.violations.push_back(m);
  };
  if (result.kind != CycleKind::tight) {
    fail("result holds directed cycles, input is a 3-graph");
    return cert;
  }
  if (result.n != h.n()) fail("result n=" + std::to_string(result.n) + " but graph n=" + std::to_string(h.n()));

  std::set<RawTriple> edges;
  for (const Triple& t : h.edges()) edges.insert({t.a, t.b, t.c});
  auto has = [&edges](const RawTriple& t) { return edges.count(t) > 0; };

  std::map<RawTriple, std::size_t> owner;
  for (std::size_t c = 0; c < result.cycles.size(); ++c) {
    const auto& order = result.cycles[c];
    if (static_cast<int>(order.size()) != h.n()) {
      fail("cycle " + std::to_string(c) + ": length " + std::to_string(order.size()) + ", expected " +
           std::to_string(h.n()));
      continue;
    }
    const CycleCheck check = tight_check(h.n(), order, has);
    if (!check.ok) {
      fail("cycle " + std::to_string(c) + ": " + check.diagnostic);
      continue;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      const RawTriple t = raw(order[i], order[(i + 1) % order.size()], order[(i + 2) % order.size()]);
      auto [it, fresh] = owner.emplace(t, c);
      if (!fresh) {
        fail("cycles " + std::to_string(it->second) + " and " + std::to_string(c) + " share edge " + show(t));
      }
    }
  }

  if (result.total_edges != edges.size()) {
    fail("total_edges=" + std::to_string(result.total_edges) + " but graph has " + std::to_string(edges.size()));
  }
  if (result.covered_edges != owner.size()) {
    fail("covered_edges=" + std::to_string(result.covered_edges) + " but cycles cover " +
         std::to_string(owner.size()));
  }
  std::set<RawTriple> leftover;
  for (const Triple& t : result.leftover_triples) {
    const RawTriple r = raw(t.a, t.b, t.c);
    if (!edges.count(r)) fail("leftover " + show(r) + " is not an edge of the graph");
    if (owner.count(r)) fail("leftover " + show(r) + " is covered by cycle " + std::to_string(owner.at(r)));
    if (!leftover.insert(r).second) fail("leftover " + show(r) + " listed twice");
  }
  if (leftover.size() + owner.size() != edges.size()) {
    fail("leftover (" + std::to_string(leftover.size()) + ") + covered (" + std::to_string(owner.size()) +
         ") != edges (" + std::to_string(edges.size()) + ")");
  }
  return cert;
}

Certification certify_packing(const Digraph& d, const PackingResult& result) {
  Certification cert;
  auto fail = [&cert](const std::string& m) {
    cert.certified = false;
    cert.violations.push_back(m);
  };
  if (result.kind != CycleKind::directed) {
    fail("result holds tight cycles, input is a digraph");
    return cert;
  }
  if (result.n != d.n()) fail("result n=" + std::to_string(result.n) + " but graph n=" + std::to_string(d.n()));

  std::set<RawArc> arcs;
  for (const Arc& a : d.arcs()) arcs.insert({a.from, a.to});
  auto has = [&arcs](const RawArc& a) { return arcs.count(a) > 0; };

  std::map<RawArc, std::size_t> owner;
  for (std::size_t c = 0; c < result.cycles.size(); ++c) {
    const auto& order = result.cycles[c];
    if (static_cast<int>(order.size()) != d.n()) {
      fail("cycle " + std::to_string(c) + ": length " + std::to_string(order.size()) + ", expected " +
           std::to_string(d.n()));
      continue;
    }
    const CycleCheck check = directed_check(d.n(), order, has);
    if (!check.ok) {
      fail("cycle " + std::to_string(c) + ": " + check.diagnostic);
      continue;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      const RawArc a{order[i], order[(i + 1) % order.size()]};
      auto [it, fresh] = owner.emplace(a, c);
      if (!fresh) {
        fail("cycles " + std::to_string(it->second) + " and " + std::to_string(c) + " share arc " + show(a));
      }
    }
  }

  if (result.total_edges != arcs.size()) {
    fail("total_edges=" + std::to_string(result.total_edges) + " but graph has " + std::to_string(arcs.size()));
  }
  if (result.covered_edges != owner.size()) {
    fail("covered_edges=" + std::to_string(result.covered_edges) + " but cycles cover " +
         std::to_string(owner.size()));
  }
  std::set<RawArc> leftover;
  for (const Arc& a : result.leftover_arcs) {
    const RawArc r{a.from, a.to};
    if (!arcs.count(r)) fail("leftover " + show(r) + " is not an arc of the graph");
    if (owner.count(r)) fail("leftover " + show(r) + " is covered by cycle " + std::to_string(owner.at(r)));
    if (!leftover.insert(r).second) fail("leftover " + show(r) + " listed twice");
  }
  if (leftover.size() + owner.size() != arcs.size()) {
    fail("leftover (" + std::to_string(leftover.size()) + ") + covered (" + std::to_string(owner.size()) +
         ") != arcs (" + std::to_string(arcs.size()) + ")");
  }
  return cert;
}

PackingResult result_from_cycles(const Hypergraph3& h, const CycleFile& file) {
  PackingResult r;
  r.kind = file.kind;
  r.n = file.n;
  r.cycles = file.cycles;
  r.total_edges = h.num_edges();
  std::set<RawTriple> used;
  for (const auto& order : file.cycles) {
    const std::size_t len = order.size();
    for (std::size_t i = 0; len >= 3 && i < len; ++i) {
      used.insert(raw(order[i], order[(i + 1) % len], order[(i + 2) % len]));
    }
  }
  for (const Triple& t : h.edges()) {
    if (used.count({t.a, t.b, t.c})) {
      ++r.covered_edges;
    } else {
      r.leftover_triples.push_back(t);
    }
  }
  return r;
}

PackingResult result_from_cycles(const Digraph& d, const CycleFile& file) {
  PackingResult r;
  r.kind = file.kind;
  r.n = file.n;
  r.cycles = file.cycles;
  r.total_edges = d.num_arcs();
  std::set<RawArc> used;
  for (const auto& order : file.cycles) {
    const std::size_t len = order.size();
    for (std::size_t i = 0; len >= 2 && i < len; ++i) used.insert({order[i], order[(i + 1) % len]});
  }
  for (const Arc& a : d.arcs()) {
    if (used.count({a.from, a.to})) {
      ++r.covered_edges;
    } else {
      r.leftover_arcs.push_back(a);
    }
  }
  return r;
}

}  // namespace tightpack
