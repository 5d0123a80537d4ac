#include "tightpack/graphs.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace tightpack {

namespace {

std::string vertex_error(const char* what, Vertex v, int n) {
  return std::string(what) + ": vertex " + std::to_string(v) + " out of range [0, " +
         std::to_string(n) + ")";
}

}  // namespace

Triple Triple::sorted(Vertex x, Vertex y, Vertex z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return Triple{x, y, z};
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

std::size_t BitMatrix::row_count(std::size_t r) const {
  std::size_t total = 0;
  for (std::uint64_t w : row(r)) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<Vertex> BitMatrix::row_members(std::size_t r) const {
  std::vector<Vertex> out;
  auto words = row(r);
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t x = words[w];
    while (x != 0) {
      out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(x))));
      x &= x - 1;
    }
  }
  return out;
}

std::size_t and_count(std::initializer_list<std::span<const std::uint64_t>> rows) {
  if (rows.size() == 0) return 0;
  const std::size_t words = rows.begin()->size();
  std::size_t total = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (const auto& r : rows) acc &= r[w];
    total += static_cast<std::size_t>(std::popcount(acc));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Hypergraph3

Hypergraph3::Hypergraph3(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("Hypergraph3: negative vertex count");
  row_offset_.assign(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t acc = 0;
  for (int a = 0; a < n; ++a) {
    row_offset_[a] = acc;
    const std::uint64_t rest = static_cast<std::uint64_t>(n - 1 - a);
    acc += rest * (rest > 0 ? rest - 1 : 0) / 2;
  }
  row_offset_[n] = acc;
  bits_.assign((acc + 63) / 64, 0);
  word_prefix_.assign(bits_.size() + 1, 0);
}

Hypergraph3::Hypergraph3(int n, std::span<const Triple> edges) : Hypergraph3(n) {
  for (const Triple& raw : edges) {
    const Triple t = Triple::sorted(raw.a, raw.b, raw.c);
    check_vertex(t.a);
    check_vertex(t.c);
    if (!t.distinct()) throw std::invalid_argument("Hypergraph3: triple with repeated vertex");
    const std::uint64_t r = rank(t);
    std::uint64_t& word = bits_[r >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (r & 63);
    if (word & mask) {
      throw std::invalid_argument("Hypergraph3: duplicate triple {" + std::to_string(t.a) + "," +
                                  std::to_string(t.b) + "," + std::to_string(t.c) + "}");
    }
    word |= mask;
    ++num_edges_;
  }
  rebuild_prefix();
}

void Hypergraph3::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) throw std::out_of_range(vertex_error("Hypergraph3", v, n_));
}

void Hypergraph3::rebuild_prefix() {
  word_prefix_.assign(bits_.size() + 1, 0);
  std::uint32_t acc = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    word_prefix_[w] = acc;
    acc += static_cast<std::uint32_t>(std::popcount(bits_[w]));
  }
  word_prefix_[bits_.size()] = acc;
  num_edges_ = acc;
}

std::uint64_t Hypergraph3::rank(const Triple& t) const {
  const std::uint64_t a = static_cast<std::uint64_t>(t.a);
  const std::uint64_t b = static_cast<std::uint64_t>(t.b);
  const std::uint64_t c = static_cast<std::uint64_t>(t.c);
  const std::uint64_t skipped = b - a - 1;
  const std::uint64_t before_b = skipped * static_cast<std::uint64_t>(n_ - 1) - skipped * (a + b) / 2;
  return row_offset_[t.a] + before_b + (c - b - 1);
}

bool Hypergraph3::contains(Vertex u, Vertex v, Vertex w) const {
  check_vertex(u);
  check_vertex(v);
  check_vertex(w);
  const Triple t = Triple::sorted(u, v, w);
  if (!t.distinct()) return false;
  const std::uint64_t r = rank(t);
  return (bits_[r >> 6] >> (r & 63)) & 1U;
}

std::size_t Hypergraph3::edge_index(const Triple& t) const {
  const std::uint64_t r = rank(Triple::sorted(t.a, t.b, t.c));
  const std::uint64_t below = bits_[r >> 6] & ((std::uint64_t{1} << (r & 63)) - 1);
  return word_prefix_[r >> 6] + static_cast<std::size_t>(std::popcount(below));
}

std::vector<Triple> Hypergraph3::edges() const {
  std::vector<Triple> out;
  out.reserve(num_edges_);
  for_each_edge([&](const Triple& t) { out.push_back(t); });
  return out;
}

std::size_t Hypergraph3::pair_degree(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0;
  std::size_t count = 0;
  for (Vertex x = 0; x < n_; ++x) {
    if (x != u && x != v && contains(u, v, x)) ++count;
  }
  return count;
}

std::size_t Hypergraph3::vertex_degree(Vertex v) const {
  check_vertex(v);
  std::size_t count = 0;
  for (Vertex x = 0; x < n_; ++x) {
    if (x == v) continue;
    for (Vertex y = x + 1; y < n_; ++y) {
      if (y != v && contains(v, x, y)) ++count;
    }
  }
  return count;
}

Hypergraph3 Hypergraph3::without(std::span<const Triple> removed) const {
  Hypergraph3 out = *this;
  for (const Triple& raw : removed) {
    const Triple t = Triple::sorted(raw.a, raw.b, raw.c);
    check_vertex(t.a);
    check_vertex(t.c);
    if (!t.distinct()) continue;
    const std::uint64_t r = out.rank(t);
    out.bits_[r >> 6] &= ~(std::uint64_t{1} << (r & 63));
  }
  out.rebuild_prefix();
  return out;
}

void Hypergraph3Builder::insert(const Triple& raw) {
  const Triple t = Triple::sorted(raw.a, raw.b, raw.c);
  graph_.check_vertex(t.a);
  graph_.check_vertex(t.c);
  if (!t.distinct()) throw std::invalid_argument("Hypergraph3Builder: triple with repeated vertex");
  const std::uint64_t r = graph_.rank(t);
  graph_.bits_[r >> 6] |= std::uint64_t{1} << (r & 63);
}

Hypergraph3 Hypergraph3Builder::build() && {
  graph_.rebuild_prefix();
  return std::move(graph_);
}

// ---------------------------------------------------------------------------
// Digraph

Digraph::Digraph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("Digraph: negative vertex count");
  out_ = BitMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  in_ = BitMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  rebuild_index();
}

Digraph::Digraph(int n, std::span<const Arc> arcs) : Digraph(n) {
  for (const Arc& arc : arcs) {
    check_vertex(arc.from);
    check_vertex(arc.to);
    if (arc.from == arc.to) {
      throw std::invalid_argument("Digraph: loop at vertex " + std::to_string(arc.from));
    }
    if (out_.test(arc.from, arc.to)) {
      throw std::invalid_argument("Digraph: duplicate arc " + std::to_string(arc.from) + "->" +
                                  std::to_string(arc.to));
    }
    out_.set(arc.from, arc.to);
    in_.set(arc.to, arc.from);
  }
  rebuild_index();
}

void Digraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) throw std::out_of_range(vertex_error("Digraph", v, n_));
}

void Digraph::rebuild_index() {
  const std::size_t words = out_.words_per_row();
  row_start_.assign(static_cast<std::size_t>(n_) + 1, 0);
  word_prefix_.assign(static_cast<std::size_t>(n_) * words, 0);
  std::size_t total = 0;
  for (int v = 0; v < n_; ++v) {
    row_start_[v] = total;
    auto row = out_.row(v);
    std::uint32_t acc = 0;
    for (std::size_t w = 0; w < words; ++w) {
      word_prefix_[v * words + w] = acc;
      acc += static_cast<std::uint32_t>(std::popcount(row[w]));
    }
    total += acc;
  }
  row_start_[n_] = total;
  num_arcs_ = total;
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  return out_.test(u, v);
}

std::size_t Digraph::out_degree(Vertex v) const {
  check_vertex(v);
  return row_start_[v + 1] - row_start_[v];
}

std::size_t Digraph::in_degree(Vertex v) const {
  check_vertex(v);
  return in_.row_count(v);
}

std::size_t Digraph::common_out(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return and_count({out_.row(a), out_.row(b)});
}

std::size_t Digraph::common_in(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return and_count({in_.row(a), in_.row(b)});
}

std::size_t Digraph::out_in(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return and_count({out_.row(a), in_.row(b)});
}

std::size_t Digraph::four_way(Vertex a, Vertex b, Vertex c, Vertex d) const {
  check_vertex(a);
  check_vertex(b);
  check_vertex(c);
  check_vertex(d);
  return and_count({out_.row(a), in_.row(b), out_.row(c), in_.row(d)});
}

std::size_t Digraph::arc_index(Vertex u, Vertex v) const {
  const std::size_t words = out_.words_per_row();
  const std::size_t w = static_cast<std::size_t>(v) >> 6;
  const std::uint64_t below = out_.row(u)[w] & ((std::uint64_t{1} << (v & 63)) - 1);
  return row_start_[u] + word_prefix_[u * words + w] + static_cast<std::size_t>(std::popcount(below));
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(num_arcs_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : out_.row_members(u)) out.push_back(Arc{u, v});
  }
  return out;
}

Digraph Digraph::without(std::span<const Arc> removed) const {
  Digraph out = *this;
  for (const Arc& arc : removed) {
    check_vertex(arc.from);
    check_vertex(arc.to);
    out.out_.reset(arc.from, arc.to);
    out.in_.reset(arc.to, arc.from);
  }
  out.rebuild_index();
  return out;
}

// ---------------------------------------------------------------------------
// BipartiteGraph

BipartiteGraph::BipartiteGraph(int m) : m_(m) {
  if (m < 0) throw std::invalid_argument("BipartiteGraph: negative part size");
  ab_ = BitMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  ba_ = BitMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
}

BipartiteGraph::BipartiteGraph(int m, std::span<const BiEdge> edges) : BipartiteGraph(m) {
  for (const BiEdge& e : edges) {
    check_vertex(e.a);
    check_vertex(e.b);
    if (ab_.test(e.a, e.b)) {
      throw std::invalid_argument("BipartiteGraph: duplicate edge " + std::to_string(e.a) + "-" +
                                  std::to_string(e.b));
    }
    ab_.set(e.a, e.b);
    ba_.set(e.b, e.a);
    ++num_edges_;
  }
}

void BipartiteGraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= m_) throw std::out_of_range(vertex_error("BipartiteGraph", v, m_));
}

bool BipartiteGraph::has_edge(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return ab_.test(a, b);
}

std::size_t BipartiteGraph::degree_a(Vertex a) const {
  check_vertex(a);
  return ab_.row_count(a);
}

std::size_t BipartiteGraph::degree_b(Vertex b) const {
  check_vertex(b);
  return ba_.row_count(b);
}

std::size_t BipartiteGraph::codegree_a(Vertex a1, Vertex a2) const {
  check_vertex(a1);
  check_vertex(a2);
  return and_count({ab_.row(a1), ab_.row(a2)});
}

std::size_t BipartiteGraph::codegree_b(Vertex b1, Vertex b2) const {
  check_vertex(b1);
  check_vertex(b2);
  return and_count({ba_.row(b1), ba_.row(b2)});
}

std::vector<BiEdge> BipartiteGraph::edges() const {
  std::vector<BiEdge> out;
  out.reserve(num_edges_);
  for (Vertex a = 0; a < m_; ++a) {
    for (Vertex b : ab_.row_members(a)) out.push_back(BiEdge{a, b});
  }
  return out;
}

}  // namespace tightpack
