#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tightpack {

using Vertex = std::int32_t;

/// Unordered triple stored in ascending order.
struct Triple {
  Vertex a = 0, b = 0, c = 0;

  static Triple sorted(Vertex x, Vertex y, Vertex z);
  bool distinct() const { return a < b && b < c; }
  bool contains(Vertex v) const { return v == a || v == b || v == c; }
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Arc {
  Vertex from = 0, to = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Edge of a bipartite graph; `a` indexes part A and `b` indexes part B.
struct BiEdge {
  Vertex a = 0, b = 0;
  friend auto operator<=>(const BiEdge&, const BiEdge&) = default;
};

/// Square matrix of bits stored row by row, with word-level row access so
/// that neighbourhood intersections reduce to AND + popcount.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool test(std::size_t r, std::size_t c) const {
    return (data_[r * words_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c) { data_[r * words_ + (c >> 6)] |= bit(c); }
  void reset(std::size_t r, std::size_t c) { data_[r * words_ + (c >> 6)] &= ~bit(c); }

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {data_.data() + r * words_, words_};
  }
  std::size_t row_count(std::size_t r) const;
  std::vector<Vertex> row_members(std::size_t r) const;

 private:
  static std::uint64_t bit(std::size_t c) { return std::uint64_t{1} << (c & 63); }

  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// popcount of the AND of several equal-length word rows.
std::size_t and_count(std::initializer_list<std::span<const std::uint64_t>> rows);

/// 3-uniform hypergraph on vertices 0..n-1.
///
/// Membership is a bitset indexed by the lexicographic rank of the sorted
/// triple, so `contains` is O(1) and iteration is lexicographic. Immutable
/// once built; use `without` to derive a graph with edges removed.
class Hypergraph3 {
 public:
  explicit Hypergraph3(int n = 0);
  /// Throws std::invalid_argument on out-of-range, repeated-vertex or
  /// duplicate triples.
  Hypergraph3(int n, std::span<const Triple> edges);

  int n() const { return n_; }
  std::size_t num_edges() const { return num_edges_; }

  /// Order-insensitive. Returns false when two vertices coincide.
  bool contains(Vertex u, Vertex v, Vertex w) const;
  bool contains(const Triple& t) const { return contains(t.a, t.b, t.c); }

  /// Dense index of an edge in lexicographic order, 0..num_edges-1.
  /// Precondition: contains(t).
  std::size_t edge_index(const Triple& t) const;

  /// Edges in lexicographic order.
  std::vector<Triple> edges() const;
  template <typename F>
  void for_each_edge(F&& f) const;

  /// Number of edges containing both u and v.
  std::size_t pair_degree(Vertex u, Vertex v) const;
  std::size_t vertex_degree(Vertex v) const;

  Hypergraph3 without(std::span<const Triple> removed) const;

  std::uint64_t rank(const Triple& t) const;  // t must be sorted + distinct

  friend bool operator==(const Hypergraph3& x, const Hypergraph3& y) {
    return x.n_ == y.n_ && x.bits_ == y.bits_;
  }

 private:
  friend class Hypergraph3Builder;
  void check_vertex(Vertex v) const;
  void rebuild_prefix();

  int n_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::uint64_t> row_offset_;  // rank of (a, a+1, a+2)
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> word_prefix_;
};

/// Incremental construction used by generators; duplicate inserts are ignored.
class Hypergraph3Builder {
 public:
  explicit Hypergraph3Builder(int n) : graph_(n) {}
  void insert(const Triple& t);
  Hypergraph3 build() &&;

 private:
  Hypergraph3 graph_;
};

/// Loopless digraph on 0..n-1; antiparallel arcs allowed, duplicates not.
class Digraph {
 public:
  explicit Digraph(int n = 0);
  /// Throws on loops, out-of-range endpoints and duplicate arcs.
  Digraph(int n, std::span<const Arc> arcs);

  int n() const { return n_; }
  std::size_t num_arcs() const { return num_arcs_; }
  bool has_arc(Vertex u, Vertex v) const;

  std::size_t out_degree(Vertex v) const;
  std::size_t in_degree(Vertex v) const;
  std::size_t common_out(Vertex a, Vertex b) const;
  std::size_t common_in(Vertex a, Vertex b) const;
  /// Out-neighbours of a that are also in-neighbours of b.
  std::size_t out_in(Vertex a, Vertex b) const;
  /// #x with a->x, x->b, c->x, x->d.
  std::size_t four_way(Vertex a, Vertex b, Vertex c, Vertex d) const;

  std::vector<Vertex> out_neighbors(Vertex v) const { return out_.row_members(v); }
  std::vector<Vertex> in_neighbors(Vertex v) const { return in_.row_members(v); }

  /// Dense index of an arc in lexicographic order. Precondition: has_arc.
  std::size_t arc_index(Vertex u, Vertex v) const;
  std::vector<Arc> arcs() const;

  Digraph without(std::span<const Arc> removed) const;

  const BitMatrix& out_matrix() const { return out_; }
  const BitMatrix& in_matrix() const { return in_; }

  friend bool operator==(const Digraph& x, const Digraph& y) {
    return x.n_ == y.n_ && x.arcs() == y.arcs();
  }

 private:
  void check_vertex(Vertex v) const;
  void rebuild_index();

  int n_ = 0;
  std::size_t num_arcs_ = 0;
  BitMatrix out_, in_;
  std::vector<std::size_t> row_start_;      // arc index of first arc out of v
  std::vector<std::uint32_t> word_prefix_;  // per row, arcs before word w
};

/// Bipartite graph with parts A = {0..m-1} and B = {0..m-1}.
class BipartiteGraph {
 public:
  explicit BipartiteGraph(int m = 0);
  /// Throws on out-of-range endpoints and duplicate edges.
  BipartiteGraph(int m, std::span<const BiEdge> edges);

  int m() const { return m_; }
  std::size_t num_edges() const { return num_edges_; }
  bool has_edge(Vertex a, Vertex b) const;

  std::size_t degree_a(Vertex a) const;
  std::size_t degree_b(Vertex b) const;
  std::size_t codegree_a(Vertex a1, Vertex a2) const;
  std::size_t codegree_b(Vertex b1, Vertex b2) const;

  std::vector<Vertex> neighbors_a(Vertex a) const { return ab_.row_members(a); }
  std::vector<Vertex> neighbors_b(Vertex b) const { return ba_.row_members(b); }
  std::vector<BiEdge> edges() const;

  friend bool operator==(const BipartiteGraph& x, const BipartiteGraph& y) {
    return x.m_ == y.m_ && x.edges() == y.edges();
  }

 private:
  void check_vertex(Vertex v) const;

  int m_ = 0;
  std::size_t num_edges_ = 0;
  BitMatrix ab_, ba_;
};

template <typename F>
void Hypergraph3::for_each_edge(F&& f) const {
  for (Vertex a = 0; a + 2 < n_; ++a) {
    for (Vertex b = a + 1; b + 1 < n_; ++b) {
      const std::uint64_t base = rank(Triple{a, b, b + 1});
      for (Vertex c = b + 1; c < n_; ++c) {
        const std::uint64_t r = base + static_cast<std::uint64_t>(c - b - 1);
        if ((bits_[r >> 6] >> (r & 63)) & 1U) f(Triple{a, b, c});
      }
    }
  }
}

}  // namespace tightpack
