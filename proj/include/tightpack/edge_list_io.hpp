#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tightpack/graphs.hpp"

namespace tightpack {

/// Malformed input file; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Text formats. First line is always "format=<kind> n=<int>"; '#' starts a
// comment line; blank lines are ignored.
//   3graph:    "u v w" per line, ascending
//   digraph:   "u v" per line, meaning u -> v
//   bipartite: second header line "m=<int>", then "a b" per line
//   cycles:    "format=tight-cycles" / "format=directed-cycles", one vertex
//              sequence per line
//   matchings: "format=matchings n=<2m>", "m=<int>", then "matching <i>"
//              section headers each followed by m "a b" lines

void write_3graph(std::ostream& out, const Hypergraph3& h);
void write_digraph(std::ostream& out, const Digraph& d);
void write_bipartite(std::ostream& out, const BipartiteGraph& g);

Hypergraph3 read_3graph(std::istream& in);
Digraph read_digraph(std::istream& in);
BipartiteGraph read_bipartite(std::istream& in);

using AnyGraph = std::variant<Hypergraph3, Digraph, BipartiteGraph>;
/// Dispatches on the format= header.
AnyGraph read_any_graph(std::istream& in);

enum class CycleKind { tight, directed };

struct CycleFile {
  CycleKind kind = CycleKind::tight;
  int n = 0;
  std::vector<std::vector<Vertex>> cycles;
};

void write_cycles(std::ostream& out, const CycleFile& file);
CycleFile read_cycles(std::istream& in);

void write_matchings(std::ostream& out, int m, const std::vector<std::vector<BiEdge>>& matchings);

}  // namespace tightpack
