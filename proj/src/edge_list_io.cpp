#include "tightpack/edge_list_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace tightpack {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      if (line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }
  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

long parse_int(const std::string& token, int line) {
  long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "expected integer, got '" + token + "'");
  return value;
}

std::map<std::string, std::string> parse_fields(const std::string& text, int line) {
  std::map<std::string, std::string> fields;
  std::istringstream tokens(text);
  std::string token;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(line, "expected key=value, got '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return fields;
}

struct Header {
  std::string format;
  int n = 0;
};

Header read_header(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number() + 1, "missing format header");
  auto fields = parse_fields(line, reader.number());
  if (!fields.count("format") || !fields.count("n")) {
    throw ParseError(reader.number(), "header must be 'format=<kind> n=<int>'");
  }
  const long n = parse_int(fields["n"], reader.number());
  if (n < 0) throw ParseError(reader.number(), "negative vertex count");
  return Header{fields["format"], static_cast<int>(n)};
}

void expect_format(const Header& header, const std::string& want, int line) {
  if (header.format != want) {
    throw ParseError(line, "expected format=" + want + ", got format=" + header.format);
  }
}

std::vector<long> parse_row(const std::string& line, std::size_t arity, int number) {
  std::istringstream tokens(line);
  std::vector<long> values;
  std::string token;
  while (tokens >> token) values.push_back(parse_int(token, number));
  if (values.size() != arity) {
    throw ParseError(number, "expected " + std::to_string(arity) + " integers, got " +
                                 std::to_string(values.size()));
  }
  return values;
}

// Reports the line of the second occurrence of any repeated item.
template <typename T>
void reject_duplicates(const std::vector<T>& items, const std::vector<int>& lines, const char* what) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return items[x] < items[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (items[order[i]] == items[order[i - 1]]) {
      throw ParseError(std::max(lines[order[i]], lines[order[i - 1]]), std::string("duplicate ") + what);
    }
  }
}

void check_range(long v, int n, int line) {
  if (v < 0 || v >= n) {
    throw ParseError(line, "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
  }
}

Hypergraph3 read_3graph_body(LineReader& reader, const Header& header) {
  std::vector<Triple> triples;
  std::vector<int> lines;
  std::string line;
  while (reader.next(line)) {
    auto row = parse_row(line, 3, reader.number());
    for (long v : row) check_range(v, header.n, reader.number());
    if (!(row[0] < row[1] && row[1] < row[2])) {
      throw ParseError(reader.number(), "triple must be strictly ascending");
    }
    triples.push_back(Triple{static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]),
                             static_cast<Vertex>(row[2])});
    lines.push_back(reader.number());
  }
  reject_duplicates(triples, lines, "triple");
  try {
    return Hypergraph3(header.n, triples);
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.number(), e.what());
  }
}

Digraph read_digraph_body(LineReader& reader, const Header& header) {
  std::vector<Arc> arcs;
  std::vector<int> lines;
  std::string line;
  while (reader.next(line)) {
    auto row = parse_row(line, 2, reader.number());
    for (long v : row) check_range(v, header.n, reader.number());
    if (row[0] == row[1]) throw ParseError(reader.number(), "loop arcs are not allowed");
    arcs.push_back(Arc{static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1])});
    lines.push_back(reader.number());
  }
  reject_duplicates(arcs, lines, "arc");
  try {
    return Digraph(header.n, arcs);
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.number(), e.what());
  }
}

int read_m_line(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number() + 1, "missing 'm=<int>' header");
  auto fields = parse_fields(line, reader.number());
  if (fields.size() != 1 || !fields.count("m")) throw ParseError(reader.number(), "expected 'm=<int>'");
  const long m = parse_int(fields["m"], reader.number());
  if (m < 0) throw ParseError(reader.number(), "negative part size");
  return static_cast<int>(m);
}

BipartiteGraph read_bipartite_body(LineReader& reader, const Header& header) {
  const int m = read_m_line(reader);
  if (header.n != 2 * m) {
    throw ParseError(reader.number(), "header n=" + std::to_string(header.n) + " does not equal 2m");
  }
  std::vector<BiEdge> edges;
  std::vector<int> lines;
  std::string line;
  while (reader.next(line)) {
    auto row = parse_row(line, 2, reader.number());
    for (long v : row) check_range(v, m, reader.number());
    edges.push_back(BiEdge{static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1])});
    lines.push_back(reader.number());
  }
  reject_duplicates(edges, lines, "edge");
  try {
    return BipartiteGraph(m, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.number(), e.what());
  }
}

}  // namespace

void write_3graph(std::ostream& out, const Hypergraph3& h) {
  out << "format=3graph n=" << h.n() << '\n';
  h.for_each_edge([&](const Triple& t) { out << t.a << ' ' << t.b << ' ' << t.c << '\n'; });
}

void write_digraph(std::ostream& out, const Digraph& d) {
  out << "format=digraph n=" << d.n() << '\n';
  for (const Arc& a : d.arcs()) out << a.from << ' ' << a.to << '\n';
}

void write_bipartite(std::ostream& out, const BipartiteGraph& g) {
  out << "format=bipartite n=" << 2 * g.m() << '\n' << "m=" << g.m() << '\n';
  for (const BiEdge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
}

Hypergraph3 read_3graph(std::istream& in) {
  LineReader reader(in);
  Header header = read_header(reader);
  expect_format(header, "3graph", reader.number());
  return read_3graph_body(reader, header);
}

Digraph read_digraph(std::istream& in) {
  LineReader reader(in);
  Header header = read_header(reader);
  expect_format(header, "digraph", reader.number());
  return read_digraph_body(reader, header);
}

BipartiteGraph read_bipartite(std::istream& in) {
  LineReader reader(in);
  Header header = read_header(reader);
  expect_format(header, "bipartite", reader.number());
  return read_bipartite_body(reader, header);
}

AnyGraph read_any_graph(std::istream& in) {
  LineReader reader(in);
  Header header = read_header(reader);
  if (header.format == "3graph") return read_3graph_body(reader, header);
  if (header.format == "digraph") return read_digraph_body(reader, header);
  if (header.format == "bipartite") return read_bipartite_body(reader, header);
  throw ParseError(reader.number(), "unknown graph format '" + header.format + "'");
}

void write_cycles(std::ostream& out, const CycleFile& file) {
  out << "format=" << (file.kind == CycleKind::tight ? "tight-cycles" : "directed-cycles")
      << " n=" << file.n << '\n';
  for (const auto& cycle : file.cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) out << (i ? " " : "") << cycle[i];
    out << '\n';
  }
}

CycleFile read_cycles(std::istream& in) {
  LineReader reader(in);
  Header header = read_header(reader);
  CycleFile file;
  if (header.format == "tight-cycles") {
    file.kind = CycleKind::tight;
  } else if (header.format == "directed-cycles") {
    file.kind = CycleKind::directed;
  } else {
    throw ParseError(reader.number(), "expected a cycles file, got format=" + header.format);
  }
  file.n = header.n;
  std::string line;
  while (reader.next(line)) {
    std::istringstream tokens(line);
    std::vector<Vertex> cycle;
    std::string token;
    while (tokens >> token) cycle.push_back(static_cast<Vertex>(parse_int(token, reader.number())));
    file.cycles.push_back(std::move(cycle));
  }
  return file;
}

void write_matchings(std::ostream& out, int m, const std::vector<std::vector<BiEdge>>& matchings) {
  out << "format=matchings n=" << 2 * m << '\n' << "m=" << m << '\n';
  for (std::size_t i = 0; i < matchings.size(); ++i) {
    out << "matching " << (i + 1) << '\n';
    for (const BiEdge& e : matchings[i]) out << e.a << ' ' << e.b << '\n';
  }
}

}  // namespace tightpack
