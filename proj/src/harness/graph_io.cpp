#include "tfm/harness/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace tfm {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw GraphParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Instance parse_graph(std::string_view text, std::optional<int> k_override) {
  std::istringstream in{std::string(text)};
  std::optional<int> n;
  int declared_edges = 0;
  std::optional<int> k;
  std::vector<Edge> edges;
  int ln = 0;
  for (std::string line; std::getline(in, line);) {
    ++ln;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind == "c") continue;
    std::vector<std::string> args;
    for (std::string a; fields >> a;) args.push_back(a);
    auto integer = [&](const std::string& s) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(s, &used);
      } catch (const std::exception&) {
        fail(ln, "expected an integer, got '" + s + "'");
      }
      if (used != s.size()) fail(ln, "expected an integer, got '" + s + "'");
      return v;
    };
    if (kind == "p") {
      if (n) fail(ln, "duplicate 'p' header");
      if (args.size() != 3 || args[0] != "edge") fail(ln, "header must be 'p edge <n> <m>'");
      n = integer(args[1]);
      declared_edges = integer(args[2]);
      if (*n < 2) fail(ln, "need at least 2 vertices");
      if (declared_edges < 0) fail(ln, "negative edge count");
    } else if (kind == "e") {
      if (args.size() != 2) fail(ln, "edge line must be 'e <i> <j>'");
      const int i = integer(args[0]);
      const int j = integer(args[1]);
      if (i == j) fail(ln, "self-loop on vertex " + std::to_string(i));
      if (!n) fail(ln, "edge before the 'p edge' header");
      if (i < 1 || j < 1 || i > *n || j > *n) fail(ln, "vertex out of range 1.." + std::to_string(*n));
      const Edge e{std::min(i, j), std::max(i, j)};
      for (const auto& f : edges)
        if (f == e)
          fail(ln, "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
      edges.push_back(e);
    } else if (kind == "k") {
      if (k) fail(ln, "duplicate 'k' line");
      if (args.size() != 1) fail(ln, "threshold line must be 'k <K>'");
      k = integer(args[0]);
    } else {
      fail(ln, "unknown line type '" + kind + "'");
    }
  }
  if (!n) throw GraphParseError("missing 'p edge <n> <m>' header");
  if (static_cast<int>(edges.size()) != declared_edges)
    throw GraphParseError("header declares " + std::to_string(declared_edges) + " edges, found " +
                          std::to_string(edges.size()));
  if (k_override) k = k_override;
  if (!k) throw GraphParseError("missing 'k <K>' line (or pass k explicitly)");
  if (*k < 1 || *k >= *n)
    throw GraphParseError("k = " + std::to_string(*k) + " out of range [1, " +
                          std::to_string(*n - 1) + "]");
  return Instance(Graph(*n, std::move(edges)), *k);
}

Instance read_graph_file(const std::string& path, std::optional<int> k_override) {
  std::ifstream in(path);
  if (!in) throw GraphParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), k_override);
}

std::string format_graph(const Instance& inst) {
  std::ostringstream out;
  out << "p edge " << inst.n() << " " << inst.s() << "\n";
  for (const auto& e : inst.graph.edges()) out << "e " << e.u << " " << e.v << "\n";
  out << "k " << inst.k << "\n";
  return out.str();
}

}  // namespace tfm
