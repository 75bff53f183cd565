#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tfm/construction/graph.hpp"

namespace tfm {

class GraphParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// DIMACS-style edge list with a threshold line:
///   c comment
///   p edge <n> <m>
///   e <i> <j>      (m lines, order fixes edge indices)
///   k <K>
/// `k_override` replaces (or supplies) the k line. Errors carry the line number.
Instance parse_graph(std::string_view text, std::optional<int> k_override = std::nullopt);
Instance read_graph_file(const std::string& path, std::optional<int> k_override = std::nullopt);

std::string format_graph(const Instance& inst);

}  // namespace tfm
