#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tfm/construction/graph.hpp"

namespace tfm {

inline constexpr int kOracleMaxVertices = 24;

class OracleBudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleVerdict {
  bool exists = false;
  std::optional<Subset> witness;  // set iff exists
  int max_independent_size = 0;
};

/// Exhaustive decision over all 2^n subsets. The witness is the maximum independent set
/// with the smallest bitmask. Throws OracleBudgetError for n > kOracleMaxVertices.
OracleVerdict independent_set_exists(const Instance& inst);

struct ViolationCount {
  int violated_edges = 0;
  bool deficit = false;  // |subset| < k
  friend bool operator==(const ViolationCount&, const ViolationCount&) = default;
};

ViolationCount violations(const Instance& inst, Subset subset);

/// adjacency[v] has bit u set iff {u+1, v+1} is an edge (0-based bits).
std::vector<Subset> adjacency_masks(const Graph& g);

// Enumeration kernels. Each scans subsets in [begin, end) and reports the largest
// independent one, ties going to the smallest bitmask.
enum class KernelKind : std::uint8_t { Scalar, Avx2, Neon };
std::string_view to_string(KernelKind k);

struct ScanResult {
  int best_size = -1;
  Subset best = 0;
};

ScanResult scan_scalar(std::span<const Subset> adj, Subset begin, Subset end);
ScanResult scan_with(KernelKind kind, std::span<const Subset> adj, Subset begin, Subset end);

/// Kernels compiled in and supported by this CPU; Scalar is always first.
std::vector<KernelKind> available_kernels();
/// The kernel independent_set_exists uses: the widest available one.
KernelKind active_kernel();

}  // namespace tfm
