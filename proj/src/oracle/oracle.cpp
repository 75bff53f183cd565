#include "tfm/oracle/oracle.hpp"

#include <bit>
#include <string>

#include "kernels/kernels.hpp"

namespace tfm {

std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Scalar:
      return "scalar";
    case KernelKind::Avx2:
      return "avx2";
    case KernelKind::Neon:
      return "neon";
  }
  return "?";
}

std::vector<Subset> adjacency_masks(const Graph& g) {
  std::vector<Subset> adj(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& e : g.edges()) {
    adj[e.u - 1] |= Subset{1} << (e.v - 1);
    adj[e.v - 1] |= Subset{1} << (e.u - 1);
  }
  return adj;
}

ScanResult scan_scalar(std::span<const Subset> adj, Subset begin, Subset end) {
  return kernels::scan_scalar(adj, begin, end);
}

std::vector<KernelKind> available_kernels() {
  std::vector<KernelKind> out{KernelKind::Scalar};
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) out.push_back(KernelKind::Avx2);
#endif
#if defined(__aarch64__)
  out.push_back(KernelKind::Neon);
#endif
  return out;
}

KernelKind active_kernel() {
  static const KernelKind k = available_kernels().back();
  return k;
}

ScanResult scan_with(KernelKind kind, std::span<const Subset> adj, Subset begin, Subset end) {
  switch (kind) {
#if defined(__x86_64__) || defined(__i386__)
    case KernelKind::Avx2:
      if (__builtin_cpu_supports("avx2")) return kernels::scan_avx2(adj, begin, end);
      break;
#endif
#if defined(__aarch64__)
    case KernelKind::Neon:
      return kernels::scan_neon(adj, begin, end);
#endif
    case KernelKind::Scalar:
      return kernels::scan_scalar(adj, begin, end);
    default:
      break;
  }
  throw std::invalid_argument("kernel " + std::string(to_string(kind)) + " is not available");
}

OracleVerdict independent_set_exists(const Instance& inst) {
  const int n = inst.n();
  if (n > kOracleMaxVertices)
    throw OracleBudgetError("oracle enumeration is limited to n <= " +
                            std::to_string(kOracleMaxVertices) + " (got n = " +
                            std::to_string(n) + ")");
  const auto adj = adjacency_masks(inst.graph);
  const auto best = scan_with(active_kernel(), adj, 0, Subset{1} << n);
  OracleVerdict v;
  v.max_independent_size = best.best_size;
  v.exists = best.best_size >= inst.k;
  if (v.exists) v.witness = best.best;
  return v;
}

ViolationCount violations(const Instance& inst, Subset subset) {
  ViolationCount c;
  for (const auto& e : inst.graph.edges())
    if ((subset >> (e.u - 1) & 1U) && (subset >> (e.v - 1) & 1U)) ++c.violated_edges;
  c.deficit = std::popcount(subset) < inst.k;
  return c;
}

}  // namespace tfm
