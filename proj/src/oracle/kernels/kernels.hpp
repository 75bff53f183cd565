#pragma once

#include <bit>
#include <span>

#include "tfm/oracle/oracle.hpp"

namespace tfm::kernels {

ScanResult scan_scalar(std::span<const Subset> adj, Subset begin, Subset end);
#if defined(__x86_64__) || defined(__i386__)
ScanResult scan_avx2(std::span<const Subset> adj, Subset begin, Subset end);
#endif
#if defined(__aarch64__)
ScanResult scan_neon(std::span<const Subset> adj, Subset begin, Subset end);
#endif

/// Folds lane results in ascending subset order so ties keep the smallest bitmask.
inline void take(ScanResult& r, Subset s) {
  const int size = std::popcount(s);
  if (size > r.best_size || (size == r.best_size && s < r.best)) {
    r.best_size = size;
    r.best = s;
  }
}

}  // namespace tfm::kernels
