#include "kernels.hpp"

namespace tfm::kernels {

ScanResult scan_scalar(std::span<const Subset> adj, Subset begin, Subset end) {
  ScanResult r;
  for (std::uint64_t x = begin; x < end; ++x) {
    const auto s = static_cast<Subset>(x);
    const int size = std::popcount(s);
    if (size <= r.best_size) continue;
    bool independent = true;
    for (Subset rest = s; rest && independent; rest &= rest - 1)
      independent = (adj[std::countr_zero(rest)] & s) == 0;
    if (independent) {
      r.best_size = size;
      r.best = s;
    }
  }
  return r;
}

}  // namespace tfm::kernels
