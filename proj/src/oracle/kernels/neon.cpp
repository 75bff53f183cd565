#if defined(__aarch64__)
#include <arm_neon.h>

#include "kernels.hpp"

namespace tfm::kernels {

ScanResult scan_neon(std::span<const Subset> adj, Subset begin, Subset end) {
  ScanResult r;
  const int n = static_cast<int>(adj.size());
  const uint32_t offsets[4] = {0, 1, 2, 3};
  const uint32x4_t step = vld1q_u32(offsets);
  std::uint64_t x = begin;
  for (; x + 4 <= end; x += 4) {
    const uint32x4_t s = vaddq_u32(vdupq_n_u32(static_cast<uint32_t>(x)), step);
    uint32x4_t conflict = vdupq_n_u32(0);
    for (int v = 0; v < n; ++v) {
      const uint32x4_t member = vtstq_u32(s, vdupq_n_u32(1U << v));
      const uint32x4_t hits = vandq_u32(s, vdupq_n_u32(adj[v]));
      conflict = vorrq_u32(conflict, vandq_u32(member, hits));
    }
    uint32_t lanes[4];
    vst1q_u32(lanes, conflict);
    for (int lane = 0; lane < 4; ++lane)
      if (lanes[lane] == 0) take(r, static_cast<Subset>(x + lane));
  }
  if (x < end) {
    const auto tail = scan_scalar(adj, static_cast<Subset>(x), end);
    if (tail.best_size >= 0) take(r, tail.best);
  }
  return r;
}

}  // namespace tfm::kernels
#endif
