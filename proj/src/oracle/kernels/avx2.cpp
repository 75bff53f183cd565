#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

#include "kernels.hpp"

namespace tfm::kernels {

// Eight consecutive subsets per iteration: a lane conflicts if some member vertex v has
// a neighbour inside the same subset.
__attribute__((target("avx2"))) ScanResult scan_avx2(std::span<const Subset> adj, Subset begin,
                                                      Subset end) {
  ScanResult r;
  const int n = static_cast<int>(adj.size());
  const __m256i step = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i zero = _mm256_setzero_si256();
  std::uint64_t x = begin;
  for (; x + 8 <= end; x += 8) {
    const __m256i s = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(x)), step);
    __m256i conflict = zero;
    for (int v = 0; v < n; ++v) {
      const __m256i member = _mm256_and_si256(s, _mm256_set1_epi32(1 << v));
      const __m256i hits = _mm256_and_si256(s, _mm256_set1_epi32(static_cast<int>(adj[v])));
      const __m256i in = _mm256_cmpeq_epi32(member, zero);
      conflict = _mm256_or_si256(conflict, _mm256_andnot_si256(in, hits));
    }
    const int clear = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(conflict, zero)));
    for (int lane = 0; lane < 8; ++lane)
      if (clear >> lane & 1) take(r, static_cast<Subset>(x + lane));
  }
  if (x < end) {
    const auto tail = scan_scalar(adj, static_cast<Subset>(x), end);
    if (tail.best_size >= 0) take(r, tail.best);
  }
  return r;
}

}  // namespace tfm::kernels
#endif
