// NEON variants of the bitset kernels (aarch64).

#include <sysnet/bitset.hpp>

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

namespace sysnet {
namespace {

inline std::uint64_t popcount_lane(uint64x2_t v) {
  return vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
}

std::uint64_t popcount_neon(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) total += popcount_lane(vld1q_u64(a + i));
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_count_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    total += popcount_lane(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t and_into_neon(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                            std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t vx = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    vst1q_u64(out + i, vx);
    total += popcount_lane(vx);
  }
  for (; i < n; ++i) {
    out[i] = a[i] & b[i];
    total += std::popcount(out[i]);
  }
  return total;
}

}  // namespace

const BitsetKernels& neon_kernels() {
  static const BitsetKernels k{"neon", popcount_neon, and_count_neon, and_into_neon};
  return k;
}

}  // namespace sysnet

#endif  // __aarch64__
