// AVX2 variants of the bitset kernels. This translation unit is compiled with
// -mavx2; callers must check cpu support before routing here (dispatch.cpp).

#include <sysnet/bitset.hpp>

#if defined(__AVX2__)

#include <immintrin.h>

#include <bit>

namespace sysnet {
namespace {

inline std::uint64_t popcount4(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return static_cast<std::uint64_t>(std::popcount(lanes[0])) + std::popcount(lanes[1]) +
         std::popcount(lanes[2]) + std::popcount(lanes[3]);
}

std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    total += popcount4(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)));
  }
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_count_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    total += popcount4(_mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t and_into_avx2(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                            std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i vx = _mm256_and_si256(va, vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), vx);
    total += popcount4(vx);
  }
  for (; i < n; ++i) {
    out[i] = a[i] & b[i];
    total += std::popcount(out[i]);
  }
  return total;
}

}  // namespace

const BitsetKernels& avx2_kernels() {
  static const BitsetKernels k{"avx2", popcount_avx2, and_count_avx2, and_into_avx2};
  return k;
}

}  // namespace sysnet

#endif  // __AVX2__
