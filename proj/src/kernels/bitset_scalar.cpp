#include <sysnet/bitset.hpp>

#include <bit>

namespace sysnet {
namespace {

std::uint64_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_count_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t and_into_scalar(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                              std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a[i] & b[i];
    total += std::popcount(out[i]);
  }
  return total;
}

}  // namespace

const BitsetKernels& scalar_kernels() {
  static const BitsetKernels k{"scalar", popcount_scalar, and_count_scalar, and_into_scalar};
  return k;
}

}  // namespace sysnet
