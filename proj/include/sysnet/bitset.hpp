#pragma once

#include <sysnet/core.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sysnet {

/// Word-level operations behind Bitset. The scalar kernels are the reference
/// implementation and are always available; SIMD variants (AVX2 on x86-64,
/// NEON on aarch64) are registered when both the build and the host CPU
/// support them, and must be bit-for-bit equivalent to scalar.
struct BitsetKernels {
  const char* name;
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
  std::uint64_t (*and_count)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::uint64_t (*and_into)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                            std::size_t n);
};

const BitsetKernels& scalar_kernels();

/// Kernels usable on this machine, scalar first.
std::span<const BitsetKernels* const> available_kernels();

/// The kernels used by Bitset. Defaults to the widest available; the
/// SYSNET_KERNEL environment variable ("scalar", "avx2", "neon") overrides.
const BitsetKernels& active_kernels();

/// Forces a kernel by name. Throws Error if it is not available here.
void select_kernels(const std::string& name);

/// Fixed-size bitmap used for tidsets: bit i set means "present in pair i".
/// Binary operations require equal bit counts.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  void set(std::size_t i);
  bool test(std::size_t i) const;
  std::size_t bit_size() const { return bits_; }
  std::size_t count() const;

  /// Popcount of a & b without materializing the intersection.
  static std::size_t and_count(const Bitset& a, const Bitset& b);

  /// out = a & b (out may alias either operand); returns popcount of out.
  static std::size_t and_assign(const Bitset& a, const Bitset& b, Bitset& out);

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sysnet
