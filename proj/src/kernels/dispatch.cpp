#include <sysnet/bitset.hpp>

#include <cstdlib>
#include <string>
#include <vector>

namespace sysnet {

#if SYSNET_HAVE_AVX2_TU
const BitsetKernels& avx2_kernels();  // bitset_avx2.cpp
#endif
#if SYSNET_HAVE_NEON_TU
const BitsetKernels& neon_kernels();  // bitset_neon.cpp
#endif

namespace {

#if SYSNET_HAVE_AVX2_TU
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
#endif

const std::vector<const BitsetKernels*>& kernel_table() {
  static const std::vector<const BitsetKernels*> table = [] {
    std::vector<const BitsetKernels*> t{&scalar_kernels()};
#if SYSNET_HAVE_AVX2_TU
    if (cpu_has_avx2()) t.push_back(&avx2_kernels());
#endif
#if SYSNET_HAVE_NEON_TU
    t.push_back(&neon_kernels());
#endif
    return t;
  }();
  return table;
}

const BitsetKernels* find_kernels(const std::string& name) {
  for (const BitsetKernels* k : kernel_table()) {
    if (name == k->name) return k;
  }
  return nullptr;
}

const BitsetKernels*& active_slot() {
  static const BitsetKernels* active = [] {
    if (const char* env = std::getenv("SYSNET_KERNEL")) {
      if (const BitsetKernels* k = find_kernels(env)) return k;
      throw Error(std::string("SYSNET_KERNEL: no such kernel available: ") + env);
    }
    return kernel_table().back();  // widest available
  }();
  return active;
}

}  // namespace

std::span<const BitsetKernels* const> available_kernels() { return kernel_table(); }

const BitsetKernels& active_kernels() { return *active_slot(); }

void select_kernels(const std::string& name) {
  const BitsetKernels* k = find_kernels(name);
  if (!k) throw Error("no such kernel available: " + name);
  active_slot() = k;
}

void Bitset::set(std::size_t i) {
  if (i >= bits_) throw ValidationError("bitset: index out of range");
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

bool Bitset::test(std::size_t i) const {
  if (i >= bits_) return false;
  return (words_[i / 64] >> (i % 64)) & 1;
}

std::size_t Bitset::count() const {
  return active_kernels().popcount(words_.data(), words_.size());
}

std::size_t Bitset::and_count(const Bitset& a, const Bitset& b) {
  if (a.bits_ != b.bits_) throw ValidationError("bitset: size mismatch");
  return active_kernels().and_count(a.words_.data(), b.words_.data(), a.words_.size());
}

std::size_t Bitset::and_assign(const Bitset& a, const Bitset& b, Bitset& out) {
  if (a.bits_ != b.bits_) throw ValidationError("bitset: size mismatch");
  if (out.bits_ != a.bits_) out = Bitset(a.bits_);
  return active_kernels().and_into(a.words_.data(), b.words_.data(), out.words_.data(),
                                   a.words_.size());
}

}  // namespace sysnet
