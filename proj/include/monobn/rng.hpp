#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace monobn {

// splitmix64 finalizer. All randomized procedures in this library draw from
// splitmix64 streams instead of <random> distributions, whose output is
// implementation-defined; results are bit-identical across toolchains.
inline uint64_t splitmix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed derivation chain: mixes a master seed with a stream tag and two
// counters. Used to give every (training size, replication) pair its own
// independent stream; the scheme is echoed in experiment manifests.
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t a = 0,
                            uint64_t b = 0) {
  uint64_t h = splitmix64(master ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
  h = splitmix64(h ^ (0xC2B2AE3D27D4EB4Full * (a + 1)));
  h = splitmix64(h ^ (0x165667B19E3779F9ull * (b + 1)));
  return h;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    const uint64_t bound = n == 0 ? 0 : (~uint64_t{0}) - (~uint64_t{0}) % n;
    uint64_t x;
    do {
      x = next();
    } while (x >= bound);
    return x % n;
  }

  // 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // First m entries of a Fisher-Yates shuffle of 0..n-1, in draw order.
  std::vector<size_t> sample_indices(size_t n, size_t m) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    for (size_t i = 0; i < m && i + 1 < n; ++i) {
      size_t j = i + static_cast<size_t>(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(m < n ? m : n);
    return idx;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace monobn
