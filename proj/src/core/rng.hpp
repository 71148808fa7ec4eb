#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tfas {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-(trial, lane) seed derivation. Campaigns hand every worker a seed from
// this, so aggregation is identical under any thread count.
inline uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b) {
  uint64_t h = splitmix64(base ^ 0x6a09e667f3bcc908ULL);
  h = splitmix64(h ^ a);
  return splitmix64(h ^ b);
}

// mt19937_64 has a standard-mandated output sequence. bounded() uses
// rejection sampling instead of std::uniform_int_distribution, whose mapping
// is implementation-defined; streams here are reproducible everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // One fair bit, consumed LSB-first from cached 64-bit words.
  bool coin() {
    if (bits_left_ == 0) {
      word_ = eng_();
      bits_left_ = 64;
    }
    bool b = word_ & 1u;
    word_ >>= 1;
    --bits_left_;
    return b;
  }

  // Uniform in [0, n). n must be positive.
  uint64_t bounded(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[bounded(i)]);
    }
  }

  // k distinct values from [0, n), in selection order.
  std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t k) {
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<uint32_t> out;
    out.reserve(k);
    for (uint32_t i = 0; i < k && i < n; ++i) {
      uint64_t j = i + bounded(n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  std::mt19937_64 eng_;
  uint64_t word_ = 0;
  int bits_left_ = 0;
};

}  // namespace tfas
