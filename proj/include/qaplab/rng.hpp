#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qaplab {

// splitmix64 finalizer, used to derive independent substreams from a master
// seed plus integer tags. All randomness in the library flows through this,
// so runs are reproducible across platforms (mt19937_64 output is pinned by
// the standard; we avoid std::uniform_* distributions, which are not).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b) ^ mix64(c));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // uniform double in [0, 1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound), bias-free
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t all = ~std::uint64_t{0};
    const std::uint64_t limit = all - all % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  int below_int(int bound) {
    return static_cast<int>(below(static_cast<std::uint64_t>(bound)));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qaplab
