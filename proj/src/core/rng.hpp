#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace s2s {

// Self-contained splitmix64 generator. Every random decision in the project is
// fed by one of these, seeded through Rng::derive, so runs are reproducible
// independent of the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
  float next_float() { return float(next_u64() >> 40) * 0x1.0p-24f; }

  // uniform in [0, n); modulo bias is irrelevant at our n
  uint64_t next_below(uint64_t n) { return n ? next_u64() % n : 0; }

  // standard normal via Box-Muller (single draw per call)
  double next_normal() {
    double u = next_double();
    double v = next_double();
    if (u < 1e-300) u = 1e-300;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = size_t(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derive an independent stream from a seed, a tag and an index. Used for
  // per-step dropout, per-epoch shuffles, weight init, ...
  static uint64_t derive(uint64_t seed, std::string_view tag, uint64_t index = 0) {
    uint64_t h = 0xcbf29ce484222325ull ^ seed;
    for (char c : tag) {
      h ^= uint64_t(uint8_t(c));
      h *= 0x100000001b3ull;
    }
    h ^= index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    Rng mix(h);
    return mix.next_u64();
  }

 private:
  uint64_t state_;
};

}  // namespace s2s
