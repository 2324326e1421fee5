#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace fptlab {

// Deterministic random stream with named splitting.
//
// All randomness in the lab flows from one root seed. Sub-tasks derive their
// own independent streams by name (or index), so adding a consumer never
// perturbs the draws seen by existing ones, and results are reproducible for
// any thread count when work is keyed by sample index.
//
// Uniform doubles are produced from the top 53 bits of the engine output, not
// through std::uniform_real_distribution, so the exact sequence is pinned down
// by the standard-specified mt19937_64 stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(splitmix(seed)) {}

  RngStream derive(std::string_view name) const {
    std::uint64_t h = fnv_offset_;
    for (int i = 0; i < 8; ++i) h = fnv_step(h, static_cast<unsigned char>(seed_ >> (8 * i)));
    for (unsigned char c : name) h = fnv_step(h, c);
    return RngStream(h);
  }

  RngStream derive(std::uint64_t index) const {
    std::uint64_t h = fnv_offset_;
    for (int i = 0; i < 8; ++i) h = fnv_step(h, static_cast<unsigned char>(seed_ >> (8 * i)));
    for (int i = 0; i < 8; ++i) h = fnv_step(h, static_cast<unsigned char>(index >> (8 * i)));
    return RngStream(h);
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [lo, hi]. Modulo bias is below 2^-53 for the ranges
  // used here and is accepted for the sake of a fixed draw count.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  // Standard normal via Box-Muller (explicit, engine-stream deterministic).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  static constexpr std::uint64_t fnv_offset_ = 1469598103934665603ULL;
  static std::uint64_t fnv_step(std::uint64_t h, unsigned char c) {
    return (h ^ c) * 1099511628211ULL;
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace fptlab
