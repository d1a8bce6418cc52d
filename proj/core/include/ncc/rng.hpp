#pragma once

#include <cstdint>
#include <vector>

namespace ncc {

/// Finalizing 64-bit mixer (splitmix64). Full avalanche, bijective.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Keyed pseudorandom function from 64-bit inputs to 64-bit outputs.
/// Used wherever the protocols call for shared hash functions; the key
/// carries the shared-randomness material plus a purpose tag.
class Prf {
 public:
  Prf() = default;
  Prf(std::uint64_t k0, std::uint64_t k1) : k0_(k0), k1_(k1) {}

  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t h = mix64(x ^ k0_);
    h = mix64(h + (k1_ ^ 0x2545f4914f6cdd1dULL));
    return h;
  }

  /// Uniform value in [0, bound) via 128-bit multiply (bound > 0).
  std::uint64_t below(std::uint64_t x, std::uint64_t bound) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)(x)) * bound) >> 64);
  }

  std::uint64_t key0() const { return k0_; }
  std::uint64_t key1() const { return k1_; }

 private:
  std::uint64_t k0_ = 0;
  std::uint64_t k1_ = 0;
};

/// Deterministic counter-based random stream. Cheap to construct, no
/// state beyond the counter, safe to copy.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : prf_(mix64(seed), mix64(seed ^ 0xa5a5a5a5a5a5a5a5ULL)) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : prf_(mix64(seed ^ mix64(stream)), mix64(stream + 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next() { return prf_(counter_++); }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform in [lo, hi] inclusive.
  std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (next() & 1) != 0; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  Prf prf_;
  std::uint64_t counter_ = 0;
};

/// Pool of shared random words held identically by every node after
/// distribution. Named hash functions are derived from the pool by
/// folding it with a purpose tag, so one distributed pool serves any
/// number of logically fresh functions.
class SharedRandomness {
 public:
  SharedRandomness() = default;

  void set_pool(std::vector<std::uint64_t> words) {
    pool_ = std::move(words);
    digest_ = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      digest_ = mix64(digest_ ^ pool_[i] ^ (i * 0x165667b19e3779f9ULL));
    }
  }

  bool empty() const { return pool_.empty(); }
  const std::vector<std::uint64_t>& pool() const { return pool_; }

  /// Derive a keyed function for (tag, index). Distinct tags give
  /// independent-behaving functions for all practical purposes.
  Prf derive(std::uint64_t tag, std::uint64_t index = 0) const {
    std::uint64_t k0 = mix64(digest_ ^ mix64(tag));
    std::uint64_t k1 = mix64(k0 + mix64(index ^ (tag << 1)));
    return Prf(k0, k1);
  }

 private:
  std::vector<std::uint64_t> pool_;
  std::uint64_t digest_ = 0;
};

}  // namespace ncc
