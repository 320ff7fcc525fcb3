#pragma once

#include <complex>
#include <cstdint>

namespace isacbeam {

// Deterministic pseudo-random stream (xoshiro256++ core, splitmix64 seeding).
// The standard-library distributions are avoided on purpose: their algorithms
// are implementation-defined, and equal seeds must reproduce byte-identical
// sequences on any toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform();
  // Uniform double in (0, 1].
  double uniform_pos();
  // Standard normal via Box-Muller (second variate cached).
  double normal();
  // Circularly-symmetric complex normal with E|x|^2 = 1.
  std::complex<double> cnormal();

  // Independent stream for parallel work; deterministic in (seed, stream_id).
  Rng fork(std::uint64_t stream_id) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace isacbeam
