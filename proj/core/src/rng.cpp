#include "isacbeam/rng.hpp"

#include <cmath>

namespace isacbeam {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() { return 1.0 - uniform(); }

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
  const double phase = 2.0 * M_PI * uniform();
  cached_normal_ = r * std::sin(phase);
  has_cached_normal_ = true;
  return r * std::cos(phase);
}

std::complex<double> Rng::cnormal() {
  const double r = std::sqrt(-std::log(uniform_pos()));
  const double phase = 2.0 * M_PI * uniform();
  return {r * std::cos(phase), r * std::sin(phase)};
}

Rng Rng::fork(std::uint64_t stream_id) const {
  std::uint64_t sm = seed_ ^ (0x6a09e667f3bcc909ULL + stream_id);
  std::uint64_t derived = splitmix64(sm);
  return Rng(derived ^ splitmix64(sm));
}

}  // namespace isacbeam
