#include "bpdd/rng.hpp"

#include <cmath>

namespace bpdd::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> ctr = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    philox_round(ctr, k);
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t stream_id(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                        std::uint64_t d) {
  std::uint64_t h = mix64(a);
  h = mix64(h ^ 0x2545F4914F6CDD1Dull ^ b);
  h = mix64(h ^ 0x9E6C63D0876A9F4Bull ^ c);
  h = mix64(h ^ 0xD1B54A32D192ED03ull ^ d);
  return h;
}

namespace {

// One Philox block -> one Box-Muller pair. Block index b of a stream uses
// counter (lo(b), hi(b), lo(stream), hi(stream)) and key (lo(seed), hi(seed)).
inline void normal_pair(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t block, double& z0, double& z1) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                            static_cast<std::uint32_t>(seed >> 32)};
  const auto words = philox4x32(ctr, key);
  const std::uint64_t u64a =
      (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  const std::uint64_t u64b =
      (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
  // u1 in (0,1] so log(u1) is finite; u2 in [0,1). 53-bit mantissas.
  const double u1 = (static_cast<double>(u64a >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(u64b >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  z0 = radius * std::cos(kTwoPi * u2);
  z1 = radius * std::sin(kTwoPi * u2);
}

}  // namespace

double GaussianStream::at(std::uint64_t i) const {
  double z0, z1;
  normal_pair(seed_, stream_, i >> 1, z0, z1);
  return (i & 1) ? z1 : z0;
}

void GaussianStream::fill(std::uint64_t first, std::uint64_t count,
                          double* out) const {
  std::uint64_t i = first;
  std::uint64_t k = 0;
  double z0, z1;
  if ((i & 1) && count > 0) {
    normal_pair(seed_, stream_, i >> 1, z0, z1);
    out[k++] = z1;
    ++i;
  }
  for (; k + 2 <= count; i += 2) {
    normal_pair(seed_, stream_, i >> 1, z0, z1);
    out[k++] = z0;
    out[k++] = z1;
  }
  if (k < count) {
    normal_pair(seed_, stream_, i >> 1, z0, z1);
    out[k++] = z0;
  }
}

}  // namespace bpdd::rng
