#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bpdd::rng {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). One call
/// maps a 128-bit counter and a 64-bit key to four independent 32-bit words.
/// Counter-based generation gives random access: any (seed, stream, index)
/// triple addresses its value directly, so parallel generation needs no
/// shared state and golden values survive refactors. The algorithm name and
/// round count are part of this artifact's reproducibility contract.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// SplitMix64 finalizer; used to mix context tuples into stream identifiers.
std::uint64_t mix64(std::uint64_t x);

/// Combines context words into a stream id (order-sensitive).
std::uint64_t stream_id(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                        std::uint64_t d = 0);

/// A deterministic stream of standard normal draws addressed by index.
/// Draw i is a pure function of (seed, stream, i): one Philox block yields
/// two 53-bit uniforms which Box-Muller turns into a pair of normals.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  /// The i-th normal draw of the stream.
  double at(std::uint64_t i) const;

  /// Fills out[0..count) with draws at indices [first, first+count).
  void fill(std::uint64_t first, std::uint64_t count, double* out) const;

  std::vector<double> take(std::uint64_t first, std::uint64_t count) const {
    std::vector<double> v(count);
    fill(first, count, v.data());
    return v;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace bpdd::rng
