#pragma once

#include <array>
#include <cstdint>

namespace fgf {

/// Philox4x32-10 block cipher (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based stream of standard normals.
///
/// Variate k of stream (seed, stream_id) depends only on (seed, stream_id, k):
/// block j = k / 2 encrypts counter (stream_id lo, stream_id hi, j lo, j hi)
/// under key (seed lo, seed hi). The two 64-bit halves of the output become
/// uniforms u = (bits >> 11 + 1/2) * 2^-53 in (0, 1), and Box-Muller yields
/// variate 2j = r cos(2 pi u2), variate 2j+1 = r sin(2 pi u2) with
/// r = sqrt(-2 ln u1).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  double operator()(std::uint64_t index) const noexcept;

  /// Sequential draw; equivalent to operator()(0), operator()(1), ...
  double next() noexcept;

  /// Writes variates 0..count-1 into out.
  template <typename Vector>
  void fill(Vector& out) const {
    const auto count = static_cast<std::uint64_t>(out.size());
    for (std::uint64_t j = 0; j < count; j += 2) {
      const auto pair = block(j / 2);
      out[static_cast<decltype(out.size())>(j)] = pair[0];
      if (j + 1 < count) out[static_cast<decltype(out.size())>(j + 1)] = pair[1];
    }
  }

  std::array<double, 2> block(std::uint64_t block_index) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
};

}  // namespace fgf
