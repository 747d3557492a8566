#include "fgf/random.hpp"

#include <cmath>
#include <numbers>

namespace fgf {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::array<double, 2> NormalStream::block(std::uint64_t block_index) const noexcept {
  const auto out = philox4x32(
      {static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32),
       static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32)},
      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  const double u1 = to_unit_open((static_cast<std::uint64_t>(out[1]) << 32) | out[0]);
  const double u2 = to_unit_open((static_cast<std::uint64_t>(out[3]) << 32) | out[2]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

double NormalStream::operator()(std::uint64_t index) const noexcept {
  return block(index / 2)[index % 2];
}

double NormalStream::next() noexcept { return (*this)(position_++); }

}  // namespace fgf
