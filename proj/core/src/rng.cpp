#include "tailkit/rng.hpp"

namespace tailkit {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

inline void round(std::array<std::uint32_t, 4>& ctr,
                  const std::array<std::uint32_t, 2>& key) noexcept {
  std::uint32_t lo0, hi0, lo1, hi1;
  mulhilo(kPhiloxM4x32A, ctr[0], lo0, hi0);
  mulhilo(kPhiloxM4x32B, ctr[2], lo1, hi1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kPhiloxW32A;
      key[1] += kPhiloxW32B;
    }
    round(counter, key);
  }
  return counter;
}

CounterStream::result_type CounterStream::operator()() noexcept {
  if (!have_block_) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = philox4x32(ctr, key);
    buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    have_block_ = true;
  }
  const result_type value = buffer_[lane_];
  if (++lane_ == 2) {
    lane_ = 0;
    ++block_;
    have_block_ = false;
  }
  return value;
}

}  // namespace tailkit
