#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tailkit {

/// Philox4x32-10 block function (Salmon et al., SC'11).
/// Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream keyed on (seed, trial_index).
///
/// Draw number i of the stream is a pure function of (seed, trial_index, i),
/// so trials can be generated in any order or concurrently and still
/// reproduce the same values. Satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t trial_index) noexcept
      : seed_(seed), trial_(trial_index) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// True with probability p; exact for p in {0, 1}.
  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Jump to draw position `position` of this stream.
  void seek(std::uint64_t position) noexcept {
    block_ = position / 2;
    lane_ = static_cast<unsigned>(position % 2);
    have_block_ = false;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trial_index() const noexcept { return trial_; }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t block_ = 0;
  unsigned lane_ = 0;
  bool have_block_ = false;
  std::array<std::uint64_t, 2> buffer_{};
};

}  // namespace tailkit
