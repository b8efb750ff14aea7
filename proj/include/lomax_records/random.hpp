#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <limits>

namespace lomax_records {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Stateless: maps a 128-bit counter and a 64-bit key to
/// 128 random bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  static constexpr int kRounds = 10;

  static constexpr Counter round(const Counter& c, const Key& k) noexcept {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
  }

  static constexpr Counter block(Counter c, Key k) noexcept {
    for (int r = 0; r < kRounds; ++r) {
      if (r > 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      c = round(c, k);
    }
    return c;
  }
};

/// A random stream addressed by (master seed, stream index). Two streams
/// with the same address produce the same draws no matter which thread
/// consumes them, which is what makes replication results independent of
/// the worker count.
///
/// Satisfies std::uniform_random_bit_generator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
      : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
        stream_{stream_index} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (buffered_ == 0) refill();
    const std::size_t at = 4 - buffered_;
    buffered_ -= 2;
    return (std::uint64_t{block_[at]} << 32) | block_[at + 1];
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  std::uint64_t stream_index() const noexcept { return stream_; }
  std::uint64_t blocks_consumed() const noexcept { return counter_; }

 private:
  void refill() noexcept {
    const Philox4x32::Counter c{static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    block_ = Philox4x32::block(c, key_);
    ++counter_;
    buffered_ = 4;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Counter block_{};
  std::size_t buffered_ = 0;
};

/// Anything that hands out uniforms on [0, 1) and (0, 1).
template <class R>
concept UniformSource = requires(R& r) {
  { r.uniform01() } -> std::convertible_to<double>;
  { r.uniform_open() } -> std::convertible_to<double>;
};

static_assert(std::uniform_random_bit_generator<RandomStream>);
static_assert(UniformSource<RandomStream>);

}  // namespace lomax_records
