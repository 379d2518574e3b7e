#pragma once

#include <cstdint>
#include <string_view>

namespace wlab {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent sub-seed from a parent seed and a fixed label.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept;

/// Derives an independent sub-seed from a parent seed and an index
/// (chunk number, draw number, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Counter-based random stream.
///
/// The value at position `counter` is a pure function of (key, counter): it is
/// the `counter`-th output of a SplitMix64 generator seeded from the key. No
/// state is advanced, so any prefix or any single position can be regenerated
/// without replaying the stream, and concurrent readers need no coordination.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t seed) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * kGolden);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
};

}  // namespace wlab
