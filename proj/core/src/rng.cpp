#include "wlab/rng.hpp"

namespace wlab {

namespace {

constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept {
  return mix64(mix64(seed) ^ fnv1a(label));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + mix64(index + 0x14057b7ef767814fULL));
}

CounterStream::CounterStream(std::uint64_t seed) noexcept
    : key_(mix64(seed + 0x2545f4914f6cdd1dULL)) {}

}  // namespace wlab
