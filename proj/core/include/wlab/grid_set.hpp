#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace wlab {

/// Subset of [0,1]^2 on an M x M grid of half-open cells
/// [i/M, (i+1)/M) x [j/M, (j+1)/M); i indexes x, j indexes y.
/// Row i is stored as a packed bit row over j.
class GridSet {
 public:
  GridSet() = default;
  explicit GridSet(std::size_t resolution, bool filled = false);

  static GridSet full(std::size_t resolution) { return GridSet(resolution, true); }
  static GridSet empty(std::size_t resolution) { return GridSet(resolution, false); }

  std::size_t resolution() const { return m_; }
  std::size_t words_per_row() const { return words_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    auto& w = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<std::uint64_t> row(std::size_t i) { return {bits_.data() + i * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * words_, words_}; }

  std::size_t count() const;
  /// popcount / M^2
  double measure() const;

  GridSet complement() const;
  /// Grows the set by one cell in the 8-neighbourhood (clipped at the border).
  GridSet dilated() const;
  bool is_subset_of(const GridSet& other) const;

  GridSet& operator&=(const GridSet& other);
  GridSet& operator|=(const GridSet& other);
  GridSet& operator^=(const GridSet& other);
  /// this = this \ other
  GridSet& subtract(const GridSet& other);

  friend GridSet operator&(GridSet lhs, const GridSet& rhs) { return lhs &= rhs; }
  friend GridSet operator|(GridSet lhs, const GridSet& rhs) { return lhs |= rhs; }
  friend GridSet operator^(GridSet lhs, const GridSet& rhs) { return lhs ^= rhs; }
  friend bool operator==(const GridSet&, const GridSet&) = default;

  /// Plain PBM (P1); image rows run from y = 1 (top) to y = 0, columns over x.
  void write_pbm(std::ostream& out) const;

 private:
  void check_same_shape(const GridSet& other) const;
  void clear_padding();

  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace wlab
