#include "wlab/grid_set.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "wlab/errors.hpp"

namespace wlab {

GridSet::GridSet(std::size_t resolution, bool filled)
    : m_(resolution), words_((resolution + 63) / 64),
      bits_(resolution * ((resolution + 63) / 64), filled ? ~std::uint64_t{0} : 0) {
  if (resolution == 0) throw ConfigError("grid resolution must be positive");
  clear_padding();
}

void GridSet::clear_padding() {
  const std::size_t tail = m_ % 64;
  if (tail == 0) return;
  const std::uint64_t mask = (std::uint64_t{1} << tail) - 1;
  for (std::size_t i = 0; i < m_; ++i) bits_[i * words_ + words_ - 1] &= mask;
}

void GridSet::check_same_shape(const GridSet& other) const {
  if (other.m_ != m_) throw ConfigError("grid sets have different resolutions");
}

std::size_t GridSet::count() const {
  std::size_t c = 0;
  for (const auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

double GridSet::measure() const {
  const double cells = static_cast<double>(m_) * static_cast<double>(m_);
  return static_cast<double>(count()) / cells;
}

GridSet GridSet::complement() const {
  GridSet out = *this;
  for (auto& w : out.bits_) w = ~w;
  out.clear_padding();
  return out;
}

GridSet GridSet::dilated() const {
  // Horizontal pass (over j within a row), then vertical pass (over i).
  GridSet horiz(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const auto src = row(i);
    auto dst = horiz.row(i);
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t cur = src[w];
      const std::uint64_t lower = w > 0 ? src[w - 1] : 0;
      const std::uint64_t upper = w + 1 < words_ ? src[w + 1] : 0;
      dst[w] = cur | (cur << 1) | (lower >> 63) | (cur >> 1) | (upper << 63);
    }
  }
  horiz.clear_padding();
  GridSet out(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    auto dst = out.row(i);
    const std::size_t lo = i > 0 ? i - 1 : 0;
    const std::size_t hi = std::min(m_ - 1, i + 1);
    for (std::size_t k = lo; k <= hi; ++k) {
      const auto src = horiz.row(k);
      for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

bool GridSet::is_subset_of(const GridSet& other) const {
  check_same_shape(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] & ~other.bits_[k]) return false;
  }
  return true;
}

GridSet& GridSet::operator&=(const GridSet& other) {
  check_same_shape(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= other.bits_[k];
  return *this;
}

GridSet& GridSet::operator|=(const GridSet& other) {
  check_same_shape(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= other.bits_[k];
  return *this;
}

GridSet& GridSet::operator^=(const GridSet& other) {
  check_same_shape(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] ^= other.bits_[k];
  return *this;
}

GridSet& GridSet::subtract(const GridSet& other) {
  check_same_shape(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= ~other.bits_[k];
  return *this;
}

void GridSet::write_pbm(std::ostream& out) const {
  out << "P1\n" << m_ << ' ' << m_ << '\n';
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t j = m_ - 1 - r;
    for (std::size_t i = 0; i < m_; ++i) {
      out << (test(i, j) ? '1' : '0');
      if (i % 64 == 63 || i + 1 == m_) {
        out << '\n';
      }
    }
  }
}

}  // namespace wlab
