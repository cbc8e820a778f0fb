#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pzeta {

/// Square bit matrix with rows padded to whole 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }

  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }

  std::span<const std::uint64_t> row(std::size_t r) const { return {bits_.data() + r * words_, words_}; }
  std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * words_, words_}; }

  std::size_t row_count(std::size_t r) const {
    std::size_t total = 0;
    for (auto w : row(r)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

/// Calls f(index) for every set bit of a & b, ascending.
template <typename F>
void for_each_common_bit(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, F&& f) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t bits = a[w] & b[w];
    while (bits) {
      const int t = std::countr_zero(bits);
      f(w * 64 + static_cast<std::size_t>(t));
      bits &= bits - 1;
    }
  }
}

template <typename F>
void for_each_bit(std::span<const std::uint64_t> a, F&& f) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t bits = a[w];
    while (bits) {
      const int t = std::countr_zero(bits);
      f(w * 64 + static_cast<std::size_t>(t));
      bits &= bits - 1;
    }
  }
}

}  // namespace pzeta
