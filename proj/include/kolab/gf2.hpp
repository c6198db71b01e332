#pragma once

#include <cstdint>
#include <vector>

#include "kolab/bits.hpp"

namespace kolab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Reproducible bit source. A (seed, stream_index) pair selects an
// independent SplitMix64 sequence:
//   state_0 = mix64(seed ^ mix64(stream_index + gamma))
//   word_i  = mix64(state_0 + (i + 1) * gamma)
// Bits are consumed from each word least significant bit first.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream_index) noexcept
      : seed_(seed), stream_(stream_index), state_(mix64(seed ^ mix64(stream_index + kGoldenGamma))) {}

  std::uint64_t next_word() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  bool next_bit() noexcept {
    if (available_ == 0) {
      buffer_ = next_word();
      available_ = 64;
    }
    const bool bit = buffer_ & 1U;
    buffer_ >>= 1;
    --available_;
    return bit;
  }

  // Uniform in [0, bound) by rejection.
  std::uint64_t uniform(std::uint64_t bound) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
  std::uint64_t buffer_ = 0;
  int available_ = 0;
};

// Substream index used for the i-th matrix sampled at row count k.
constexpr std::uint64_t matrix_stream(std::uint64_t k, std::uint64_t i) noexcept {
  return (k << 32) | (i & 0xffffffffULL);
}

// k x n binary matrix; each row is a BitStr of length n.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols);

  // Row-major: row 0 first, leftmost bit of each row is column 0.
  static Gf2Matrix deserialize(const BitStr& bits, std::size_t rows, std::size_t cols);
  BitStr serialize() const;

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool at(std::size_t r, std::size_t c) const noexcept { return rows_[r][c]; }
  void set(std::size_t r, std::size_t c, bool v) noexcept { rows_[r].set(c, v); }
  const BitStr& row(std::size_t r) const noexcept { return rows_[r]; }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t cols_;
  std::vector<BitStr> rows_;
};

Gf2Matrix sample_matrix(std::size_t rows, std::size_t cols, SeededRng& rng);

// Bit i of the result is the parity of row i AND y.
BitStr matvec(const Gf2Matrix& a, const BitStr& y);

struct CensusResult {
  std::uint64_t count = 0;
  std::uint64_t total = 0;
};

// Counts matrices A among all 2^(n k) with A b1 = A b2. Requires n k <= 16.
CensusResult collision_census(std::size_t n, std::size_t k, const BitStr& b1, const BitStr& b2);

}  // namespace kolab
