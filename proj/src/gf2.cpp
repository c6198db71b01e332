#include "kolab/gf2.hpp"

#include <bit>
#include <string>

#include "kolab/error.hpp"

namespace kolab {

std::uint64_t SeededRng::uniform(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t w = next_word();
    if (w < limit) return w % bound;
  }
}

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitStr::zeros(cols)) {
  if (rows == 0 || cols == 0) throw Error("matrix dimensions must be positive");
  if (rows * cols > kMaxBits) throw Error("matrix has more than 2^20 entries");
}

Gf2Matrix Gf2Matrix::deserialize(const BitStr& bits, std::size_t rows, std::size_t cols) {
  Gf2Matrix m(rows, cols);
  if (bits.size() != rows * cols) {
    throw Error("matrix serialization has " + std::to_string(bits.size()) + " bits, expected " +
                std::to_string(rows * cols));
  }
  for (std::size_t r = 0; r < rows; ++r) m.rows_[r] = bits.substr(r * cols, cols);
  return m;
}

BitStr Gf2Matrix::serialize() const {
  BitStr out;
  out.reserve(rows() * cols_);
  for (const auto& r : rows_) out.append(r);
  return out;
}

Gf2Matrix sample_matrix(std::size_t rows, std::size_t cols, SeededRng& rng) {
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng.next_bit());
  }
  return m;
}

BitStr matvec(const Gf2Matrix& a, const BitStr& y) {
  if (y.size() != a.cols()) {
    throw Error("matvec: vector length " + std::to_string(y.size()) + " != " + std::to_string(a.cols()));
  }
  BitStr out = BitStr::zeros(a.rows());
  const auto yw = y.words();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto rw = a.row(r).words();
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < yw.size(); ++w) acc ^= rw[w] & yw[w];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

CensusResult collision_census(std::size_t n, std::size_t k, const BitStr& b1, const BitStr& b2) {
  if (n == 0 || k == 0) throw Error("census dimensions must be positive");
  if (b1.size() != n || b2.size() != n) throw Error("census vectors must have length n");
  if (b1 == b2) throw Error("census requires b1 != b2");
  if (n * k > 16) throw Error("census is exhaustive only for n*k <= 16");
  const std::size_t bits = n * k;
  CensusResult result{0, std::uint64_t{1} << bits};
  for (std::uint64_t code = 0; code < result.total; ++code) {
    const auto a = Gf2Matrix::deserialize(BitStr::from_uint(code, bits), k, n);
    if (matvec(a, b1) == matvec(a, b2)) ++result.count;
  }
  return result;
}

}  // namespace kolab
