#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kolab {

inline constexpr std::size_t kMaxBits = std::size_t{1} << 20;

// Finite binary string. Index 0 is the leftmost bit. Bits are packed
// MSB-first into 64-bit words with the unused tail kept at zero, so two
// strings of equal length compare word-wise in lexicographic order.
class BitStr {
 public:
  BitStr() = default;

  // Parses a literal over the characters '0' and '1'.
  static BitStr parse(std::string_view text);
  // The low `length` bits of `value`, most significant first (length <= 64).
  static BitStr from_uint(std::uint64_t value, std::size_t length);
  static BitStr zeros(std::size_t length);
  static BitStr ones(std::size_t length);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (63 - (i & 63))) & 1U;
  }
  void set(std::size_t i, bool bit) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (63 - (i & 63));
    if (bit) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void push_back(bool bit);
  void pop_back();
  void append(const BitStr& other);
  void append_zeros(std::size_t count);
  void reserve(std::size_t bits) { words_.reserve((bits + 63) / 64); }

  BitStr substr(std::size_t pos, std::size_t len) const;
  BitStr prefix(std::size_t len) const { return substr(0, len); }
  bool ends_with_zeros(std::size_t count) const;

  // Raw words; valid bits are the first size() bits, the tail is zero.
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::string str() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const BitStr&, const BitStr&) = default;
  // Shortlex: by length, then lexicographically.
  friend std::strong_ordering operator<=>(const BitStr& a, const BitStr& b);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

BitStr operator+(BitStr lhs, const BitStr& rhs);

struct BitStrHash {
  std::size_t operator()(const BitStr& b) const noexcept { return b.hash(); }
};

// Minimal big-endian binary form; encode_nat(0) is the empty string.
BitStr encode_nat(std::uint64_t value);
// Inverse of encode_nat. Leading zeros are tolerated; nullopt on overflow.
std::optional<std::uint64_t> try_decode_nat(const BitStr& bits) noexcept;
std::uint64_t decode_nat(const BitStr& bits);

// "HEX:LEN". The bits are read as a big-endian number padded on the left
// to a whole number of hex digits: "1011" -> "b:4", "00000001" -> "01:8".
std::string to_hex(const BitStr& bits);
BitStr from_hex(std::string_view digits, std::size_t length);
// Accepts "HEX:LEN".
BitStr parse_hex(std::string_view text);
// Accepts either a '0'/'1' literal or the "HEX:LEN" form.
BitStr parse_bits_arg(std::string_view text);

}  // namespace kolab
