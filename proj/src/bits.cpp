#include "kolab/bits.hpp"

#include <algorithm>

#include "kolab/error.hpp"

namespace kolab {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

void check_length(std::size_t bits) {
  if (bits > kMaxBits) {
    throw Error("bit string length " + std::to_string(bits) + " exceeds 2^20");
  }
}

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitStr BitStr::parse(std::string_view text) {
  check_length(text.size());
  BitStr out;
  out.words_.assign(words_for(text.size()), 0);
  out.size_ = text.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.set(i, true);
    } else if (text[i] != '0') {
      throw Error("invalid bit literal '" + std::string(text) + "'");
    }
  }
  return out;
}

BitStr BitStr::from_uint(std::uint64_t value, std::size_t length) {
  BitStr out;
  if (length == 0) return out;
  if (length > 64) throw Error("from_uint length above 64");
  if (length < 64) value &= (std::uint64_t{1} << length) - 1;
  out.words_.assign(1, value << (64 - length));
  out.size_ = length;
  return out;
}

BitStr BitStr::zeros(std::size_t length) {
  check_length(length);
  BitStr out;
  out.words_.assign(words_for(length), 0);
  out.size_ = length;
  return out;
}

BitStr BitStr::ones(std::size_t length) {
  BitStr out = zeros(length);
  for (std::size_t i = 0; i < length; ++i) out.set(i, true);
  return out;
}

void BitStr::push_back(bool bit) {
  if (size_ == kMaxBits) check_length(size_ + 1);
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  if (bit) set(size_ - 1, true);
}

void BitStr::pop_back() {
  if (size_ == 0) return;
  set(size_ - 1, false);
  --size_;
  if ((size_ & 63) == 0) words_.pop_back();
}

void BitStr::append(const BitStr& other) {
  if (other.size_ == 0) return;
  check_length(size_ + other.size_);
  const std::size_t shift = size_ & 63;
  if (shift == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  } else {
    words_.resize(words_for(size_ + other.size_), 0);
    std::size_t dst = size_ >> 6;
    for (std::uint64_t w : other.words_) {
      words_[dst] |= w >> shift;
      if (dst + 1 < words_.size()) words_[dst + 1] |= w << (64 - shift);
      ++dst;
    }
  }
  size_ += other.size_;
}

void BitStr::append_zeros(std::size_t count) {
  check_length(size_ + count);
  size_ += count;
  words_.resize(words_for(size_), 0);
}

BitStr BitStr::substr(std::size_t pos, std::size_t len) const {
  if (pos > size_ || len > size_ - pos) throw Error("substr out of range");
  BitStr out = zeros(len);
  const std::size_t shift = pos & 63;
  const std::size_t first = pos >> 6;
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    std::uint64_t v = words_[first + w] << shift;
    if (shift != 0 && first + w + 1 < words_.size()) {
      v |= words_[first + w + 1] >> (64 - shift);
    }
    out.words_[w] = v;
  }
  if ((len & 63) != 0) {
    out.words_.back() &= ~std::uint64_t{0} << (64 - (len & 63));
  }
  return out;
}

bool BitStr::ends_with_zeros(std::size_t count) const {
  if (count > size_) return false;
  for (std::size_t i = size_ - count; i < size_; ++i) {
    if ((*this)[i]) return false;
  }
  return true;
}

std::string BitStr::str() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::size_t BitStr::hash() const noexcept {
  std::uint64_t h = mix64(size_ + 0x9e3779b97f4a7c15ULL);
  for (std::uint64_t w : words_) h = mix64(h ^ w);
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const BitStr& a, const BitStr& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(),
                                                b.words_.begin(), b.words_.end());
}

BitStr operator+(BitStr lhs, const BitStr& rhs) {
  lhs.append(rhs);
  return lhs;
}

BitStr encode_nat(std::uint64_t value) {
  if (value == 0) return {};
  const auto width = static_cast<std::size_t>(64 - __builtin_clzll(value));
  return BitStr::from_uint(value, width);
}

std::optional<std::uint64_t> try_decode_nat(const BitStr& bits) noexcept {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (v >> 63) return std::nullopt;
    v = (v << 1) | static_cast<std::uint64_t>(bits[i]);
  }
  return v;
}

std::uint64_t decode_nat(const BitStr& bits) {
  auto v = try_decode_nat(bits);
  if (!v) throw Error("numeric condition does not fit in 64 bits");
  return *v;
}

std::string to_hex(const BitStr& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits.size() + 3) / 4;
  const std::size_t pad = digits * 4 - bits.size();
  std::string out;
  out.reserve(digits + 8);
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t padded = d * 4 + j;
      v <<= 1;
      if (padded >= pad && bits[padded - pad]) v |= 1;
    }
    out.push_back(kDigits[v]);
  }
  out.push_back(':');
  out += std::to_string(bits.size());
  return out;
}

BitStr from_hex(std::string_view digits, std::size_t length) {
  if (digits.size() != (length + 3) / 4) {
    throw Error("hex digit count " + std::to_string(digits.size()) +
                " inconsistent with length " + std::to_string(length));
  }
  const std::size_t pad = digits.size() * 4 - length;
  BitStr out = BitStr::zeros(length);
  for (std::size_t d = 0; d < digits.size(); ++d) {
    const int v = hex_value(digits[d]);
    if (v < 0) throw Error(std::string("malformed hex digit '") + digits[d] + "'");
    for (std::size_t j = 0; j < 4; ++j) {
      const bool bit = (v >> (3 - j)) & 1;
      const std::size_t padded = d * 4 + j;
      if (padded < pad) {
        if (bit) throw Error("hex value has bits beyond length " + std::to_string(length));
      } else if (bit) {
        out.set(padded - pad, true);
      }
    }
  }
  return out;
}

BitStr parse_hex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("expected HEX:LEN, got '" + std::string(text) + "'");
  const std::string_view len_text = text.substr(colon + 1);
  if (len_text.empty() || !std::all_of(len_text.begin(), len_text.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error("malformed length in '" + std::string(text) + "'");
  }
  const std::size_t length = std::stoull(std::string(len_text));
  check_length(length);
  return from_hex(text.substr(0, colon), length);
}

BitStr parse_bits_arg(std::string_view text) {
  if (text.find(':') != std::string_view::npos) return parse_hex(text);
  return BitStr::parse(text);
}

}  // namespace kolab
