#pragma once

// Reference implementations used only by tests. Everything here works on
// std::string bit literals and shares no code with the library, so it can
// serve as an independent oracle for frozen expected values.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace naive {

using Bits = std::string;

inline Bits binary(std::uint64_t v) {
  Bits out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + (v & 1)));
    v >>= 1;
  }
  return out;
}

inline std::uint64_t value(const Bits& b) {
  std::uint64_t v = 0;
  for (char c : b) v = v * 2 + static_cast<std::uint64_t>(c - '0');
  return v;
}

inline std::vector<Bits> all_strings(std::size_t length) {
  std::vector<Bits> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << length); ++code) {
    Bits s(length, '0');
    for (std::size_t i = 0; i < length; ++i) {
      if ((code >> (length - 1 - i)) & 1) s[i] = '1';
    }
    out.push_back(s);
  }
  return out;
}

inline bool trial_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline std::uint64_t largest_factor(std::uint64_t v) {
  std::uint64_t best = 1;
  for (std::uint64_t d = 2; d <= v; ++d) {
    while (v % d == 0) {
      best = d;
      v /= d;
    }
  }
  return best;
}

inline std::uint64_t prime_number(std::uint64_t index) {
  std::uint64_t count = 0;
  for (std::uint64_t v = 2;; ++v) {
    if (trial_prime(v) && ++count == index) return v;
  }
}

inline std::uint64_t index_of_prime(std::uint64_t p) {
  std::uint64_t count = 0;
  for (std::uint64_t v = 2; v <= p; ++v) count += trial_prime(v);
  return count;
}

// Specific: odd m = p * u, p prime, u < p. Tries every divisor pair.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> specific(std::uint64_t m) {
  if (m % 2 == 0) return std::nullopt;
  for (std::uint64_t p = 2; p <= m; ++p) {
    if (m % p == 0 && trial_prime(p) && m / p < p) return std::make_pair(p, m / p);
  }
  return std::nullopt;
}

struct Limits {
  int steps = 4096;
  std::size_t max_output = 65536;
};

inline std::optional<Bits> run_ops(const Bits& prog, const Bits& cond, Limits lim = {}) {
  Bits buf;
  std::size_t pc = 0;
  for (int steps = 0;; ++steps) {
    if (steps == lim.steps) return std::nullopt;
    if (pc + 3 > prog.size()) return std::nullopt;
    const Bits op = prog.substr(pc, 3);
    pc += 3;
    if (op == "000") return buf;
    if (op == "001") buf += '0';
    if (op == "010") buf += '1';
    if (op == "011") buf += cond;
    if (op == "100") buf += buf;
    if (op == "101") {
      if (pc + 3 > prog.size()) return std::nullopt;
      pc = 3 * value(prog.substr(pc, 3));
    }
    if (op == "110" && !buf.empty()) buf.pop_back();
    if (buf.size() > lim.max_output) return std::nullopt;
  }
}

inline bool halts(const Bits& x) { return run_ops(x, "").has_value(); }

inline std::optional<Bits> vopt(const Bits& d, const Bits& cond) {
  if (d.empty()) return std::nullopt;
  if (d[0] == '1') return d.substr(1);
  if (d.size() == 1) return std::nullopt;
  if (d[1] == '1') {
    const std::uint64_t target = value(cond);
    const Bits w = d.substr(2);
    if (target < w.size()) return std::nullopt;
    return w + Bits(target - w.size(), '0');
  }
  return run_ops(d.substr(2), cond);
}

inline std::optional<Bits> v(Bits d, const Bits& cond) {
  if (d.size() % 2 == 1) d.pop_back();
  return vopt(d, cond);
}

struct Scheme {
  std::size_t D = 4, G = 8, pad = 9, slack = 5;
};

inline Bits matvec(const Bits& a, std::size_t rows, std::size_t cols, const Bits& y) {
  Bits out;
  for (std::size_t r = 0; r < rows; ++r) {
    int acc = 0;
    for (std::size_t c = 0; c < cols; ++c) acc ^= (a[r * cols + c] - '0') & (y[c] - '0');
    out += static_cast<char>('0' + acc);
  }
  return out;
}

inline bool exception_form(const Bits& y, const Scheme& s) {
  if (y.size() < s.pad || y.substr(y.size() - s.pad) != Bits(s.pad, '0')) return false;
  return specific(y.size() - s.pad).has_value();
}

inline std::optional<Bits> u(const Bits& d, const Scheme& s) {
  if (d.size() >= s.D + 1 && d.substr(0, s.D + 1) == Bits(s.D, '1') + "0") return d.substr(s.D + 1);
  if (d.size() >= s.D && d.substr(0, s.D) == Bits(s.D - 1, '1') + "0") {
    const Bits inner = d.substr(s.D);
    auto y = v(inner, "");
    if (!y) return std::nullopt;
    if (exception_form(*y, s) && !(inner.size() + s.G < y->size())) return std::nullopt;
    return y;
  }
  if (!d.empty() && d[0] == '0') {
    const auto sp = specific(d.size() - 1 + s.slack);
    if (!sp) return std::nullopt;
    const auto [p, k] = *sp;
    if (k < s.slack) return std::nullopt;
    const std::size_t n = p - 1;
    const Bits a = d.substr(1, n * k);
    const Bits d2 = d.substr(1 + n * k);
    auto y = v(d2, binary(n));
    if (!y || y->size() != n) return std::nullopt;
    if (!halts(y->substr(0, index_of_prime(p)))) return std::nullopt;
    return a + matvec(a, k, n, *y) + Bits(s.pad, '0');
  }
  return std::nullopt;
}

inline std::optional<Bits> w(const Bits& d) {
  if (d.size() >= 2 && d.substr(0, 2) == "00") return v(d.substr(2), "");
  if (!d.empty() && d[0] == '1') {
    auto y = v(d.substr(1), "");
    if (y && halts(*y)) return y;
  }
  return std::nullopt;
}

// Forward map output -> minimal description length, over all descriptions
// of length <= bound.
template <typename Decoder>
std::map<Bits, int> forward(Decoder decode, int bound) {
  std::map<Bits, int> out;
  for (int len = 0; len <= bound; ++len) {
    for (const auto& d : all_strings(static_cast<std::size_t>(len))) {
      if (auto y = decode(d)) out.emplace(*y, len);
    }
  }
  return out;
}

}  // namespace naive
