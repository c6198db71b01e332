#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

namespace kolab {

inline constexpr std::uint64_t kMaxPrimeIndex = 1'000'000;

// Sieve of Eratosthenes that extends itself on demand. Growth is guarded by
// a mutex; lookups after growth only read.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t initial_limit = 1 << 16);

  bool is_prime(std::uint64_t v);
  // p_1 = 2.
  std::uint64_t nth(std::uint64_t index);
  // Inverse of nth; throws if `p` is not prime.
  std::uint64_t index_of(std::uint64_t p);
  // Largest prime factor, or 1 for v <= 1.
  std::uint64_t largest_prime_factor(std::uint64_t v);

  static PrimeSieve& shared();

 private:
  void ensure_limit(std::uint64_t limit);
  void ensure_count(std::uint64_t count);

  std::mutex mutex_;
  std::uint64_t limit_ = 0;
  std::vector<bool> composite_;
  std::vector<std::uint64_t> primes_;
};

std::uint64_t nth_prime(std::uint64_t index);
std::uint64_t prime_index(std::uint64_t p);
bool is_prime(std::uint64_t v);

// Odd m = p * k with p prime and k < p. The parse is unique: p^2 > m makes p
// the largest prime factor.
struct SpecificParse {
  std::uint64_t m = 0;
  std::uint64_t p = 0;  // large prime divider
  std::uint64_t k = 0;  // cofactor, m = p * k
  std::uint64_t l = 0;  // p = nth_prime(l)
  std::uint64_t n = 0;  // p - 1

  friend bool operator==(const SpecificParse&, const SpecificParse&) = default;
};

std::optional<SpecificParse> parse_specific(std::uint64_t m);

}  // namespace kolab
