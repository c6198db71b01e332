#include "kolab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kolab/error.hpp"

namespace kolab {

PrimeSieve::PrimeSieve(std::uint64_t initial_limit) { ensure_limit(initial_limit); }

PrimeSieve& PrimeSieve::shared() {
  static PrimeSieve sieve;
  return sieve;
}

void PrimeSieve::ensure_limit(std::uint64_t limit) {
  if (limit <= limit_) return;
  limit = std::max<std::uint64_t>(limit, limit_ * 2);
  composite_.assign(limit + 1, false);
  composite_[0] = true;
  if (limit >= 1) composite_[1] = true;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite_[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
  }
  primes_.clear();
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite_[i]) primes_.push_back(i);
  }
  limit_ = limit;
}

void PrimeSieve::ensure_count(std::uint64_t count) {
  while (primes_.size() < count) ensure_limit(limit_ * 2);
}

bool PrimeSieve::is_prime(std::uint64_t v) {
  std::lock_guard lock(mutex_);
  if (v <= limit_) return !composite_[v];
  if (v < 2) return false;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v))) + 1;
  ensure_limit(root);
  for (std::uint64_t p : primes_) {
    if (p * p > v) break;
    if (v % p == 0) return false;
  }
  return true;
}

std::uint64_t PrimeSieve::nth(std::uint64_t index) {
  if (index == 0 || index > kMaxPrimeIndex) {
    throw Error("prime index " + std::to_string(index) + " outside 1.." +
                std::to_string(kMaxPrimeIndex));
  }
  std::lock_guard lock(mutex_);
  ensure_count(index);
  return primes_[index - 1];
}

std::uint64_t PrimeSieve::index_of(std::uint64_t p) {
  std::lock_guard lock(mutex_);
  ensure_limit(p);
  if (p < 2 || composite_[p]) throw Error(std::to_string(p) + " is not prime");
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
}

std::uint64_t PrimeSieve::largest_prime_factor(std::uint64_t v) {
  if (v <= 1) return 1;
  std::lock_guard lock(mutex_);
  ensure_limit(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v))) + 1);
  std::uint64_t largest = 1;
  for (std::uint64_t p : primes_) {
    if (p * p > v) break;
    while (v % p == 0) {
      largest = p;
      v /= p;
    }
  }
  return v > 1 ? std::max(largest, v) : largest;
}

std::uint64_t nth_prime(std::uint64_t index) { return PrimeSieve::shared().nth(index); }

std::uint64_t prime_index(std::uint64_t p) { return PrimeSieve::shared().index_of(p); }

bool is_prime(std::uint64_t v) { return PrimeSieve::shared().is_prime(v); }

std::optional<SpecificParse> parse_specific(std::uint64_t m) {
  if (m % 2 == 0) return std::nullopt;
  auto& sieve = PrimeSieve::shared();
  const std::uint64_t p = sieve.largest_prime_factor(m);
  if (p == 1) return std::nullopt;
  const std::uint64_t k = m / p;
  if (k >= p) return std::nullopt;
  return SpecificParse{m, p, k, sieve.index_of(p), p - 1};
}

}  // namespace kolab
