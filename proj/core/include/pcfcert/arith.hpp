#pragma once

// Exact integer and rational substrate: GMP-backed Int/Rat, 64-bit
// factorization, deterministic primality and p-adic valuations.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pcfcert {

using Int = mpz_class;
using Rat = mpq_class;

struct PrimePower {
  Int prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes strictly increasing, product of prime^exponent equals the input.
using Factorization = std::vector<PrimePower>;

struct PrimePower64 {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower64&, const PrimePower64&) = default;
};

/// A p-adic valuation: a finite rational, or INFINITY (the valuation of 0).
class ExtVal {
 public:
  ExtVal() = default;  // zero
  ExtVal(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtVal(const Rat& v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static ExtVal infinity() {
    ExtVal v;
    v.infinite_ = true;
    return v;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws DomainError on INFINITY.
  const Rat& value() const;
  bool is_integer() const;

  ExtVal operator+(const ExtVal& rhs) const;
  /// n * v for n >= 1; INFINITY stays INFINITY.
  ExtVal times(long n) const;

  friend bool operator==(const ExtVal& a, const ExtVal& b);
  friend std::strong_ordering operator<=>(const ExtVal& a, const ExtVal& b);

  /// "inf" or the rational in num[/den] form.
  std::string to_string() const;
  /// Inverse of to_string; accepts "inf", integers and "num/den".
  static ExtVal parse(const std::string& text);

 private:
  Rat value_;
  bool infinite_ = false;
};

std::vector<PrimePower64> factor_u64(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);

/// Throws DomainError for n < 2 or inputs wider than 64 bits.
Factorization factor(const Int& n);
/// Deterministic for |n| < 2^64; GMP's BPSW test beyond that.
bool is_prime(const Int& n);
Int recompose(const Factorization& f);

/// Exponent of p in a nonzero integer (p >= 2, not checked for primality).
unsigned long multiplicity(const Int& n, const Int& p);
unsigned multiplicity_u64(std::uint64_t n, std::uint64_t p);

/// Normalized p-adic valuation; throws DomainError when p is not prime.
ExtVal val_p(const Rat& x, const Int& p);

/// Always "num/den", even for integers.
std::string rat_to_string(const Rat& x);
/// Accepts "n", "n/d" (d != 0); throws DomainError otherwise.
Rat parse_rat(const std::string& text);

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

}  // namespace pcfcert
