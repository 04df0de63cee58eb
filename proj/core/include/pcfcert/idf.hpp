#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcfcert/arith.hpp"

namespace pcfcert {

/// (p, r, e): p > k prime, p^e exactly divides d - r, and r does not divide e.
struct IdfWitness {
  std::uint64_t p = 0;
  int r = 0;
  unsigned e = 0;

  friend bool operator==(const IdfWitness&, const IdfWitness&) = default;
};

enum class IdfRejection {
  kNone,
  kNotPrime,
  kTooSmall,    // p <= k
  kNoDivisor,   // p divides none of d, d-1, ..., d-k
  kRIsOne,      // p | d-1; 1 divides every exponent
  kRDividesE,
};

struct IdfCheck {
  std::optional<IdfWitness> witness;
  IdfRejection reason = IdfRejection::kNone;
  /// Filled in when p divides some d - r.
  int r = -1;
  unsigned e = 0;

  std::string message() const;
};

/// Throws DomainError unless d >= 3 and 1 <= k <= ceil((d-2)/2).
void check_idf_range(std::uint64_t d, int k);

IdfCheck is_idf_prime(std::uint64_t p, std::uint64_t d, int k);

/// Smallest (r, p) over r = 0, 2, 3, ..., k and primes p > k dividing d - r.
std::optional<IdfWitness> find_idf_prime(std::uint64_t d, int k);

struct ScanRow {
  std::uint64_t d = 0;
  int k = 0;
  std::optional<IdfWitness> witness;
};

/// One row per d in [d_min, d_max], in increasing d. Work is split into
/// contiguous blocks over `jobs` threads. Throws DomainError if d_max < d_min.
std::vector<ScanRow> scan_rows(std::uint64_t d_min, std::uint64_t d_max, int k, unsigned jobs = 1);
/// The d in [d_min, d_max] without an IDF prime.
std::vector<std::uint64_t> scan_exceptions(std::uint64_t d_min, std::uint64_t d_max, int k, unsigned jobs = 1);

/// B*Y^2 = C*X^3 + 1 with B | 6, C | 36; d = C*X^3 + 3.
struct MordellCandidate {
  Int x, y, b, c;
  Int d;

  friend bool operator==(const MordellCandidate&, const MordellCandidate&) = default;
};

inline const std::vector<int>& mordell_b_values() {
  static const std::vector<int> v{1, 2, 3, 6};
  return v;
}
inline const std::vector<int>& mordell_c_values() {
  static const std::vector<int> v{1, 2, 3, 4, 6, 9, 12, 18, 36};
  return v;
}

/// All candidates with 2 <= X <= x_max and d >= 7, sorted by (d, B, C).
std::vector<MordellCandidate> mordell_candidates(long x_max);

/// A prime p > k dividing n - r (0 <= r <= k) with r not dividing v_p(n - r);
/// same tie-break as find_idf_prime. Throws DomainError unless n > 2k + 2.
std::optional<IdfWitness> conjecture_check(std::uint64_t n, int k);

}  // namespace pcfcert
