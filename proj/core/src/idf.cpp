#include "pcfcert/idf.hpp"

#include <algorithm>
#include <thread>

#include "pcfcert/errors.hpp"

namespace pcfcert {

namespace {

// Shared search without the Belyi range check; conjecture_check allows k = 0.
std::optional<IdfWitness> search(std::uint64_t d, int k) {
  for (int r = 0; r <= k; ++r) {
    if (r == 1) continue;
    for (const auto& pp : factor_u64(d - static_cast<std::uint64_t>(r))) {
      if (pp.prime <= static_cast<std::uint64_t>(k)) continue;
      if (r == 0 || pp.exponent % static_cast<unsigned>(r) != 0) return IdfWitness{pp.prime, r, pp.exponent};
    }
  }
  return std::nullopt;
}

}  // namespace

std::string IdfCheck::message() const {
  switch (reason) {
    case IdfRejection::kNone:
      return "IDF prime";
    case IdfRejection::kNotPrime:
      return "not prime";
    case IdfRejection::kTooSmall:
      return "p <= k";
    case IdfRejection::kNoDivisor:
      return "p divides none of d-r for 0 <= r <= k";
    case IdfRejection::kRIsOne:
      return "p divides d-1 (r = 1)";
    case IdfRejection::kRDividesE:
      return "r = " + std::to_string(r) + " divides v_p(d-r) = " + std::to_string(e);
  }
  return "unknown";
}

void check_idf_range(std::uint64_t d, int k) {
  if (d < 3) throw DomainError("idf: d must be >= 3");
  if (k < 1 || static_cast<std::uint64_t>(k) > (d - 1) / 2) {
    throw DomainError("idf: need 1 <= k <= ceil((d-2)/2), got d=" + std::to_string(d) + " k=" + std::to_string(k));
  }
}

IdfCheck is_idf_prime(std::uint64_t p, std::uint64_t d, int k) {
  check_idf_range(d, k);
  IdfCheck out;
  if (!is_prime_u64(p)) {
    out.reason = IdfRejection::kNotPrime;
    return out;
  }
  if (p <= static_cast<std::uint64_t>(k)) {
    out.reason = IdfRejection::kTooSmall;
    return out;
  }
  // p > k, so at most one d - r is divisible by p.
  const std::uint64_t r = d % p;
  if (r > static_cast<std::uint64_t>(k)) {
    out.reason = IdfRejection::kNoDivisor;
    return out;
  }
  out.r = static_cast<int>(r);
  out.e = multiplicity_u64(d - r, p);
  if (r == 1) {
    out.reason = IdfRejection::kRIsOne;
  } else if (r != 0 && out.e % r == 0) {
    out.reason = IdfRejection::kRDividesE;
  } else {
    out.witness = IdfWitness{p, out.r, out.e};
  }
  return out;
}

std::optional<IdfWitness> find_idf_prime(std::uint64_t d, int k) {
  check_idf_range(d, k);
  return search(d, k);
}

std::vector<ScanRow> scan_rows(std::uint64_t d_min, std::uint64_t d_max, int k, unsigned jobs) {
  if (d_max < d_min) {
    throw DomainError("scan: empty range [" + std::to_string(d_min) + ", " + std::to_string(d_max) + "]");
  }
  check_idf_range(d_min, k);
  const std::uint64_t count = d_max - d_min + 1;
  std::vector<ScanRow> rows(count);
  const std::uint64_t workers = std::clamp<std::uint64_t>(jobs, 1, count);
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) rows[i] = {d_min + i, k, search(d_min + i, k)};
  };
  if (workers == 1) {
    work(0, count);
    return rows;
  }
  std::vector<std::jthread> threads;
  const std::uint64_t block = (count + workers - 1) / workers;
  for (std::uint64_t lo = 0; lo < count; lo += block) threads.emplace_back(work, lo, std::min(count, lo + block));
  threads.clear();
  return rows;
}

std::vector<std::uint64_t> scan_exceptions(std::uint64_t d_min, std::uint64_t d_max, int k, unsigned jobs) {
  std::vector<std::uint64_t> out;
  for (const auto& row : scan_rows(d_min, d_max, k, jobs)) {
    if (!row.witness) out.push_back(row.d);
  }
  return out;
}

std::vector<MordellCandidate> mordell_candidates(long x_max) {
  std::vector<MordellCandidate> out;
  for (long xv = 2; xv <= x_max; ++xv) {
    const Int x = xv;
    const Int x3 = x * x * x;
    for (int c : mordell_c_values()) {
      const Int rhs = c * x3 + 1;
      for (int b : mordell_b_values()) {
        if (mpz_divisible_ui_p(rhs.get_mpz_t(), static_cast<unsigned long>(b)) == 0) continue;
        const Int y2 = rhs / b;
        if (mpz_perfect_square_p(y2.get_mpz_t()) == 0) continue;
        Int y;
        mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
        Int d = c * x3 + 3;
        if (d < 7) continue;
        out.push_back({x, y, Int(b), Int(c), d});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MordellCandidate& l, const MordellCandidate& r) {
    if (l.d != r.d) return l.d < r.d;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
  });
  return out;
}

std::optional<IdfWitness> conjecture_check(std::uint64_t n, int k) {
  if (k < 0 || n <= 2 * static_cast<std::uint64_t>(k) + 2) {
    throw DomainError("conjecture_check: need n > 2k + 2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return search(n, k);
}

}  // namespace pcfcert
