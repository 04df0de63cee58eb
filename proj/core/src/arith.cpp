#include "pcfcert/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <random>

#include "pcfcert/errors.hpp"

namespace pcfcert {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Miller-Rabin with the first twelve primes as bases is deterministic below 3.3e24.
bool miller_rabin(u64 n) {
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : kBases) {
    if (a % n == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n must be odd, composite and free of small factors.
u64 rho_split(u64 n, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(1, n - 1);
  while (true) {
    const u64 c = dist(rng);
    u64 y = dist(rng);
    u64 g = 1;
    u64 q = 1;
    u64 x = y;
    u64 ys = y;
    u64 r = 1;
    constexpr u64 kBlock = 128;
    auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(kBlock, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBlock;
      }
      r <<= 1U;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_factors(u64 n, std::vector<u64>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const u64 f = rho_split(n, rng);
  collect_factors(f, out, rng);
  collect_factors(n / f, out, rng);
}

}  // namespace

const Rat& ExtVal::value() const {
  if (infinite_) throw DomainError("ExtVal::value: valuation is INFINITY");
  return value_;
}

bool ExtVal::is_integer() const { return !infinite_ && value_.get_den() == 1; }

ExtVal ExtVal::operator+(const ExtVal& rhs) const {
  if (infinite_ || rhs.infinite_) return infinity();
  return ExtVal(Rat(value_ + rhs.value_));
}

ExtVal ExtVal::times(long n) const {
  if (n < 1) throw DomainError("ExtVal::times: multiplier must be positive");
  if (infinite_) return infinity();
  return ExtVal(Rat(value_ * n));
}

bool operator==(const ExtVal& a, const ExtVal& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtVal& a, const ExtVal& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  const int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

std::string ExtVal::to_string() const {
  if (infinite_) return "inf";
  return value_.get_str();
}

ExtVal ExtVal::parse(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinity") return infinity();
  return ExtVal(parse_rat(text));
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kSmall = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  return miller_rabin(n);
}

std::vector<PrimePower64> factor_u64(std::uint64_t n) {
  if (n < 2) throw DomainError("factor: input must be >= 2");
  std::vector<PrimePower64> out;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel up to the trial limit.
  for (u64 p = 5; p <= kTrialLimit && p * p <= n; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n == 1) return out;
  if (n <= kTrialLimit * kTrialLimit || is_prime_u64(n)) {
    out.push_back({n, 1});
    return out;
  }
  std::mt19937_64 rng(0x5eed'1dfULL);
  std::vector<u64> primes;
  collect_factors(n, primes, rng);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

Factorization factor(const Int& n) {
  if (n < 2) throw DomainError("factor: input must be >= 2, got " + n.get_str());
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw DomainError("factor: inputs wider than 64 bits are not supported");
  }
  const u64 v = mpz_get_ui(n.get_mpz_t());
  Factorization out;
  for (const auto& pp : factor_u64(v)) {
    out.push_back({Int(static_cast<unsigned long>(pp.prime)), pp.exponent});
  }
  return out;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int recompose(const Factorization& f) {
  Int out = 1;
  for (const auto& pp : f) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    out *= pw;
  }
  return out;
}

unsigned long multiplicity(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("multiplicity: zero has infinite multiplicity");
  if (p < 2) throw DomainError("multiplicity: base must be >= 2");
  Int rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

unsigned multiplicity_u64(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) throw DomainError("multiplicity_u64: need n != 0, p >= 2");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

ExtVal val_p(const Rat& x, const Int& p) {
  if (!is_prime(p)) throw DomainError("val_p: " + p.get_str() + " is not prime");
  if (sgn(x) == 0) return ExtVal::infinity();
  const long num = static_cast<long>(multiplicity(x.get_num(), p));
  const long den = static_cast<long>(multiplicity(x.get_den(), p));
  return ExtVal(num - den);
}

std::string rat_to_string(const Rat& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    const Int num(text.substr(0, slash));
    const Int den(text.substr(slash + 1));
    if (den == 0) throw DomainError("parse_rat: zero denominator in '" + text + "'");
    Rat out(num, den);
    out.canonicalize();
    return out;
  } catch (const std::invalid_argument&) {
    throw DomainError("parse_rat: cannot parse '" + text + "'");
  }
}

Int factorial(unsigned n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Int binomial(unsigned n, unsigned k) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace pcfcert
