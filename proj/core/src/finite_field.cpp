#include "pcfcert/finite_field.hpp"

#include <algorithm>

#include "pcfcert/errors.hpp"

namespace pcfcert {

namespace {

using u64 = std::uint64_t;
using Digits = std::vector<u64>;

u64 add_mod(u64 a, u64 b, u64 p) {
  const u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mul_mod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
u64 inv_mod(u64 a, u64 p) {
  u64 result = 1;
  u64 base = a % p;
  u64 exp = p - 2;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a nonzero polynomial m (not necessarily monic).
Digits poly_rem(Digits a, const Digits& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const u64 coef = mul_mod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = sub_mod(a[shift + i], mul_mod(coef, m[i], p), p);
    }
    trim(a);
  }
  return a;
}

Digits poly_mul(const Digits& a, const Digits& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Digits out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  return out;
}

Digits poly_powmod(Digits base, u64 exp, const Digits& m, u64 p) {
  Digits result = {1};
  base = poly_rem(std::move(base), m, p);
  while (exp > 0) {
    if (exp & 1U) result = poly_rem(poly_mul(result, base, p), m, p);
    base = poly_rem(poly_mul(base, base, p), m, p);
    exp >>= 1U;
  }
  return result;
}

Digits poly_gcd(Digits a, Digits b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^i) mod m for i = 0..n.
std::vector<Digits> frobenius_powers(const Digits& m, u64 p, unsigned n) {
  std::vector<Digits> out;
  out.push_back(poly_rem({0, 1}, m, p));
  for (unsigned i = 1; i <= n; ++i) out.push_back(poly_powmod(out.back(), p, m, p));
  return out;
}

// Rabin's irreducibility test for a monic polynomial of degree e >= 1.
bool is_irreducible(const Digits& m, u64 p) {
  const unsigned e = static_cast<unsigned>(m.size() - 1);
  if (e == 1) return true;
  const auto frob = frobenius_powers(m, p, e);
  Digits x = poly_rem({0, 1}, m, p);
  Digits top = frob[e];
  trim(top);
  trim(x);
  if (top != x) return false;
  for (const auto& q : factor_u64(e)) {
    Digits h = frob[e / q.prime];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = sub_mod(h[1], 1, p);
    if (poly_gcd(h, m, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

GaloisField::GaloisField(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus)
    : p_(p), e_(e), order_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < e; ++i) order_ *= p;
}

FieldElem GaloisField::zero() const { return FieldElem(shared_from_this(), Digits(e_, 0)); }

FieldElem GaloisField::one() const {
  Digits d(e_, 0);
  d[0] = 1 % p_;
  return FieldElem(shared_from_this(), std::move(d));
}

FieldElem GaloisField::from_int(const Int& n) const {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
  Digits d(e_, 0);
  d[0] = mpz_get_ui(r.get_mpz_t());
  return FieldElem(shared_from_this(), std::move(d));
}

FieldElem GaloisField::from_rat(const Rat& x) const {
  if (mpz_divisible_ui_p(x.get_den().get_mpz_t(), p_) != 0) {
    throw DomainError("from_rat: " + x.get_str() + " is not integral at p = " + std::to_string(p_));
  }
  return from_int(x.get_num()) / from_int(x.get_den());
}

FieldElem GaloisField::element(std::uint64_t index) const {
  if (index >= order_) throw DomainError("GaloisField::element: index out of range");
  Digits d(e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = index % p_;
    index /= p_;
  }
  return FieldElem(shared_from_this(), std::move(d));
}

std::vector<FieldElem> GaloisField::elements() const {
  std::vector<FieldElem> out;
  out.reserve(order_);
  for (u64 i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

bool GaloisField::same_as(const GaloisField& other) const {
  return this == &other || (p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_);
}

std::string GaloisField::describe() const {
  std::string s = "GF(" + std::to_string(p_);
  if (e_ > 1) s += "^" + std::to_string(e_);
  s += ")";
  return s;
}

Digits GaloisField::mul_digits(const Digits& a, const Digits& b) const {
  Digits prod = poly_mul(a, b, p_);
  // modulus is monic: reduce high coefficients top-down
  for (std::size_t deg = prod.size(); deg-- > e_;) {
    const u64 c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (unsigned i = 0; i < e_; ++i) {
      prod[deg - e_ + i] = sub_mod(prod[deg - e_ + i], mul_mod(c, modulus_[i], p_), p_);
    }
  }
  prod.resize(e_, 0);
  return prod;
}

FieldPtr make_ext_field(std::uint64_t p, unsigned e) {
  if (e < 1) throw DomainError("make_ext_field: degree must be >= 1");
  if (p >= (1ULL << 32U) || !is_prime_u64(p)) {
    throw DomainError("make_ext_field: " + std::to_string(p) + " is not a prime below 2^32");
  }
  // Enumerate monic candidates with c_0 as the most significant digit.
  Digits coeffs(e, 0);
  while (true) {
    Digits m = coeffs;
    m.push_back(1);
    if ((e == 1 || m[0] != 0) && is_irreducible(m, p)) {
      return FieldPtr(std::make_shared<GaloisField>(p, e, std::move(m)));
    }
    int pos = static_cast<int>(e) - 1;
    while (pos >= 0 && ++coeffs[pos] == p) {
      coeffs[pos] = 0;
      --pos;
    }
    if (pos < 0) throw DomainError("make_ext_field: no irreducible polynomial found");
  }
}

bool FieldElem::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(), [](u64 d) { return d == 0; });
}

bool FieldElem::is_one() const {
  if (!field_) return false;
  if (digits_[0] != 1) return false;
  return std::all_of(digits_.begin() + 1, digits_.end(), [](u64 d) { return d == 0; });
}

std::uint64_t FieldElem::index() const {
  u64 idx = 0;
  for (std::size_t i = digits_.size(); i-- > 0;) idx = idx * field_->characteristic() + digits_[i];
  return idx;
}

const FieldPtr& FieldElem::common_field(const FieldElem& a, const FieldElem& b) {
  if (a.field_ && b.field_ && a.field_ != b.field_ && !a.field_->same_as(*b.field_)) {
    throw DomainError("field mismatch: " + a.field_->describe() + " vs " + b.field_->describe());
  }
  return a.field_ ? a.field_ : b.field_;
}

FieldElem FieldElem::operator+(const FieldElem& rhs) const {
  const FieldPtr& f = common_field(*this, rhs);
  if (!field_) return rhs;
  if (!rhs.field_) return *this;
  Digits d(digits_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = add_mod(digits_[i], rhs.digits_[i], f->p_);
  return FieldElem(f, std::move(d));
}

FieldElem FieldElem::operator-() const {
  if (!field_) return *this;
  Digits d(digits_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sub_mod(0, digits_[i], field_->p_);
  return FieldElem(field_, std::move(d));
}

FieldElem FieldElem::operator-(const FieldElem& rhs) const { return *this + (-rhs); }

FieldElem FieldElem::operator*(const FieldElem& rhs) const {
  const FieldPtr& f = common_field(*this, rhs);
  if (!field_ || !rhs.field_) return FieldElem();
  if (f->e_ == 1) return FieldElem(f, {mul_mod(digits_[0], rhs.digits_[0], f->p_)});
  return FieldElem(f, f->mul_digits(digits_, rhs.digits_));
}

FieldElem FieldElem::operator/(const FieldElem& rhs) const { return *this * rhs.inverse(); }

FieldElem FieldElem::times_int(long n) const {
  if (!field_) return *this;
  return *this * field_->from_int(Int(n));
}

FieldElem FieldElem::pow(std::uint64_t n) const {
  if (!field_) throw DomainError("FieldElem::pow on an unbound element");
  FieldElem result = field_->one();
  FieldElem base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

FieldElem FieldElem::inverse() const {
  if (!field_ || is_zero()) throw DomainError("FieldElem::inverse: division by zero");
  return pow(field_->order() - 2);
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (!a.field_ || !b.field_) return a.is_zero() && b.is_zero();
  FieldElem::common_field(a, b);
  return a.digits_ == b.digits_;
}

std::string FieldElem::to_string() const {
  if (!field_) return "0";
  if (digits_.size() == 1) return std::to_string(digits_[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(digits_[i]);
  }
  return s + "]";
}

}  // namespace pcfcert
