#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pcfcert/coeff_traits.hpp"

namespace pcfcert {

/// Dense univariate polynomial, coefficients lowest degree first.
/// Invariant: the leading stored coefficient is nonzero (zero polynomial is empty).
template <class K>
class UniPoly {
  using Traits = CoeffTraits<K>;

 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static UniPoly constant(const K& c) { return UniPoly(std::vector<K>{c}); }
  static UniPoly monomial(const K& c, std::size_t deg) {
    std::vector<K> v(deg + 1, Traits::zero_like(c));
    v[deg] = c;
    return UniPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K{}; }
  const K& leading() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  /// Number of leading zero coefficients at the low end (multiplicity of the root 0).
  std::size_t order_at_zero() const {
    std::size_t i = 0;
    while (i < c_.size() && Traits::is_zero(c_[i])) ++i;
    return i;
  }

  UniPoly operator+(const UniPoly& rhs) const {
    std::vector<K> out = c_.size() >= rhs.c_.size() ? c_ : rhs.c_;
    const std::vector<K>& small = c_.size() >= rhs.c_.size() ? rhs.c_ : c_;
    for (std::size_t i = 0; i < small.size(); ++i) out[i] = out[i] + small[i];
    return UniPoly(std::move(out));
  }
  UniPoly operator-() const {
    std::vector<K> out;
    out.reserve(c_.size());
    for (const K& x : c_) out.push_back(-x);
    return UniPoly(std::move(out));
  }
  UniPoly operator-(const UniPoly& rhs) const { return *this + (-rhs); }
  UniPoly operator*(const UniPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return {};
    std::vector<K> out(c_.size() + rhs.c_.size() - 1, Traits::zero_like(c_[0]));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (Traits::is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] = out[i + j] + c_[i] * rhs.c_[j];
    }
    return UniPoly(std::move(out));
  }
  UniPoly scaled(const K& s) const {
    std::vector<K> out;
    out.reserve(c_.size());
    for (const K& x : c_) out.push_back(x * s);
    return UniPoly(std::move(out));
  }
  UniPoly& operator+=(const UniPoly& rhs) { return *this = *this + rhs; }
  UniPoly& operator-=(const UniPoly& rhs) { return *this = *this - rhs; }
  UniPoly& operator*=(const UniPoly& rhs) { return *this = *this * rhs; }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(Traits::times_int(c_[i], static_cast<long>(i)));
    return UniPoly(std::move(out));
  }

  /// Horner evaluation.
  K operator()(const K& x) const {
    K acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Quotient and remainder; requires a nonzero divisor with invertible leading coefficient.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<K> rem = c_;
    const std::size_t dd = d.c_.size() - 1;
    if (rem.size() <= dd) return {UniPoly(), *this};
    std::vector<K> quo(rem.size() - dd, Traits::zero_like(d.c_.back()));
    for (std::size_t i = rem.size(); i-- > dd;) {
      if (Traits::is_zero(rem[i])) continue;
      const K q = Traits::exact_div(rem[i], d.c_.back());
      quo[i - dd] = q;
      for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] = rem[i - dd + j] - q * d.c_[j];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

  std::string to_string(const std::string& var = "z") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (Traits::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + Traits::to_string(c_[i]) + ")";
      if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
UniPoly<K> pow(const UniPoly<K>& f, unsigned n) {
  UniPoly<K> result = UniPoly<K>::constant(CoeffTraits<K>::one_like(f.is_zero() ? K{} : f.leading()));
  UniPoly<K> base = f;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

/// f(g(x)) by Horner's rule.
template <class K>
UniPoly<K> compose(const UniPoly<K>& f, const UniPoly<K>& g) {
  UniPoly<K> acc;
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * g + UniPoly<K>::constant(c[i]);
  return acc;
}

/// Ring traits so polynomials can themselves be coefficients (Sylvester
/// matrices over K[a]). Exact division throws if the remainder is nonzero.
template <class K>
struct CoeffTraits<UniPoly<K>> {
  static bool is_zero(const UniPoly<K>& x) { return x.is_zero(); }
  static UniPoly<K> zero_like(const UniPoly<K>& /*sample*/) { return {}; }
  static UniPoly<K> one_like(const UniPoly<K>& sample) {
    return UniPoly<K>::constant(CoeffTraits<K>::one_like(sample.is_zero() ? K{} : sample.leading()));
  }
  static UniPoly<K> times_int(const UniPoly<K>& x, long n) {
    std::vector<K> out;
    for (const K& c : x.coeffs()) out.push_back(CoeffTraits<K>::times_int(c, n));
    return UniPoly<K>(std::move(out));
  }
  static UniPoly<K> exact_div(const UniPoly<K>& a, const UniPoly<K>& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw DomainError("exact_div: polynomial division left a remainder");
    return q;
  }
  static std::string to_string(const UniPoly<K>& x) { return x.to_string("a"); }
};

}  // namespace pcfcert
