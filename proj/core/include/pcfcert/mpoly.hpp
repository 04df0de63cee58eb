#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "pcfcert/unipoly.hpp"

namespace pcfcert {

/// Sparse polynomial in N variables. Terms are kept in a std::map ordered by
/// exponent vector, so iteration (and serialization) order is deterministic.
/// Invariant: no stored coefficient is zero.
template <class K, std::size_t N>
class MPoly {
  using Traits = CoeffTraits<K>;

 public:
  using Exponents = std::array<unsigned, N>;
  using TermMap = std::map<Exponents, K>;

  MPoly() = default;

  static MPoly constant(const K& c) {
    MPoly p;
    p.add_term(Exponents{}, c);
    return p;
  }
  static MPoly variable(std::size_t var, const K& one) {
    Exponents e{};
    e.at(var) = 1;
    MPoly p;
    p.add_term(e, one);
    return p;
  }
  static MPoly from_terms(const TermMap& terms) {
    MPoly p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  K coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K{} : it->second;
  }

  /// Largest exponent of `var` (-1 for the zero polynomial).
  long degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[var]));
    return d;
  }
  long total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
      long s = 0;
      for (unsigned x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Exponents& e, const K& c) {
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  MPoly operator+(const MPoly& rhs) const {
    MPoly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
  }
  MPoly operator-() const {
    MPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  MPoly operator-(const MPoly& rhs) const {
    MPoly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
  }
  MPoly operator*(const MPoly& rhs) const {
    MPoly out;
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : rhs.terms_) {
        Exponents e;
        for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  MPoly scaled(const K& s) const {
    MPoly out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }
  MPoly& operator+=(const MPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& rhs) { return *this = *this - rhs; }
  MPoly& operator*=(const MPoly& rhs) { return *this = *this * rhs; }

  MPoly derivative(std::size_t var) const {
    MPoly out;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      --f[var];
      out.add_term(f, Traits::times_int(c, static_cast<long>(e[var])));
    }
    return out;
  }

  K evaluate(const std::array<K, N>& point) const {
    K acc{};
    for (const auto& [e, c] : terms_) {
      K term = c;
      for (std::size_t i = 0; i < N; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
      }
      acc = acc + term;
    }
    return acc;
  }

  /// Substitute a value for one variable; the result keeps N slots with that exponent zero.
  MPoly substitute(std::size_t var, const K& value) const {
    MPoly out;
    for (const auto& [e, c] : terms_) {
      K term = c;
      for (unsigned k = 0; k < e[var]; ++k) term = term * value;
      Exponents f = e;
      f[var] = 0;
      out.add_term(f, term);
    }
    return out;
  }

  /// Coefficient-wise image under a ring map (e.g. reduction modulo p).
  template <class K2, class Fn>
  MPoly<K2, N> map_coeffs(Fn&& fn) const {
    MPoly<K2, N> out;
    for (const auto& [e, c] : terms_) out.add_term(e, fn(c));
    return out;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
      if (it->first != e || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

  std::string to_string(const std::array<std::string, N>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + Traits::to_string(it->second) + ")";
      for (std::size_t i = 0; i < N; ++i) {
        if (it->first[i] == 0) continue;
        s += "*" + names[i];
        if (it->first[i] > 1) s += "^" + std::to_string(it->first[i]);
      }
    }
    return s;
  }

 private:
  TermMap terms_;
};

template <class K, std::size_t N>
MPoly<K, N> pow(const MPoly<K, N>& f, unsigned n, const K& one) {
  MPoly<K, N> result = MPoly<K, N>::constant(one);
  MPoly<K, N> base = f;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

/// g(w) for a univariate g, by Horner's rule over the polynomial ring.
template <class K, std::size_t N>
MPoly<K, N> compose(const UniPoly<K>& g, const MPoly<K, N>& w) {
  MPoly<K, N> acc;
  const auto& c = g.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * w;
    acc.add_term({}, c[i]);
  }
  return acc;
}

/// Lift a univariate polynomial into slot `var` of an N-variate ring.
template <class K, std::size_t N>
MPoly<K, N> lift(const UniPoly<K>& g, std::size_t var) {
  MPoly<K, N> out;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    typename MPoly<K, N>::Exponents e{};
    e[var] = static_cast<unsigned>(i);
    out.add_term(e, g.coeffs()[i]);
  }
  return out;
}

/// A bivariate polynomial as a polynomial in `var` whose coefficients are
/// univariate in the other variable.
template <class K>
UniPoly<UniPoly<K>> as_univariate_in(const MPoly<K, 2>& f, std::size_t var) {
  const long deg = f.degree_in(var);
  if (deg < 0) return {};
  const std::size_t other = 1 - var;
  std::vector<std::vector<K>> dense(static_cast<std::size_t>(deg) + 1);
  for (const auto& [e, c] : f.terms()) {
    auto& row = dense[e[var]];
    if (row.size() <= e[other]) row.resize(e[other] + 1);
    row[e[other]] = c;
  }
  std::vector<UniPoly<K>> coeffs;
  coeffs.reserve(dense.size());
  for (auto& row : dense) coeffs.emplace_back(std::move(row));
  return UniPoly<UniPoly<K>>(std::move(coeffs));
}

using BiPoly = MPoly<Rat, 2>;
/// Variable slots used for (a, c) parameter polynomials.
inline constexpr std::size_t kVarA = 0;
inline constexpr std::size_t kVarC = 1;

}  // namespace pcfcert
