#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pcfcert/mpoly.hpp"
#include "pcfcert/unipoly.hpp"

namespace pcfcert {

template <class R>
using Matrix = std::vector<std::vector<R>>;

/// Fraction-free (Bareiss) determinant over an integral domain R whose
/// CoeffTraits provide exact_div. Row swaps are tracked for the sign.
template <class R>
R bareiss_determinant(Matrix<R> m) {
  using Traits = CoeffTraits<R>;
  const std::size_t n = m.size();
  if (n == 0) return Traits::one_like(R{});
  bool negate = false;
  R prev;
  bool have_prev = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (Traits::is_zero(m[k][k])) {
      std::size_t swap = k + 1;
      while (swap < n && Traits::is_zero(m[swap][k])) ++swap;
      if (swap == n) return R{};
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = have_prev ? Traits::exact_div(v, prev) : v;
      }
      m[i][k] = R{};
    }
    prev = m[k][k];
    have_prev = true;
  }
  R det = m[n - 1][n - 1];
  return negate ? R(-det) : det;
}

/// Sylvester matrix of f, g (coefficient lists lowest degree first, leading
/// entries nonzero): deg g rows of f above deg f rows of g.
template <class R>
Matrix<R> sylvester_matrix(const std::vector<R>& f, const std::vector<R>& g) {
  const std::size_t m = f.size() - 1;
  const std::size_t n = g.size() - 1;
  const std::size_t size = m + n;
  Matrix<R> s(size, std::vector<R>(size));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i <= m; ++i) s[row][row + i] = f[m - i];
  }
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t i = 0; i <= n; ++i) s[n + row][row + i] = g[n - i];
  }
  return s;
}

/// Res(f, g) as the Sylvester determinant; throws DomainError on a zero input.
template <class K>
K resultant(const UniPoly<K>& f, const UniPoly<K>& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant: zero polynomial input");
  if (f.degree() == 0 && g.degree() == 0) return CoeffTraits<K>::one_like(f.leading());
  return bareiss_determinant(sylvester_matrix(f.coeffs(), g.coeffs()));
}

/// Eliminate variable `var` from two bivariate polynomials; the result is a
/// polynomial in the remaining variable.
template <class K>
UniPoly<K> resultant(const MPoly<K, 2>& f, const MPoly<K, 2>& g, std::size_t var) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant: zero polynomial input");
  return resultant(as_univariate_in(f, var), as_univariate_in(g, var));
}

}  // namespace pcfcert
