#pragma once

#include <cstddef>
#include <vector>

#include "pcfcert/arith.hpp"
#include "pcfcert/finite_field.hpp"
#include "pcfcert/mpoly.hpp"
#include "pcfcert/unipoly.hpp"

namespace pcfcert {

/// Single-cycle Belyi polynomial B_{d,k}: B(0) = 0, B(1) = 1 and
/// B'(z) = d*b_0 * z^(d-k-1) * (z-1)^k.
struct BelyiPoly {
  int d = 0;
  int k = 0;
  /// b[i] is the coefficient of z^(d-i), i = 0..k.
  std::vector<Rat> b;

  UniPoly<Rat> poly() const;
};

/// Closed-form coefficients; throws DomainError unless d >= 3 and 1 <= k <= d-2.
BelyiPoly belyi_coeffs(int d, int k);

/// ceil((d-2)/2), the largest k a conjugacy class can be normalized to.
int max_canonical_k(int d);
/// k itself when already canonical, otherwise the conjugate index d-1-k.
int canonical_k(int d, int k);

struct ConjugateParams {
  Rat a;
  Rat c;
  int k = 0;
};

/// a*B_{d,k} + c is conjugate to a*B_{d,d-1-k} + (1-a-c). An involution.
ConjugateParams conjugate_params(const Rat& a, const Rat& c, int d, int k);

/// a*B(w) + c where a, c and w live in the same polynomial ring.
template <class K, std::size_t N>
MPoly<K, N> apply_bicritical(const UniPoly<K>& belyi, const MPoly<K, N>& a, const MPoly<K, N>& c,
                             const MPoly<K, N>& w, const K& one) {
  // B = z^low * Q(z); powering w separately keeps the Horner chain short.
  const std::size_t low = belyi.order_at_zero();
  std::vector<K> rest(belyi.coeffs().begin() + static_cast<long>(low), belyi.coeffs().end());
  const MPoly<K, N> inner = compose(UniPoly<K>(std::move(rest)), w);
  return a * (pow(w, static_cast<unsigned>(low), one) * inner) + c;
}

/// f_{a,c}(z) = a*B_{d,k}(z) + c, with affine critical points {0, 1} when a != 0.
class BicriticalMap {
 public:
  explicit BicriticalMap(BelyiPoly belyi);

  const BelyiPoly& belyi() const { return belyi_; }
  const UniPoly<Rat>& belyi_poly() const { return poly_; }

  UniPoly<Rat> specialize(const Rat& a, const Rat& c) const;
  /// Reduces B_{d,k} into the field of a and c; throws DomainError if p
  /// divides a coefficient denominator or a and c live in different fields.
  UniPoly<FieldElem> specialize(const FieldElem& a, const FieldElem& c) const;

  /// f applied to a polynomial in (a, c) with symbolic parameters.
  BiPoly apply(const BiPoly& w) const;

 private:
  BelyiPoly belyi_;
  UniPoly<Rat> poly_;
};

/// Normal form for polynomials with n >= 2 critical points: 0 with
/// ramification d - sum(k), gamma_0 = 1, gamma_1, ..., gamma_{n-2} with
/// ramification k_i + 1. coeffs[j] is the coefficient of z^j; it is a
/// polynomial in the single symbol gamma when symbolic (n = 3 only), a
/// constant otherwise.
struct NCriticalForm {
  int d = 0;
  std::vector<int> profile;
  bool symbolic = false;
  /// gamma_1..gamma_{n-2} for numeric forms (gamma_0 = 1 is implicit).
  std::vector<Rat> gammas;
  std::vector<UniPoly<Rat>> coeffs;

  std::size_t critical_count() const { return profile.size() + 1; }
  /// The form in variables (z, gamma).
  MPoly<Rat, 2> as_bipoly() const;
  /// Concrete polynomial in z; gamma is used only for symbolic forms.
  UniPoly<Rat> specialize(const Rat& gamma = Rat(0)) const;
};

/// Numeric gammas; throws DomainError on profile bounds or repeated/0/1 gammas.
NCriticalForm ncritical_form(int d, const std::vector<int>& profile, const std::vector<Rat>& gammas);
/// Symbolic gamma_1 = gamma; profile must have exactly two entries.
NCriticalForm ncritical_form_symbolic(int d, const std::vector<int>& profile);

/// Ratio between the two-critical-point normal form and B_{d,k}:
/// ncritical_form(d, {k}, {}) = (-1)^k * k! * B_{d,k}.
Rat ncritical_to_belyi_ratio(int k);

}  // namespace pcfcert
