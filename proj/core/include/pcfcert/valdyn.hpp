#pragma once

#include <array>
#include <string>
#include <vector>

#include "pcfcert/arith.hpp"
#include "pcfcert/belyi.hpp"
#include "pcfcert/mpoly.hpp"

namespace pcfcert {

/// Valuation data for f = alpha*B_{d,k} + beta at an IDF prime (p, r, e).
/// Valuations are integers or INFINITY.
struct ValParams {
  int d = 0;
  int k = 0;
  int r = 0;
  unsigned e = 0;
  ExtVal v_alpha;
  ExtVal v_beta;

  /// Throws DomainError on bad ranges, r = 1, r | e or non-integral valuations.
  void validate() const;
};

/// A valuation that is exact when its governing minimum was attained once,
/// and only a lower bound otherwise.
struct TropVal {
  ExtVal value;
  bool exact = true;

  friend bool operator==(const TropVal&, const TropVal&) = default;
};

enum class CaseTag { kCase1, kCase2, kCase3, kCase4i, kCase4ii, kCase4iii, kIntegral };

std::string to_string(CaseTag tag);
CaseTag parse_case_tag(const std::string& text);

/// The three representative terms of the image minimum for an input of
/// valuation v_x; entries may be INFINITY.
std::array<ExtVal, 3> image_terms(const ExtVal& v_x, const ValParams& params);

/// Valuation of f(x) from v_p(x). Throws std::logic_error if the two
/// alpha-terms tie for v_x < 0, which the IDF conditions rule out.
TropVal image_val(const ExtVal& v_x, const ValParams& params);

/// f^1(x0), ..., f^N(x0) for x0 in {0, 1}. Once an entry is a bound, all
/// later entries are marked as bounds too.
std::vector<TropVal> orbit_val(int start, const ValParams& params, int steps);

CaseTag classify_case(const ValParams& params);

struct DivergenceCertificate {
  enum class Kind { kStrictlyDecreasing, kConstant, kInconclusive };

  CaseTag tag = CaseTag::kIntegral;
  Kind kind = Kind::kInconclusive;
  int start = 0;                 // which critical orbit
  std::vector<TropVal> steps;    // f^1..f^N of that orbit
  /// Decreasing: min over alpha-terms at the last step minus that step (< 0).
  /// Constant: min over alpha-terms at v_beta minus v_beta (> 0).
  ExtVal margin;
  std::string reason;
};

std::string to_string(DivergenceCertificate::Kind kind);

/// Throws DomainError for INTEGRAL parameters.
DivergenceCertificate divergence_certificate(const ValParams& params, int steps = 3);

/// h_n(X, Y) with f^n(X + Y) = f^n(X) + h_n(X, Y) for f = alpha*B + beta,
/// built from the recursion h_n = alpha*(B(U + h_{n-1}) - B(U)), U = f^{n-1}(X).
/// Variables: X is slot 0, Y is slot 1.
MPoly<Rat, 2> shift_remainder(const BelyiPoly& belyi, const Rat& alpha, const Rat& beta, unsigned n);

/// f^n(X + Y) - f^n(X) through Taylor expansion of the univariate f^n.
MPoly<Rat, 2> shift_remainder_taylor(const BelyiPoly& belyi, const Rat& alpha, const Rat& beta, unsigned n);

struct ShiftBoundCheck {
  ExtVal v_h;    // v_p(h_n(x, y))
  ExtVal v_fn;   // v_p(f^n(x))
  bool h_ok = false;
  bool fn_ok = false;
  bool ok() const { return h_ok && fn_ok; }
};

/// Evaluates h_n(x, y) and f^n(x) numerically and compares against
/// v_p(alpha) and v_p(beta). The caller supplies inputs meeting the
/// hypotheses; a DomainError is raised if they do not.
ShiftBoundCheck shift_bounds(const BelyiPoly& belyi, const Rat& alpha, const Rat& beta, const Int& p, const Rat& x,
                             const Rat& y, unsigned n);

}  // namespace pcfcert
