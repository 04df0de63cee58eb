#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcfcert/belyi.hpp"
#include "pcfcert/finite_field.hpp"
#include "pcfcert/idf.hpp"
#include "pcfcert/mpoly.hpp"
#include "pcfcert/newton_polygon.hpp"
#include "pcfcert/unipoly.hpp"

namespace pcfcert {

/// Resource caps. Exceeding one raises ResourceError.
struct Budget {
  /// Cap on d^(n-1) for one orbit polynomial and on d^(n-1)*d^(m-1) for a pair.
  std::uint64_t max_monomials = 10000;
  unsigned max_period_sum = 5;
  /// Cap on |GF(p^e)|^2 points visited by solve_mod.
  std::uint64_t max_enumeration = 1000000;
};

enum class OrbitKind { kPeriodic, kPreperiodic };

/// Periodic: f^n(0) (which = 0) or f^n(1) - 1 (which = 1).
/// Preperiodic: f^n0(x) - f^m0(x) with x = which.
struct CriticalOrbitPoly {
  BiPoly poly;
  int which = 0;
  int n = 0;
  OrbitKind kind = OrbitKind::kPeriodic;
  int n0 = 0;
  int m0 = 0;
};

/// f^n_{a,c}(x) for x in {0, 1}, n >= 0, as a polynomial in (a, c).
BiPoly orbit_point(const BicriticalMap& map, int which, int n);

CriticalOrbitPoly critical_orbit_poly(int d, int k, int which, int n, const Budget& budget = {});
/// Throws DomainError unless n0 > m0 >= 0.
CriticalOrbitPoly preperiodic_poly(int d, int k, int which, int n0, int m0, const Budget& budget = {});

enum class Verdict { kPass, kFail, kDegenerate };
std::string to_string(Verdict v);

struct StrippedResultant {
  UniPoly<Rat> raw;
  /// raw = content * var^power * stripped, stripped primitive with integer coefficients.
  UniPoly<Rat> stripped;
  Rat content;
  unsigned power = 0;
  NewtonPolygon polygon;  // of stripped
};

struct IntegralityCertificate {
  int d = 0, k = 0, n = 0, m = 0;
  IdfWitness witness;
  StrippedResultant r_a;  // Res_c(F_n, G_m), a-powers stripped
  StrippedResultant r_c;  // Res_a(F_n, G_m), only content stripped
  bool r_a_units = false;       // every root of R_a has valuation 0
  bool r_c_integral = false;    // every root of R_c has valuation >= 0
  Verdict verdict = Verdict::kFail;
  std::string note;
};

/// Throws DomainError when (d, k) has no IDF prime and ResourceError past the budget.
IntegralityCertificate integrality_certificate(int d, int k, int n, int m, const Budget& budget = {});

/// Recomputes both verdicts from the stored polygons.
bool recheck(const IntegralityCertificate& cert);

/// B_{d,k} mod p = s * z^(t*p).
struct ReducedMap {
  FieldElem s;
  std::uint64_t p = 0;
  int t = 0;
  int tp = 0;
};

/// Throws DomainError unless the witness is the IDF data for (d, k).
ReducedMap reduce_map(int d, int k, const IdfWitness& witness);

/// F_a * G_c - G_a * F_c.
template <class K>
MPoly<K, 2> jacobian(const MPoly<K, 2>& f, const MPoly<K, 2>& g) {
  return f.derivative(kVarA) * g.derivative(kVarC) - g.derivative(kVarA) * f.derivative(kVarC);
}

struct FiniteSolution {
  FieldElem alpha;
  FieldElem beta;
  FieldElem jacobian_value;
};

struct SolveResult {
  FieldPtr field;
  std::vector<FiniteSolution> solutions;  // alpha != 0, ordered by (index(alpha), index(beta))
  std::uint64_t alpha_zero_count = 0;
};

/// Exhaustive search of GF(p^e)^2 for common zeros of F_n, G_m reduced mod p,
/// split over `jobs` threads by alpha.
SolveResult solve_mod(int d, int k, int n, int m, const IdfWitness& witness, unsigned e, const Budget& budget = {},
                      unsigned jobs = 1);

struct TransversalityLevel {
  unsigned e = 0;
  SolveResult result;
};

struct TransversalityReport {
  int d = 0, k = 0, n = 0, m = 0;
  unsigned e_max = 0;
  IdfWitness witness;
  ReducedMap reduced;
  std::vector<TransversalityLevel> levels;
  bool jacobian_nonzero = true;
  bool unit_identity = true;           // alpha * J = +-1 at every solution
  std::vector<int> observed_signs;     // sorted subset of {-1, +1}
  bool sign_ambiguous = false;         // characteristic 2: +1 = -1
  Verdict verdict = Verdict::kPass;
  std::optional<FiniteSolution> failure;
  std::string note;
};

TransversalityReport transversality_check(int d, int k, int n, int m, unsigned e_max, const Budget& budget = {},
                                          unsigned jobs = 1);

struct NcritReport {
  // Degree 10, profile [7, 1], p = 7.
  NCriticalForm form10;
  bool form10_reduces_to_constant = false;
  /// (j0, C(7, j0)) for the terms whose exponent denominator is divisible by 7.
  std::vector<std::pair<int, Int>> form10_binomials;
  bool form10_binomials_divisible = false;

  // Degree 4, profile [1, 1], p = 3.
  NCriticalForm form4;
  bool form4_matches = false;               // 6z^4 - 8(1+g)z^3 + 12g z^2
  bool form4_reduction_matches = false;     // (1+g) z^3 mod 3
  /// Period triples (n0, n1, n2) for the orbits of 0, 1 and gamma, all in {1, 2}.
  std::vector<std::array<int, 3>> triples;
  bool jacobian_zero = false;               // for every triple
  /// Same determinant with f^n2(gamma) - gamma in the last column.
  bool jacobian_with_gamma_shift_zero = false;
};

NcritReport ncrit_counterexamples();

}  // namespace pcfcert
