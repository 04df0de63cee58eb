#include "pcfcert/pcf.hpp"

#include <algorithm>
#include <thread>

#include "pcfcert/errors.hpp"
#include "pcfcert/field_roots.hpp"
#include "pcfcert/resultant.hpp"

namespace pcfcert {

namespace {

// d^n, saturating at UINT64_MAX.
std::uint64_t pow_sat(std::uint64_t d, int n) {
  std::uint64_t out = 1;
  for (int i = 0; i < n; ++i) {
    if (out > UINT64_MAX / d) return UINT64_MAX;
    out *= d;
  }
  return out;
}

void check_orbit_budget(int d, int n, const Budget& budget) {
  const std::uint64_t size = pow_sat(static_cast<std::uint64_t>(d), n - 1);
  if (size > budget.max_monomials) {
    throw ResourceError("orbit polynomial of degree d^(n-1) = " + std::to_string(size) + " exceeds budget " +
                        std::to_string(budget.max_monomials));
  }
}

void check_pair_budget(int d, int n, int m, const Budget& budget) {
  if (n < 1 || m < 1) throw DomainError("periods must be >= 1");
  if (static_cast<unsigned>(n + m) > budget.max_period_sum) {
    throw ResourceError("n + m = " + std::to_string(n + m) + " exceeds period budget " +
                        std::to_string(budget.max_period_sum));
  }
  const std::uint64_t a = pow_sat(static_cast<std::uint64_t>(d), n - 1);
  const std::uint64_t b = pow_sat(static_cast<std::uint64_t>(d), m - 1);
  if (a > budget.max_monomials || b > budget.max_monomials / a) {
    throw ResourceError("d^(n-1) * d^(m-1) exceeds monomial budget " + std::to_string(budget.max_monomials));
  }
}

IdfWitness require_witness(int d, int k) {
  auto w = find_idf_prime(static_cast<std::uint64_t>(d), k);
  if (!w) {
    throw DomainError("unsupported (d,k) = (" + std::to_string(d) + "," + std::to_string(k) + "): no IDF prime");
  }
  return *w;
}

StrippedResultant strip(const UniPoly<Rat>& raw, bool strip_power, const Int& p) {
  StrippedResultant s;
  s.raw = raw;
  s.power = strip_power ? static_cast<unsigned>(raw.order_at_zero()) : 0;
  Int num_gcd = 0;
  Int den_lcm = 1;
  for (const Rat& c : raw.coeffs()) {
    if (sgn(c) == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  s.content = Rat(num_gcd, den_lcm);
  s.content.canonicalize();
  if (sgn(raw.leading()) < 0) s.content = -s.content;
  std::vector<Rat> rest(raw.coeffs().begin() + static_cast<long>(s.power), raw.coeffs().end());
  s.stripped = UniPoly<Rat>(std::move(rest)).scaled(Rat(1 / s.content));
  s.polygon = newton_polygon(s.stripped, p);
  return s;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kDegenerate: return "DEGENERATE";
  }
  return "?";
}

BiPoly orbit_point(const BicriticalMap& map, int which, int n) {
  if (which != 0 && which != 1) throw DomainError("critical point must be 0 or 1");
  if (n < 0) throw DomainError("iteration count must be >= 0");
  BiPoly w = BiPoly::constant(Rat(which));
  for (int i = 0; i < n; ++i) w = map.apply(w);
  return w;
}

CriticalOrbitPoly critical_orbit_poly(int d, int k, int which, int n, const Budget& budget) {
  if (n < 1) throw DomainError("period must be >= 1");
  check_orbit_budget(d, n, budget);
  const BicriticalMap map(belyi_coeffs(d, k));
  CriticalOrbitPoly out;
  out.which = which;
  out.n = n;
  out.poly = orbit_point(map, which, n);
  if (which == 1) out.poly -= BiPoly::constant(Rat(1));
  return out;
}

CriticalOrbitPoly preperiodic_poly(int d, int k, int which, int n0, int m0, const Budget& budget) {
  if (m0 < 0 || n0 <= m0) throw DomainError("preperiod needs n0 > m0 >= 0");
  check_orbit_budget(d, n0, budget);
  const BicriticalMap map(belyi_coeffs(d, k));
  CriticalOrbitPoly out;
  out.which = which;
  out.n = n0;
  out.kind = OrbitKind::kPreperiodic;
  out.n0 = n0;
  out.m0 = m0;
  // Iterate once and keep f^m0 on the way to f^n0.
  BiPoly w = BiPoly::constant(Rat(which));
  BiPoly at_m0 = w;
  for (int i = 1; i <= n0; ++i) {
    w = map.apply(w);
    if (i == m0) at_m0 = w;
  }
  out.poly = w - at_m0;
  return out;
}

IntegralityCertificate integrality_certificate(int d, int k, int n, int m, const Budget& budget) {
  check_pair_budget(d, n, m, budget);
  IntegralityCertificate cert;
  cert.d = d;
  cert.k = k;
  cert.n = n;
  cert.m = m;
  cert.witness = require_witness(d, k);
  const Int p(static_cast<unsigned long>(cert.witness.p));
  const BiPoly f = critical_orbit_poly(d, k, 0, n, budget).poly;
  const BiPoly g = critical_orbit_poly(d, k, 1, m, budget).poly;
  const UniPoly<Rat> r_a = resultant(f, g, kVarC);
  const UniPoly<Rat> r_c = resultant(f, g, kVarA);
  if (r_a.is_zero() || r_c.is_zero()) {
    cert.verdict = Verdict::kDegenerate;
    cert.note = "F_n and G_m share a component; resultant vanishes identically";
    return cert;
  }
  cert.r_a = strip(r_a, true, p);
  cert.r_c = strip(r_c, false, p);
  cert.r_a_units = cert.r_a.polygon.all_roots_equal(Rat(0));
  cert.r_c_integral = cert.r_c.polygon.all_roots_at_least(Rat(0));
  cert.verdict = cert.r_a_units && cert.r_c_integral ? Verdict::kPass : Verdict::kFail;
  if (cert.r_a.power > 0) cert.note = "stripped a^" + std::to_string(cert.r_a.power) + " from R_a";
  return cert;
}

bool recheck(const IntegralityCertificate& cert) {
  if (cert.verdict == Verdict::kDegenerate) return true;
  const bool a_ok = cert.r_a.polygon.all_roots_equal(Rat(0));
  const bool c_ok = cert.r_c.polygon.all_roots_at_least(Rat(0));
  return a_ok == cert.r_a_units && c_ok == cert.r_c_integral &&
         (cert.verdict == Verdict::kPass) == (a_ok && c_ok);
}

ReducedMap reduce_map(int d, int k, const IdfWitness& witness) {
  const IdfCheck check = is_idf_prime(witness.p, static_cast<std::uint64_t>(d), k);
  if (!check.witness || !(*check.witness == witness)) {
    throw DomainError("reduce_map: (" + std::to_string(witness.p) + "," + std::to_string(witness.r) + "," +
                      std::to_string(witness.e) + ") is not the IDF witness for this (d,k)");
  }
  const FieldPtr field = make_ext_field(witness.p, 1);
  const BelyiPoly b = belyi_coeffs(d, k);
  ReducedMap out;
  out.p = witness.p;
  out.s = field->from_rat(b.b[static_cast<std::size_t>(witness.r)]);
  out.tp = d - witness.r;
  out.t = out.tp / static_cast<int>(witness.p);
  const UniPoly<FieldElem> reduced = reduce(b.poly(), *field);
  if (!(reduced == UniPoly<FieldElem>::monomial(out.s, static_cast<std::size_t>(out.tp)))) {
    throw std::logic_error("reduce_map: reduction is not a monomial");
  }
  return out;
}

SolveResult solve_mod(int d, int k, int n, int m, const IdfWitness& witness, unsigned e, const Budget& budget,
                      unsigned jobs) {
  check_pair_budget(d, n, m, budget);
  SolveResult out;
  out.field = make_ext_field(witness.p, e);
  const GaloisField& field = *out.field;
  const std::uint64_t q = field.order();
  if (q > budget.max_enumeration / q) {
    throw ResourceError("GF(" + std::to_string(witness.p) + "^" + std::to_string(e) + ")^2 enumeration exceeds budget " +
                        std::to_string(budget.max_enumeration));
  }
  const BiPoly f = critical_orbit_poly(d, k, 0, n, budget).poly;
  const BiPoly g = critical_orbit_poly(d, k, 1, m, budget).poly;
  const BiPoly jac = jacobian(f, g);
  auto red = [&](const Rat& x) { return field.from_rat(x); };
  const auto fr = f.map_coeffs<FieldElem>(red);
  const auto gr = g.map_coeffs<FieldElem>(red);
  const auto jr = jac.map_coeffs<FieldElem>(red);

  std::vector<std::vector<FiniteSolution>> per_alpha(q);
  std::vector<std::uint64_t> zero_hits(q, 0);
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      const FieldElem a = field.element(i);
      const auto fa = fr.substitute(kVarA, a);
      const auto ga = gr.substitute(kVarA, a);
      for (std::uint64_t j = 0; j < q; ++j) {
        const FieldElem c = field.element(j);
        if (!fa.evaluate({a, c}).is_zero() || !ga.evaluate({a, c}).is_zero()) continue;
        if (a.is_zero()) {
          ++zero_hits[i];
          continue;
        }
        per_alpha[i].push_back({a, c, jr.evaluate({a, c})});
      }
    }
  };
  const std::uint64_t workers = std::clamp<std::uint64_t>(jobs, 1, q);
  if (workers == 1) {
    work(0, q);
  } else {
    std::vector<std::jthread> threads;
    const std::uint64_t block = (q + workers - 1) / workers;
    for (std::uint64_t lo = 0; lo < q; lo += block) threads.emplace_back(work, lo, std::min(q, lo + block));
  }
  for (std::uint64_t i = 0; i < q; ++i) {
    out.alpha_zero_count += zero_hits[i];
    for (auto& s : per_alpha[i]) out.solutions.push_back(std::move(s));
  }
  return out;
}

TransversalityReport transversality_check(int d, int k, int n, int m, unsigned e_max, const Budget& budget,
                                          unsigned jobs) {
  if (e_max < 1) throw DomainError("e_max must be >= 1");
  check_pair_budget(d, n, m, budget);
  TransversalityReport rep;
  rep.d = d;
  rep.k = k;
  rep.n = n;
  rep.m = m;
  rep.e_max = e_max;
  rep.witness = require_witness(d, k);
  rep.reduced = reduce_map(d, k, rep.witness);
  rep.sign_ambiguous = rep.witness.p == 2;
  bool plus = false;
  bool minus = false;
  for (unsigned e = 1; e <= e_max; ++e) {
    TransversalityLevel level{e, solve_mod(d, k, n, m, rep.witness, e, budget, jobs)};
    const FieldElem one = level.result.field->one();
    for (const auto& s : level.result.solutions) {
      if (s.jacobian_value.is_zero()) {
        if (rep.jacobian_nonzero) rep.failure = s;
        rep.jacobian_nonzero = false;
        continue;
      }
      const FieldElem prod = s.alpha * s.jacobian_value;
      if (prod == -one) {
        minus = true;
      } else if (prod == one) {
        plus = true;
      } else {
        if (rep.unit_identity && rep.jacobian_nonzero) rep.failure = s;
        rep.unit_identity = false;
      }
    }
    rep.levels.push_back(std::move(level));
  }
  if (minus) rep.observed_signs.push_back(-1);
  if (plus) rep.observed_signs.push_back(1);
  if (!rep.jacobian_nonzero) {
    rep.verdict = Verdict::kFail;
    rep.note = "Jacobian vanishes at a finite solution";
  } else if (!rep.unit_identity) {
    rep.verdict = Verdict::kFail;
    rep.note = "alpha * J is not +-1 at a finite solution";
  }
  return rep;
}

namespace {

using P3 = MPoly<FieldElem, 3>;
constexpr std::size_t kA3 = 0;
constexpr std::size_t kC3 = 1;
constexpr std::size_t kG3 = 2;

template <class T>
T det3(const std::array<std::array<T, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// a * g(w, gamma) + c in GF(p)[a, c, gamma], g given by its z-coefficients
// as polynomials in gamma.
P3 apply_form(const std::vector<P3>& g_coeffs, const P3& a, const P3& c, const P3& w) {
  P3 acc;
  for (std::size_t j = g_coeffs.size(); j-- > 0;) acc = acc * w + g_coeffs[j];
  return a * acc + c;
}

}  // namespace

NcritReport ncrit_counterexamples() {
  NcritReport rep;

  rep.form10 = ncritical_form_symbolic(10, {7, 1});
  const Int seven(7);
  rep.form10_reduces_to_constant = true;
  for (std::size_t j = 0; j < rep.form10.coeffs.size(); ++j) {
    for (const Rat& x : rep.form10.coeffs[j].coeffs()) {
      if (sgn(x) != 0 && !(val_p(x, seven) > ExtVal(0L))) rep.form10_reduces_to_constant = false;
    }
  }
  // Exponent 2 + j0 + j1 with j1 <= 1; its denominator is divisible by 7
  // only at exponent 7.
  rep.form10_binomials_divisible = true;
  for (int j1 = 0; j1 <= 1; ++j1) {
    const int j0 = 5 - j1;
    const Int bin = binomial(7, static_cast<unsigned>(j0));
    rep.form10_binomials.emplace_back(j0, bin);
    if (mpz_divisible_ui_p(bin.get_mpz_t(), 7) == 0) rep.form10_binomials_divisible = false;
  }
  std::sort(rep.form10_binomials.begin(), rep.form10_binomials.end());

  rep.form4 = ncritical_form_symbolic(4, {1, 1});
  {
    const std::vector<UniPoly<Rat>> want{
        {}, {}, UniPoly<Rat>(std::vector<Rat>{Rat(0), Rat(12)}), UniPoly<Rat>(std::vector<Rat>{Rat(-8), Rat(-8)}),
        UniPoly<Rat>::constant(Rat(6))};
    rep.form4_matches = rep.form4.coeffs == want;
  }
  const FieldPtr gf3 = make_ext_field(3, 1);
  const FieldElem one = gf3->one();
  std::vector<P3> g_coeffs;
  for (const auto& coeff : rep.form4.coeffs) {
    P3 term;
    for (std::size_t i = 0; i < coeff.coeffs().size(); ++i) {
      P3::Exponents e{};
      e[kG3] = static_cast<unsigned>(i);
      term.add_term(e, gf3->from_rat(coeff.coeffs()[i]));
    }
    g_coeffs.push_back(term);
  }
  const P3 a = P3::variable(kA3, one);
  const P3 c = P3::variable(kC3, one);
  const P3 gamma = P3::variable(kG3, one);
  {
    std::vector<P3> want(4);
    want[3] = P3::constant(one) + gamma;
    while (g_coeffs.size() > want.size()) want.emplace_back();
    std::vector<P3> got = g_coeffs;
    while (got.size() < want.size()) got.emplace_back();
    rep.form4_reduction_matches = got == want;
  }

  rep.jacobian_zero = true;
  rep.jacobian_with_gamma_shift_zero = true;
  const std::array<P3, 3> starts{P3(), P3::constant(one), gamma};
  for (int n0 = 1; n0 <= 2; ++n0) {
    for (int n1 = 1; n1 <= 2; ++n1) {
      for (int n2 = 1; n2 <= 2; ++n2) {
        const std::array<int, 3> periods{n0, n1, n2};
        rep.triples.push_back(periods);
        std::array<P3, 3> orbit;
        for (std::size_t i = 0; i < 3; ++i) {
          P3 w = starts[i];
          for (int s = 0; s < periods[i]; ++s) w = apply_form(g_coeffs, a, c, w);
          orbit[i] = w;
        }
        // Rows: d/dc, d/da, d/dgamma; columns: the three critical orbits.
        auto jac_of = [&](const std::array<P3, 3>& cols) {
          std::array<std::array<P3, 3>, 3> mat;
          for (std::size_t i = 0; i < 3; ++i) {
            mat[0][i] = cols[i].derivative(kC3);
            mat[1][i] = cols[i].derivative(kA3);
            mat[2][i] = cols[i].derivative(kG3);
          }
          return det3(mat);
        };
        if (!jac_of(orbit).is_zero()) rep.jacobian_zero = false;
        std::array<P3, 3> shifted = orbit;
        shifted[2] -= gamma;
        if (!jac_of(shifted).is_zero()) rep.jacobian_with_gamma_shift_zero = false;
      }
    }
  }
  return rep;
}

}  // namespace pcfcert
