#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pcfcert/errors.hpp"
#include "pcfcert/field_roots.hpp"
#include "pcfcert/pcf.hpp"

using namespace pcfcert;

namespace {

const Rat kOne(1);
const BiPoly A = BiPoly::variable(kVarA, kOne);
const BiPoly C = BiPoly::variable(kVarC, kOne);
const BiPoly One = BiPoly::constant(kOne);

BiPoly cst(long v) { return BiPoly::constant(Rat(v)); }

UniPoly<Rat> upoly(std::initializer_list<long> low_first) {
  std::vector<Rat> c;
  for (long x : low_first) c.emplace_back(x);
  return UniPoly<Rat>(std::move(c));
}

bool equal_up_to_sign(const UniPoly<Rat>& f, const UniPoly<Rat>& g) { return f == g || f == -g; }

using FPoly = MPoly<FieldElem, 2>;

FPoly reduce(const BiPoly& f, const FieldPtr& field) {
  return f.map_coeffs<FieldElem>([&](const Rat& x) { return field->from_rat(x); });
}

// Orbit of `which` under s*a*z^(tp) + c over GF(p).
FPoly reduced_orbit(const ReducedMap& rm, const FieldPtr& field, int which, int n) {
  const FieldElem one = field->one();
  const FPoly a = FPoly::variable(kVarA, one);
  const FPoly c = FPoly::variable(kVarC, one);
  FPoly z = which == 0 ? FPoly() : FPoly::constant(one);
  for (int i = 0; i < n; ++i) z = (a * pow(z, static_cast<unsigned>(rm.tp), one)).scaled(rm.s) + c;
  return z;
}

}  // namespace

TEST(OrbitPolys, PeriodicExamples) {
  EXPECT_EQ(critical_orbit_poly(3, 1, 0, 1).poly, C);
  EXPECT_EQ(critical_orbit_poly(3, 1, 1, 1).poly, A + C - One);
  const BiPoly c2 = C * C;
  EXPECT_EQ(critical_orbit_poly(3, 1, 0, 2).poly, A * (cst(-2) * c2 * C + cst(3) * c2) + C);
  EXPECT_EQ(orbit_point(BicriticalMap(belyi_coeffs(3, 1)), 1, 0), One);
  EXPECT_THROW(critical_orbit_poly(3, 1, 0, 0), DomainError);
  EXPECT_THROW(critical_orbit_poly(3, 1, 2, 1), DomainError);
}

TEST(OrbitPolys, PreperiodicExamples) {
  EXPECT_EQ(preperiodic_poly(3, 1, 0, 1, 0).poly, C);
  EXPECT_EQ(preperiodic_poly(3, 1, 1, 1, 0).poly, A + C - One);
  const BiPoly c2 = C * C;
  EXPECT_EQ(preperiodic_poly(3, 1, 0, 2, 1).poly, A * (cst(-2) * c2 * C + cst(3) * c2));
  EXPECT_EQ(preperiodic_poly(3, 1, 0, 2, 1).kind, OrbitKind::kPreperiodic);
  EXPECT_THROW(preperiodic_poly(3, 1, 0, 1, 1), DomainError);
  EXPECT_THROW(preperiodic_poly(3, 1, 0, 1, 2), DomainError);
}

TEST(OrbitPolys, EvaluationMatchesIteration) {
  std::mt19937_64 rng(oracle::kSeed);
  for (auto [d, k] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{7, 3}}) {
    for (int n = 1; n <= 3; ++n) {
      for (int which : {0, 1}) {
        const auto f = critical_orbit_poly(d, k, which, n);
        const Rat a = oracle::random_rat(rng, 5);
        const Rat c = oracle::random_rat(rng, 5);
        std::vector<Rat> map = oracle::belyi_by_integration(d, k);
        for (Rat& x : map) x *= a;
        map[0] += c;
        Rat z(which);
        for (int i = 0; i < n; ++i) z = oracle::horner(map, z);
        EXPECT_EQ(f.poly.evaluate({a, c}), z - Rat(which));
      }
    }
  }
}

TEST(OrbitPolys, BudgetIsEnforced) {
  EXPECT_THROW(critical_orbit_poly(3, 1, 0, 10), ResourceError);
  Budget tight;
  tight.max_monomials = 8;
  EXPECT_NO_THROW(critical_orbit_poly(3, 1, 0, 2, tight));
  EXPECT_THROW(critical_orbit_poly(3, 1, 0, 3, tight), ResourceError);
}

TEST(Integrality, Examples) {
  const auto c1 = integrality_certificate(3, 1, 1, 1);
  EXPECT_EQ(c1.witness, (IdfWitness{3, 0, 1}));
  EXPECT_TRUE(equal_up_to_sign(c1.r_a.stripped, upoly({-1, 1})));
  EXPECT_EQ(c1.r_c.polygon.zero_roots, 1u);
  EXPECT_EQ(c1.verdict, Verdict::kPass);
  EXPECT_TRUE(recheck(c1));

  const auto c2 = integrality_certificate(3, 1, 2, 1);
  EXPECT_TRUE(equal_up_to_sign(c2.r_a.stripped, upoly({-1, 1}) * upoly({-1, -1, -1, 2})));
  EXPECT_TRUE(equal_up_to_sign(c2.r_c.stripped, upoly({0, 1}) * upoly({1, 3, -5, 2})));
  for (const auto& s : c2.r_a.polygon.segments) EXPECT_EQ(s.slope, Rat(0));
  EXPECT_EQ(c2.verdict, Verdict::kPass);

  EXPECT_EQ(integrality_certificate(5, 1, 1, 1).verdict, Verdict::kPass);
  EXPECT_EQ(integrality_certificate(5, 1, 1, 1).witness.p, 5u);
}

TEST(Integrality, Errors) {
  EXPECT_THROW(integrality_certificate(27, 3, 1, 1), DomainError);
  EXPECT_THROW(integrality_certificate(3, 1, 3, 3), ResourceError);
  EXPECT_THROW(integrality_certificate(3, 1, 0, 1), DomainError);
}

TEST(Integrality, RawResultantMatchesSylvesterAtRationalPoints) {
  std::mt19937_64 rng(oracle::kSeed);
  for (auto [d, k, n, m] : {std::array{3, 1, 2, 1}, std::array{3, 1, 1, 2}, std::array{4, 1, 1, 1},
                            std::array{5, 2, 1, 1}}) {
    const auto cert = integrality_certificate(d, k, n, m);
    const auto F = critical_orbit_poly(d, k, 0, n).poly;
    const auto G = critical_orbit_poly(d, k, 1, m).poly;
    // stripped * content * var^power reassembles the raw resultant
    EXPECT_EQ(cert.r_a.stripped.scaled(cert.r_a.content) * UniPoly<Rat>::monomial(kOne, cert.r_a.power), cert.r_a.raw);
    EXPECT_EQ(cert.r_c.stripped.scaled(cert.r_c.content) * UniPoly<Rat>::monomial(kOne, cert.r_c.power), cert.r_c.raw);
    for (int t = 0; t < 4; ++t) {
      Rat a = oracle::random_rat(rng, 7);
      if (sgn(a) == 0) a = Rat(2);
      std::vector<Rat> fc(static_cast<std::size_t>(F.degree_in(kVarC)) + 1, Rat(0));
      std::vector<Rat> gc(static_cast<std::size_t>(G.degree_in(kVarC)) + 1, Rat(0));
      for (const auto& [e, v] : F.terms()) {
        Rat ap(1);
        for (unsigned i = 0; i < e[kVarA]; ++i) ap *= a;
        fc[e[kVarC]] += v * ap;
      }
      for (const auto& [e, v] : G.terms()) {
        Rat ap(1);
        for (unsigned i = 0; i < e[kVarA]; ++i) ap *= a;
        gc[e[kVarC]] += v * ap;
      }
      EXPECT_EQ(cert.r_a.raw(a), oracle::sylvester_det(fc, gc)) << d << k << n << m;
    }
  }
}

TEST(ReduceMap, Examples) {
  const auto r31 = reduce_map(3, 1, {3, 0, 1});
  EXPECT_EQ(r31.s.index(), 1u);
  EXPECT_EQ(r31.tp, 3);
  const auto r51 = reduce_map(5, 1, {5, 0, 1});
  EXPECT_EQ(r51.s.index(), 1u);
  EXPECT_EQ(r51.tp, 5);
  const auto r82 = reduce_map(8, 2, {3, 2, 1});
  EXPECT_EQ(r82.s.index(), 1u);
  EXPECT_EQ(r82.tp, 6);
  EXPECT_EQ(r82.t, 2);
  EXPECT_THROW(reduce_map(27, 3, {13, 1, 1}), DomainError);
  EXPECT_THROW(reduce_map(3, 1, {3, 0, 2}), DomainError);
}

TEST(ReduceMap, MatchesCoefficientReduction) {
  for (int d = 3; d <= 40; ++d) {
    for (int k = 1; k <= (d - 1) / 2; ++k) {
      const auto w = find_idf_prime(static_cast<std::uint64_t>(d), k);
      if (!w) continue;
      const auto rm = reduce_map(d, k, *w);
      const auto field = make_ext_field(w->p, 1);
      const auto red = reduce(belyi_coeffs(d, k).poly(), *field);
      EXPECT_EQ(red, UniPoly<FieldElem>::monomial(rm.s, static_cast<std::size_t>(rm.tp))) << d << "," << k;
      EXPECT_EQ(static_cast<std::uint64_t>(rm.t) * w->p, static_cast<std::uint64_t>(d - w->r));
    }
  }
}

TEST(Jacobian, Examples) {
  EXPECT_EQ(jacobian(C, A + C - One), cst(-1));
  const BiPoly F = critical_orbit_poly(3, 1, 0, 2).poly;
  EXPECT_TRUE(jacobian(F, F).is_zero());
  const auto gf3 = make_ext_field(3, 1);
  const FPoly J = reduce(jacobian(F, critical_orbit_poly(3, 1, 1, 1).poly), gf3);
  const FieldElem one = gf3->one();
  const FPoly c = FPoly::variable(kVarC, one);
  EXPECT_EQ(J, pow(c, 3, one) - FPoly::constant(one));
}

TEST(SolveMod, Examples) {
  const IdfWitness w{3, 0, 1};
  const auto s1 = solve_mod(3, 1, 1, 1, w, 1);
  ASSERT_EQ(s1.solutions.size(), 1u);
  EXPECT_EQ(s1.solutions[0].alpha.index(), 1u);
  EXPECT_EQ(s1.solutions[0].beta.index(), 0u);
  EXPECT_EQ(s1.solutions[0].jacobian_value.index(), 2u);

  const auto s2 = solve_mod(3, 1, 2, 1, w, 1);
  ASSERT_EQ(s2.solutions.size(), 2u);
  EXPECT_EQ(s2.solutions[0].alpha.index(), 1u);
  EXPECT_EQ(s2.solutions[0].beta.index(), 0u);
  EXPECT_EQ(s2.solutions[0].jacobian_value.index(), 2u);
  EXPECT_EQ(s2.solutions[1].alpha.index(), 2u);
  EXPECT_EQ(s2.solutions[1].beta.index(), 2u);
  EXPECT_EQ(s2.solutions[1].jacobian_value.index(), 1u);

  // GF(3) sits inside GF(9) as the elements with Frobenius fixed.
  const auto s3 = solve_mod(3, 1, 1, 1, w, 2);
  ASSERT_GE(s3.solutions.size(), s1.solutions.size());
  bool found = false;
  for (const auto& s : s3.solutions) {
    EXPECT_FALSE(s.jacobian_value.is_zero());
    if (s.alpha.is_one() && s.beta.is_zero()) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(SolveMod, ThreadCountDoesNotChangeResult) {
  const IdfWitness w{3, 0, 1};
  const auto one = solve_mod(3, 1, 2, 2, w, 2, {}, 1);
  const auto many = solve_mod(3, 1, 2, 2, w, 2, {}, 4);
  ASSERT_EQ(one.solutions.size(), many.solutions.size());
  for (std::size_t i = 0; i < one.solutions.size(); ++i) {
    EXPECT_EQ(one.solutions[i].alpha, many.solutions[i].alpha);
    EXPECT_EQ(one.solutions[i].beta, many.solutions[i].beta);
  }
  EXPECT_EQ(one.alpha_zero_count, many.alpha_zero_count);
}

TEST(SolveMod, BudgetIsEnforced) {
  Budget tight;
  tight.max_enumeration = 80;
  EXPECT_THROW(solve_mod(3, 1, 1, 1, {3, 0, 1}, 2, tight), ResourceError);
  EXPECT_NO_THROW(solve_mod(3, 1, 1, 1, {3, 0, 1}, 1, tight));
}

TEST(SolveMod, SolutionsAreCommonZerosAndNoneAreMissed) {
  for (auto [d, k, n, m] : {std::array{3, 1, 2, 1}, std::array{3, 1, 1, 2}, std::array{4, 1, 2, 1},
                            std::array{5, 1, 1, 1}, std::array{5, 2, 2, 1}}) {
    const IdfWitness w = *find_idf_prime(static_cast<std::uint64_t>(d), k);
    const auto res = solve_mod(d, k, n, m, w, 1);
    const auto& field = res.field;
    const FPoly F = reduce(critical_orbit_poly(d, k, 0, n).poly, field);
    const FPoly G = reduce(critical_orbit_poly(d, k, 1, m).poly, field);
    std::size_t expected = 0;
    std::uint64_t zero_alpha = 0;
    for (const auto& a : field->elements()) {
      for (const auto& c : field->elements()) {
        if (!F.evaluate({a, c}).is_zero() || !G.evaluate({a, c}).is_zero()) continue;
        if (a.is_zero()) {
          ++zero_alpha;
        } else {
          ++expected;
        }
      }
    }
    EXPECT_EQ(res.solutions.size(), expected);
    EXPECT_EQ(res.alpha_zero_count, zero_alpha);
    for (const auto& s : res.solutions) {
      EXPECT_TRUE(F.evaluate({s.alpha, s.beta}).is_zero());
      EXPECT_TRUE(G.evaluate({s.alpha, s.beta}).is_zero());
    }
  }
}

TEST(Reduction, OrbitCommutesWithReducedMap) {
  for (auto [d, k] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{5, 2}, std::pair{8, 2}}) {
    const IdfWitness w = *find_idf_prime(static_cast<std::uint64_t>(d), k);
    const auto field = make_ext_field(w.p, 1);
    const auto rm = reduce_map(d, k, w);
    const FieldElem one = field->one();
    for (int n = 1; n <= (d >= 5 ? 2 : 3); ++n) {
      for (int which : {0, 1}) {
        const FPoly lhs = reduce(orbit_point(BicriticalMap(belyi_coeffs(d, k)), which, n), field);
        EXPECT_EQ(lhs, reduced_orbit(rm, field, which, n)) << d << "," << k << " n=" << n;
      }
      // d/da f^n(0) = s * (f^(n-1)(0))^(tp), d/dc f^n(0) = 1 over GF(p).
      const FPoly fn = reduced_orbit(rm, field, 0, n);
      const FPoly prev = reduced_orbit(rm, field, 0, n - 1);
      EXPECT_EQ(fn.derivative(kVarA), pow(prev, static_cast<unsigned>(rm.tp), one).scaled(rm.s));
      EXPECT_EQ(fn.derivative(kVarC), FPoly::constant(one));
    }
  }
}

TEST(Transversality, Examples) {
  const auto t1 = transversality_check(3, 1, 1, 1, 2);
  EXPECT_EQ(t1.verdict, Verdict::kPass);
  EXPECT_EQ(t1.levels.size(), 2u);
  EXPECT_EQ(t1.observed_signs, std::vector<int>{-1});

  const auto t2 = transversality_check(3, 1, 2, 1, 1);
  EXPECT_EQ(t2.verdict, Verdict::kPass);
  EXPECT_EQ(t2.observed_signs, std::vector<int>{-1});
  EXPECT_TRUE(t2.unit_identity);

  const auto t3 = transversality_check(4, 1, 1, 1, 1);
  EXPECT_EQ(t3.verdict, Verdict::kPass);
  EXPECT_EQ(t3.witness.p, 2u);
  EXPECT_TRUE(t3.sign_ambiguous);
  ASSERT_EQ(t3.levels[0].result.solutions.size(), 1u);
  EXPECT_TRUE(t3.levels[0].result.solutions[0].alpha.is_one());
  EXPECT_TRUE(t3.levels[0].result.solutions[0].beta.is_zero());
  EXPECT_TRUE(t3.levels[0].result.solutions[0].jacobian_value.is_one());
  EXPECT_THROW(transversality_check(27, 3, 1, 1, 1), DomainError);
}

TEST(Transversality, UnitIdentityAndNoCommonRootWithJacobian) {
  for (auto [d, k, n, m] : {std::array{3, 1, 2, 1}, std::array{3, 1, 1, 2}, std::array{3, 1, 2, 2},
                            std::array{4, 1, 2, 1}, std::array{5, 1, 1, 1}, std::array{5, 2, 2, 1}}) {
    const auto rep = transversality_check(d, k, n, m, 2);
    ASSERT_EQ(rep.verdict, Verdict::kPass) << d << k << n << m;
    const BiPoly F = critical_orbit_poly(d, k, 0, n).poly;
    const BiPoly G = critical_orbit_poly(d, k, 1, m).poly;
    const BiPoly J = jacobian(F, G);
    for (const auto& level : rep.levels) {
      const auto& field = level.result.field;
      const FPoly Fb = reduce(F, field);
      const FPoly Gb = reduce(G, field);
      const FPoly Jb = reduce(J, field);
      for (const auto& a : field->elements()) {
        for (const auto& c : field->elements()) {
          const bool common = Fb.evaluate({a, c}).is_zero() && Gb.evaluate({a, c}).is_zero();
          if (!common) continue;
          const FieldElem jv = Jb.evaluate({a, c});
          EXPECT_FALSE(jv.is_zero());
          const FieldElem prod = a * jv;
          EXPECT_TRUE(prod.is_one() || (-prod).is_one());
        }
      }
    }
  }
}

TEST(Integrality, RootsReduceIntoSolutionSet) {
  // Each GF(p) solution is a root of the reduced stripped resultants.
  for (auto [d, k, n, m] : {std::array{3, 1, 2, 1}, std::array{3, 1, 1, 2}, std::array{5, 1, 1, 1}}) {
    const auto cert = integrality_certificate(d, k, n, m);
    const auto sol = solve_mod(d, k, n, m, cert.witness, 1);
    const auto ra = reduce(cert.r_a.stripped, *sol.field);
    const auto rc = reduce(cert.r_c.stripped, *sol.field);
    for (const auto& s : sol.solutions) {
      EXPECT_TRUE(ra(s.alpha).is_zero());
      EXPECT_TRUE(rc(s.beta).is_zero());
    }
  }
}

TEST(Ncrit, CounterexampleReport) {
  const auto rep = ncrit_counterexamples();
  EXPECT_EQ(rep.form10.d, 10);
  EXPECT_TRUE(rep.form10_reduces_to_constant);
  EXPECT_FALSE(rep.form10_binomials.empty());
  for (const auto& [j0, b] : rep.form10_binomials) EXPECT_EQ(b % 7, 0) << j0;
  EXPECT_TRUE(rep.form10_binomials_divisible);
  EXPECT_TRUE(rep.form4_matches);
  EXPECT_TRUE(rep.form4_reduction_matches);
  EXPECT_EQ(rep.triples.size(), 8u);
  EXPECT_TRUE(rep.jacobian_zero);
  EXPECT_FALSE(rep.jacobian_with_gamma_shift_zero);
}

TEST(Verdict, Names) {
  EXPECT_EQ(to_string(Verdict::kPass), "PASS");
  EXPECT_EQ(to_string(Verdict::kFail), "FAIL");
  EXPECT_EQ(to_string(Verdict::kDegenerate), "DEGENERATE");
}
