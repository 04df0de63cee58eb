#include "pcfcert/belyi.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pcfcert/errors.hpp"

namespace pcfcert {

namespace {

void check_bicritical(int d, int k) {
  if (d < 3) throw DomainError("belyi: degree must be >= 3, got " + std::to_string(d));
  if (k < 1 || k > d - 2) {
    throw DomainError("belyi: k must satisfy 1 <= k <= d-2, got d=" + std::to_string(d) +
                      " k=" + std::to_string(k));
  }
}

}  // namespace

UniPoly<Rat> BelyiPoly::poly() const {
  std::vector<Rat> c(static_cast<std::size_t>(d) + 1, Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) c[static_cast<std::size_t>(d) - i] = b[i];
  return UniPoly<Rat>(std::move(c));
}

BelyiPoly belyi_coeffs(int d, int k) {
  check_bicritical(d, k);
  BelyiPoly out;
  out.d = d;
  out.k = k;
  for (int i = 0; i <= k; ++i) {
    Int num = 1;
    for (int j = 0; j <= k; ++j) {
      if (j != i) num *= d - j;
    }
    Rat bi(num, Int(factorial(static_cast<unsigned>(k - i)) * factorial(static_cast<unsigned>(i))));
    bi.canonicalize();
    if ((k - i) % 2 != 0) bi = -bi;
    out.b.push_back(bi);
  }
  return out;
}

int max_canonical_k(int d) { return (d - 1) / 2; }

int canonical_k(int d, int k) {
  check_bicritical(d, k);
  return k <= max_canonical_k(d) ? k : d - 1 - k;
}

ConjugateParams conjugate_params(const Rat& a, const Rat& c, int d, int k) {
  check_bicritical(d, k);
  if (sgn(a) == 0) throw DomainError("conjugate_params: a = 0 gives a degenerate map");
  return {a, Rat(1 - a - c), d - 1 - k};
}

BicriticalMap::BicriticalMap(BelyiPoly belyi) : belyi_(std::move(belyi)), poly_(belyi_.poly()) {}

UniPoly<Rat> BicriticalMap::specialize(const Rat& a, const Rat& c) const {
  return poly_.scaled(a) + UniPoly<Rat>::constant(c);
}

UniPoly<FieldElem> BicriticalMap::specialize(const FieldElem& a, const FieldElem& c) const {
  const FieldPtr& field = a.is_bound() ? a.field() : c.field();
  if (!field) throw DomainError("specialize: parameters carry no field");
  if (a.is_bound() && c.is_bound() && !a.field()->same_as(*c.field())) {
    throw DomainError("specialize: a and c live in different fields");
  }
  std::vector<FieldElem> coeffs;
  for (const Rat& x : poly_.coeffs()) coeffs.push_back(field->from_rat(x) * a);
  if (coeffs.empty()) coeffs.push_back(field->zero());
  coeffs[0] = coeffs[0] + c;
  return UniPoly<FieldElem>(std::move(coeffs));
}

BiPoly BicriticalMap::apply(const BiPoly& w) const {
  const Rat one(1);
  return apply_bicritical(poly_, BiPoly::variable(kVarA, one), BiPoly::variable(kVarC, one), w, one);
}

MPoly<Rat, 2> NCriticalForm::as_bipoly() const {
  MPoly<Rat, 2> out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const auto& g = coeffs[j].coeffs();
    for (std::size_t i = 0; i < g.size(); ++i) out.add_term({static_cast<unsigned>(j), static_cast<unsigned>(i)}, g[i]);
  }
  return out;
}

UniPoly<Rat> NCriticalForm::specialize(const Rat& gamma) const {
  std::vector<Rat> out;
  out.reserve(coeffs.size());
  for (const auto& g : coeffs) out.push_back(g(gamma));
  return UniPoly<Rat>(std::move(out));
}

namespace {

// Expands the antiderivative of C * z^(d-S-1) * prod_i (z - gamma_i)^{k_i}
// term by term, with gamma_i given as polynomials in one symbol.
std::vector<UniPoly<Rat>> ncritical_coeffs(int d, const std::vector<int>& profile,
                                           const std::vector<UniPoly<Rat>>& gammas) {
  const int s = std::accumulate(profile.begin(), profile.end(), 0);
  const Rat scale(factorial(static_cast<unsigned>(d)) / factorial(static_cast<unsigned>(d - s - 1)));
  std::vector<UniPoly<Rat>> coeffs(static_cast<std::size_t>(d) + 1);
  std::vector<int> j(profile.size(), 0);
  while (true) {
    UniPoly<Rat> term = UniPoly<Rat>::constant(scale);
    int sj = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const int ki = profile[i];
      const Rat binom(binomial(static_cast<unsigned>(ki), static_cast<unsigned>(j[i])));
      term = term * pow(-gammas[i], static_cast<unsigned>(ki - j[i])).scaled(binom);
      sj += j[i];
    }
    const int exponent = d + sj - s;
    coeffs[static_cast<std::size_t>(exponent)] += term.scaled(Rat(Int(1), Int(exponent)));
    std::size_t pos = 0;
    while (pos < j.size() && j[pos] == profile[pos]) j[pos++] = 0;
    if (pos == j.size()) break;
    ++j[pos];
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

void check_profile(int d, const std::vector<int>& profile) {
  if (profile.empty()) throw DomainError("ncritical: profile must be nonempty");
  for (int k : profile) {
    if (k < 1) throw DomainError("ncritical: ramification entries must be >= 1");
  }
  const int n = static_cast<int>(profile.size()) + 1;
  const int s = std::accumulate(profile.begin(), profile.end(), 0);
  if (s < n - 1 || s > d - 2) {
    throw DomainError("ncritical: need n-1 <= sum(k) <= d-2, got sum " + std::to_string(s) + " with d=" +
                      std::to_string(d));
  }
}

}  // namespace

NCriticalForm ncritical_form(int d, const std::vector<int>& profile, const std::vector<Rat>& gammas) {
  check_profile(d, profile);
  if (gammas.size() + 1 != profile.size()) {
    throw DomainError("ncritical: expected " + std::to_string(profile.size() - 1) + " gamma values");
  }
  std::vector<Rat> seen{Rat(0), Rat(1)};
  for (const Rat& g : gammas) {
    if (std::find(seen.begin(), seen.end(), g) != seen.end()) {
      throw DomainError("ncritical: critical points must be distinct from each other, 0 and 1");
    }
    seen.push_back(g);
  }
  std::vector<UniPoly<Rat>> gpolys{UniPoly<Rat>::constant(Rat(1))};
  for (const Rat& g : gammas) gpolys.push_back(UniPoly<Rat>::constant(g));
  NCriticalForm f;
  f.d = d;
  f.profile = profile;
  f.gammas = gammas;
  f.coeffs = ncritical_coeffs(d, profile, gpolys);
  return f;
}

NCriticalForm ncritical_form_symbolic(int d, const std::vector<int>& profile) {
  check_profile(d, profile);
  if (profile.size() != 2) throw DomainError("ncritical: symbolic gamma supports exactly three critical points");
  NCriticalForm f;
  f.d = d;
  f.profile = profile;
  f.symbolic = true;
  f.coeffs = ncritical_coeffs(d, profile,
                              {UniPoly<Rat>::constant(Rat(1)), UniPoly<Rat>(std::vector<Rat>{Rat(0), Rat(1)})});
  return f;
}

Rat ncritical_to_belyi_ratio(int k) {
  Rat r(factorial(static_cast<unsigned>(k)));
  return k % 2 == 0 ? r : Rat(-r);
}

}  // namespace pcfcert
