#include "pcfcert/valdyn.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcfcert/errors.hpp"

namespace pcfcert {

namespace {

bool integral_or_inf(const ExtVal& v) { return v.is_infinite() || v.is_integer(); }

}  // namespace

void ValParams::validate() const {
  if (d < 3 || k < 1 || k > d - 2) throw DomainError("valdyn: need d >= 3 and 1 <= k <= d-2");
  if (r < 0 || r > k) throw DomainError("valdyn: need 0 <= r <= k");
  if (r == 1) throw DomainError("valdyn: r = 1 is never an IDF index");
  if (e < 1) throw DomainError("valdyn: e must be >= 1");
  if (r != 0 && e % static_cast<unsigned>(r) == 0) throw DomainError("valdyn: r divides e");
  if (!integral_or_inf(v_alpha) || !integral_or_inf(v_beta)) {
    throw DomainError("valdyn: valuations must be integers or inf");
  }
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kCase1: return "CASE1";
    case CaseTag::kCase2: return "CASE2";
    case CaseTag::kCase3: return "CASE3";
    case CaseTag::kCase4i: return "CASE4I";
    case CaseTag::kCase4ii: return "CASE4II";
    case CaseTag::kCase4iii: return "CASE4III";
    case CaseTag::kIntegral: return "INTEGRAL";
  }
  return "?";
}

CaseTag parse_case_tag(const std::string& text) {
  for (CaseTag t : {CaseTag::kCase1, CaseTag::kCase2, CaseTag::kCase3, CaseTag::kCase4i, CaseTag::kCase4ii,
                    CaseTag::kCase4iii, CaseTag::kIntegral}) {
    if (to_string(t) == text) return t;
  }
  throw DomainError("unknown case tag: " + text);
}

std::array<ExtVal, 3> image_terms(const ExtVal& v_x, const ValParams& params) {
  const ExtVal e(static_cast<long>(params.e));
  const ExtVal& va = params.v_alpha;
  if (v_x.is_finite() && sgn(v_x.value()) == 0) return {va + e, va, params.v_beta};
  if (v_x.is_finite() && sgn(v_x.value()) < 0) {
    return {va + e + v_x.times(params.d), va + v_x.times(params.d - params.r), params.v_beta};
  }
  return {va + e + v_x.times(params.d - params.k), va + v_x.times(params.d - params.r), params.v_beta};
}

TropVal image_val(const ExtVal& v_x, const ValParams& params) {
  params.validate();
  if (!integral_or_inf(v_x)) throw DomainError("valdyn: input valuation must be an integer or inf");
  const auto terms = image_terms(v_x, params);
  if (v_x.is_finite() && sgn(v_x.value()) < 0 && terms[0].is_finite() && terms[0] == terms[1]) {
    throw std::logic_error("valdyn: alpha-terms tie at v_x = " + v_x.to_string() + ", contradicting r !| e");
  }
  const ExtVal m = std::min({terms[0], terms[1], terms[2]});
  const auto hits = std::count(terms.begin(), terms.end(), m);
  return {m, m.is_infinite() || hits == 1};
}

std::vector<TropVal> orbit_val(int start, const ValParams& params, int steps) {
  if (start != 0 && start != 1) throw DomainError("valdyn: orbit start must be 0 or 1");
  if (steps < 1) throw DomainError("valdyn: need at least one step");
  params.validate();
  std::vector<TropVal> out;
  ExtVal v = start == 0 ? ExtVal::infinity() : ExtVal(0L);
  bool exact = true;
  for (int i = 0; i < steps; ++i) {
    TropVal next = image_val(v, params);
    exact = exact && next.exact;
    next.exact = exact;
    out.push_back(next);
    v = next.value;
  }
  return out;
}

CaseTag classify_case(const ValParams& params) {
  params.validate();
  const ExtVal zero(0L);
  const ExtVal& va = params.v_alpha;
  const ExtVal& vb = params.v_beta;
  if (va < zero && vb < zero) return CaseTag::kCase1;
  if (va < zero) return CaseTag::kCase2;
  if (vb >= zero) return CaseTag::kIntegral;
  if (va == zero) return CaseTag::kCase3;
  const auto terms = image_terms(vb, params);
  const ExtVal m = std::min(terms[0], terms[1]);
  if (m < vb) return CaseTag::kCase4i;
  if (m > vb) return CaseTag::kCase4ii;
  return CaseTag::kCase4iii;
}

std::string to_string(DivergenceCertificate::Kind kind) {
  switch (kind) {
    case DivergenceCertificate::Kind::kStrictlyDecreasing: return "strictly_decreasing";
    case DivergenceCertificate::Kind::kConstant: return "constant";
    case DivergenceCertificate::Kind::kInconclusive: return "inconclusive";
  }
  return "?";
}

DivergenceCertificate divergence_certificate(const ValParams& params, int steps) {
  using Kind = DivergenceCertificate::Kind;
  DivergenceCertificate cert;
  cert.tag = classify_case(params);
  if (cert.tag == CaseTag::kIntegral) throw DomainError("divergence_certificate: parameters are integral");
  if (steps < 1) throw DomainError("divergence_certificate: need at least one step");

  if (cert.tag == CaseTag::kCase4iii) {
    cert.reason = "CASE4III has no valuation-only certificate";
    return cert;
  }
  if (cert.tag == CaseTag::kCase4ii) {
    const auto terms = image_terms(params.v_beta, params);
    cert.start = 0;
    cert.steps = orbit_val(0, params, steps);
    // alpha = 0 leaves both alpha-terms infinite: f is the constant beta.
    const ExtVal alpha_min = std::min(terms[0], terms[1]);
    cert.margin = alpha_min.is_infinite() ? alpha_min : ExtVal(Rat(alpha_min.value() - params.v_beta.value()));
    cert.kind = Kind::kConstant;
    for (const auto& s : cert.steps) {
      if (!s.exact || !(s.value == params.v_beta)) {
        cert.kind = Kind::kInconclusive;
        cert.reason = "orbit of 0 left v_beta";
      }
    }
    return cert;
  }

  cert.start = (cert.tag == CaseTag::kCase1 || cert.tag == CaseTag::kCase4i) ? 0 : 1;
  cert.steps = orbit_val(cert.start, params, steps);
  ExtVal prev = cert.start == 0 ? ExtVal::infinity() : ExtVal(0L);
  for (const auto& s : cert.steps) {
    if (!s.exact) {
      cert.reason = "non-unique minimum along the orbit";
      return cert;
    }
    if (!(s.value < prev)) {
      cert.reason = "orbit valuations did not strictly decrease";
      return cert;
    }
    prev = s.value;
  }
  // Every alpha-term has slope >= 2 in v_x, so once the smaller one lies
  // below both v_x and v_beta it stays the unique minimum and keeps falling.
  const ExtVal& last = cert.steps.back().value;
  if (!(last < ExtVal(0L))) {
    cert.reason = "last orbit valuation is not negative";
    return cert;
  }
  const auto terms = image_terms(last, params);
  const ExtVal next = std::min(terms[0], terms[1]);
  cert.margin = ExtVal(Rat(next.value() - last.value()));
  if (!(next < last) || !(next < params.v_beta)) {
    cert.reason = "step bound does not hold at the last computed step";
    return cert;
  }
  cert.kind = Kind::kStrictlyDecreasing;
  return cert;
}

namespace {

using XY = MPoly<Rat, 2>;

XY lift_x(const UniPoly<Rat>& g) { return lift<Rat, 2>(g, 0); }

}  // namespace

MPoly<Rat, 2> shift_remainder(const BelyiPoly& belyi, const Rat& alpha, const Rat& beta, unsigned n) {
  const Rat one(1);
  const UniPoly<Rat> b = belyi.poly();
  const UniPoly<Rat> f = b.scaled(alpha) + UniPoly<Rat>::constant(beta);
  const auto& bc = b.coeffs();
  XY h = XY::variable(1, one);
  UniPoly<Rat> u(std::vector<Rat>{Rat(0), one});
  for (unsigned step = 1; step <= n; ++step) {
    // alpha * sum_j b_j sum_{i>=1} C(j,i) U^(j-i) V^i
    const XY ux = lift_x(u);
    std::vector<XY> upow{XY::constant(one)};
    std::vector<XY> vpow{XY::constant(one)};
    for (std::size_t j = 1; j < bc.size(); ++j) {
      upow.push_back(upow.back() * ux);
      vpow.push_back(vpow.back() * h);
    }
    XY next;
    for (std::size_t j = 1; j < bc.size(); ++j) {
      if (sgn(bc[j]) == 0) continue;
      for (std::size_t i = 1; i <= j; ++i) {
        const Rat coef = alpha * bc[j] * Rat(binomial(static_cast<unsigned>(j), static_cast<unsigned>(i)));
        next += (upow[j - i] * vpow[i]).scaled(coef);
      }
    }
    h = std::move(next);
    u = compose(f, u);
  }
  return h;
}

MPoly<Rat, 2> shift_remainder_taylor(const BelyiPoly& belyi, const Rat& alpha, const Rat& beta, unsigned n) {
  const UniPoly<Rat> f = belyi.poly().scaled(alpha) + UniPoly<Rat>::constant(beta);
  UniPoly<Rat> g(std::vector<Rat>{Rat(0), Rat(1)});
  for (unsigned i = 0; i < n; ++i) g = compose(f, g);
  // g(X + Y) - g(X) = sum_{j >= 1} g^(j)(X) / j! * Y^j
  XY out;
  UniPoly<Rat> deriv = g.derivative();
  for (unsigned j = 1; !deriv.is_zero(); ++j) {
    const Rat inv_fact(Int(1), factorial(j));
    for (std::size_t i = 0; i < deriv.coeffs().size(); ++i) {
      out.add_term({static_cast<unsigned>(i), j}, deriv.coeffs()[i] * inv_fact);
    }
    deriv = deriv.derivative();
  }
  return out;
}

ShiftBoundCheck shift_bounds(const BelyiPoly& belyi, const Rat& alpha, const Rat& beta, const Int& p, const Rat& x,
                             const Rat& y, unsigned n) {
  const ExtVal va = val_p(alpha, p);
  const ExtVal vb = val_p(beta, p);
  if (!(vb < ExtVal(0L)) || !(ExtVal(0L) < va)) throw DomainError("shift_bounds: need v(beta) < 0 < v(alpha)");
  if (val_p(x, p) < vb || val_p(y, p) < va) throw DomainError("shift_bounds: need v(x) >= v(beta), v(y) >= v(alpha)");
  const UniPoly<Rat> f = belyi.poly().scaled(alpha) + UniPoly<Rat>::constant(beta);
  Rat fx = x;
  Rat fxy = x + y;
  for (unsigned i = 0; i < n; ++i) {
    fx = f(fx);
    fxy = f(fxy);
  }
  ShiftBoundCheck out;
  out.v_h = val_p(Rat(fxy - fx), p);
  out.v_fn = val_p(fx, p);
  out.h_ok = out.v_h >= va;
  out.fn_ok = out.v_fn >= vb;
  return out;
}

}  // namespace pcfcert
