#include "pcfcert/newton_polygon.hpp"

#include "pcfcert/errors.hpp"

namespace pcfcert {

namespace {

// Cross product of (b - a) x (c - a); <= 0 means b is not strictly below segment ac.
Int cross(const NewtonPolygon::Point& a, const NewtonPolygon::Point& b, const NewtonPolygon::Point& c) {
  const Int abx = static_cast<long>(b.exponent - a.exponent);
  const Int aby = b.valuation - a.valuation;
  const Int acx = static_cast<long>(c.exponent - a.exponent);
  const Int acy = c.valuation - a.valuation;
  return Int(abx * acy - aby * acx);
}

}  // namespace

std::vector<NewtonPolygon::RootValuation> NewtonPolygon::root_valuations() const {
  std::vector<RootValuation> out;
  if (zero_roots > 0) out.push_back({ExtVal::infinity(), zero_roots});
  for (const auto& s : segments) out.push_back({ExtVal(Rat(-s.slope)), s.length});
  return out;
}

bool NewtonPolygon::all_roots_at_least(const Rat& bound) const {
  for (const auto& s : segments) {
    if (-s.slope < bound) return false;
  }
  return true;
}

bool NewtonPolygon::all_roots_equal(const Rat& value) const {
  if (zero_roots > 0) return false;
  for (const auto& s : segments) {
    if (-s.slope != value) return false;
  }
  return true;
}

NewtonPolygon newton_polygon(const UniPoly<Rat>& f, const Int& p) {
  if (f.is_zero()) throw DomainError("newton_polygon: zero polynomial");
  if (!is_prime(p)) throw DomainError("newton_polygon: " + p.get_str() + " is not prime");
  NewtonPolygon np;
  np.prime = p;
  np.degree = static_cast<std::size_t>(f.degree());
  np.zero_roots = f.order_at_zero();
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    const ExtVal v = val_p(c[i], p);
    np.points.push_back({i, v.value().get_num().get_si()});
  }
  // Andrew's monotone chain, lower half; collinear points are dropped so
  // consecutive segments have strictly increasing slopes.
  std::vector<NewtonPolygon::Point> hull;
  for (const auto& pt : np.points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
    hull.push_back(pt);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long dx = static_cast<long>(hull[i].exponent - hull[i - 1].exponent);
    Rat slope(Int(hull[i].valuation - hull[i - 1].valuation), Int(dx));
    slope.canonicalize();
    np.segments.push_back({slope, static_cast<std::size_t>(dx)});
  }
  return np;
}

}  // namespace pcfcert
