#pragma once

#include <cstddef>
#include <vector>

#include "pcfcert/arith.hpp"
#include "pcfcert/unipoly.hpp"

namespace pcfcert {

/// p-adic Newton polygon of f = sum a_i x^i: the lower convex hull of the
/// points (i, v_p(a_i)) over nonzero a_i. A segment of slope -s and
/// horizontal length l accounts for exactly l roots (with multiplicity, over
/// an algebraic closure of Q_p) of valuation s. Roots at 0 are not part of
/// the hull; they are counted separately as roots of valuation INFINITY.
struct NewtonPolygon {
  struct Point {
    std::size_t exponent = 0;
    long valuation = 0;
  };
  struct Segment {
    Rat slope;
    std::size_t length = 0;
  };
  struct RootValuation {
    ExtVal valuation;
    std::size_t multiplicity = 0;
  };

  Int prime;
  std::vector<Point> points;
  std::vector<Segment> segments;  // slopes strictly increasing
  std::size_t zero_roots = 0;     // order of vanishing at 0
  std::size_t degree = 0;

  /// INFINITY entry first (if any), then one entry per segment.
  std::vector<RootValuation> root_valuations() const;
  /// Every root, INFINITY included, has valuation >= bound.
  bool all_roots_at_least(const Rat& bound) const;
  /// No roots at 0 and every hull slope equals -value.
  bool all_roots_equal(const Rat& value) const;
};

/// Throws DomainError for the zero polynomial or a non-prime p.
NewtonPolygon newton_polygon(const UniPoly<Rat>& f, const Int& p);

}  // namespace pcfcert
