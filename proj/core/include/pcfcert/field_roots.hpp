#pragma once

#include <vector>

#include "pcfcert/finite_field.hpp"
#include "pcfcert/unipoly.hpp"

namespace pcfcert {

/// All x in the coefficient field with f(x) = 0, by exhaustive evaluation,
/// in increasing element index. Throws DomainError for the zero polynomial.
std::vector<FieldElem> roots_in_field(const UniPoly<FieldElem>& f);

/// Coefficient-wise reduction of a p-integral rational polynomial.
UniPoly<FieldElem> reduce(const UniPoly<Rat>& f, const GaloisField& field);

}  // namespace pcfcert
