#include "pcfcert/field_roots.hpp"

#include "pcfcert/errors.hpp"

namespace pcfcert {

std::vector<FieldElem> roots_in_field(const UniPoly<FieldElem>& f) {
  if (f.is_zero()) throw DomainError("roots_in_field: zero polynomial");
  const FieldPtr& field = f.leading().field();
  std::vector<FieldElem> roots;
  if (!field) return roots;  // nonzero constant without a field cannot vanish
  for (std::uint64_t i = 0; i < field->order(); ++i) {
    FieldElem x = field->element(i);
    if (f(x).is_zero()) roots.push_back(std::move(x));
  }
  return roots;
}

UniPoly<FieldElem> reduce(const UniPoly<Rat>& f, const GaloisField& field) {
  std::vector<FieldElem> out;
  out.reserve(f.coeffs().size());
  for (const Rat& c : f.coeffs()) out.push_back(field.from_rat(c));
  return UniPoly<FieldElem>(std::move(out));
}

}  // namespace pcfcert
