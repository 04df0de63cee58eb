#pragma once

#include <string>

#include "pcfcert/arith.hpp"
#include "pcfcert/errors.hpp"
#include "pcfcert/finite_field.hpp"

namespace pcfcert {

/// Uniform access to the coefficient domains polynomials are built over.
/// zero_like/one_like take a sample so field elements can find their field.
template <class K>
struct CoeffTraits;

template <>
struct CoeffTraits<Rat> {
  static bool is_zero(const Rat& x) { return sgn(x) == 0; }
  static Rat zero_like(const Rat& /*sample*/) { return Rat(0); }
  static Rat one_like(const Rat& /*sample*/) { return Rat(1); }
  static Rat times_int(const Rat& x, long n) { return Rat(x * n); }
  static Rat exact_div(const Rat& a, const Rat& b) { return Rat(a / b); }
  static std::string to_string(const Rat& x) { return x.get_str(); }
};

template <>
struct CoeffTraits<FieldElem> {
  static bool is_zero(const FieldElem& x) { return x.is_zero(); }
  static FieldElem zero_like(const FieldElem& /*sample*/) { return FieldElem(); }
  static FieldElem one_like(const FieldElem& sample) {
    if (!sample.is_bound()) throw DomainError("one_like: no field available for an unbound element");
    return sample.field()->one();
  }
  static FieldElem times_int(const FieldElem& x, long n) { return x.times_int(n); }
  static FieldElem exact_div(const FieldElem& a, const FieldElem& b) { return a / b; }
  static std::string to_string(const FieldElem& x) { return x.to_string(); }
};

}  // namespace pcfcert
