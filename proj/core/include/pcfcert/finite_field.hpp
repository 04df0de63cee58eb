#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pcfcert/arith.hpp"

namespace pcfcert {

class FieldElem;

/// GF(p^e), elements stored as residues modulo a fixed monic irreducible of
/// degree e. The modulus is the lexicographically smallest one (coefficients
/// compared lowest degree first), so certificates are reproducible.
class GaloisField : public std::enable_shared_from_this<GaloisField> {
 public:
  /// Use make_ext_field.
  GaloisField(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  /// p^e.
  std::uint64_t order() const { return order_; }
  /// Monic, lowest degree first, size degree()+1.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(const Int& n) const;
  /// Throws DomainError when p divides the denominator.
  FieldElem from_rat(const Rat& x) const;
  /// Element whose base-p digits (lowest first) are the coefficients; index < order().
  FieldElem element(std::uint64_t index) const;
  std::vector<FieldElem> elements() const;

  bool same_as(const GaloisField& other) const;
  std::string describe() const;

 private:
  friend class FieldElem;

  std::vector<std::uint64_t> mul_digits(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) const;

  std::uint64_t p_;
  unsigned e_;
  std::uint64_t order_;
  std::vector<std::uint64_t> modulus_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Throws DomainError unless p is a prime below 2^32 and e >= 1.
FieldPtr make_ext_field(std::uint64_t p, unsigned e);

/// Element of a GaloisField. A default-constructed element is an unbound
/// zero: it acts as the additive identity of any field it meets, which lets
/// generic polynomial code create zeros without a field handle.
class FieldElem {
 public:
  FieldElem() = default;

  const FieldPtr& field() const { return field_; }
  bool is_bound() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;
  /// Base-p digits, lowest first (empty for an unbound zero).
  const std::vector<std::uint64_t>& digits() const { return digits_; }
  /// Inverse of GaloisField::element.
  std::uint64_t index() const;

  FieldElem operator+(const FieldElem& rhs) const;
  FieldElem operator-(const FieldElem& rhs) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& rhs) const;
  /// Throws DomainError on division by zero.
  FieldElem operator/(const FieldElem& rhs) const;
  FieldElem& operator+=(const FieldElem& rhs) { return *this = *this + rhs; }
  FieldElem& operator-=(const FieldElem& rhs) { return *this = *this - rhs; }
  FieldElem& operator*=(const FieldElem& rhs) { return *this = *this * rhs; }

  FieldElem times_int(long n) const;
  FieldElem pow(std::uint64_t n) const;
  FieldElem inverse() const;
  FieldElem frobenius() const { return pow(field_ ? field_->characteristic() : 1); }

  friend bool operator==(const FieldElem& a, const FieldElem& b);

  /// "3" in a prime field, "[1,2]" (digits, lowest first) in an extension.
  std::string to_string() const;

 private:
  friend class GaloisField;
  FieldElem(FieldPtr field, std::vector<std::uint64_t> digits)
      : field_(std::move(field)), digits_(std::move(digits)) {}

  static const FieldPtr& common_field(const FieldElem& a, const FieldElem& b);

  FieldPtr field_;
  std::vector<std::uint64_t> digits_;
};

}  // namespace pcfcert
