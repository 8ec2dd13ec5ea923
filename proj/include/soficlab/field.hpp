#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace soficlab {

using Rational = mpq_class;

/// Base field descriptor: the rationals, or F_p for a prime p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }
  /// Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return modulus_ == 0; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return modulus_; }

  /// "Q" or "F_p".
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : modulus_(p) {}
  std::uint64_t modulus_ = 0;
};

/// Parses "q" / "Q" or "fp:P" (the CLI spelling).
Field parse_field(const std::string& text);

/// An exact scalar of a Field. Rationals are kept canonical (lowest terms,
/// positive denominator); residues lie in [0, p).
class Scalar {
 public:
  explicit Scalar(Field field = Field::rationals());
  Scalar(Field field, long long value);
  Scalar(Field field, const Rational& value);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Only valid over the rationals.
  const Rational& rational() const;
  /// Only valid over F_p.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Throws std::domain_error on division by zero.
  Scalar& operator/=(const Scalar& rhs);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "num/den" over Q, decimal residue over F_p.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& rhs) const;

  Field field_;
  std::variant<Rational, std::uint64_t> value_;
};

/// Always "num/den", also for integers ("3/1").
std::string rational_to_string(const Rational& value);

/// Accepts "a" or "a/b" with optional sign. Decimal or exponent notation is
/// rejected so that no float literal can sneak in.
Rational parse_rational(const std::string& text);

}  // namespace soficlab
