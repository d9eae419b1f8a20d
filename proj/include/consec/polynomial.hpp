#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace consec {

/// Exact rational number, always in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long num) : value_(num) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const mpz_class& num, const mpz_class& den);
  explicit ExactRational(mpq_class value);

  /// Accepts "a/b", an integer, or a terminating decimal such as "0.25".
  /// Throws ShapeError on anything else (including a zero denominator).
  static ExactRational parse(std::string_view text);

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& value() const { return value_; }
  bool is_integer() const { return value_.get_den() == 1; }

  double to_double() const { return value_.get_d(); }
  /// "a/b", or just "a" when the denominator is 1.
  std::string to_string() const;

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    return ExactRational(mpq_class(a.value_ + b.value_));
  }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
    return ExactRational(mpq_class(a.value_ - b.value_));
  }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return ExactRational(mpq_class(a.value_ * b.value_));
  }
  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExactRational& a, const ExactRational& b) {
    return a.value_ < b.value_;
  }

 private:
  mpq_class value_{0};
};

/// Polynomial in q with arbitrary-precision integer coefficients, stored
/// sparsely (exponent -> nonzero coefficient).
class IntPolynomial {
 public:
  using Terms = std::map<std::uint64_t, mpz_class>;

  IntPolynomial() = default;
  static IntPolynomial constant(long c);
  static IntPolynomial monomial(const mpz_class& c, std::uint64_t exponent);

  /// Adds c * q^exponent; drops the term if it cancels to zero.
  void add_term(std::uint64_t exponent, const mpz_class& c);

  const Terms& terms() const { return terms_; }
  mpz_class coefficient(std::uint64_t exponent) const;
  bool is_zero() const { return terms_.empty(); }
  /// Highest exponent with a nonzero coefficient; 0 for the zero polynomial.
  std::uint64_t degree() const;
  /// Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
  std::uint64_t lowest_exponent() const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const mpz_class& factor);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const mpz_class& f) { return a *= f; }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Signed terms in ascending exponent order: "1 - 4q^2 + 2q^3". Zero prints "0".
  std::string to_text() const;

 private:
  Terms terms_;
};

/// Exact value of p at q (Horner over the sparse terms).
ExactRational evaluate(const IntPolynomial& p, const ExactRational& q);

/// binary64 value of p at q in [0,1]. Runs Horner in floating point with a
/// running error bound; coefficients alternate in sign and grow quickly, so
/// when the bound exceeds about 1e-12 relative the value is recomputed
/// exactly at q (a dyadic rational) and rounded. Throws ShapeError when q is
/// outside [0,1] or NaN.
double evaluate(const IntPolynomial& p, double q);

}  // namespace consec
