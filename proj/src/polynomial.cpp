#include "consec/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "consec/errors.hpp"

namespace consec {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpq_class power(const mpq_class& base, std::uint64_t exponent) {
  if (exponent == 0) return 1;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

ExactRational::ExactRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ShapeError("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

ExactRational::ExactRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

ExactRational ExactRational::parse(std::string_view text) {
  const std::string bad = "malformed rational '" + std::string(text) + "'";
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpz_class num, den;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) throw ShapeError(bad);
    num = mpz_class(std::string(a), 10);
    den = mpz_class(std::string(b), 10);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw ShapeError(bad);
    num = mpz_class(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  } else {
    if (!all_digits(body)) throw ShapeError(bad);
    num = mpz_class(std::string(body), 10);
    den = 1;
  }
  if (den == 0) throw ShapeError(bad + ": zero denominator");
  return ExactRational(negative ? mpz_class(-num) : num, den);
}

std::string ExactRational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

IntPolynomial IntPolynomial::constant(long c) { return monomial(c, 0); }

IntPolynomial IntPolynomial::monomial(const mpz_class& c, std::uint64_t exponent) {
  IntPolynomial p;
  p.add_term(exponent, c);
  return p;
}

void IntPolynomial::add_term(std::uint64_t exponent, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

mpz_class IntPolynomial::coefficient(std::uint64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

std::uint64_t IntPolynomial::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

std::uint64_t IntPolynomial::lowest_exponent() const {
  return terms_.empty() ? 0 : terms_.begin()->first;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const mpz_class& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= factor;
  return *this;
}

std::string IntPolynomial::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    mpz_class magnitude = abs(c);
    if (e == 0 || magnitude != 1) out += magnitude.get_str();
    if (e >= 1) out += 'q';
    if (e >= 2) out += '^' + std::to_string(e);
  }
  return out;
}

ExactRational evaluate(const IntPolynomial& p, const ExactRational& q) {
  const auto& terms = p.terms();
  if (terms.empty()) return ExactRational(0);
  auto it = terms.rbegin();
  mpq_class acc(it->second);
  std::uint64_t prev = it->first;
  for (++it; it != terms.rend(); ++it) {
    acc *= power(q.value(), prev - it->first);
    acc += it->second;
    prev = it->first;
  }
  acc *= power(q.value(), prev);
  return ExactRational(std::move(acc));
}

double evaluate(const IntPolynomial& p, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ShapeError("q must lie in [0, 1]");
  const auto& terms = p.terms();
  if (terms.empty()) return 0.0;
  // Horner alongside Horner on |c_k|; the rounding error of the first is at
  // most about 2 n u times the second.
  auto it = terms.rbegin();
  double acc = it->second.get_d();
  double magnitude = std::abs(acc);
  std::uint64_t prev = it->first;
  double ops = 1.0;
  for (++it; it != terms.rend(); ++it) {
    const double step = std::pow(q, static_cast<double>(prev - it->first));
    const double c = it->second.get_d();
    acc = acc * step + c;
    magnitude = magnitude * step + std::abs(c);
    prev = it->first;
    ops += 3.0;
  }
  const double tail = std::pow(q, static_cast<double>(prev));
  acc *= tail;
  magnitude *= tail;
  const double bound = (ops + 2.0) * 0x1.0p-53 * magnitude;
  if (bound <= 0x1.0p-40 * std::abs(acc)) return acc;
  // Too much cancellation: q is a dyadic rational, so evaluate it exactly.
  return evaluate(p, ExactRational(mpq_class(q))).to_double();
}

}  // namespace consec
