#include "opfactor/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace opfactor {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) d = mpz_class(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(n, d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::pow(unsigned exponent) const {
  mpz_class n;
  mpz_class d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(n, d);
}

Rational Rational::pow(long exponent) const {
  if (exponent >= 0) return pow(static_cast<unsigned>(exponent));
  return inverse().pow(static_cast<unsigned>(-exponent));
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= other.value_;
  return *this;
}

std::string Rational::to_string() const { return value_.get_str(); }

std::size_t Rational::hash() const {
  // Low limbs are enough to spread small values; collisions only cost speed.
  const std::size_t n = mpz_size(value_.get_num_mpz_t()) ? mpz_getlimbn(value_.get_num_mpz_t(), 0) : 0;
  const std::size_t d = mpz_getlimbn(value_.get_den_mpz_t(), 0);
  const std::size_t s = static_cast<std::size_t>(sgn(value_) + 1);
  return (n * 0x9E3779B97F4A7C15ULL) ^ (d + 0x7F4A7C15ULL + (s << 6) + (s >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

Rational q_bracket(unsigned k, const Rational& q) {
  Rational sum = 0;
  Rational power = 1;
  for (unsigned i = 0; i < k; ++i) {
    sum += power;
    power *= q;
  }
  return sum;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

}  // namespace opfactor
