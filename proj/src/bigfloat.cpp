#include "meanslab/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace meanslab {

namespace {

mpfr_prec_t result_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

}  // namespace

mpfr_prec_t BigFloat::bits_for_digits(int decimal_digits) {
  if (decimal_digits < 1) {
    throw std::invalid_argument("BigFloat: digit count must be positive");
  }
  // 16 guard bits on top of the digits10 -> bits conversion
  const double bits = std::ceil(decimal_digits * 3.32192809488736) + 16.0;
  return static_cast<mpfr_prec_t>(bits);
}

BigFloat::BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); }

BigFloat::BigFloat(double value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat BigFloat::with_digits(double value, int decimal_digits) {
  return BigFloat(value, bits_for_digits(decimal_digits));
}

BigFloat BigFloat::from_string(std::string_view text, int decimal_digits) {
  BigFloat r(bits_for_digits(decimal_digits));
  const std::string s(text);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
  }
  return r;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision_bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, other.precision_bits());
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision_bits());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::str(int significant_digits) const {
  if (significant_digits < 2) significant_digits = 2;
  std::vector<char> buf(static_cast<size_t>(significant_digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", significant_digits - 1, v_);
  return std::string(buf.data());
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.precision_bits());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

#define MEANSLAB_UNARY(name, mpfr_fn)               \
  BigFloat name(const BigFloat& a) {                \
    BigFloat r(a.precision_bits());                 \
    mpfr_fn(r.raw(), a.raw(), MPFR_RNDN);           \
    return r;                                       \
  }

MEANSLAB_UNARY(sqrt, mpfr_sqrt)
MEANSLAB_UNARY(exp, mpfr_exp)
MEANSLAB_UNARY(log, mpfr_log)
MEANSLAB_UNARY(log1p, mpfr_log1p)
MEANSLAB_UNARY(asin, mpfr_asin)
MEANSLAB_UNARY(atanh, mpfr_atanh)
MEANSLAB_UNARY(abs, mpfr_abs)

#undef MEANSLAB_UNARY

BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
  BigFloat r(result_prec(base, exponent));
  mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return r;
}

BigFloat pow10(long exponent, mpfr_prec_t bits) {
  BigFloat ten(10.0, bits);
  BigFloat r(bits);
  mpfr_pow_si(r.raw(), ten.raw(), exponent, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }

BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }

}  // namespace meanslab
