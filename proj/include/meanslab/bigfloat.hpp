#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

namespace meanslab {

/// Extended-precision real backed by MPFR. Every value carries its own
/// precision; binary operations produce results at the larger operand
/// precision; rounding is to-nearest throughout. No global or thread-local
/// precision state is consulted.
class BigFloat {
 public:
  static mpfr_prec_t bits_for_digits(int decimal_digits);

  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(double value, mpfr_prec_t bits);
  static BigFloat with_digits(double value, int decimal_digits);
  static BigFloat from_string(std::string_view text, int decimal_digits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int significant_digits) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

 private:
  mpfr_t v_;
};

BigFloat sqrt(const BigFloat& a);
BigFloat exp(const BigFloat& a);
BigFloat log(const BigFloat& a);
BigFloat log1p(const BigFloat& a);
BigFloat asin(const BigFloat& a);
BigFloat atanh(const BigFloat& a);
BigFloat abs(const BigFloat& a);
BigFloat pow(const BigFloat& base, const BigFloat& exponent);
BigFloat pow10(long exponent, mpfr_prec_t bits);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);

}  // namespace meanslab
