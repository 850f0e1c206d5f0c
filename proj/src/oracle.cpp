#include "meanslab/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace meanslab {

namespace {

void check_digits(int digits) {
  if (digits < kMinOracleDigits) {
    throw std::invalid_argument("oracle: digit count must be >= 30");
  }
}

struct HPCtx {
  BigFloat x, y;  // exact lifts of the binary64 inputs, x >= y
  mpfr_prec_t bits;
};

HPCtx make_ctx(const PositivePair& pair, int digits) {
  const mpfr_prec_t bits = BigFloat::bits_for_digits(digits);
  return HPCtx{BigFloat(pair.x(), bits), BigFloat(pair.y(), bits), bits};
}

BigFloat half(const HPCtx& c) { return BigFloat(0.5, c.bits); }

BigFloat mean_h(const HPCtx& c) { return BigFloat(2.0, c.bits) * c.x * c.y / (c.x + c.y); }
BigFloat mean_g(const HPCtx& c) { return sqrt(c.x * c.y); }
BigFloat mean_a(const HPCtx& c) { return (c.x + c.y) * half(c); }
BigFloat mean_q(const HPCtx& c) { return sqrt((c.x * c.x + c.y * c.y) * half(c)); }

BigFloat mean_p(const HPCtx& c) {
  if (c.x == c.y) return c.x;
  const BigFloat d = c.x - c.y;
  return d / (BigFloat(2.0, c.bits) * asin(d / (c.x + c.y)));
}

BigFloat mean_l(const HPCtx& c) {
  if (c.x == c.y) return c.x;
  return (c.x - c.y) / (log(c.x) - log(c.y));
}

BigFloat mean_i(const HPCtx& c) {
  if (c.x == c.y) return c.x;
  // log-space form of (1/e)(x^x / y^y)^(1/(x-y)); x^x itself can exceed
  // even the MPFR exponent range for large binary64 inputs
  const BigFloat num = c.x * log(c.x) - c.y * log(c.y);
  return exp(num / (c.x - c.y) - BigFloat(1.0, c.bits));
}

BigFloat eval_kind(MeanKind kind, const HPCtx& c) {
  switch (kind) {
    case MeanKind::H: return mean_h(c);
    case MeanKind::G: return mean_g(c);
    case MeanKind::A: return mean_a(c);
    case MeanKind::Q: return mean_q(c);
    case MeanKind::P: return mean_p(c);
    case MeanKind::L: return mean_l(c);
    case MeanKind::I: return mean_i(c);
  }
  throw std::invalid_argument("eval_mean_hp: unknown kind");
}

HPMargin two_sided(BigFloat rhs, BigFloat lhs, int digits) {
  BigFloat value = rhs - lhs;
  BigFloat scale = max(abs(rhs), abs(lhs));
  return HPMargin{std::move(value), std::move(scale), digits};
}

}  // namespace

std::string_view to_string(SignOutcome outcome) {
  switch (outcome) {
    case SignOutcome::positive: return "positive";
    case SignOutcome::negative: return "negative";
    case SignOutcome::zero_within_bound: return "zero-within-bound";
  }
  return "?";
}

HPValue eval_mean_hp(MeanKind kind, const PositivePair& pair, int digits) {
  check_digits(digits);
  const HPCtx c = make_ctx(pair, digits);
  return HPValue{eval_kind(kind, c), digits};
}

std::array<BigFloat, 6> chain_quantities_hp(const PositivePair& pair, int digits) {
  check_digits(digits);
  const HPCtx c = make_ctx(pair, digits);
  const BigFloat h = mean_h(c), g = mean_g(c), a = mean_a(c), q = mean_q(c);
  const BigFloat l = mean_l(c), i = mean_i(c);
  const BigFloat hf = half(c);
  return {sqrt(q * h), sqrt(a * g), sqrt(l * i),
          (l + i) * hf, (g + a) * hf, (q + h) * hf};
}

HPMargin margin_hp(InequalityId id, const PositivePair& pair,
                   std::optional<double> exponent, int digits) {
  check_digits(digits);
  if (takes_exponent(id) != exponent.has_value()) {
    throw std::invalid_argument("margin_hp: exponent must be present exactly for EQ1_POWER");
  }
  const HPCtx c = make_ctx(pair, digits);
  switch (id) {
    case InequalityId::product: {
      const BigFloat ag = mean_a(c) * mean_g(c);
      const BigFloat qh = mean_q(c) * mean_h(c);
      return two_sided(ag, qh, digits);  // oriented so >= 0 is the stated direction
    }
    case InequalityId::power: {
      const BigFloat n(*exponent, c.bits);
      const BigFloat rhs = pow(mean_q(c), n) + pow(mean_h(c), n);
      const BigFloat lhs = pow(mean_a(c), n) + pow(mean_g(c), n);
      return two_sided(rhs, lhs, digits);
    }
    case InequalityId::sum:
      return two_sided(mean_q(c) + mean_h(c), mean_a(c) + mean_g(c), digits);
    case InequalityId::sandor:
      return two_sided(BigFloat(2.0, c.bits) * mean_p(c), mean_a(c) + mean_g(c), digits);
    case InequalityId::seiffert_conj:
      return two_sided(BigFloat(2.0, c.bits) * mean_p(c), mean_q(c) + mean_h(c), digits);
    case InequalityId::p_le_i:
      return two_sided(mean_i(c), mean_p(c), digits);
    case InequalityId::chain: {
      const auto qty = chain_quantities_hp(pair, digits);
      BigFloat m = qty[1] - qty[0];
      for (int k = 1; k < 5; ++k) m = min(m, qty[static_cast<size_t>(k) + 1] - qty[static_cast<size_t>(k)]);
      return HPMargin{std::move(m), qty[5], digits};
    }
    case InequalityId::lemma:
      throw std::invalid_argument("margin_hp: LEMMA_EQ11 takes the (a,b,c,d,n) form");
  }
  throw std::invalid_argument("margin_hp: unknown inequality id");
}

HPValue lemma_gap_hp(double a, double b, double c, double d, long n, int digits) {
  check_digits(digits);
  const mpfr_prec_t bits = BigFloat::bits_for_digits(digits);
  const BigFloat ba(a, bits), bb(b, bits), bc(c, bits), bd(d, bits);
  const BigFloat bn(static_cast<double>(n), bits);
  BigFloat value = pow(bc, bn) + pow(bd, bn) - pow(ba, bn) - pow(bb, bn);
  return HPValue{std::move(value), digits};
}

CertifiedSign certify_sign(InequalityId id, const PositivePair& pair,
                           std::optional<double> exponent, int start_digits) {
  check_digits(start_digits);
  int d = std::min(start_digits, kOracleDigitCap);
  for (;;) {
    const int d2 = std::min(2 * d, kOracleDigitCap);
    const HPMargin m1 = margin_hp(id, pair, exponent, d);
    const HPMargin m2 = margin_hp(id, pair, exponent, d2);
    const BigFloat bound = pow10(5 - d, BigFloat::bits_for_digits(d2)) * m2.scale;
    const int s1 = m1.value.sign();
    const int s2 = m2.value.sign();
    if (s1 == s2 && s1 != 0 && abs(m1.value) > bound && abs(m2.value) > bound) {
      return CertifiedSign{s1 > 0 ? SignOutcome::positive : SignOutcome::negative,
                           bound.to_double(), d2};
    }
    if (d2 >= kOracleDigitCap) {
      const BigFloat final_bound =
          pow10(5 - kOracleDigitCap, BigFloat::bits_for_digits(d2)) * m2.scale;
      return CertifiedSign{SignOutcome::zero_within_bound, final_bound.to_double(),
                           kOracleDigitCap};
    }
    d = d2;
  }
}

}  // namespace meanslab
