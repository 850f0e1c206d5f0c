#include "meanslab/inequality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace meanslab {

namespace {

constexpr double kWNear = 0.5;  // matches the branch threshold in means.cpp

void check_positive(double v, const char* name, const char* fn) {
  if (!(std::isfinite(v) && v >= std::numeric_limits<double>::min())) {
    throw std::invalid_argument(std::string(fn) + ": " + name +
                                " must be a strictly positive normal value");
  }
}

double checked_pow(double base, double n, const char* fn) {
  const double r = std::pow(base, n);
  if (!std::isfinite(r)) {
    throw OverflowError(std::string(fn) + ": side exceeds the binary64 range");
  }
  return r;
}

}  // namespace

std::string_view to_string(InequalityId id) {
  switch (id) {
    case InequalityId::product: return "EQ2_PRODUCT";
    case InequalityId::power: return "EQ1_POWER";
    case InequalityId::sum: return "EQ3_SUM";
    case InequalityId::sandor: return "EQ4_SANDOR";
    case InequalityId::seiffert_conj: return "EQ6_CONJ";
    case InequalityId::p_le_i: return "P_LE_I";
    case InequalityId::chain: return "CHAIN_EQ10";
    case InequalityId::lemma: return "LEMMA_EQ11";
  }
  return "?";
}

std::optional<InequalityId> parse_inequality_id(std::string_view text) {
  std::string up(text);
  for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (InequalityId id : kAllInequalityIds) {
    if (up == to_string(id)) return id;
  }
  return std::nullopt;
}

Margin margin_product(const PositivePair& pair) {
  const auto wf = detail::wform(pair);
  const double a = wf.a;
  const double w = wf.w;
  if (w <= kWNear) {
    // Rationalized form: with s = sqrt(1 - w^4),
    //   (A*G - Q*H) / A^2 = sqrt(1+w^2) (1-w^2) w^4 / (s (1+s)).
    // Every factor is nonnegative, so the margin sign is exact: zero iff
    // w == 0, positive otherwise, with no cancellation near the diagonal.
    const double w2 = w * w;
    const double w4 = w2 * w2;
    const double u = 1.0 - w2;
    const double s = std::sqrt(1.0 - w4);
    const double m = (std::sqrt(1.0 + w2) * u) * (w4 / (s * (1.0 + s)));
    const double ag = (a * std::sqrt(u)) * a;
    return {(m * a) * a, ag};
  }
  // Away from the diagonal the direct difference carries no cancellation
  // risk; factored as a*(g - q*h/a) so intermediates cannot overflow
  // before the result does.
  const MeanSet ms = eval_all(pair);
  const double value = ms.a * (ms.g - ms.q * (ms.h / ms.a));
  const double ag = ms.a * ms.g;
  return {value, ag};
}

Margin power_gap(const PositivePair& pair, double n) {
  if (!std::isfinite(n)) {
    throw std::invalid_argument("power_gap: exponent must be finite");
  }
  const MeanSet ms = eval_all(pair);
  const double qn = checked_pow(ms.q, n, "power_gap");
  const double hn = checked_pow(ms.h, n, "power_gap");
  const double an = checked_pow(ms.a, n, "power_gap");
  const double gn = checked_pow(ms.g, n, "power_gap");
  const double rhs = qn + hn;
  const double lhs = an + gn;
  if (!std::isfinite(rhs) || !std::isfinite(lhs)) {
    throw OverflowError("power_gap: side exceeds the binary64 range");
  }
  return {rhs - lhs, std::max(rhs, lhs)};
}

Margin margin_sum(const PositivePair& pair) {
  const MeanSet ms = eval_all(pair);
  const double rhs = ms.q + ms.h;
  const double lhs = ms.a + ms.g;
  return {rhs - lhs, std::max(rhs, lhs)};
}

Margin margin_sandor(const PositivePair& pair) {
  const MeanSet ms = eval_all(pair);
  const double lhs = ms.a + ms.g;
  const double rhs = 2.0 * ms.p;
  return {rhs - lhs, std::max(rhs, lhs)};
}

Margin margin_seiffert_conj(const PositivePair& pair) {
  const MeanSet ms = eval_all(pair);
  const double lhs = ms.q + ms.h;
  const double rhs = 2.0 * ms.p;
  return {rhs - lhs, std::max(rhs, lhs)};
}

Margin margin_p_le_i(const PositivePair& pair) {
  const MeanSet ms = eval_all(pair);
  return {ms.i - ms.p, std::max(ms.i, ms.p)};
}

double ChainMargins::min_margin() const {
  return *std::min_element(margin.begin(), margin.end());
}

ChainMargins chain_margins(const PositivePair& pair) {
  ChainMargins c;
  if (pair.diagonal()) {
    c.quantity.fill(pair.x());
    c.margin.fill(0.0);
    return c;
  }
  const MeanSet ms = eval_all(pair);
  c.quantity[0] = std::sqrt(ms.q) * std::sqrt(ms.h);
  c.quantity[1] = std::sqrt(ms.a) * std::sqrt(ms.g);
  c.quantity[2] = std::sqrt(ms.l) * std::sqrt(ms.i);
  c.quantity[3] = 0.5 * ms.l + 0.5 * ms.i;
  c.quantity[4] = 0.5 * ms.g + 0.5 * ms.a;
  c.quantity[5] = 0.5 * ms.q + 0.5 * ms.h;
  for (int k = 0; k < 5; ++k) c.margin[k] = c.quantity[k + 1] - c.quantity[k];
  return c;
}

Margin lemma_gap(double a, double b, double c, double d, long n) {
  check_positive(a, "a", "lemma_gap");
  check_positive(b, "b", "lemma_gap");
  check_positive(c, "c", "lemma_gap");
  check_positive(d, "d", "lemma_gap");
  if (a + b > c + d) {
    throw std::domain_error("lemma_gap: hypothesis a+b <= c+d violated");
  }
  if (a * b < c * d) {
    throw std::domain_error("lemma_gap: hypothesis ab >= cd violated");
  }
  const double en = static_cast<double>(n);
  const double cn = checked_pow(c, en, "lemma_gap");
  const double dn = checked_pow(d, en, "lemma_gap");
  const double an = checked_pow(a, en, "lemma_gap");
  const double bn = checked_pow(b, en, "lemma_gap");
  const double rhs = cn + dn;
  const double lhs = an + bn;
  if (!std::isfinite(rhs) || !std::isfinite(lhs)) {
    throw OverflowError("lemma_gap: side exceeds the binary64 range");
  }
  return {rhs - lhs, std::max(rhs, lhs)};
}

std::vector<double> power_sum_recurrence(double a, double b, int n_max) {
  check_positive(a, "a", "power_sum_recurrence");
  check_positive(b, "b", "power_sum_recurrence");
  if (n_max < 0) {
    throw std::invalid_argument("power_sum_recurrence: n_max must be >= 0");
  }
  std::vector<double> p(static_cast<size_t>(n_max) + 1);
  p[0] = 2.0;
  if (n_max >= 1) p[1] = a + b;
  const double s = a + b;
  const double prod = a * b;
  for (int k = 1; k < n_max; ++k) {
    p[static_cast<size_t>(k) + 1] = s * p[static_cast<size_t>(k)] - prod * p[static_cast<size_t>(k) - 1];
  }
  return p;
}

IdentityResiduals proof_identity_residuals(const PositivePair& pair) {
  IdentityResiduals r;
  const auto wf = detail::wform(pair);
  const double a = wf.a;
  const double w = wf.w;
  const double dhalf = 0.5 * pair.x() - 0.5 * pair.y();
  const MeanSet ms = eval_all(pair);

  // (x+y)^2 - 2 sqrt(2xy(x^2+y^2)) == 4 A^2 (1 - sqrt(1-w^4)); rationalized
  // near the diagonal so the margin sign stays exact.
  const double w2 = w * w;
  const double w4 = w2 * w2;
  const double s = std::sqrt(1.0 - w4);
  const double m12 = (w <= kWNear) ? 4.0 * (w4 / (1.0 + s)) : 4.0 * (1.0 - s);
  r.am_gm_margin = ((m12 * a) * a);

  // (A - H) - (x-y)^2 / (2(x+y)); the subtrahend is dhalf * w exactly.
  r.a_minus_h_residual = (ms.a - ms.h) - dhalf * w;

  // Rationalized Q - G = (x-y)^2 / (2(Q+G)), accurate at every ratio.
  const double qg = dhalf * (2.0 * dhalf / (ms.q + ms.g));

  // (x+y) - (sqrt(2(x^2+y^2)) + sqrt(4xy))/2 == (Q-G)^2 / (2A + Q + G).
  r.am_qm_margin = 0.5 * qg * (qg / (ms.a + 0.5 * (ms.q + ms.g)));

  r.q_minus_g_residual = (ms.q - ms.g) - qg;
  return r;
}

Margin margin_of(InequalityId id, const PositivePair& pair, std::optional<double> exponent) {
  if (takes_exponent(id) != exponent.has_value()) {
    throw std::invalid_argument(
        "margin_of: exponent must be present exactly for EQ1_POWER");
  }
  switch (id) {
    case InequalityId::product: return margin_product(pair);
    case InequalityId::power: return power_gap(pair, *exponent);
    case InequalityId::sum: return margin_sum(pair);
    case InequalityId::sandor: return margin_sandor(pair);
    case InequalityId::seiffert_conj: return margin_seiffert_conj(pair);
    case InequalityId::p_le_i: return margin_p_le_i(pair);
    case InequalityId::chain: {
      const ChainMargins c = chain_margins(pair);
      return {c.min_margin(), c.scale()};
    }
    case InequalityId::lemma:
      throw std::invalid_argument("margin_of: LEMMA_EQ11 takes the (a,b,c,d,n) form");
  }
  throw std::invalid_argument("margin_of: unknown inequality id");
}

}  // namespace meanslab
