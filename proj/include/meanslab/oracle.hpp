#pragma once

#include <optional>

#include "meanslab/bigfloat.hpp"
#include "meanslab/inequality.hpp"
#include "meanslab/pair.hpp"

namespace meanslab {

inline constexpr int kDefaultOracleDigits = 50;
inline constexpr int kMinOracleDigits = 30;
inline constexpr int kOracleDigitCap = 480;

/// Extended-precision value tagged with the decimal precision it was
/// produced at. Relative error is below 10^(3-digits).
struct HPValue {
  BigFloat value;
  int digits;
};

enum class SignOutcome { positive, negative, zero_within_bound };

std::string_view to_string(SignOutcome outcome);

/// Result of a sign certification. positive/negative mean the margin
/// magnitude exceeded `bound` at two successive precision levels;
/// zero_within_bound means it stayed indistinguishable from zero up to the
/// precision cap.
struct CertifiedSign {
  SignOutcome outcome;
  double bound;
  int digits;
};

HPValue eval_mean_hp(MeanKind kind, const PositivePair& pair, int digits);

/// Margin plus the magnitude of the larger side, both at working precision.
struct HPMargin {
  BigFloat value;
  BigFloat scale;
  int digits;
};

HPMargin margin_hp(InequalityId id, const PositivePair& pair,
                   std::optional<double> exponent, int digits);

HPValue lemma_gap_hp(double a, double b, double c, double d, long n, int digits);

/// The six chain quantities at working precision, smallest to largest.
std::array<BigFloat, 6> chain_quantities_hp(const PositivePair& pair, int digits);

/// Evaluates the margin at d and 2d digits; accepts a sign when both
/// agree and both magnitudes exceed 10^(5-d) times the larger side, else
/// doubles the precision up to kOracleDigitCap and reports
/// zero_within_bound with the final bound. Deterministic.
CertifiedSign certify_sign(InequalityId id, const PositivePair& pair,
                           std::optional<double> exponent,
                           int start_digits = kDefaultOracleDigits);

}  // namespace meanslab
