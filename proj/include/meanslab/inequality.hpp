#pragma once

#include <array>
#include <optional>
#include <vector>

#include "meanslab/means.hpp"

namespace meanslab {

/// Identifiers for every inequality and identity the engine can score.
/// to_string() yields the stable names used on the CLI and in CSV output.
enum class InequalityId {
  product,        // EQ2_PRODUCT : A*G - Q*H            >= 0
  power,          // EQ1_POWER   : Q^n + H^n - A^n - G^n (>= 0 for integer n)
  sum,            // EQ3_SUM     : (Q+H) - (A+G)        >= 0
  sandor,         // EQ4_SANDOR  : 2P - (A+G)           >= 0
  seiffert_conj,  // EQ6_CONJ    : 2P - (Q+H)           (conjectured >= 0; empirical)
  p_le_i,         // P_LE_I      : I - P                >= 0
  chain,          // CHAIN_EQ10  : min link of the six-term chain
  lemma,          // LEMMA_EQ11  : c^n + d^n - a^n - b^n on feasible quadruples
};

inline constexpr std::array<InequalityId, 8> kAllInequalityIds = {
    InequalityId::product, InequalityId::power,         InequalityId::sum,
    InequalityId::sandor,  InequalityId::seiffert_conj, InequalityId::p_le_i,
    InequalityId::chain,   InequalityId::lemma};

std::string_view to_string(InequalityId id);
std::optional<InequalityId> parse_inequality_id(std::string_view text);

/// True when margins of this id take an exponent argument.
inline bool takes_exponent(InequalityId id) { return id == InequalityId::power; }

/// Binary64 margin tolerance, relative to the magnitude of the larger side.
inline constexpr double kRelTol = 1e-12;

/// Decimal digits carried by a plain binary64 evaluation.
inline constexpr int kBinary64Digits = 15;

/// A signed margin together with the magnitude of the larger compared side
/// (the natural denominator for relative margins and tolerances).
struct Margin {
  double value;
  double scale;

  double rel() const { return scale > 0.0 ? value / scale : 0.0; }
};

/// One scored inequality instance, the serialization unit for reports.
struct MarginRecord {
  InequalityId id;
  double x;
  double y;
  std::optional<double> exponent;
  double margin;
  int digits;
};

/// A*G - Q*H; zero exactly when x == y, never negative under rounding.
Margin margin_product(const PositivePair& pair);

/// Q^n + H^n - A^n - G^n for real n (powers evaluated in log space).
/// Throws OverflowError when a side exceeds the binary64 range.
Margin power_gap(const PositivePair& pair, double n);

/// (Q+H) - (A+G), the n = 1 instance of the power gap.
Margin margin_sum(const PositivePair& pair);

/// 2P - (A+G).
Margin margin_sandor(const PositivePair& pair);

/// 2P - (Q+H). The sign is an empirical output, reported faithfully.
Margin margin_seiffert_conj(const PositivePair& pair);

/// I - P.
Margin margin_p_le_i(const PositivePair& pair);

/// The six chain quantities sqrt(QH) <= sqrt(AG) <= sqrt(LI) <= (L+I)/2
/// <= (G+A)/2 <= (Q+H)/2 and their five consecutive margins.
struct ChainMargins {
  std::array<double, 6> quantity;
  std::array<double, 5> margin;

  double min_margin() const;
  double scale() const { return quantity[5]; }
};

ChainMargins chain_margins(const PositivePair& pair);

/// c^n + d^n - a^n - b^n under the hypotheses a+b <= c+d and ab >= cd.
/// Hypothesis violations throw std::domain_error naming the failed one.
Margin lemma_gap(double a, double b, double c, double d, long n);

/// p_0 ... p_{n_max} with p_0 = 2, p_1 = a+b,
/// p_{k+1} = (a+b) p_k - ab p_{k-1}; p_k equals a^k + b^k.
std::vector<double> power_sum_recurrence(double a, double b, int n_max);

/// Margins/residuals of the algebraic devices behind the product and sum
/// inequalities. The two margins are nonnegative for every pair; the two
/// residuals vanish up to rounding.
struct IdentityResiduals {
  double am_gm_margin;       // (x+y)^2 - 2 sqrt(2xy(x^2+y^2))
  double a_minus_h_residual; // (A-H) - (x-y)^2 / (2(x+y))
  double am_qm_margin;       // (x+y) - (sqrt(2(x^2+y^2)) + sqrt(4xy)) / 2
  double q_minus_g_residual; // (Q-G) - (x-y)^2 / (sqrt(2(x^2+y^2)) + sqrt(4xy))
};

IdentityResiduals proof_identity_residuals(const PositivePair& pair);

/// Dispatch by id for the pair-based margins. `exponent` must be present
/// exactly when the id requires it; InequalityId::lemma is not pair-based
/// and is rejected.
Margin margin_of(InequalityId id, const PositivePair& pair,
                 std::optional<double> exponent = std::nullopt);

}  // namespace meanslab
