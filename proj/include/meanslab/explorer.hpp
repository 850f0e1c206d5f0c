#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "meanslab/inequality.hpp"
#include "meanslab/oracle.hpp"

namespace meanslab {

/// Grid/search configuration over the canonical ratio t (pairs (t, 1)).
struct ScanConfig {
  InequalityId id = InequalityId::product;
  double t_lo = 1.0;
  double t_hi = 100.0;
  int t_steps = 64;
  bool log_t = true;
  std::optional<std::pair<double, double>> n_range;  // present iff id == power
  int n_steps = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;  // cap on binary64 margin evaluations
  int oracle_digits = kDefaultOracleDigits;

  void validate() const;
  std::vector<double> t_grid() const;
  std::vector<std::optional<double>> n_grid() const;
};

enum class SignLabel { positive, negative, zero };

std::string_view to_string(SignLabel s);

/// One scored grid cell. Cells whose margin magnitude falls below
/// 1e3 * kRelTol * scale carry an oracle-certified sign.
struct SignCell {
  double t;
  std::optional<double> n;
  double margin;
  double rel_margin;
  SignLabel sign;
  int digits;
  bool certified;
};

struct SignMap {
  ScanConfig config;
  std::vector<SignCell> cells;  // row-major: n outer, t inner
  bool complete = true;
};

SignMap scan(const ScanConfig& config);

/// A certified counterexample: a pair (t, 1) whose margin is negative and
/// whose sign survived precision doubling.
struct Witness {
  double t;
  std::optional<double> exponent;
  double margin;  // binary64 margin at t
  CertifiedSign certified;
  int digits;
};

struct HuntResult {
  std::optional<Witness> witness;
  double min_margin;    // most negative binary64 margin observed
  double min_margin_t;
  std::optional<double> min_margin_n;
  std::uint64_t evaluations;
};

/// Counterexample hunt: coarse grid in scan order, seeded random refinement
/// around the first negative cell, golden-section descent, then sign
/// certification. Returns the lowest-ratio certified counterexample, which
/// pins the empirical failure boundary; deterministic for a fixed config.
HuntResult hunt(const ScanConfig& config);

struct BracketResult {
  double t_lo;
  double t_hi;
  CertifiedSign sign_lo;
  CertifiedSign sign_hi;
};

/// Bisection on log t between certified opposite-sign endpoints until
/// ln(t_hi/t_lo) <= tol_log_t. Throws std::domain_error when the endpoint
/// signs do not oppose.
BracketResult bracket_ratio_crossing(InequalityId id, std::optional<double> exponent,
                                     double t_lo, double t_hi, double tol_log_t,
                                     int digits = kDefaultOracleDigits);

struct MinMarginResult {
  double t;
  double margin;
  double scale;
  std::optional<CertifiedSign> certified;  // present when margin is negative or near zero
};

/// Coarse log grid (default 512 cells) plus golden-section refinement of
/// the best cell. The returned margin carries a certified sign whenever it
/// is negative or within 1e3 * kRelTol * scale of zero.
MinMarginResult min_margin_over_ratio(InequalityId id, std::optional<double> exponent,
                                      double t_lo, double t_hi,
                                      double refine_tol_log_t = 1e-9,
                                      int coarse_steps = 512,
                                      int digits = kDefaultOracleDigits);

enum class RowClass { holds_on_grid, fails, boundary };

std::string_view to_string(RowClass c);

struct ProfileRow {
  double n;
  double t_at_min;
  double min_margin;
  RowClass classification;
  int digits;
  bool certified;
};

struct CriticalProfile {
  double t_lo;
  double t_hi;
  std::vector<ProfileRow> rows;
};

/// Per-exponent minimum of the power gap over the ratio range, classified
/// empirically: fails only on a certified negative minimum, boundary when
/// a negative binary64 minimum cannot be certified either way.
CriticalProfile exponent_profile(const std::vector<double>& n_grid, double t_lo,
                                 double t_hi, int digits = kDefaultOracleDigits);

namespace detail {

/// Counter-based splittable generator: uniform double in [0, 1) from
/// (seed, stream, counter); scheduler-independent by construction.
double unit_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

}  // namespace detail

}  // namespace meanslab
