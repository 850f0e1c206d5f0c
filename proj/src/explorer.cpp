#include "meanslab/explorer.hpp"

#include <algorithm>
#include <cmath>

namespace meanslab {

namespace {

constexpr double kCertifyWindow = 1e3 * kRelTol;  // |margin| < this * scale => certify

double eval_margin(InequalityId id, double t, std::optional<double> n) {
  return margin_of(id, PositivePair::from_ratio(t), n).value;
}

Margin eval_margin_full(InequalityId id, double t, std::optional<double> n) {
  return margin_of(id, PositivePair::from_ratio(t), n);
}

// Golden-section minimization of the margin on [lo, hi] in log t.
// Deterministic; charges one budget unit per evaluation through `count`.
struct GoldenResult {
  double t;
  double value;
};

GoldenResult golden_min(InequalityId id, std::optional<double> n, double lo, double hi,
                        double tol_log, std::uint64_t budget_left, std::uint64_t& used) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = std::log(lo), b = std::log(hi);
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  auto f = [&](double logt) {
    ++used;
    return eval_margin(id, std::exp(logt), n);
  };
  if (budget_left < 2) return {lo, std::numeric_limits<double>::infinity()};
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol_log && used + 1 < budget_left) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? GoldenResult{std::exp(x1), f1} : GoldenResult{std::exp(x2), f2};
}

}  // namespace

namespace detail {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(stream ^ splitmix64(counter)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

std::string_view to_string(SignLabel s) {
  switch (s) {
    case SignLabel::positive: return "+";
    case SignLabel::negative: return "-";
    case SignLabel::zero: return "0";
  }
  return "?";
}

std::string_view to_string(RowClass c) {
  switch (c) {
    case RowClass::holds_on_grid: return "holds-on-grid";
    case RowClass::fails: return "fails";
    case RowClass::boundary: return "boundary";
  }
  return "?";
}

void ScanConfig::validate() const {
  if (!(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo >= 1.0 && t_lo < t_hi)) {
    throw std::invalid_argument("ScanConfig: need 1 <= t_lo < t_hi, both finite");
  }
  if (t_steps < 2) throw std::invalid_argument("ScanConfig: t_steps must be >= 2");
  if (n_range.has_value() != takes_exponent(id)) {
    throw std::invalid_argument("ScanConfig: n_range must be present exactly for EQ1_POWER");
  }
  if (n_range) {
    if (!(std::isfinite(n_range->first) && std::isfinite(n_range->second) &&
          n_range->first <= n_range->second)) {
      throw std::invalid_argument("ScanConfig: n_range must be a finite nonempty interval");
    }
    if (n_steps < 1) throw std::invalid_argument("ScanConfig: n_steps must be >= 1");
  }
  if (budget == 0) throw std::invalid_argument("ScanConfig: budget must be positive");
  if (oracle_digits < kMinOracleDigits) {
    throw std::invalid_argument("ScanConfig: oracle_digits must be >= 30");
  }
  if (id == InequalityId::lemma) {
    throw std::invalid_argument("ScanConfig: LEMMA_EQ11 is not a ratio-scan inequality");
  }
}

std::vector<double> ScanConfig::t_grid() const {
  std::vector<double> g(static_cast<size_t>(t_steps));
  const double lo = log_t ? std::log(t_lo) : t_lo;
  const double hi = log_t ? std::log(t_hi) : t_hi;
  for (int i = 0; i < t_steps; ++i) {
    const double u = lo + (hi - lo) * (static_cast<double>(i) / (t_steps - 1));
    g[static_cast<size_t>(i)] = log_t ? std::exp(u) : u;
  }
  g.front() = t_lo;
  g.back() = t_hi;
  return g;
}

std::vector<std::optional<double>> ScanConfig::n_grid() const {
  if (!n_range) return {std::nullopt};
  std::vector<std::optional<double>> g;
  g.reserve(static_cast<size_t>(n_steps));
  if (n_steps == 1) {
    g.push_back(n_range->first);
    return g;
  }
  for (int i = 0; i < n_steps; ++i) {
    const double u = static_cast<double>(i) / (n_steps - 1);
    g.push_back(n_range->first + (n_range->second - n_range->first) * u);
  }
  g.back() = n_range->second;
  return g;
}

namespace {

SignCell make_cell(const ScanConfig& cfg, double t, std::optional<double> n) {
  const Margin m = eval_margin_full(cfg.id, t, n);
  SignCell cell;
  cell.t = t;
  cell.n = n;
  cell.margin = m.value;
  cell.rel_margin = m.rel();
  if (std::abs(m.value) < kCertifyWindow * m.scale) {
    const CertifiedSign cs =
        certify_sign(cfg.id, PositivePair::from_ratio(t), n, cfg.oracle_digits);
    cell.certified = true;
    cell.digits = cs.digits;
    switch (cs.outcome) {
      case SignOutcome::positive: cell.sign = SignLabel::positive; break;
      case SignOutcome::negative: cell.sign = SignLabel::negative; break;
      case SignOutcome::zero_within_bound: cell.sign = SignLabel::zero; break;
    }
  } else {
    cell.certified = false;
    cell.digits = kBinary64Digits;
    cell.sign = m.value > 0.0 ? SignLabel::positive : SignLabel::negative;
  }
  return cell;
}

}  // namespace

SignMap scan(const ScanConfig& config) {
  config.validate();
  SignMap map;
  map.config = config;
  const auto ts = config.t_grid();
  const auto ns = config.n_grid();
  map.cells.reserve(ts.size() * ns.size());
  std::uint64_t evals = 0;
  for (const auto& n : ns) {
    for (double t : ts) {
      if (evals >= config.budget) {
        map.complete = false;
        return map;
      }
      map.cells.push_back(make_cell(config, t, n));
      ++evals;
    }
  }
  map.complete = true;
  return map;
}

HuntResult hunt(const ScanConfig& config) {
  config.validate();
  HuntResult res;
  res.min_margin = std::numeric_limits<double>::infinity();
  res.min_margin_t = config.t_lo;
  res.evaluations = 0;

  const auto ts = config.t_grid();
  const auto ns = config.n_grid();
  constexpr int kRefineSamples = 32;

  std::uint64_t stream = 0;
  for (const auto& n : ns) {
    for (size_t i = 0; i < ts.size(); ++i, ++stream) {
      if (res.evaluations >= config.budget) return res;
      const double t = ts[i];
      const double m = eval_margin(config.id, t, n);
      ++res.evaluations;
      if (m < res.min_margin) {
        res.min_margin = m;
        res.min_margin_t = t;
        res.min_margin_n = n;
      }
      if (m >= 0.0) continue;

      // negative cell: refine between the last nonnegative grid point and
      // the cell, keeping the witness next to the sign change rather than
      // descending toward the region's far edge
      double lo, hi;
      if (i > 0) {
        lo = ts[i - 1];
        hi = t;
      } else {
        lo = t;
        hi = i + 1 < ts.size() ? ts[i + 1] : config.t_hi;
      }
      double best_t = t;
      double best_m = m;
      for (int j = 0; j < kRefineSamples && res.evaluations < config.budget; ++j) {
        const double u = detail::unit_uniform(config.seed, stream, static_cast<std::uint64_t>(j));
        const double tj = lo * std::pow(hi / lo, u);
        const double mj = eval_margin(config.id, tj, n);
        ++res.evaluations;
        if (mj < best_m) {
          best_m = mj;
          best_t = tj;
        }
      }
      std::uint64_t used = 0;
      const GoldenResult gr = golden_min(config.id, n, lo, hi, 1e-12,
                                         config.budget - res.evaluations, used);
      res.evaluations += used;
      if (gr.value < best_m) {
        best_m = gr.value;
        best_t = gr.t;
      }
      if (best_m < res.min_margin) {
        res.min_margin = best_m;
        res.min_margin_t = best_t;
        res.min_margin_n = n;
      }
      const CertifiedSign cs =
          certify_sign(config.id, PositivePair::from_ratio(best_t), n, config.oracle_digits);
      if (cs.outcome == SignOutcome::negative) {
        res.witness = Witness{best_t, n, best_m, cs, cs.digits};
        return res;
      }
      // certification could not confirm the sign; keep scanning
    }
  }
  return res;
}

BracketResult bracket_ratio_crossing(InequalityId id, std::optional<double> exponent,
                                     double t_lo, double t_hi, double tol_log_t,
                                     int digits) {
  if (!(std::isfinite(t_lo) && std::isfinite(t_hi) && 1.0 <= t_lo && t_lo < t_hi)) {
    throw std::invalid_argument("bracket: need 1 <= t_lo < t_hi");
  }
  if (!(tol_log_t > 0.0)) {
    throw std::invalid_argument("bracket: tol_log_t must be positive");
  }
  CertifiedSign lo_sign = certify_sign(id, PositivePair::from_ratio(t_lo), exponent, digits);
  CertifiedSign hi_sign = certify_sign(id, PositivePair::from_ratio(t_hi), exponent, digits);
  const bool opposite =
      (lo_sign.outcome == SignOutcome::positive && hi_sign.outcome == SignOutcome::negative) ||
      (lo_sign.outcome == SignOutcome::negative && hi_sign.outcome == SignOutcome::positive);
  if (!opposite) {
    throw std::domain_error("bracket: endpoint margins must have certified opposite signs");
  }
  while (std::log(t_hi / t_lo) > tol_log_t) {
    const double mid = std::sqrt(t_lo) * std::sqrt(t_hi);
    if (mid <= t_lo || mid >= t_hi) break;  // interval at floating-point resolution
    const CertifiedSign ms = certify_sign(id, PositivePair::from_ratio(mid), exponent, digits);
    if (ms.outcome == SignOutcome::zero_within_bound) {
      throw std::domain_error(
          "bracket: midpoint margin indistinguishable from zero at the precision cap");
    }
    if (ms.outcome == lo_sign.outcome) {
      t_lo = mid;
      lo_sign = ms;
    } else {
      t_hi = mid;
      hi_sign = ms;
    }
  }
  return BracketResult{t_lo, t_hi, lo_sign, hi_sign};
}

MinMarginResult min_margin_over_ratio(InequalityId id, std::optional<double> exponent,
                                      double t_lo, double t_hi, double refine_tol_log_t,
                                      int coarse_steps, int digits) {
  if (!(std::isfinite(t_lo) && std::isfinite(t_hi) && 1.0 <= t_lo && t_lo < t_hi)) {
    throw std::invalid_argument("min_margin_over_ratio: need 1 <= t_lo < t_hi");
  }
  if (coarse_steps < 2) {
    throw std::invalid_argument("min_margin_over_ratio: coarse_steps must be >= 2");
  }
  ScanConfig grid_cfg;
  grid_cfg.t_lo = t_lo;
  grid_cfg.t_hi = t_hi;
  grid_cfg.t_steps = coarse_steps;
  grid_cfg.log_t = true;
  const auto ts = grid_cfg.t_grid();

  size_t best = 0;
  double best_m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ts.size(); ++i) {
    const double m = eval_margin(id, ts[i], exponent);
    if (m < best_m) {
      best_m = m;
      best = i;
    }
  }
  const double lo = best > 0 ? ts[best - 1] : t_lo;
  const double hi = best + 1 < ts.size() ? ts[best + 1] : t_hi;
  std::uint64_t used = 0;
  const GoldenResult gr = golden_min(id, exponent, lo, hi, refine_tol_log_t,
                                     std::numeric_limits<std::uint64_t>::max(), used);
  double t_min = ts[best];
  double m_min = best_m;
  if (gr.value < m_min) {
    m_min = gr.value;
    t_min = gr.t;
  }
  const Margin full = eval_margin_full(id, t_min, exponent);
  MinMarginResult r;
  r.t = t_min;
  r.margin = full.value;
  r.scale = full.scale;
  // certify every negative minimum (a counterexample candidate) and any
  // positive one within noise of zero
  if (full.value < kCertifyWindow * full.scale) {
    r.certified = certify_sign(id, PositivePair::from_ratio(t_min), exponent, digits);
  }
  return r;
}

CriticalProfile exponent_profile(const std::vector<double>& n_grid, double t_lo,
                                 double t_hi, int digits) {
  if (n_grid.empty()) {
    throw std::invalid_argument("exponent_profile: n grid must be nonempty");
  }
  CriticalProfile profile;
  profile.t_lo = t_lo;
  profile.t_hi = t_hi;
  profile.rows.reserve(n_grid.size());
  for (double n : n_grid) {
    const MinMarginResult r =
        min_margin_over_ratio(InequalityId::power, n, t_lo, t_hi, 1e-9, 512, digits);
    ProfileRow row;
    row.n = n;
    row.t_at_min = r.t;
    row.min_margin = r.margin;
    if (!r.certified) {
      row.classification = RowClass::holds_on_grid;
      row.digits = kBinary64Digits;
      row.certified = false;
    } else {
      row.digits = r.certified->digits;
      row.certified = true;
      switch (r.certified->outcome) {
        case SignOutcome::negative:
          row.classification = RowClass::fails;
          break;
        case SignOutcome::positive:
          row.classification = RowClass::holds_on_grid;
          break;
        case SignOutcome::zero_within_bound:
          // an exactly-zero or sub-noise minimum that is not negative counts
          // as holding on the sampled grid
          row.classification =
              r.margin < 0.0 ? RowClass::boundary : RowClass::holds_on_grid;
          break;
      }
    }
    profile.rows.push_back(row);
  }
  return profile;
}

}  // namespace meanslab
