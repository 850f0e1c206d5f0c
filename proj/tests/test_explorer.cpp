#include <doctest.h>

#include <cmath>
#include <sstream>

#include "meanslab/explorer.hpp"
#include "meanslab/report.hpp"

using namespace meanslab;

namespace {

// independently computed crossing ratios (60-digit evaluation)
constexpr double kEq6Crossing = 82.015439513095842711;
constexpr double kPower05Crossing = 986.41932076980316;

ScanConfig eq6_config(double t_lo, double t_hi, int steps = 64) {
  ScanConfig cfg;
  cfg.id = InequalityId::seiffert_conj;
  cfg.t_lo = t_lo;
  cfg.t_hi = t_hi;
  cfg.t_steps = steps;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("explorer");

TEST_CASE("config validation") {
  ScanConfig cfg;
  cfg.t_lo = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t_lo = 10.0;
  cfg.t_hi = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t_hi = 100.0;
  cfg.t_steps = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t_steps = 16;
  CHECK_NOTHROW(cfg.validate());
  // n-range presence is tied to the power inequality
  cfg.n_range = {{0.0, 1.0}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.id = InequalityId::power;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_range.reset();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("grids hit both endpoints exactly") {
  ScanConfig cfg;
  cfg.t_lo = 1.0;
  cfg.t_hi = 1000.0;
  cfg.t_steps = 7;
  const auto g = cfg.t_grid();
  CHECK(g.size() == 7);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 1000.0);
  for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  cfg.log_t = false;
  const auto gl = cfg.t_grid();
  CHECK(gl[3] == doctest::Approx(500.5));
}

TEST_CASE("scan of the product inequality: positive everywhere, certified zero at t=1") {
  ScanConfig cfg;
  cfg.id = InequalityId::product;
  cfg.t_lo = 1.0;
  cfg.t_hi = 100.0;
  cfg.t_steps = 50;
  const SignMap map = scan(cfg);
  CHECK(map.complete);
  CHECK(map.cells.size() == 50);
  CHECK(map.cells.front().sign == SignLabel::zero);
  CHECK(map.cells.front().certified);
  for (size_t i = 1; i < map.cells.size(); ++i) {
    CHECK(map.cells[i].sign == SignLabel::positive);
    CHECK(map.cells[i].t > map.cells[i - 1].t);
  }
}

TEST_CASE("scan of the Seiffert conjecture shows the sign structure {0, +, -}") {
  ScanConfig cfg = eq6_config(1.0, 100.0, 3);  // cells at 1, 10, 100
  const SignMap map = scan(cfg);
  REQUIRE(map.cells.size() == 3);
  CHECK(map.cells[0].t == 1.0);
  CHECK(map.cells[0].sign == SignLabel::zero);
  CHECK(map.cells[0].certified);
  CHECK(map.cells[1].t == doctest::Approx(10.0));
  CHECK(map.cells[1].sign == SignLabel::positive);
  CHECK(map.cells[2].t == 100.0);
  CHECK(map.cells[2].sign == SignLabel::negative);
}

TEST_CASE("scan over an exponent grid is row-major with nonnegative rows") {
  ScanConfig cfg;
  cfg.id = InequalityId::power;
  cfg.t_lo = 1.0;
  cfg.t_hi = 1e4;
  cfg.t_steps = 21;
  cfg.n_range = {{-1.0, 1.0}};
  cfg.n_steps = 3;
  const SignMap map = scan(cfg);
  REQUIRE(map.cells.size() == 63);
  // row-major: n varies slowest
  CHECK(map.cells[0].n == -1.0);
  CHECK(map.cells[20].n == -1.0);
  CHECK(map.cells[21].n == 0.0);
  CHECK(map.cells[42].n == 1.0);
  for (const SignCell& c : map.cells) {
    CHECK(c.sign != SignLabel::negative);
  }
}

TEST_CASE("scan respects the evaluation budget") {
  ScanConfig cfg = eq6_config(1.0, 100.0, 50);
  cfg.budget = 10;
  const SignMap map = scan(cfg);
  CHECK_FALSE(map.complete);
  CHECK(map.cells.size() == 10);
}

TEST_CASE("hunt finds no witness for the conjecture below its crossing") {
  ScanConfig cfg = eq6_config(1.0, 10.0);
  const HuntResult res = hunt(cfg);
  CHECK_FALSE(res.witness.has_value());
  CHECK(res.min_margin >= 0.0);
  CHECK(res.evaluations >= 64);
}

TEST_CASE("hunt finds a certified witness for the conjecture over [1, 1000]") {
  ScanConfig cfg = eq6_config(1.0, 1000.0);
  cfg.seed = 7;
  const HuntResult res = hunt(cfg);
  REQUIRE(res.witness.has_value());
  const Witness& w = *res.witness;
  CHECK(w.t > 10.0);
  CHECK(w.t < 100.0);
  CHECK(w.t > kEq6Crossing);  // negative region starts at the crossing
  CHECK(w.margin < 0.0);
  CHECK(w.certified.outcome == SignOutcome::negative);
  CHECK(w.digits >= 50);

  // witness soundness: sign survives at twice the recorded digits
  const CertifiedSign recheck =
      certify_sign(cfg.id, PositivePair::from_ratio(w.t), w.exponent,
                   std::min(2 * w.digits, kOracleDigitCap));
  CHECK(recheck.outcome == SignOutcome::negative);
}

TEST_CASE("hunt stops at its evaluation budget") {
  ScanConfig cfg = eq6_config(1.0, 1000.0);
  cfg.budget = 10;  // exhausted before the negative region is reached
  const HuntResult res = hunt(cfg);
  CHECK_FALSE(res.witness.has_value());
  CHECK(res.evaluations <= 10);
}

TEST_CASE("hunt is deterministic for a fixed seed") {
  ScanConfig cfg = eq6_config(1.0, 1000.0);
  cfg.seed = 20250809;
  const HuntResult a = hunt(cfg);
  const HuntResult b = hunt(cfg);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->t == b.witness->t);
  CHECK(a.witness->margin == b.witness->margin);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.min_margin == b.min_margin);
}

TEST_CASE("hunt finds the half-exponent failure near the diagonal") {
  ScanConfig cfg;
  cfg.id = InequalityId::power;
  cfg.t_lo = 1.01;
  cfg.t_hi = 2.0;
  cfg.t_steps = 64;
  cfg.n_range = {{0.5, 0.5}};
  cfg.n_steps = 1;
  const HuntResult res = hunt(cfg);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->exponent == 0.5);
  CHECK(res.witness->t >= 1.01);
  CHECK(res.witness->t <= 2.0);
  CHECK(res.witness->margin < 0.0);
  CHECK(res.witness->certified.outcome == SignOutcome::negative);
}

TEST_CASE("hunt over an exponent grid skips clean rows") {
  ScanConfig cfg;
  cfg.id = InequalityId::power;
  cfg.t_lo = 1.01;
  cfg.t_hi = 5.0;
  cfg.t_steps = 32;
  cfg.n_range = {{-1.0, 0.5}};  // rows n = -1 (holds) and n = 0.5 (fails)
  cfg.n_steps = 2;
  const HuntResult res = hunt(cfg);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->exponent == 0.5);
  CHECK(res.witness->certified.outcome == SignOutcome::negative);
  // the clean row was fully scanned first
  CHECK(res.evaluations > 32);
}

TEST_CASE("hunt raises no false alarm on proved inequalities") {
  const InequalityId proved[] = {InequalityId::product, InequalityId::sandor,
                                 InequalityId::chain, InequalityId::p_le_i};
  for (InequalityId id : proved) {
    ScanConfig cfg;
    cfg.id = id;
    cfg.t_lo = 1.0;
    cfg.t_hi = 1e8;
    cfg.t_steps = 64;
    const HuntResult res = hunt(cfg);
    CHECK_FALSE(res.witness.has_value());
  }
  for (double n : {-10.0, -2.0, 1.0, 2.0, 10.0}) {
    ScanConfig cfg;
    cfg.id = InequalityId::power;
    cfg.t_lo = 1.0;
    cfg.t_hi = 1e8;
    cfg.t_steps = 64;
    cfg.n_range = {{n, n}};
    cfg.n_steps = 1;
    const HuntResult res = hunt(cfg);
    CHECK_FALSE(res.witness.has_value());
  }
}

TEST_CASE("bracket localizes the conjecture crossing") {
  const BracketResult br = bracket_ratio_crossing(InequalityId::seiffert_conj, {}, 10.0,
                                                  100.0, 1e-6);
  CHECK(std::log(br.t_hi / br.t_lo) <= 1e-6);
  CHECK(br.t_lo <= kEq6Crossing);
  CHECK(br.t_hi >= kEq6Crossing);
  CHECK(br.sign_lo.outcome == SignOutcome::positive);
  CHECK(br.sign_hi.outcome == SignOutcome::negative);
}

TEST_CASE("bracket localizes the half-exponent recovery ratio") {
  const BracketResult br = bracket_ratio_crossing(InequalityId::power, 0.5, 1.22, 1e6,
                                                  1e-6);
  CHECK(std::log(br.t_hi / br.t_lo) <= 1e-6);
  CHECK(br.t_lo <= kPower05Crossing);
  CHECK(br.t_hi >= kPower05Crossing);
  CHECK(br.sign_lo.outcome == SignOutcome::negative);
  CHECK(br.sign_hi.outcome == SignOutcome::positive);
}

TEST_CASE("bracket rejects same-sign endpoints") {
  CHECK_THROWS_AS(
      bracket_ratio_crossing(InequalityId::product, {}, 2.0, 4.0, 1e-6),
      std::domain_error);
}

TEST_CASE("minimum margin of the product inequality sits on the diagonal") {
  const MinMarginResult r = min_margin_over_ratio(InequalityId::product, {}, 1.0, 1e6);
  CHECK(r.t == 1.0);
  CHECK(r.margin == 0.0);
  REQUIRE(r.certified.has_value());
  CHECK(r.certified->outcome == SignOutcome::zero_within_bound);
}

TEST_CASE("minimum margin of the half-exponent gap is certified negative") {
  const MinMarginResult r =
      min_margin_over_ratio(InequalityId::power, 0.5, 1.0 + 1e-6, 1e3);
  CHECK(r.margin < 0.0);
  // independent evaluation: minimum -0.4837967... at t = 181.147...
  CHECK(r.t == doctest::Approx(181.147).epsilon(0.01));
  CHECK(r.margin == doctest::Approx(-0.48379672918939).epsilon(1e-6));
  REQUIRE(r.certified.has_value());
  CHECK(r.certified->outcome == SignOutcome::negative);
}

TEST_CASE("minimum margin of the negative-half exponent stays nonnegative") {
  const MinMarginResult r =
      min_margin_over_ratio(InequalityId::power, -0.5, 1.0 + 1e-6, 1e3);
  if (r.certified) {
    CHECK(r.certified->outcome != SignOutcome::negative);
  } else {
    CHECK(r.margin >= 0.0);
  }
}

TEST_CASE("exponent profile classifies the acceptance grid") {
  const std::vector<double> ns = {-2, -1, -0.5, 0, 0.25, 0.5, 0.75, 1, 1.5, 2};
  const CriticalProfile pr = exponent_profile(ns, 1.0 + 1e-6, 1e6);
  REQUIRE(pr.rows.size() == ns.size());
  for (const ProfileRow& row : pr.rows) {
    if (row.n <= 0.0 || row.n >= 1.0) {
      CHECK(row.classification == RowClass::holds_on_grid);
    } else {
      CHECK(row.classification == RowClass::fails);
      CHECK(row.min_margin < 0.0);
      CHECK(row.certified);
    }
  }
}

TEST_CASE("deterministic scans produce identical serialized bytes") {
  ScanConfig cfg = eq6_config(1.0, 500.0, 40);
  cfg.seed = 99;
  std::ostringstream a, b;
  emit_signmap_csv(a, scan(cfg));
  emit_signmap_csv(b, scan(cfg));
  CHECK(a.str() == b.str());
  std::ostringstream ja, jb;
  emit_signmap_json(ja, scan(cfg), "scan");
  emit_signmap_json(jb, scan(cfg), "scan");
  CHECK(ja.str() == jb.str());
}

TEST_CASE("an empty sign map serializes to a header-only CSV") {
  SignMap empty;
  empty.config.id = InequalityId::product;
  std::ostringstream os;
  emit_signmap_csv(os, empty);
  CHECK(os.str() ==
        "# means-lab csv v1\nid,t,n,margin,rel_margin,sign,digits,certified\n");
}

TEST_CASE("counter-based uniforms are stable and in range") {
  const double v = detail::unit_uniform(1, 2, 3);
  CHECK(v == detail::unit_uniform(1, 2, 3));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = detail::unit_uniform(42, 7, k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(detail::unit_uniform(1, 2, 3) != detail::unit_uniform(1, 2, 4));
  CHECK(detail::unit_uniform(1, 2, 3) != detail::unit_uniform(2, 2, 3));
}

TEST_SUITE_END();
