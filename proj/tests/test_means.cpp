#include <doctest.h>

#include <cmath>
#include <limits>

#include "meanslab/explorer.hpp"
#include "meanslab/means.hpp"
#include "meanslab/oracle.hpp"

using namespace meanslab;

namespace {

double relerr(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

double rnd(std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  return detail::unit_uniform(seed, stream, k);
}

// log-uniform t in [lo, hi]
double rand_t(double lo, double hi, std::uint64_t seed, std::uint64_t k) {
  const double u = rnd(seed, 1, k);
  return lo * std::pow(hi / lo, u);
}

// Literal textbook forms, kept independent of the library kernels.
double literal_seiffert(double x, double y) {
  return (x - y) / (2.0 * std::asin((x - y) / (x + y)));
}
double literal_logarithmic(double x, double y) {
  return (x - y) / (std::log(x) - std::log(y));
}
double literal_identric(double x, double y) {
  return std::exp((x * std::log(x) - y * std::log(y)) / (x - y) - 1.0);
}

}  // namespace

TEST_SUITE_BEGIN("means");

TEST_CASE("construction rejects invalid components") {
  CHECK_THROWS_AS(PositivePair(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PositivePair(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(PositivePair(std::numeric_limits<double>::infinity(), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PositivePair(1.0, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  // subnormals are outside the supported domain
  CHECK_THROWS_AS(PositivePair(1.0, 1e-320), std::invalid_argument);
  CHECK_NOTHROW(PositivePair(std::numeric_limits<double>::min(), 1.0));
}

TEST_CASE("canonical ordering makes evaluation exactly symmetric") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double x = rand_t(1e-6, 1e6, 11, 2 * k);
    const double y = rand_t(1e-6, 1e6, 11, 2 * k + 1);
    const PositivePair p(x, y), q(y, x);
    for (MeanKind kind : kAllMeanKinds) {
      CHECK(eval_mean(kind, p) == eval_mean(kind, q));
    }
  }
}

TEST_CASE("normalize and ratio form") {
  const auto r1 = normalize(PositivePair(3.0, 3.0));
  CHECK(r1.t == 1.0);
  CHECK(r1.scale == 3.0);
  const auto r2 = normalize(PositivePair(1.0, 4.0));
  CHECK(r2.t == 4.0);
  CHECK(r2.scale == 1.0);
  const auto r3 = normalize(PositivePair(4.0, 1.0));
  CHECK(r3.t == 4.0);
  CHECK(r3.scale == 1.0);

  // reconstruction returns the pair up to the rounding of t
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double x = rand_t(1e-3, 1e3, 13, 2 * k);
    const double y = rand_t(1e-3, 1e3, 13, 2 * k + 1);
    const PositivePair p(x, y);
    const PositivePair back = normalize(p).reconstruct();
    CHECK(relerr(back.x(), p.x()) < 1e-15);
    CHECK(back.y() == p.y());
  }

  // ratio overflow is a construction error
  CHECK_THROWS_AS(normalize(PositivePair(1e300, 1e-300)), std::invalid_argument);
}

TEST_CASE("mean kind parsing") {
  CHECK(parse_mean_kind("P") == MeanKind::P);
  CHECK(parse_mean_kind("q") == MeanKind::Q);
  CHECK(parse_mean_kind("x") == std::nullopt);
  CHECK(parse_mean_kind("HH") == std::nullopt);
  for (MeanKind kind : kAllMeanKinds) {
    CHECK(parse_mean_kind(to_string(kind)) == kind);
  }
}

TEST_CASE("classical spot values at (1, 4)") {
  const PositivePair p(1.0, 4.0);
  CHECK(eval_classical(MeanKind::H, p) == 1.6);
  CHECK(eval_classical(MeanKind::G, p) == 2.0);
  CHECK(eval_classical(MeanKind::A, p) == 2.5);
  CHECK(relerr(eval_classical(MeanKind::Q, p), 2.9154759474226502) < 4e-16);
  CHECK_THROWS_AS(eval_classical(MeanKind::P, p), std::invalid_argument);
}

TEST_CASE("diagonal pairs return the argument exactly") {
  for (double v : {1.0, 3.0, 0.7, 1e-200, 1e200, 123.456}) {
    const PositivePair p(v, v);
    for (MeanKind kind : kAllMeanKinds) {
      CHECK(eval_mean(kind, p) == v);
    }
  }
}

TEST_CASE("special mean spot values") {
  // P(3,1): asin(1/2) = pi/6 makes this 6/pi
  CHECK(relerr(eval_seiffert(PositivePair(3, 1)), 1.909859317102744) < 1e-14);
  CHECK(relerr(eval_seiffert(PositivePair(3, 1)), 6.0 / M_PI) < 1e-14);
  CHECK(relerr(eval_seiffert(PositivePair(100, 1)), 36.092948613644257) < 1e-14);
  // L(1,e) = e-1; L(1,4) = 3/ln4
  CHECK(relerr(eval_logarithmic(PositivePair(1.0, M_E)), 1.7182818284590452) < 1e-14);
  CHECK(relerr(eval_logarithmic(PositivePair(1, 4)), 2.1640425613334451) < 1e-14);
  // I(1,e) = e^{1/(e-1)}; I(1,4) = e^{(4 ln 4)/3 - 1}
  CHECK(relerr(eval_identric(PositivePair(1.0, M_E)), 1.7895723968418334) < 1e-14);
  CHECK(relerr(eval_identric(PositivePair(1, 4)), 2.3358888476520836) < 1e-14);
}

TEST_CASE("eval_all spot components") {
  const MeanSet m = eval_all(PositivePair(1, 3));
  CHECK(relerr(m.p, 6.0 / M_PI) < 1e-14);
  const MeanSet m14 = eval_all(PositivePair(1, 4));
  CHECK(m14.h == 1.6);
  CHECK(m14.g == 2.0);
  CHECK(m14.a == 2.5);
  CHECK(relerr(m14.q, 2.9154759474226502) < 4e-16);
}

TEST_CASE("eval_all is componentwise identical to the individual evaluators") {
  for (std::uint64_t k = 0; k < 300; ++k) {
    const double t = 1.0 + std::pow(10.0, -10.0 + 18.0 * rnd(17, 3, k));
    const double scale = rand_t(1e-8, 1e8, 17, 1000 + k);
    const PositivePair p(t * scale, scale);
    const MeanSet m = eval_all(p);
    for (MeanKind kind : kAllMeanKinds) {
      CHECK(m.get(kind) == eval_mean(kind, p));
    }
  }
}

TEST_CASE("ordering H <= G <= A <= Q holds outright; strict away from the diagonal") {
  int checked = 0;
  for (std::uint64_t k = 0; k < 4000; ++k) {
    // stress the diagonal: t - 1 log-uniform down to 1e-12
    const double dt = std::pow(10.0, -12.0 + 20.0 * rnd(23, 5, k));
    const double t = 1.0 + std::min(dt, 1e8);
    const double scale = rand_t(1e-8, 1e8, 23, 4000 + k);
    const PositivePair p(t * scale, scale);
    const MeanSet m = eval_all(p);
    CHECK(m.h <= m.g);
    CHECK(m.g <= m.a);
    CHECK(m.a <= m.q);
    if (t >= 1.0 + 1e-7) {
      CHECK(m.h < m.g);
      CHECK(m.g < m.a);
      CHECK(m.a < m.q);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("betweenness: every mean lies in [y, x]") {
  for (std::uint64_t k = 0; k < 3000; ++k) {
    const double dt = std::pow(10.0, -13.0 + 21.0 * rnd(29, 7, k));
    const double t = 1.0 + std::min(dt, 1e8);
    const double scale = rand_t(1e-300, 1e300, 29, 9000 + k);
    if (!std::isfinite(t * scale) || t * scale < 1e-307) continue;
    const PositivePair p(t * scale, scale);
    const MeanSet m = eval_all(p);
    for (MeanKind kind : kAllMeanKinds) {
      const double v = m.get(kind);
      CHECK(v >= p.y());
      CHECK(v <= p.x());
    }
  }
}

TEST_CASE("homogeneity under scaling") {
  for (std::uint64_t k = 0; k < 400; ++k) {
    const double t = 1.0 + std::pow(10.0, -9.0 + 15.0 * rnd(31, 9, k));
    const PositivePair base(t, 1.0);
    const MeanSet m0 = eval_all(base);

    // powers of two scale essentially exactly
    const int e2 = static_cast<int>(rnd(31, 10, k) * 600) - 300;
    const double lam2 = std::ldexp(1.0, e2);
    if (std::isfinite(t * lam2) && t * lam2 >= 1e-307 && lam2 >= 1e-307) {
      const MeanSet m2 = eval_all(PositivePair(t * lam2, lam2));
      for (MeanKind kind : kAllMeanKinds) {
        const double want = m0.get(kind) * lam2;
        if (!std::isfinite(want) || want < 1e-307) continue;
        CHECK(relerr(m2.get(kind), want) < 5e-16);
      }
    }

    // arbitrary scales within relative 1e-14
    const double lam = std::pow(10.0, -100.0 + 200.0 * rnd(31, 11, k));
    const double xs = t * lam;
    if (!std::isfinite(xs) || xs < 1e-307 || lam < 1e-307) continue;
    const MeanSet m1 = eval_all(PositivePair(xs, lam));
    for (MeanKind kind : kAllMeanKinds) {
      const double want = m0.get(kind) * lam;
      if (!std::isfinite(want) || want < 1e-300) continue;
      CHECK(relerr(m1.get(kind), want) < 1e-14);
    }
  }
}

TEST_CASE("P, L, I reformulations match the literal forms for w in [1e-6, 0.999]") {
  for (int i = 0; i <= 400; ++i) {
    const double w = 1e-6 * std::pow(0.999 / 1e-6, i / 400.0);
    const double x = 1.0 + w;
    const double y = 1.0 - w;
    const PositivePair p(x, y);
    CHECK(relerr(eval_seiffert(p), literal_seiffert(x, y)) < 1e-13);
    CHECK(relerr(eval_logarithmic(p), literal_logarithmic(x, y)) < 1e-13);
    CHECK(relerr(eval_identric(p), literal_identric(x, y)) < 1e-13);
  }
  // On scaled pairs the literal L and I forms lose accuracy themselves
  // (ln x - ln y cancels), so compare against the literal form of the
  // normalized pair, scaled back up.
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double w = 1e-6 * std::pow(0.999 / 1e-6, rnd(37, 13, k));
    const double scale = rand_t(1e-3, 1e3, 37, 500 + k);
    const PositivePair p((1.0 + w) * scale, (1.0 - w) * scale);
    const double u = p.x() / scale;
    const double v = p.y() / scale;
    CHECK(relerr(eval_seiffert(p), literal_seiffert(p.x(), p.y())) < 1e-13);
    CHECK(relerr(eval_logarithmic(p), scale * literal_logarithmic(u, v)) < 1e-13);
    CHECK(relerr(eval_identric(p), scale * literal_identric(u, v)) < 1e-13);
  }
}

TEST_CASE("identric series window agrees with the direct form and the oracle") {
  EvalPolicy series_on;
  series_on.diagonal_window = 1e-1;
  EvalPolicy series_off;
  series_off.diagonal_window = 1e-300;
  for (int i = 0; i <= 60; ++i) {
    const double w = std::pow(10.0, -8.0 + 7.0 * i / 60.0);  // 1e-8 .. 1e-1
    const PositivePair p(1.0 + w, 1.0 - w);
    const double vs = eval_identric(p, series_on);
    const double vd = eval_identric(p, series_off);
    CHECK(relerr(vs, vd) < 5e-15);
    const double hp = eval_mean_hp(MeanKind::I, p, 50).value.to_double();
    CHECK(relerr(vs, hp) < 1e-14);
  }
}

TEST_CASE("binary64 means agree with the 50-digit oracle across the ratio range") {
  for (std::uint64_t k = 0; k < 160; ++k) {
    const double dt = std::pow(10.0, -12.0 + 24.0 * rnd(41, 15, k));  // t-1 in [1e-12, 1e12]
    const double t = 1.0 + dt;
    if (!std::isfinite(t) || t > 1e12) continue;
    const PositivePair p(t, 1.0);
    for (MeanKind kind : kAllMeanKinds) {
      const double got = eval_mean(kind, p);
      const double want = eval_mean_hp(kind, p, 50).value.to_double();
      CHECK(relerr(got, want) < 1e-13);
    }
  }
}

TEST_CASE("log-space paths survive extreme magnitudes") {
  const PositivePair p(1e300, 1.0);
  for (MeanKind kind : kAllMeanKinds) {
    const double v = eval_mean(kind, p);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  // identric would overflow here if x^x were ever formed
  CHECK(relerr(eval_identric(p), eval_mean_hp(MeanKind::I, p, 50).value.to_double()) <
        1e-13);
  CHECK(relerr(eval_seiffert(p), eval_mean_hp(MeanKind::P, p, 50).value.to_double()) <
        1e-13);
  CHECK(relerr(eval_logarithmic(p), eval_mean_hp(MeanKind::L, p, 50).value.to_double()) <
        1e-13);
  // mixed extreme magnitudes (ratio beyond binary64) still evaluate
  const PositivePair q(1e300, 1e-300);
  for (MeanKind kind : kAllMeanKinds) {
    CHECK(std::isfinite(eval_mean(kind, q)));
  }
}

TEST_CASE("policy validation") {
  EvalPolicy bad;
  bad.diagonal_window = 0.0;
  CHECK_THROWS_AS(eval_identric(PositivePair(1, 2), bad), std::invalid_argument);
  bad.diagonal_window = 1.0;
  CHECK_THROWS_AS(eval_identric(PositivePair(1, 2), bad), std::invalid_argument);
}

TEST_SUITE_END();
