#include "meanslab/means.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace meanslab {

namespace {

bool valid_component(double v) {
  // strictly positive, finite, normal range (subnormals rejected)
  return std::isfinite(v) && v >= std::numeric_limits<double>::min();
}

// Branch threshold on w. Below it the means are computed from (a, w) with
// structurally ordered factors; above it the classical forms are
// cancellation-free and more accurate for extreme ratios.
constexpr double kWNear = 0.5;

struct Ctx {
  double x, y;  // canonical, x >= y
  double a;     // (x+y)/2
  double w;     // (x-y)/(x+y), in [0, 1)
  bool near;    // w <= kWNear
};

Ctx make_ctx(const PositivePair& p) {
  Ctx c;
  c.x = p.x();
  c.y = p.y();
  const auto wf = detail::wform(p);
  c.a = wf.a;
  c.w = wf.w;
  c.near = c.w <= kWNear;
  return c;
}

double clamp_between(double v, const Ctx& c) {
  return std::clamp(v, c.y, c.x);
}

double harmonic(const Ctx& c) {
  // near: a*(1-w^2); shares 1-w^2 with the geometric kernel so that
  // H <= G <= A <= Q holds exactly under round-to-nearest.
  const double v = c.near ? c.a * (1.0 - c.w * c.w) : (c.x / c.a) * c.y;
  return clamp_between(v, c);
}

double geometric(const Ctx& c) {
  const double v = c.near ? c.a * std::sqrt(1.0 - c.w * c.w)
                          : std::sqrt(c.x) * std::sqrt(c.y);
  return clamp_between(v, c);
}

double quadratic(const Ctx& c) {
  double v;
  if (c.near) {
    v = c.a * std::sqrt(1.0 + c.w * c.w);
  } else {
    const double r = c.y / c.x;
    v = c.x * std::sqrt(0.5 + 0.5 * r * r);
  }
  return clamp_between(v, c);
}

double seiffert(const Ctx& c) {
  if (c.w == 0.0) return c.a;
  double phi;
  if (c.near) {
    phi = std::asin(c.w);
  } else {
    // asin(w) through atan2; sqrt(1-w^2) = G/A computed from x, y directly,
    // which stays accurate as w -> 1 where 1 - w*w cancels.
    const double g_over_a = std::sqrt((c.x / c.a) * (c.y / c.a));
    phi = std::atan2(c.w, g_over_a);
  }
  return clamp_between(c.a * (c.w / phi), c);
}

double logarithmic(const Ctx& c) {
  if (c.w == 0.0) return c.a;
  double halflog;  // atanh(w) = (ln x - ln y)/2
  if (c.near) {
    halflog = std::atanh(c.w);
  } else {
    const double r = c.x / c.y;
    halflog = std::isfinite(r) ? 0.5 * std::log(r)
                               : 0.5 * (std::log(c.x) - std::log(c.y));
  }
  return clamp_between(c.a * (c.w / halflog), c);
}

// ln(I/A) for the identric mean. Exact expansion:
//   ln(I/A) = ((1+w)ln(1+w) - (1-w)ln(1-w)) / (2w) - 1
//           = -sum_{k>=1} w^{2k} / (2k(2k+1))
double log_identric_ratio(const Ctx& c, double window) {
  const double w = c.w;
  if (w < window) {
    const double w2 = w * w;
    double pw = w2;
    double sum = 0.0;
    for (int k = 1; k <= 2000; ++k) {
      const double term = pw / (2.0 * k * (2.0 * k + 1.0));
      sum += term;
      if (term < 1e-18 * (1.0 + sum)) break;
      pw *= w2;
    }
    return -sum;
  }
  double num;
  if (c.near) {
    num = (1.0 + w) * std::log1p(w) - (1.0 - w) * std::log1p(-w);
  } else {
    // 1+w and 1-w recovered from x, y to avoid the loss in 1-w as w -> 1;
    // u*ln(u) -> 0 as u -> 0, so an underflowed ratio contributes nothing
    const double uhi = c.x / c.a;
    const double ulo = c.y / c.a;
    num = uhi * std::log(uhi) - (ulo > 0.0 ? ulo * std::log(ulo) : 0.0);
  }
  return num / (2.0 * w) - 1.0;
}

double identric(const Ctx& c, const EvalPolicy& policy) {
  if (c.w == 0.0) return c.a;
  return clamp_between(c.a * std::exp(log_identric_ratio(c, policy.diagonal_window)), c);
}

}  // namespace

PositivePair::PositivePair(double x, double y) {
  if (!valid_component(x) || !valid_component(y)) {
    throw std::invalid_argument(
        "PositivePair: components must be strictly positive, finite, normal-range values");
  }
  x_ = std::max(x, y);
  y_ = std::min(x, y);
}

PositivePair PositivePair::from_ratio(double t) {
  if (!(std::isfinite(t) && t >= 1.0)) {
    throw std::invalid_argument("PositivePair::from_ratio: t must be finite and >= 1");
  }
  return PositivePair(t, 1.0);
}

RatioForm::RatioForm(double t_, double scale_) : t(t_), scale(scale_) {
  if (!(std::isfinite(t) && t >= 1.0)) {
    throw std::invalid_argument("RatioForm: t must be finite and >= 1");
  }
  if (!valid_component(scale)) {
    throw std::invalid_argument("RatioForm: scale must be a positive normal value");
  }
}

PositivePair RatioForm::reconstruct() const { return PositivePair(t * scale, scale); }

RatioForm normalize(const PositivePair& pair) {
  return RatioForm(pair.x() / pair.y(), pair.y());
}

void EvalPolicy::validate() const {
  if (!(diagonal_window > 0.0 && diagonal_window < 1.0)) {
    throw std::invalid_argument("EvalPolicy: diagonal_window must lie in (0, 1)");
  }
  if (extended_digits < 0) {
    throw std::invalid_argument("EvalPolicy: extended_digits must be >= 0");
  }
}

namespace detail {

WForm wform(const PositivePair& pair) {
  WForm f;
  f.a = 0.5 * pair.x() + 0.5 * pair.y();
  const double dhalf = 0.5 * pair.x() - 0.5 * pair.y();
  f.w = dhalf / f.a;
  return f;
}

}  // namespace detail

std::string_view to_string(MeanKind kind) {
  switch (kind) {
    case MeanKind::H: return "H";
    case MeanKind::G: return "G";
    case MeanKind::A: return "A";
    case MeanKind::Q: return "Q";
    case MeanKind::P: return "P";
    case MeanKind::L: return "L";
    case MeanKind::I: return "I";
  }
  return "?";
}

std::optional<MeanKind> parse_mean_kind(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'H': return MeanKind::H;
    case 'G': return MeanKind::G;
    case 'A': return MeanKind::A;
    case 'Q': return MeanKind::Q;
    case 'P': return MeanKind::P;
    case 'L': return MeanKind::L;
    case 'I': return MeanKind::I;
    default: return std::nullopt;
  }
}

double MeanSet::get(MeanKind kind) const {
  switch (kind) {
    case MeanKind::H: return h;
    case MeanKind::G: return g;
    case MeanKind::A: return a;
    case MeanKind::Q: return q;
    case MeanKind::P: return p;
    case MeanKind::L: return l;
    case MeanKind::I: return i;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double eval_mean(MeanKind kind, const PositivePair& pair, const EvalPolicy& policy) {
  policy.validate();
  if (pair.diagonal()) return pair.x();
  const Ctx c = make_ctx(pair);
  switch (kind) {
    case MeanKind::H: return harmonic(c);
    case MeanKind::G: return geometric(c);
    case MeanKind::A: return c.a;
    case MeanKind::Q: return quadratic(c);
    case MeanKind::P: return seiffert(c);
    case MeanKind::L: return logarithmic(c);
    case MeanKind::I: return identric(c, policy);
  }
  throw std::invalid_argument("eval_mean: unknown kind");
}

MeanSet eval_all(const PositivePair& pair, const EvalPolicy& policy) {
  policy.validate();
  MeanSet m;
  if (pair.diagonal()) {
    m.h = m.g = m.a = m.q = m.p = m.l = m.i = pair.x();
    return m;
  }
  const Ctx c = make_ctx(pair);
  m.h = harmonic(c);
  m.g = geometric(c);
  m.a = c.a;
  m.q = quadratic(c);
  m.p = seiffert(c);
  m.l = logarithmic(c);
  m.i = identric(c, policy);
  return m;
}

double eval_classical(MeanKind kind, const PositivePair& pair) {
  switch (kind) {
    case MeanKind::H:
    case MeanKind::G:
    case MeanKind::A:
    case MeanKind::Q:
      return eval_mean(kind, pair);
    default:
      throw std::invalid_argument("eval_classical: kind must be one of H, G, A, Q");
  }
}

double eval_seiffert(const PositivePair& pair) { return eval_mean(MeanKind::P, pair); }

double eval_logarithmic(const PositivePair& pair) { return eval_mean(MeanKind::L, pair); }

double eval_identric(const PositivePair& pair, const EvalPolicy& policy) {
  return eval_mean(MeanKind::I, pair, policy);
}

}  // namespace meanslab
