#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace meanslab {

/// The seven bivariate means handled by this library.
enum class MeanKind { H, G, A, Q, P, L, I };

inline constexpr std::array<MeanKind, 7> kAllMeanKinds = {
    MeanKind::H, MeanKind::G, MeanKind::A, MeanKind::Q,
    MeanKind::P, MeanKind::L, MeanKind::I};

std::string_view to_string(MeanKind kind);

/// Case-insensitive parse of one of "H","G","A","Q","P","L","I".
std::optional<MeanKind> parse_mean_kind(std::string_view text);

/// Thrown when a result exceeds the binary64 range (e.g. a power gap at
/// extreme exponents); never used for representable results.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An ordered pair of strictly positive, finite, normal-range binary64
/// values. Arguments are canonicalized so that x() >= y(); all evaluators
/// are therefore exactly symmetric in their inputs.
class PositivePair {
 public:
  PositivePair(double x, double y);

  double x() const { return x_; }  // larger component
  double y() const { return y_; }  // smaller component
  bool diagonal() const { return x_ == y_; }

  /// The pair (t, 1) with t >= 1.
  static PositivePair from_ratio(double t);

 private:
  double x_;
  double y_;
};

/// Canonical ratio decomposition: pair == (t * scale, scale) with t >= 1.
/// Every mean M satisfies M(x, y) == scale * M(t, 1).
struct RatioForm {
  double t;      // max/min, >= 1
  double scale;  // min component, > 0

  RatioForm(double t, double scale);
  PositivePair reconstruct() const;
};

RatioForm normalize(const PositivePair& pair);

/// Evaluation policy for binary64 paths.
struct EvalPolicy {
  /// |x-y|/(x+y) threshold below which the identric mean switches to its
  /// diagonal series.
  double diagonal_window = 1e-3;
  /// 0 selects plain binary64; a positive value records the decimal digit
  /// count of an extended-precision context (used by callers that route
  /// evaluation through the oracle).
  int extended_digits = 0;

  void validate() const;
};

namespace detail {

/// Midpoint/offset form of a canonical pair: a = (x+y)/2 (overflow safe)
/// and w = (x-y)/(x+y) in [0, 1). All means are a * f(w) by homogeneity.
struct WForm {
  double a;
  double w;
};

WForm wform(const PositivePair& pair);

}  // namespace detail

}  // namespace meanslab
