#pragma once

#include "meanslab/pair.hpp"

namespace meanslab {

/// All seven means of one pair, evaluated in a single pass over the shared
/// midpoint/offset form.
struct MeanSet {
  double h;  // harmonic       2xy/(x+y)
  double g;  // geometric      sqrt(xy)
  double a;  // arithmetic     (x+y)/2
  double q;  // quadratic      sqrt((x^2+y^2)/2)
  double p;  // Seiffert       (x-y)/(2 asin((x-y)/(x+y)))
  double l;  // logarithmic    (x-y)/(ln x - ln y)
  double i;  // identric       (1/e)(x^x/y^y)^(1/(x-y))

  double get(MeanKind kind) const;
};

double eval_mean(MeanKind kind, const PositivePair& pair, const EvalPolicy& policy = {});
MeanSet eval_all(const PositivePair& pair, const EvalPolicy& policy = {});

/// kind must be one of H, G, A, Q.
double eval_classical(MeanKind kind, const PositivePair& pair);
double eval_seiffert(const PositivePair& pair);
double eval_logarithmic(const PositivePair& pair);
double eval_identric(const PositivePair& pair, const EvalPolicy& policy = {});

}  // namespace meanslab
