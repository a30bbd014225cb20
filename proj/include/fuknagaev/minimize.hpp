#pragma once

#include <functional>

namespace fuknagaev::numeric {

struct MinimizeOptions {
  double rel_tol = 1e-10;
  int max_iter = 200;
  /// Coarse scan density used to locate the bracket.
  int points_per_decade = 8;
};

struct Minimum {
  double t = 0.0;
  double value = 0.0;
  /// False when the best point sits on a search limit (infimum not attained inside).
  bool interior = true;
  int iterations = 0;
};

/// Minimizes a unimodal function over t in [lo, hi] (0 < lo < hi) by a
/// log-spaced scan that brackets the minimum, followed by golden-section
/// refinement in log t. +inf values are treated as large; NaN throws
/// domain-error.
Minimum minimize_log_unimodal(const std::function<double(double)>& f, double lo, double hi,
                              const MinimizeOptions& options = {});

}  // namespace fuknagaev::numeric
