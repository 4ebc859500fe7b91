#pragma once

#include <functional>
#include <span>
#include <vector>

namespace stabgeo {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double x_tol = 1e-10;  // simplex extent per coordinate
  int max_evals = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f;
  int evals;
  bool converged;
};

// Standard simplex descent (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
// Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, std::vector<double> step,
                             const NelderMeadOptions& opt = {});

struct ScalarMin {
  double x;
  double f;
};

// Golden-section search on [lo, hi] down to an interval of width tol.
ScalarMin golden_section(const std::function<double(double)>& f, double lo, double hi, double tol);

// Coarse scan of `points` samples then golden section around the best sample.
ScalarMin scan_then_golden(const std::function<double(double)>& f, double lo, double hi, int points,
                           double tol);

}  // namespace stabgeo
