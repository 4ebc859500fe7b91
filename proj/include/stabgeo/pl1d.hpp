#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stabgeo/common.hpp"

namespace stabgeo {

enum class Domain { whole_line, half_line };

// Nonnegative function given by its piecewise-linear interpolant on a strictly
// increasing grid, zero outside the grid. Trapezoid integrals are therefore exact.
class GridFn1D {
 public:
  GridFn1D(std::vector<double> x, std::vector<double> v, Domain d = Domain::whole_line);

  static GridFn1D sample(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                         Domain d = Domain::whole_line);
  // log-spaced half-line grid on [lo, hi], lo > 0
  static GridFn1D sample_log(const std::function<double(double)>& f, double lo, double hi, std::size_t n);

  // Flags are validated when set; InvalidArgument if the data do not qualify.
  GridFn1D& flag_log_concave(double tol = 1e-7);
  GridFn1D& flag_probability(double tol = 1e-9);
  bool log_concave() const { return log_concave_; }
  bool probability() const { return probability_; }

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& values() const { return v_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return x_.size(); }

  double operator()(double t) const;
  double integral() const;
  double moment(int k) const;  // exact for the interpolant, k in {1, 2}
  double mean() const { return moment(1) / integral(); }
  bool is_log_concave(double tol = 1e-7) const;
  bool is_nonincreasing() const;
  // first and last grid index of the closed support of the interpolant; empty -> {1, 0}
  std::pair<std::size_t, std::size_t> support_indices() const;

  GridFn1D times(double c) const;
  // x -> a m(x + b) as a grid function
  GridFn1D shifted(double a, double b) const;
  // x -> a m(b x), b > 0
  GridFn1D rescaled(double a, double b) const;

 private:
  std::vector<double> x_, v_;
  Domain domain_;
  bool log_concave_ = false;
  bool probability_ = false;
};

enum class Mean { arithmetic, geometric };
enum class StabilityMode { shift, scale };

// Pointwise-minimal m with m(mean(r, s)) >= sqrt(f(r) g(s)), evaluated exactly at
// the output nodes. Arithmetic output: uniform grid over the mean-closure of the
// supports at half the finer input spacing. Geometric output: the arithmetic midpoint of
// the exponential substitutions, divided by u at the same (log-uniform) nodes.
GridFn1D sup_convolution_midpoint(const GridFn1D& f, const GridFn1D& g, Mean mean,
                                  Exec exec = Exec::parallel);

double pl_deficit(const GridFn1D& f, const GridFn1D& g, const GridFn1D& m);

// exact L1 distance of the two interpolants
double l1_distance(const GridFn1D& f, const GridFn1D& g);

struct StabilityOptions {
  bool a_equals_b = false;  // scale mode only
  int max_evals = 4000;
};

struct StabilityFit {
  double a = 1;
  double b = 0;
  double l1 = 0;  // divided by the integral of m
};

// shift: min over (a, b) of int |f(t) - a m(t + b)|
// scale: min over (a, b) of int |f(t) - a m(b t)|
StabilityFit stability_distance(const GridFn1D& f, const GridFn1D& m, StabilityMode mode,
                                const StabilityOptions& opt = {});

struct JointFit {
  double a = 1, b = 0;
  double l1_f = 0, l1_g = 0;  // each divided by the integral of m
};

// One (a, b) for both the f and g inequalities:
// shift: |f(t) - a m(t + b)| and |g(t) - m(t - b)/a|
// scale: |f(t) - a m(b t)| and |g(t) - m(t / b)/a|
JointFit joint_stability_fit(const GridFn1D& f, const GridFn1D& g, const GridFn1D& m, StabilityMode mode,
                             const StabilityOptions& opt = {});

// eps^(1/3) |ln eps|^(4/3), omega(0) = 0
double omega(double eps);

// h(x) = H(e^x) e^x on the logarithm of H's grid
GridFn1D exp_substitution(const GridFn1D& h);

struct PLReport {
  double integral_m = 0, integral_f = 0, integral_g = 0;
  double deficit = 0;
  double omega_bound = 0;
  double a = 1, b = 0;
  double l1_f = 0, l1_g = 0;
  bool vacuous = false;  // omega_bound >= 1
};

// arithmetic -> shift-mode fit, geometric -> scale-mode fit
PLReport pl_report(const GridFn1D& f, const GridFn1D& g, const GridFn1D& m, Mean mean);

// least log-concave function above f on f's grid
GridFn1D log_concave_majorant(const GridFn1D& f);

}  // namespace stabgeo
