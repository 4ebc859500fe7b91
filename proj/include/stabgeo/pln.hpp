#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stabgeo/pl1d.hpp"
#include "stabgeo/revolution.hpp"

namespace stabgeo {

// f(x) = max{t_k : x in body_k}, heights strictly decreasing, bodies nested
// increasing, all coaxial o-symmetric revolution bodies in one dimension.
class LevelStack {
 public:
  LevelStack(std::vector<double> heights, std::vector<RevolutionBody> bodies);

  int dim() const { return bodies_.front().dim(); }
  std::size_t size() const { return heights_.size(); }
  const std::vector<double>& heights() const { return heights_; }
  const std::vector<RevolutionBody>& bodies() const { return bodies_; }

  // index of {f >= t}: largest k with heights[k] >= t (1 - rel); -1 if t is above the top
  long level_index(double t, double rel = 0.0) const;
  // |{f >= t}|, 0 above the top level; t must be positive
  double superlevel_volume(double t, double rel = 0.0) const;

  // c f
  LevelStack heights_scaled(double c) const;
  // b^-1 f(b^(-1/n) x): heights / b, bodies scaled by b^(1/n)
  LevelStack mass_preserving_rescale(double b) const;
  // f(x_axis / a, x_perp)
  LevelStack axis_dilated(double a) const;
  // rescaled to integral 1 through the heights
  LevelStack normalized() const;
  // rescaled to integral 1 through an isotropic dilation of the bodies; heights kept
  LevelStack volume_normalized() const;


 private:
  std::vector<double> heights_;
  std::vector<RevolutionBody> bodies_;
};

double stack_integral(const LevelStack& f);
// t -> |{f >= t}| on the level grid, half-line, ascending
GridFn1D section_profile(const LevelStack& f);
// int |f - g| by exact layer-cake over merged level breakpoints
double stack_l1_distance(const LevelStack& f, const LevelStack& g);

// f(x) = peak exp(-rho(x)^p) with rho the gauge of `unit`. Heights
// peak q^k (k < levels, q = floor^(1/(levels-1))); body k is the exact superlevel
// set at the geometric midpoint of its height interval.
LevelStack homothetic_stack(const RevolutionBody& unit, double peak, double p, std::size_t levels,
                            double floor = 1e-6);
// Same on a given decreasing ladder; levels above `peak` are dropped, the last
// interval reuses the previous ratio.
LevelStack homothetic_stack(const RevolutionBody& unit, double peak, double p, const std::vector<double>& ladder);
// e^{-|x|^2}
LevelStack gaussian_stack(int dim, std::size_t levels = 64, std::size_t profile_points = 513,
                          double floor = 1e-6);

// Gaussian f and g(x) = f(x_0 / (1 + delta), x_perp) / (1 + delta) on f's ladder,
// both brought to integral 1 by volume_normalized.
std::pair<LevelStack, LevelStack> axis_dilation_pair(int dim, double delta, std::size_t levels = 64,
                                                     std::size_t profile_points = 513);

enum class MidpointLevels {
  ladder,  // heights of f and g plus sqrt(t_k s_k); f = g gives f, off-ladder pairs round down
  exact,   // every distinct sqrt(t_i s_j); a valid majorant, containment margin 0
};

struct MidpointOptions {
  Exec exec = Exec::parallel;
  MidpointLevels levels = MidpointLevels::ladder;
};

// Output levels: the heights of f and g and sqrt(t_k s_k) (equal counts), within the
// admissible range; f = g gives back f. Omega_k
// is the hull of 1/2 (Phi_i + Psi_j) over the maximal admissible pairs t_i s_j >= u_k^2.
LevelStack minimal_midpoint_stack(const LevelStack& f, const LevelStack& g, const MidpointOptions& opt = {});

// max over level pairs of sqrt(t_i s_j) / u* - 1, u* the highest output level whose
// body contains 1/2 (Phi_i + Psi_j); 0 means m >= sqrt(f g) holds exactly at midpoints.
double containment_margin(const LevelStack& f, const LevelStack& g, const LevelStack& m);

struct TraceLevel {
  double t;       // right end of the interval (t_next, t]
  double length;  // t - t_next
  double M, F_tilde, G_tilde;
  double alpha, beta, sigma, A, eta;
  bool in_I;
};

struct TraceReport {
  double eps = 0;
  double omega = 0;
  bool vacuous = false;
  double b = 1;
  double b_gap = 0;
  bool swapped = false;
  double fit_l1 = 0;
  std::vector<TraceLevel> levels;
  double l1_fg = 0, l1_fm = 0, l1_gm = 0;
  double l1_tilde_fg = 0;
  double j_mass = 0;   // int_J M
  double j_bound = 0;  // 4 int_J (| |Phi~| - M | + | |Psi~| - M |)
  double i_eta = 0;    // int_I M eta
  double ab_dev = 0;   // int M (|alpha - 1| + |beta - 1|)
  double sectioncap_excess = 0;  // worst excess of Phi_t cap Psi_t over Omega_t, relative to diam
  bool jsize_holds = true;
  bool sectioncap_holds = true;
  // measured ratios against the bound shapes; NaN when eps <= 0
  double ratio_l1_fg = 0, ratio_l1_tilde = 0, ratio_b_gap = 0, ratio_i_eta = 0;
};

TraceReport pl_trace(const LevelStack& f, const LevelStack& g, const LevelStack& m);

}  // namespace stabgeo
