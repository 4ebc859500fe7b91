#include "stabgeo/pln.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "stabgeo/fmp.hpp"
#include "stabgeo/kernels.hpp"

namespace stabgeo {

namespace {

constexpr double kLevelRel = 1e-9;

bool nested(const RevolutionBody& inner, const RevolutionBody& outer, int directions, double tol) {
  std::vector<double> wa(directions), wp(directions), si(directions), so(directions);
  for (int k = 0; k < directions; ++k) {
    const double th = std::numbers::pi * k / (directions - 1);
    wa[k] = std::cos(th);
    wp[k] = std::sin(th);
  }
  kernels::support_sweep_parallel(inner.t(), inner.phi(), wa, wp, si);
  kernels::support_sweep_parallel(outer.t(), outer.phi(), wa, wp, so);
  const double scale = outer.diameter();
  for (int k = 0; k < directions; ++k)
    if (si[k] > so[k] + tol * scale) return false;
  return true;
}

std::vector<double> merged_levels(std::initializer_list<const std::vector<double>*> lists) {
  std::vector<double> x;
  for (const auto* l : lists) x.insert(x.end(), l->begin(), l->end());
  std::sort(x.begin(), x.end(), std::greater<>());
  std::vector<double> out;
  for (double v : x)
    if (out.empty() || v < out.back() * (1 - kLevelRel)) out.push_back(v);
  return out;
}

const RevolutionBody* body_at(const LevelStack& f, double t) {
  const long k = f.level_index(t, kLevelRel);
  return k < 0 ? nullptr : &f.bodies()[static_cast<std::size_t>(k)];
}

}  // namespace

LevelStack::LevelStack(std::vector<double> heights, std::vector<RevolutionBody> bodies)
    : heights_(std::move(heights)), bodies_(std::move(bodies)) {
  if (heights_.empty()) throw EmptyFunction("empty level stack");
  if (heights_.size() != bodies_.size()) throw InvalidArgument("heights and bodies differ in count");
  for (std::size_t k = 0; k < heights_.size(); ++k) {
    if (!(heights_[k] > 0) || !std::isfinite(heights_[k])) throw InvalidArgument("heights must be positive");
    if (k > 0 && !(heights_[k] < heights_[k - 1])) throw InvalidArgument("heights must strictly decrease");
    if (bodies_[k].dim() != bodies_[0].dim()) throw InvalidArgument("bodies differ in dimension");
    if (k > 0 && !nested(bodies_[k - 1], bodies_[k], 64, 1e-9))
      throw InvalidArgument("level bodies are not nested");
  }
}

long LevelStack::level_index(double t, double rel) const {
  // heights decrease; find the last k with heights[k] >= t (1 - rel)
  const double thr = t * (1 - rel);
  const auto it = std::upper_bound(heights_.begin(), heights_.end(), thr, std::greater<>());
  // it points at the first height < thr
  return static_cast<long>(it - heights_.begin()) - 1;
}

double LevelStack::superlevel_volume(double t, double rel) const {
  const long k = level_index(t, rel);
  return k < 0 ? 0.0 : bodies_[static_cast<std::size_t>(k)].volume();
}

LevelStack LevelStack::heights_scaled(double c) const {
  if (!(c > 0)) throw InvalidArgument("height factor must be positive");
  std::vector<double> h = heights_;
  for (auto& v : h) v *= c;
  return LevelStack(std::move(h), bodies_);
}

LevelStack LevelStack::mass_preserving_rescale(double b) const {
  if (!(b > 0)) throw InvalidArgument("b must be positive");
  std::vector<double> h = heights_;
  for (auto& v : h) v /= b;
  const double s = std::pow(b, 1.0 / dim());
  std::vector<RevolutionBody> bs;
  for (const auto& body : bodies_) bs.push_back(body.scaled(s));
  return LevelStack(std::move(h), std::move(bs));
}

LevelStack LevelStack::axis_dilated(double a) const {
  std::vector<RevolutionBody> bs;
  for (const auto& body : bodies_) bs.push_back(body.axis_scaled(a, 1.0));
  return LevelStack(heights_, std::move(bs));
}

LevelStack LevelStack::normalized() const { return heights_scaled(1.0 / stack_integral(*this)); }

LevelStack LevelStack::volume_normalized() const {
  const double s = std::pow(stack_integral(*this), -1.0 / dim());
  std::vector<RevolutionBody> bs;
  for (const auto& body : bodies_) bs.push_back(body.scaled(s));
  return LevelStack(heights_, std::move(bs));
}

double stack_integral(const LevelStack& f) {
  const auto& h = f.heights();
  double s = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double next = k + 1 < h.size() ? h[k + 1] : 0.0;
    s += (h[k] - next) * f.bodies()[k].volume();
  }
  return s;
}

GridFn1D section_profile(const LevelStack& f) {
  const std::size_t n = f.size();
  std::vector<double> x(n), v(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[n - 1 - k] = f.heights()[k];
    v[n - 1 - k] = f.bodies()[k].volume();
  }
  if (n == 1) {
    // a single level is an indicator of (0, t0]
    x.insert(x.begin(), 0.0);
    v.insert(v.begin(), v.front());
  }
  GridFn1D out(std::move(x), std::move(v), Domain::half_line);
  if (out.is_log_concave()) out.flag_log_concave();
  return out;
}

double stack_l1_distance(const LevelStack& f, const LevelStack& g) {
  if (f.dim() != g.dim()) throw InvalidArgument("dimension mismatch");
  const auto lv = merged_levels({&f.heights(), &g.heights()});
  double s = 0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const double len = lv[i] - (i + 1 < lv.size() ? lv[i + 1] : 0.0);
    const auto* a = body_at(f, lv[i]);
    const auto* b = body_at(g, lv[i]);
    double d = 0;
    if (a && b) d = symmetric_difference_volume(*a, *b);
    else if (a) d = a->volume();
    else if (b) d = b->volume();
    s += len * d;
  }
  return s;
}

LevelStack homothetic_stack(const RevolutionBody& unit, double peak, double p, std::size_t levels, double floor) {
  if (levels < 1 || !(peak > 0) || !(p > 0) || !(floor > 0 && floor < 1))
    throw InvalidArgument("homothetic_stack: bad parameters");
  const double lq = levels > 1 ? std::log(floor) / (levels - 1.0) : std::log(floor);
  std::vector<double> h(levels);
  std::vector<RevolutionBody> bs;
  for (std::size_t k = 0; k < levels; ++k) {
    h[k] = peak * std::exp(lq * k);
    const double r = std::pow(-lq * (k + 0.5), 1.0 / p);
    bs.push_back(unit.scaled(r));
  }
  return LevelStack(std::move(h), std::move(bs));
}

LevelStack homothetic_stack(const RevolutionBody& unit, double peak, double p, const std::vector<double>& ladder) {
  if (ladder.size() < 2 || !(peak > 0) || !(p > 0)) throw InvalidArgument("homothetic_stack: bad parameters");
  std::vector<double> h;
  std::vector<RevolutionBody> bs;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (ladder[k] > peak * (1 + 1e-12)) continue;
    const double next = k + 1 < ladder.size() ? ladder[k + 1] : ladder[k] * ladder[k] / ladder[k - 1];
    const double mid = std::sqrt(ladder[k] * next);
    h.push_back(ladder[k]);
    bs.push_back(unit.scaled(std::pow(std::log(peak / mid), 1.0 / p)));
  }
  if (h.empty()) throw EmptyFunction("ladder lies above the peak");
  return LevelStack(std::move(h), std::move(bs));
}

LevelStack gaussian_stack(int dim, std::size_t levels, std::size_t profile_points, double floor) {
  return homothetic_stack(RevolutionBody::ball(dim, 1.0, profile_points), 1.0, 2.0, levels, floor);
}

std::pair<LevelStack, LevelStack> axis_dilation_pair(int dim, double delta, std::size_t levels,
                                                     std::size_t profile_points) {
  if (!(delta > -1)) throw InvalidArgument("dilation factor must be positive");
  const RevolutionBody ball = RevolutionBody::ball(dim, 1.0, profile_points);
  const LevelStack f = homothetic_stack(ball, 1.0, 2.0, levels);
  const LevelStack g = homothetic_stack(ball.axis_scaled(1 + delta, 1.0), 1.0 / (1 + delta), 2.0, f.heights());
  return {f.volume_normalized(), g.volume_normalized()};
}

LevelStack minimal_midpoint_stack(const LevelStack& f, const LevelStack& g, const MidpointOptions& opt) {
  if (f.dim() != g.dim()) throw InvalidArgument("dimension mismatch");
  const auto& t = f.heights();
  const auto& s = g.heights();
  const std::size_t kf = t.size(), kg = s.size();
  // own heights of f and g plus the diagonal products, clipped to [sqrt(t_last s_last), sqrt(t_0 s_0)]
  const double top = std::sqrt(t.front() * s.front()), bottom = std::sqrt(t.back() * s.back());
  std::vector<double> cand;
  for (double v : t) cand.push_back(v);
  for (double v : s) cand.push_back(v);
  if (opt.levels == MidpointLevels::exact) {
    for (double a : t)
      for (double b : s) cand.push_back(std::sqrt(a * b));
  } else if (kf == kg) {
    for (std::size_t k = 0; k < kf; ++k) cand.push_back(std::sqrt(t[k] * s[k]));
  }
  std::sort(cand.begin(), cand.end(), std::greater<>());
  std::vector<double> u;
  for (double v : cand) {
    if (v > top * (1 + kLevelRel) || v < bottom * (1 - kLevelRel)) continue;
    // a cluster keeps its smallest member so every pair admissible for it stays admissible
    if (u.empty() || v < u.back() * (1 - kLevelRel)) u.push_back(v);
    else u.back() = v;
  }
  std::vector<std::vector<Vec2>> chains(u.size());
  std::vector<std::exception_ptr> errs(u.size());
  auto level = [&](std::size_t k) {
    const double need = u[k] * u[k] * (1 - 1e-8);
    std::vector<Vec2> pts;
    long prev_j = -1;
    for (std::size_t ii = kf; ii-- > 0;) {
      // largest j with t_i s_j >= u^2; walking i downward j only grows
      const double thr = need / t[ii];
      const long j = static_cast<long>(std::upper_bound(s.begin(), s.end(), thr, std::greater<>()) - s.begin()) - 1;
      if (j < 0 || j <= prev_j) continue;
      prev_j = j;
      const auto c = minkowski_chain(f.bodies()[ii].chain(), g.bodies()[static_cast<std::size_t>(j)].chain());
      for (const auto& q : c) pts.push_back(0.5 * q);
    }
    if (pts.empty()) throw EmptyMidpoint("no admissible level pair for a midpoint level");
    chains[k] = std::move(pts);
  };
  const long nl = static_cast<long>(u.size());
  if (opt.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < nl; ++k) {
      try {
        level(static_cast<std::size_t>(k));
      } catch (...) {
        errs[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  } else {
    for (long k = 0; k < nl; ++k) {
      try {
        level(static_cast<std::size_t>(k));
      } catch (...) {
        errs[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<RevolutionBody> bodies;
  for (auto& c : chains) bodies.push_back(RevolutionBody::from_chain(f.dim(), c));
  return LevelStack(std::move(u), std::move(bodies));
}

double containment_margin(const LevelStack& f, const LevelStack& g, const LevelStack& m) {
  const auto& t = f.heights();
  const auto& s = g.heights();
  const auto& u = m.heights();
  double worst = -INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double target = std::sqrt(t[i] * s[j]);
      const RevolutionBody mid = minkowski_midpoint(f.bodies()[i], g.bodies()[j]);
      auto holds = [&](long k) { return contains(m.bodies()[static_cast<std::size_t>(k)], mid, 1e-9); };
      long k = std::max(m.level_index(target, 1e-12), 0L);
      while (k < static_cast<long>(u.size()) && !holds(k)) ++k;
      if (k == static_cast<long>(u.size())) return INFINITY;
      while (k > 0 && holds(k - 1)) --k;
      worst = std::max(worst, target / u[static_cast<std::size_t>(k)] - 1.0);
    }
  return worst;
}

TraceReport pl_trace(const LevelStack& f_in, const LevelStack& g_in, const LevelStack& m) {
  if (f_in.dim() != g_in.dim() || f_in.dim() != m.dim()) throw InvalidArgument("dimension mismatch");
  for (const auto* s : {&f_in, &g_in})
    if (std::abs(stack_integral(*s) - 1.0) > 1e-6) throw NormalizationError("f and g must integrate to 1");
  const double im = stack_integral(m);
  if (!(im > 0) || !std::isfinite(im)) throw InvalidMidpoint("midpoint function has no mass");
  const int n = m.dim();
  TraceReport r;
  r.eps = im - 1.0;
  r.omega = r.eps > 0 ? omega(r.eps) : 0.0;
  r.vacuous = r.omega >= 1.0;

  const GridFn1D F = section_profile(f_in), M = section_profile(m);
  StabilityOptions so;
  so.a_equals_b = true;
  const auto fit = stability_distance(F, M, StabilityMode::scale, so);
  r.fit_l1 = fit.l1;
  double b = 1.0 / fit.b;
  const LevelStack* f = &f_in;
  const LevelStack* g = &g_in;
  if (b < 1) {
    std::swap(f, g);
    b = 1.0 / b;
    r.swapped = true;
  }
  r.b = b;
  r.b_gap = b - 1.0;

  const LevelStack ft = f->mass_preserving_rescale(b);
  const LevelStack gt = g->mass_preserving_rescale(1.0 / b);
  const double gs = gamma_star(n);
  const auto lv = merged_levels({&ft.heights(), &gt.heights(), &m.heights()});
  double jb = 0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    TraceLevel L{};
    L.t = lv[i];
    L.length = lv[i] - (i + 1 < lv.size() ? lv[i + 1] : 0.0);
    const auto* pf = body_at(ft, L.t);
    const auto* pg = body_at(gt, L.t);
    const auto* pm = body_at(m, L.t);
    L.F_tilde = pf ? pf->volume() : 0.0;
    L.G_tilde = pg ? pg->volume() : 0.0;
    L.M = pm ? pm->volume() : 0.0;
    L.alpha = L.M > 0 ? L.F_tilde / L.M : 0.0;
    L.beta = L.M > 0 ? L.G_tilde / L.M : 0.0;
    L.in_I = L.M > 0 && L.alpha > 0.75 && L.alpha < 1.25 && L.beta > 0.75 && L.beta < 1.25;
    if (pf && pg) {
      // sigma of (Phi_bt, Psi_t/b); alpha / (b^2 beta) is their volume ratio
      const double ratio = L.alpha > 0 && L.beta > 0 ? L.alpha / (b * b * L.beta) : L.F_tilde / (b * b * L.G_tilde);
      L.sigma = std::max(ratio, 1.0 / ratio);
      L.A = homothetic_distance(*pf, *pg);
      L.eta = (L.sigma - 1) * (L.sigma - 1) / (32.0 * n * L.sigma * L.sigma) +
              n * gs * std::pow(L.sigma, -1.0 / n) * L.A * L.A;
      r.l1_tilde_fg += L.length * symmetric_difference_volume(*pf, *pg);
    } else {
      L.sigma = NAN;
      L.A = NAN;
      L.eta = NAN;
      r.l1_tilde_fg += L.length * (L.F_tilde + L.G_tilde);
    }
    if (L.in_I) {
      r.i_eta += L.length * L.M * L.eta;
    } else {
      r.j_mass += L.length * L.M;
      jb += L.length * (std::abs(L.F_tilde - L.M) + std::abs(L.G_tilde - L.M));
    }
    if (L.M > 0) r.ab_dev += L.length * L.M * (std::abs(L.alpha - 1) + std::abs(L.beta - 1));
    r.levels.push_back(L);
  }
  r.j_bound = 4.0 * jb;
  r.jsize_holds = r.j_mass <= r.j_bound * (1 + 1e-12) + 1e-15;

  r.l1_fg = stack_l1_distance(*f, *g);
  r.l1_fm = stack_l1_distance(*f, m);
  r.l1_gm = stack_l1_distance(*g, m);

  // Phi_t cap Psi_t inside Omega_t on the merged untilded level grid
  const auto lv2 = merged_levels({&f->heights(), &g->heights(), &m.heights()});
  double worst = -INFINITY;
  for (double t : lv2) {
    const auto* pf = body_at(*f, t);
    const auto* pg = body_at(*g, t);
    if (!pf || !pg) continue;
    const auto* pm = body_at(m, t);
    const RevolutionBody cap = intersection(*pf, *pg);
    const double ex = pm ? containment_excess(*pm, cap) / cap.diameter() : 1.0;
    worst = std::max(worst, ex);
  }
  r.sectioncap_excess = std::isfinite(worst) ? worst : 0.0;
  r.sectioncap_holds = r.sectioncap_excess <= 1e-9;

  if (r.eps > 0) {
    const double so_ = std::sqrt(r.omega);
    r.ratio_l1_fg = r.l1_fg / so_;
    r.ratio_l1_tilde = r.l1_tilde_fg / so_;
    r.ratio_b_gap = r.b_gap / so_;
    r.ratio_i_eta = r.i_eta / r.omega;
  } else {
    r.ratio_l1_fg = r.ratio_l1_tilde = r.ratio_b_gap = r.ratio_i_eta = NAN;
  }
  return r;
}

}  // namespace stabgeo
