#include "stabgeo/pl1d.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "stabgeo/kernels.hpp"
#include "stabgeo/optimize.hpp"
#include "stabgeo/revolution.hpp"

namespace stabgeo {

GridFn1D::GridFn1D(std::vector<double> x, std::vector<double> v, Domain d)
    : x_(std::move(x)), v_(std::move(v)), domain_(d) {
  if (x_.size() < 2 || v_.size() != x_.size()) throw InvalidArgument("grid function needs >= 2 matching samples");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(v_[i])) throw InvalidArgument("grid function not finite");
    if (v_[i] < 0) throw InvalidArgument("grid function must be nonnegative");
    if (i > 0 && !(x_[i] > x_[i - 1])) throw InvalidArgument("grid must be strictly increasing");
  }
  if (d == Domain::half_line && x_[0] < 0) throw InvalidArgument("half-line grid must be nonnegative");
}

GridFn1D GridFn1D::sample(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                          Domain d) {
  if (n < 2 || !(hi > lo)) throw InvalidArgument("sample needs n >= 2 and hi > lo");
  std::vector<double> x(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    v[i] = f(x[i]);
  }
  x.back() = hi;
  return GridFn1D(std::move(x), std::move(v), d);
}

GridFn1D GridFn1D::sample_log(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0) || !(hi > lo)) throw InvalidArgument("sample_log needs 0 < lo < hi");
  std::vector<double> x(n), v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
    v[i] = f(x[i]);
  }
  x.front() = lo;
  x.back() = hi;
  return GridFn1D(std::move(x), std::move(v), Domain::half_line);
}

GridFn1D& GridFn1D::flag_log_concave(double tol) {
  if (!is_log_concave(tol)) throw InvalidArgument("function is not log-concave on its grid");
  log_concave_ = true;
  return *this;
}

GridFn1D& GridFn1D::flag_probability(double tol) {
  if (std::abs(integral() - 1.0) > tol) throw InvalidArgument("function does not integrate to 1");
  probability_ = true;
  return *this;
}

double GridFn1D::operator()(double t) const {
  if (t < x_.front() || t > x_.back()) return 0.0;
  if (t == x_.back()) return v_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return v_[i] + (v_[i + 1] - v_[i]) * ((t - x_[i]) / (x_[i + 1] - x_[i]));
}

double GridFn1D::integral() const {
  double s = 0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) s += 0.5 * (x_[i + 1] - x_[i]) * (v_[i] + v_[i + 1]);
  return s;
}

double GridFn1D::moment(int k) const {
  double s = 0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double a = x_[i], b = x_[i + 1], h = b - a, p = v_[i], q = v_[i + 1];
    if (k == 1) s += h * (p * (2 * a + b) + q * (a + 2 * b)) / 6.0;
    else if (k == 2) s += h * (p * (3 * a * a + 2 * a * b + b * b) + q * (a * a + 2 * a * b + 3 * b * b)) / 12.0;
    else throw InvalidArgument("moment order must be 1 or 2");
  }
  return s;
}

std::pair<std::size_t, std::size_t> GridFn1D::support_indices() const {
  std::size_t i0 = v_.size(), i1 = 0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] > 0) {
      i0 = std::min(i0, i);
      i1 = i;
    }
  if (i0 == v_.size()) return {1, 0};
  return {i0 > 0 ? i0 - 1 : 0, i1 + 1 < v_.size() ? i1 + 1 : i1};
}

bool GridFn1D::is_log_concave(double tol) const {
  std::size_t i0 = v_.size(), i1 = 0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] > 0) {
      i0 = std::min(i0, i);
      i1 = i;
    }
  if (i0 == v_.size()) return false;
  for (std::size_t i = i0; i <= i1; ++i)
    if (!(v_[i] > 0)) return false;
  for (std::size_t i = i0 + 1; i < i1; ++i) {
    const double s0 = (std::log(v_[i]) - std::log(v_[i - 1])) / (x_[i] - x_[i - 1]);
    const double s1 = (std::log(v_[i + 1]) - std::log(v_[i])) / (x_[i + 1] - x_[i]);
    if ((s1 - s0) * 0.5 * (x_[i + 1] - x_[i - 1]) > tol) return false;
  }
  return true;
}

bool GridFn1D::is_nonincreasing() const {
  for (std::size_t i = 0; i + 1 < v_.size(); ++i)
    if (v_[i + 1] > v_[i]) return false;
  return true;
}

GridFn1D GridFn1D::times(double c) const {
  if (!(c > 0)) throw InvalidArgument("factor must be positive");
  std::vector<double> v = v_;
  for (auto& y : v) y *= c;
  return GridFn1D(x_, std::move(v), domain_);
}

GridFn1D GridFn1D::shifted(double a, double b) const {
  std::vector<double> x = x_, v = v_;
  for (auto& t : x) t -= b;
  for (auto& y : v) y *= a;
  return GridFn1D(std::move(x), std::move(v), domain_);
}

GridFn1D GridFn1D::rescaled(double a, double b) const {
  if (!(b > 0)) throw InvalidArgument("scale b must be positive");
  std::vector<double> x = x_, v = v_;
  for (auto& t : x) t /= b;
  for (auto& y : v) y *= a;
  return GridFn1D(std::move(x), std::move(v), domain_);
}

namespace {

double min_spacing(const GridFn1D& f, std::size_t i0, std::size_t i1) {
  double h = INFINITY;
  for (std::size_t i = i0; i < i1; ++i) h = std::min(h, f.x()[i + 1] - f.x()[i]);
  return h;
}

// arithmetic sup-convolution on [lo, hi] with n nodes
std::vector<double> run_kernel(const GridFn1D& f, const GridFn1D& g, const std::vector<double>& t, Exec exec) {
  const auto [f0, f1] = f.support_indices();
  const auto [g0, g1] = g.support_indices();
  std::span<const double> xf(f.x().data() + f0, f1 - f0 + 1), vf(f.values().data() + f0, f1 - f0 + 1);
  std::span<const double> xg(g.x().data() + g0, g1 - g0 + 1), vg(g.values().data() + g0, g1 - g0 + 1);
  std::vector<double> out(t.size());
  if (xf.size() < 2 || xg.size() < 2) {
    // single-node support: the interpolant is a point mass of zero measure
    throw EmptyFunction("support of an input is a single grid point");
  }
  if (exec == Exec::parallel) kernels::sup_convolution_parallel(xf, vf, xg, vg, t, out);
  else kernels::sup_convolution_serial(xf, vf, xg, vg, t, out);
  return out;
}

std::vector<double> node_grid(double lo, double hi, double h) {
  const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9)) + 1;
  std::vector<double> t(std::max<std::size_t>(n, 2));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = lo + (hi - lo) * static_cast<double>(k) / (t.size() - 1);
  t.back() = hi;
  return t;
}

void require_support(const GridFn1D& f, const char* name) {
  const auto [i0, i1] = f.support_indices();
  if (i0 > i1) throw EmptyFunction(std::string("empty positivity set in ") + name);
}

}  // namespace

GridFn1D sup_convolution_midpoint(const GridFn1D& f, const GridFn1D& g, Mean mean, Exec exec) {
  require_support(f, "f");
  require_support(g, "g");
  if (mean == Mean::arithmetic) {
    const auto [f0, f1] = f.support_indices();
    const auto [g0, g1] = g.support_indices();
    const double lo = 0.5 * (f.x()[f0] + g.x()[g0]);
    const double hi = 0.5 * (f.x()[f1] + g.x()[g1]);
    double h = 0.5 * std::min(min_spacing(f, f0, f1), min_spacing(g, g0, g1));
    const double cap = 4.0 * std::max(f1 - f0, g1 - g0) + 1;
    h = std::max(h, (hi - lo) / cap);
    auto t = node_grid(lo, hi, h);
    auto v = run_kernel(f, g, t, exec);
    GridFn1D m(std::move(t), std::move(v), Domain::whole_line);
    if (f.log_concave() && g.log_concave() && m.is_log_concave()) m.flag_log_concave();
    return m;
  }
  if (f.domain() != Domain::half_line || g.domain() != Domain::half_line)
    throw InvalidArgument("geometric mean needs half-line functions");
  // arithmetic midpoint of the substituted pair, same nodes, then M(u) = m(ln u) / u
  const GridFn1D hm = sup_convolution_midpoint(exp_substitution(f), exp_substitution(g), Mean::arithmetic, exec);
  std::vector<double> u(hm.size()), v(hm.values());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = std::exp(hm.x()[k]);
    v[k] /= u[k];
  }
  GridFn1D m(std::move(u), std::move(v), Domain::half_line);
  if (f.log_concave() && g.log_concave() && m.is_log_concave()) m.flag_log_concave();
  return m;
}

double pl_deficit(const GridFn1D& f, const GridFn1D& g, const GridFn1D& m) {
  const double a = f.integral(), b = g.integral(), c = m.integral();
  if (!(a > 0) || !(b > 0) || !(c > 0)) throw InvalidArgument("pl_deficit needs positive integrals");
  return c / std::sqrt(a * b) - 1.0;
}

double l1_distance(const GridFn1D& f, const GridFn1D& g) {
  std::vector<double> x;
  x.reserve(f.size() + g.size());
  std::merge(f.x().begin(), f.x().end(), g.x().begin(), g.x().end(), std::back_inserter(x));
  x.erase(std::unique(x.begin(), x.end()), x.end());
  // value of an interpolant on the closed cell [x0, x1], zero if the cell is outside its grid
  auto cellval = [](const GridFn1D& h, double x0, double x1, double at) {
    const double mid = 0.5 * (x0 + x1);
    if (mid < h.x().front() || mid > h.x().back()) return 0.0;
    const auto& xs = h.x();
    const auto& vs = h.values();
    const auto it = std::upper_bound(xs.begin(), xs.end(), mid);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    return vs[i] + (vs[i + 1] - vs[i]) * ((at - xs[i]) / (xs[i + 1] - xs[i]));
  };
  double s = 0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double x0 = x[k], x1 = x[k + 1], h = x1 - x0;
    const double d0 = cellval(f, x0, x1, x0) - cellval(g, x0, x1, x0);
    const double d1 = cellval(f, x0, x1, x1) - cellval(g, x0, x1, x1);
    if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0)) {
      const double lam = d0 / (d0 - d1);
      s += 0.5 * h * (lam * std::abs(d0) + (1 - lam) * std::abs(d1));
    } else {
      s += 0.5 * h * std::abs(d0 + d1);
    }
  }
  return s;
}

namespace {

struct Start {
  std::vector<double> x;
};

// Multistart simplex descent; near-ties resolved toward x0.
NelderMeadResult multistart(const Objective& obj, const std::vector<double>& x0, const std::vector<double>& step,
                            double scale, int max_evals) {
  std::vector<std::vector<double>> starts{x0};
  for (std::size_t k = 0; k < x0.size(); ++k)
    for (double s : {-2.0, 2.0}) {
      auto x = x0;
      x[k] += s * step[k];
      starts.push_back(x);
    }
  NelderMeadOptions nm;
  nm.x_tol = 1e-11;
  nm.max_evals = max_evals;
  std::vector<NelderMeadResult> res;
  for (const auto& s : starts) {
    auto r = nelder_mead(obj, s, step, nm);
    // restart from the result once to escape premature collapse
    auto r2 = nelder_mead(obj, r.x, step, nm);
    if (r2.f <= r.f) r = r2;
    res.push_back(r);
  }
  double best = INFINITY;
  bool any = false;
  for (const auto& r : res) {
    best = std::min(best, r.f);
    any = any || r.converged;
  }
  if (!any) {
    const auto it = std::min_element(res.begin(), res.end(), [](auto& a, auto& b) { return a.f < b.f; });
    throw ConvergenceFailure("stability fit did not converge", it->x, it->f);
  }
  const double tie = best + 1e-9 * std::abs(best) + 1e-14 * scale;
  const NelderMeadResult* pick = nullptr;
  double dist = INFINITY;
  for (const auto& r : res) {
    if (r.f > tie) continue;
    double d = 0;
    for (std::size_t k = 0; k < x0.size(); ++k) d += std::pow((r.x[k] - x0[k]) / step[k], 2);
    if (d < dist) {
      dist = d;
      pick = &r;
    }
  }
  return *pick;
}

double spread(const GridFn1D& m) {
  const double mu = m.mean();
  return std::sqrt(std::max(m.moment(2) / m.integral() - mu * mu, 1e-24));
}

}  // namespace

StabilityFit stability_distance(const GridFn1D& f, const GridFn1D& m, StabilityMode mode,
                                const StabilityOptions& opt) {
  const double im = m.integral(), iff = f.integral();
  if (!(im > 0) || !(iff > 0)) throw InvalidArgument("stability_distance needs positive integrals");
  StabilityFit out;
  if (mode == StabilityMode::shift) {
    const double b0 = m.mean() - f.mean();
    const double a0 = iff / im;
    const double sd = spread(m);
    auto obj = [&](std::span<const double> p) { return l1_distance(f, m.shifted(std::exp(p[0]), p[1])); };
    auto r = multistart(obj, {std::log(a0), b0}, {0.1, 0.1 * sd}, im, opt.max_evals);
    out = {std::exp(r.x[0]), r.x[1], r.f / im};
    return out;
  }
  if (f.domain() != Domain::half_line || m.domain() != Domain::half_line)
    throw InvalidArgument("scale mode needs half-line functions");
  const double b0 = m.mean() / f.mean();
  const double a0 = b0 * iff / im;
  if (opt.a_equals_b) {
    const double q0 = 0.5 * (std::log(a0) + std::log(b0));
    auto obj = [&](std::span<const double> p) {
      const double b = std::exp(p[0]);
      return l1_distance(f, m.rescaled(b, b));
    };
    auto r = multistart(obj, {q0}, {0.1}, im, opt.max_evals);
    const double b = std::exp(r.x[0]);
    return {b, b, r.f / im};
  }
  auto obj = [&](std::span<const double> p) {
    return l1_distance(f, m.rescaled(std::exp(p[0]), std::exp(p[1])));
  };
  auto r = multistart(obj, {std::log(a0), std::log(b0)}, {0.1, 0.1}, im, opt.max_evals);
  return {std::exp(r.x[0]), std::exp(r.x[1]), r.f / im};
}

JointFit joint_stability_fit(const GridFn1D& f, const GridFn1D& g, const GridFn1D& m, StabilityMode mode,
                             const StabilityOptions& opt) {
  const double im = m.integral(), iff = f.integral(), ig = g.integral();
  if (!(im > 0) || !(iff > 0) || !(ig > 0)) throw InvalidArgument("joint fit needs positive integrals");
  JointFit out;
  if (mode == StabilityMode::shift) {
    const double b0 = 0.5 * ((m.mean() - f.mean()) + (g.mean() - m.mean()));
    const double a0 = std::sqrt(iff / ig);
    auto parts = [&](double a, double b) {
      return std::pair{l1_distance(f, m.shifted(a, b)), l1_distance(g, m.shifted(1.0 / a, -b))};
    };
    auto obj = [&](std::span<const double> p) {
      auto [x, y] = parts(std::exp(p[0]), p[1]);
      return x + y;
    };
    auto r = multistart(obj, {std::log(a0), b0}, {0.1, 0.1 * spread(m)}, im, opt.max_evals);
    out.a = std::exp(r.x[0]);
    out.b = r.x[1];
    auto [x, y] = parts(out.a, out.b);
    out.l1_f = x / im;
    out.l1_g = y / im;
    return out;
  }
  if (f.domain() != Domain::half_line || g.domain() != Domain::half_line || m.domain() != Domain::half_line)
    throw InvalidArgument("scale mode needs half-line functions");
  const double b0 = std::sqrt(g.mean() / f.mean());
  const double a0 = b0 * std::sqrt(iff / ig);
  auto parts = [&](double a, double b) {
    return std::pair{l1_distance(f, m.rescaled(a, b)), l1_distance(g, m.rescaled(1.0 / a, 1.0 / b))};
  };
  auto obj = [&](std::span<const double> p) {
    auto [x, y] = parts(std::exp(p[0]), std::exp(p[1]));
    return x + y;
  };
  auto r = multistart(obj, {std::log(a0), std::log(b0)}, {0.1, 0.1}, im, opt.max_evals);
  out.a = std::exp(r.x[0]);
  out.b = std::exp(r.x[1]);
  auto [x, y] = parts(out.a, out.b);
  out.l1_f = x / im;
  out.l1_g = y / im;
  return out;
}

double omega(double eps) {
  if (!(eps >= 0)) throw InvalidArgument("omega needs eps >= 0");
  if (eps == 0) return 0.0;
  return std::cbrt(eps) * std::pow(std::abs(std::log(eps)), 4.0 / 3.0);
}

GridFn1D exp_substitution(const GridFn1D& hh) {
  if (hh.domain() != Domain::half_line) throw InvalidArgument("exp_substitution needs a half-line function");
  std::vector<double> x, v;
  bool dropped = false;
  for (std::size_t i = 0; i < hh.size(); ++i) {
    const double u = hh.x()[i];
    if (!(u > 0)) {
      dropped = dropped || hh.values()[i] > 0;
      continue;
    }
    x.push_back(std::log(u));
    v.push_back(hh.values()[i] * u);
  }
  if (dropped) warn("exp_substitution: support touches 0, truncated at the smallest positive grid point");
  if (x.size() < 2) throw EmptyFunction("no positive grid points");
  GridFn1D out(std::move(x), std::move(v), Domain::whole_line);
  if (hh.log_concave() && hh.is_nonincreasing() && out.is_log_concave()) out.flag_log_concave();
  return out;
}

PLReport pl_report(const GridFn1D& f, const GridFn1D& g, const GridFn1D& m, Mean mean) {
  PLReport r;
  r.integral_f = f.integral();
  r.integral_g = g.integral();
  r.integral_m = m.integral();
  r.deficit = pl_deficit(f, g, m);
  r.omega_bound = r.deficit > 0 ? omega(r.deficit) : 0.0;
  r.vacuous = r.omega_bound >= 1.0;
  const auto fit = joint_stability_fit(f, g, m, mean == Mean::arithmetic ? StabilityMode::shift : StabilityMode::scale);
  r.a = fit.a;
  r.b = fit.b;
  r.l1_f = fit.l1_f;
  r.l1_g = fit.l1_g;
  return r;
}

GridFn1D log_concave_majorant(const GridFn1D& f) {
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.values()[i] > 0) pts.push_back({f.x()[i], std::log(f.values()[i])});
  if (pts.empty()) throw EmptyFunction("empty positivity set");
  const auto h = upper_hull(pts);
  std::vector<double> v(f.size(), 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.x()[i];
    if (x < h.front().x || x > h.back().x) continue;
    while (k + 1 < h.size() && h[k + 1].x < x) ++k;
    if (k + 1 == h.size()) {
      v[i] = std::exp(h[k].y);
      continue;
    }
    const double s = (x - h[k].x) / (h[k + 1].x - h[k].x);
    v[i] = std::exp(h[k].y + s * (h[k + 1].y - h[k].y));
  }
  GridFn1D out(f.x(), std::move(v), f.domain());
  return out;
}

}  // namespace stabgeo
