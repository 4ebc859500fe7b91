#include "stabgeo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stabgeo {

NelderMeadResult nelder_mead(const Objective& fn, std::vector<double> x0, std::vector<double> step,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  int evals = 0;
  auto f = [&](const std::vector<double>& x) {
    ++evals;
    const double v = fn(x);
    return std::isfinite(v) ? v : INFINITY;
  };
  std::vector<std::vector<double>> s(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step[i];
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(s[i]);
  std::vector<std::size_t> idx(n + 1);
  bool converged = false;
  while (evals < opt.max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> s2;
      std::vector<double> f2;
      for (auto i : idx) {
        s2.push_back(s[i]);
        f2.push_back(fv[i]);
      }
      s.swap(s2);
      fv.swap(f2);
    }
    double diam = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) diam = std::max(diam, std::abs(s[i][k] - s[0][k]));
    if (diam <= opt.x_tol) {
      converged = true;
      break;
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) c[k] += s[i][k] / n;
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = c[k] + t * (s[n][k] - c[k]);
      return x;
    };
    auto xr = along(-1.0);
    const double fr = f(xr);
    if (fr < fv[0]) {
      auto xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[n] = xe;
        fv[n] = fe;
      } else {
        s[n] = xr;
        fv[n] = fr;
      }
      continue;
    }
    if (fr < fv[n - 1]) {
      s[n] = xr;
      fv[n] = fr;
      continue;
    }
    const bool outside = fr < fv[n];
    auto xc = along(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[n])) {
      s[n] = xc;
      fv[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) s[i][k] = s[0][k] + 0.5 * (s[i][k] - s[0][k]);
      fv[i] = f(s[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {s[best], fv[best], evals, converged};
}

ScalarMin golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  if (fc < fx && fc <= fd) return {c, fc};
  if (fd < fx) return {d, fd};
  return {x, fx};
}

ScalarMin scan_then_golden(const std::function<double(double)>& f, double lo, double hi, int points,
                           double tol) {
  int best = 0;
  double fb = INFINITY;
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double v = f(lo + i * h);
    if (v < fb) {
      fb = v;
      best = i;
    }
  }
  const double a = lo + std::max(best - 1, 0) * h;
  const double b = lo + std::min(best + 1, points - 1) * h;
  auto r = golden_section(f, a, b, tol);
  if (fb < r.f) return {lo + best * h, fb};
  return r;
}

}  // namespace stabgeo
