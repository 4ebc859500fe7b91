// one PASS/FAIL line per acceptance criterion; exit status 1 if any fails

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "helpers.hpp"
#include "stabgeo/fmp.hpp"
#include "stabgeo/polarity.hpp"

using namespace stabgeo;
using testkit::uniform;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmtd(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1: inequality directions
Outcome directions() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  double worst_pl = INFINITY;
  for (int i = 0; i < 500; ++i) {
    const auto f = testkit::random_log_concave(rng), g = testkit::random_log_concave(rng);
    worst_pl = std::min(worst_pl, pl_deficit(f, g, sup_convolution_midpoint(f, g, Mean::arithmetic)));
  }
  double worst_bs = INFINITY;
  for (int i = 0; i < 200; ++i) {
    const auto k = testkit::random_body(rng, 2 + i % 4);
    worst_bs = std::min(worst_bs, bs_deficit(k).bs_deficit);
  }
  int fmp_bad = 0;
  for (int i = 0; i < 200; ++i) {
    FMPReport r;
    if (i % 2 == 0) {
      r = fmp_bound_check(testkit::random_symmetric_polygon(rng),
                          testkit::random_symmetric_polygon(rng).scaled(uniform(rng, 0.3, 3)));
    } else {
      const int n = 2 + (i / 2) % 4;
      r = fmp_bound_check(testkit::random_body(rng, n), testkit::random_body(rng, n).scaled(uniform(rng, 0.5, 2)));
    }
    if (r.lhs_additive < r.rhs_additive * (1 - 1e-9) || r.lhs_product < r.rhs_product * (1 - 1e-9)) ++fmp_bad;
  }
  int chain_bad = 0;
  long chain_pairs = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 4;
    const auto [f, g] = testkit::random_stack_pair(rng, n, 10, 65);
    const auto m = minimal_midpoint_stack(f, g, {Exec::parallel, MidpointLevels::exact});
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) {
        const double u = std::sqrt(f.heights()[a] * g.heights()[b]);
        const double F = f.bodies()[a].volume(), G = g.bodies()[b].volume();
        const double M = m.superlevel_volume(u, 1e-9);
        const double mid = std::pow(0.5 * (std::pow(F, 1.0 / n) + std::pow(G, 1.0 / n)), n);
        ++chain_pairs;
        if (M < mid * (1 - 1e-9) || mid < std::sqrt(F * G) * (1 - 1e-12)) ++chain_bad;
      }
  }
  const double secs = seconds_since(t0);
  const bool ok = worst_pl >= -1e-8 && worst_bs >= -1e-6 && fmp_bad == 0 && chain_bad == 0 && secs < 120;
  return {ok, "min PL deficit " + fmtd("%.3g", worst_pl) + ", min BS deficit " + fmtd("%.3g", worst_bs) +
                  ", FMP violations " + std::to_string(fmp_bad) + "/200, minksum failures " +
                  std::to_string(chain_bad) + "/" + std::to_string(chain_pairs) + ", " + fmtd("%.1fs", secs)};
}

// ---- 2: equality cases
Outcome equality() {
  const auto f = GridFn1D::sample([](double x) { return std::exp(-x * x); }, -6, 6, 4097);
  const double pl = std::abs(pl_deficit(f, f, f));
  const double pl_star = pl_deficit(f, f, sup_convolution_midpoint(f, f, Mean::arithmetic));
  double ball = 0;
  for (int n = 2; n <= 5; ++n)
    ball = std::max(ball, std::abs(bs_deficit(RevolutionBody::ball(n, 1.0, 2049)).bs_deficit));
  double fmp = 0;
  std::mt19937_64 rng(7);
  const BodyRef bodies[] = {make_ball(3, 1.0), ConvexPolygon::regular(7, 1.3), testkit::random_body(rng, 4),
                            testkit::random_symmetric_polygon(rng)};
  for (const auto& k : bodies) {
    const auto r = fmp_bound_check(k, k);
    fmp = std::max({fmp, std::abs(r.lhs_additive / r.rhs_additive - 1), std::abs(r.lhs_product / r.rhs_product - 1)});
  }
  double mid = 0;
  const LevelStack stacks[] = {gaussian_stack(3, 64, 257), testkit::random_stack_pair(rng, 4, 24).first};
  for (const auto& s : stacks) {
    const auto m = minimal_midpoint_stack(s, s);
    if (m.size() != s.size()) {
      mid = INFINITY;
      continue;
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
      mid = std::max(mid, std::abs(m.heights()[k] / s.heights()[k] - 1));
      const auto& a = m.bodies()[k];
      const auto& b = s.bodies()[k];
      for (int d = 0; d < 64; ++d) {
        const double th = std::numbers::pi * d / 63;
        mid = std::max(mid, std::abs(a.meridian_support(std::cos(th), std::sin(th)) -
                                     b.meridian_support(std::cos(th), std::sin(th))) / b.diameter());
      }
    }
  }
  const bool ok = pl <= 1e-8 && ball <= 1e-6 && fmp <= 1e-6 && mid <= 1e-9;
  return {ok, "Gaussian deficit " + fmtd("%.3g", pl) + " (minimal m* at 4097 points: " + fmtd("%.3g", pl_star) +
                  "), ball BS " + fmtd("%.3g", ball) + ", FMP K=C " + fmtd("%.3g", fmp) + ", f=g midpoint " +
                  fmtd("%.3g", mid)};
}

// ---- 3: cap-cut exponent
Outcome cap_exponent() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  for (int n : {3, 2}) {
    ExperimentConfig c;
    c.experiment = Experiment::cap_scan;
    c.dim = n;
    c.grid = parse_grid("logspace(1e-6,1e-2,13)");
    validate(c);
    const auto r = run_cap_scan(c);
    const double lo = n == 3 ? 0.45 : 0.60, hi = n == 3 ? 0.55 : 0.73;
    const bool good = r.fit && r.fit->slope >= lo && r.fit->slope <= hi && r.fit->r_squared >= 0.98;
    ok = ok && good;
    detail += "n=" + std::to_string(n) + " slope " + (r.fit ? fmtd("%.4f", r.fit->slope) : "none") + " r2 " +
              (r.fit ? fmtd("%.5f", r.fit->r_squared) : "none") + "; ";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 60;
  return {ok, detail + fmtd("%.1fs", secs)};
}

// ---- 4: known values
Outcome known_values() {
  const double sq = bs_deficit(ConvexPolygon::box(-1, -1, 1, 1)).bs_deficit;
  const double sq_ref = std::numbers::pi * std::numbers::pi / 8 - 1;
  auto gamma_ref = [](int n) {
    const long double q = std::pow(2.0L - std::pow(2.0L, (n - 1.0L) / n), 1.5L) / (122.0L * std::pow(1.0L * n, 7));
    return static_cast<double>(q * q);
  };
  auto six_digits = [](double a, double b) {
    char x[32], y[32];
    std::snprintf(x, sizeof x, "%.5e", a);
    std::snprintf(y, sizeof y, "%.5e", b);
    return std::string(x) == y;
  };
  const bool g_ok = six_digits(gamma_star(2), gamma_ref(2)) && six_digits(gamma_star(3), gamma_ref(3));
  const double cyl = bm_distance_to_ball(RevolutionBody::cylinder(3, 1.0, 1.0));
  const GridFn1D f({-1, 1}, {1, 1}), g({-2, 2}, {1, 1});
  const double ind = pl_deficit(f, g, sup_convolution_midpoint(f, g, Mean::arithmetic));
  const double ind_ref = 3 / (2 * std::sqrt(2.0)) - 1;
  const bool ok = std::abs(sq - sq_ref) <= 1e-3 && g_ok && std::abs(cyl - std::log(std::sqrt(2.0))) <= 1e-4 &&
                  std::abs(ind - ind_ref) <= 1e-4;
  return {ok, "square " + fmtd("%.6f", sq) + " vs " + fmtd("%.6f", sq_ref) + ", gamma*(2) " +
                  fmtd("%.5e", gamma_star(2)) + ", gamma*(3) " + fmtd("%.5e", gamma_star(3)) +
                  " (quoted 8.2427e-10, 9.8667e-13), cylinder " + fmtd("%.6f", cyl) + ", indicator pair " +
                  fmtd("%.6f", ind)};
}

// polar area of a polygon about an interior z: polar vertices n_i / (c_i - n_i . z), shoelace
double polar_area_direct(const ConvexPolygon& k, Vec2 z) {
  const auto& v = k.vertices();
  std::vector<Vec2> p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i] - z, b = v[(i + 1) % v.size()] - z;
    const Vec2 nrm{b.y - a.y, a.x - b.x};
    const double c = dot(nrm, a);
    p.push_back((1.0 / c) * nrm);
  }
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * std::abs(s);
}

// ---- 5: oracles
Outcome oracles() {
  std::mt19937_64 rng(11);
  std::vector<BodyRef> bodies = {RevolutionBody::ball(3, 1.0), RevolutionBody::cylinder(3, 1.0, 0.7),
                                 RevolutionBody::ball(5, 1.2), ConvexPolygon::box(-1, -1, 1, 1),
                                 ConvexPolygon({{0, 0}, {3, 0}, {0.5, 1.2}})};
  for (int n = 2; n <= 5; ++n) bodies.push_back(testkit::random_body(rng, n));
  for (int i = 0; i < 3; ++i) bodies.push_back(testkit::random_polygon(rng));
  double worst_z = 0;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const auto e = mc_volume(bodies[i], 1000000, 100 + i);
    worst_z = std::max(worst_z, std::abs(e.estimate - volume(bodies[i])) / e.std_error);
  }

  const ConvexPolygon tri({{0, 0}, {3, 0}, {0.5, 1.2}});
  const double diam = tri.diameter();
  Vec2 best{0, 0};
  double best_a = INFINITY;
  auto scan = [&](double x0, double x1, double y0, double y1) {
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        const Vec2 z{x0 + (x1 - x0) * (i + 0.5) / 200, y0 + (y1 - y0) * (j + 0.5) / 200};
        if (!tri.interior(z, 1e-9)) continue;
        const double a = polar_area_direct(tri, z);
        if (a < best_a) best_a = a, best = z;
      }
  };
  scan(0, 3, 0, 1.2);
  const double hx = 3.0 / 200, hy = 1.2 / 200;
  scan(best.x - 2 * hx, best.x + 2 * hx, best.y - 2 * hy, best.y + 2 * hy);
  const auto s = santalo_point(tri);
  const double dz = std::hypot(s.point.at(0) - best.x, s.point.at(1) - best.y) / diam;

  double inv = 0;
  for (int i = 0; i < 20; ++i) {
    const auto k = i % 2 ? testkit::random_polygon(rng) : testkit::random_symmetric_polygon(rng);
    const Vec2 z = i % 2 ? k.centroid() : Vec2{0, 0};
    inv = std::max(inv, hausdorff_distance(polar(polar(k, z), z), k) / k.diameter());
  }
  const bool ok = worst_z <= 4 && dz <= 1e-3 && inv <= 1e-9;
  return {ok, "worst MC z-score " + fmtd("%.2f", worst_z) + " over " + std::to_string(bodies.size()) +
                  " bodies, Santalo point vs grid " + fmtd("%.2e", dz) + " diam, involution " + fmtd("%.2e", inv) +
                  " diam"};
}

// ---- 6: substitution equivalence
Outcome substitution() {
  std::mt19937_64 rng(6);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto f = testkit::random_decreasing_log_concave(rng, 8193);
    const auto g = testkit::random_decreasing_log_concave(rng, 8193);
    const double geo = pl_deficit(f, g, sup_convolution_midpoint(f, g, Mean::geometric));
    const auto ef = exp_substitution(f), eg = exp_substitution(g);
    const double ari = pl_deficit(ef, eg, sup_convolution_midpoint(ef, eg, Mean::arithmetic));
    worst = std::max(worst, std::abs(geo - ari));
  }
  return {worst <= 1e-6, "worst |geometric - arithmetic| " + fmtd("%.3g", worst) + " over 100 pairs"};
}

// ---- 7: tracer
Outcome tracer() {
  const auto f = gaussian_stack(3, 64, 257).volume_normalized();
  const auto e = pl_trace(f, f, f);
  double lev = 0;
  bool j_empty = true;
  for (const auto& l : e.levels) {
    lev = std::max({lev, std::abs(l.alpha - 1), std::abs(l.beta - 1), std::abs(l.sigma - 1), l.eta});
    j_empty = j_empty && l.in_I;
  }
  const double eq = std::max({std::abs(e.eps), e.b_gap, e.l1_fg, e.l1_fm, e.l1_gm, e.l1_tilde_fg, lev});
  const bool eq_ok = eq <= 1e-5 && j_empty;

  bool dirs = true;
  std::vector<double> ratios;
  const auto grid = parse_grid("logspace(0.02,0.3,10)");
  for (double d : grid) {
    const auto [a, b] = axis_dilation_pair(3, d, 512, 129);
    const auto r = pl_trace(a, b, minimal_midpoint_stack(a, b));
    dirs = dirs && r.jsize_holds && r.sectioncap_holds && r.b >= 1;
    ratios.push_back(r.ratio_l1_fg);
  }
  bool finite = true;
  double hi = 0;
  for (double r : ratios) {
    finite = finite && std::isfinite(r) && r > 0;
    hi = std::max(hi, r);
  }
  // no blow-up as eps -> 0: nothing exceeds twice the value at the largest dilation
  const bool bounded = finite && hi <= 2 * ratios.back();
  std::string rs;
  for (double r : ratios) rs += fmtd("%.3g ", r);
  return {eq_ok && dirs && bounded, "equality family max " + fmtd("%.2e", eq) + (j_empty ? ", J empty" : ", J nonempty") +
                                        "; dilation directions " + (dirs ? "hold" : "fail") + ", l1/sqrt(omega) " + rs};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 inequality directions", directions}, {"2 equality cases", equality},
      {"3 cap-cut exponent", cap_exponent},    {"4 known values", known_values},
      {"5 oracles", oracles},                  {"6 substitution equivalence", substitution},
      {"7 tracer", tracer}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
