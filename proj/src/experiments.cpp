#include "stabgeo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "stabgeo/common.hpp"
#include "stabgeo/io.hpp"
#include "stabgeo/pl1d.hpp"
#include "stabgeo/pln.hpp"
#include "stabgeo/polarity.hpp"

namespace stabgeo {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(trim(s), &used);
    if (used != trim(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' for " + key);
  }
}

std::uint64_t to_uint(const std::string& s, const std::string& key) {
  const double v = to_double(s, key);
  if (!(v >= 0) || v != std::floor(v) || v > 9.0e15) throw ConfigError(key + " must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::size_t default_profile_points(Experiment e) {
  switch (e) {
    case Experiment::cap_scan: return 32769;
    case Experiment::bs_scan: return 2049;
    case Experiment::pln_scan: return 129;
    default: return 0;
  }
}

// runs body(i) for every grid index, rethrowing the first failure in grid order
template <class Fn>
void for_each_point(std::size_t n, Fn&& body) {
  std::vector<std::exception_ptr> errs(n);
  const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < ln; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errs[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

std::optional<FitResult> fit_if_possible(const std::vector<std::pair<double, double>>& xy, double cutoff) {
  std::vector<std::pair<double, double>> kept;
  for (const auto& [x, y] : xy)
    if (x > cutoff && y > cutoff && std::isfinite(x) && std::isfinite(y)) kept.emplace_back(x, y);
  if (kept.size() < 3) return std::nullopt;
  return fit_exponent(kept);
}

double gaussian(double x) { return std::exp(-x * x); }

}  // namespace

Experiment parse_experiment(const std::string& s) {
  if (s == "cap-scan") return Experiment::cap_scan;
  if (s == "bs-scan") return Experiment::bs_scan;
  if (s == "pl-scan") return Experiment::pl_scan;
  if (s == "pln-scan") return Experiment::pln_scan;
  throw ConfigError("unknown experiment '" + s + "'");
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::cap_scan: return "cap-scan";
    case Experiment::bs_scan: return "bs-scan";
    case Experiment::pl_scan: return "pl-scan";
    case Experiment::pln_scan: return "pln-scan";
  }
  return "?";
}

std::vector<double> parse_grid(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return {};
  for (const char* fn : {"logspace", "linspace"}) {
    const std::string name = fn;
    if (s.rfind(name + "(", 0) == 0) {
      if (s.back() != ')') throw ConfigError("unclosed " + name);
      std::stringstream args(s.substr(name.size() + 1, s.size() - name.size() - 2));
      std::string a, b, c;
      if (!std::getline(args, a, ',') || !std::getline(args, b, ',') || !std::getline(args, c, ','))
        throw ConfigError(name + " needs (lo,hi,n)");
      const double lo = to_double(a, "grid"), hi = to_double(b, "grid");
      const auto n = to_uint(c, "grid");
      if (n < 1) throw ConfigError(name + " needs n >= 1");
      if (name == "logspace" && !(lo > 0 && hi > 0)) throw ConfigError("logspace bounds must be positive");
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1.0);
        g[i] = name == "logspace" ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo))) : lo + u * (hi - lo);
      }
      return g;
    }
  }
  std::vector<double> g;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) g.push_back(to_double(item, "grid"));
  return g;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool have_experiment = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "experiment") {
      cfg.experiment = parse_experiment(val);
      have_experiment = true;
    } else if (key == "dim") {
      cfg.dim = static_cast<int>(to_uint(val, key));
    } else if (key == "grid") {
      cfg.grid = parse_grid(val);
    } else if (key == "seed") {
      cfg.seed = to_uint(val, key);
    } else if (key == "output") {
      cfg.output_path = val;
    } else if (key == "profile_points") {
      cfg.profile_points = to_uint(val, key);
    } else if (key == "levels") {
      cfg.levels = to_uint(val, key);
    } else if (key == "fn_points") {
      cfg.fn_points = to_uint(val, key);
    } else if (key == "bodies") {
      cfg.bodies = to_uint(val, key);
    } else if (key == "fit_cutoff") {
      cfg.fit_cutoff = to_double(val, key);
    } else if (key == "family") {
      cfg.family = val;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_experiment) throw ConfigError("missing experiment=");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open config " + p.string());
  return parse_config(in);
}

void validate(ExperimentConfig& cfg) {
  if (cfg.dim < 2) throw ConfigError("dim must be >= 2");
  if (cfg.profile_points == 0) cfg.profile_points = default_profile_points(cfg.experiment);
  // the level ladder must be fine enough that slack stays below the deficits of small dilations
  if (cfg.levels == 0) cfg.levels = cfg.experiment == Experiment::pln_scan ? 512 : 64;
  if (!(cfg.fit_cutoff >= 0)) throw ConfigError("fit_cutoff must be >= 0");
  for (double v : cfg.grid)
    if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
  switch (cfg.experiment) {
    case Experiment::cap_scan: {
      if (cfg.grid.empty()) throw ConfigError("cap-scan needs a nonempty grid of cap volumes");
      const double lim = unit_ball_volume(cfg.dim) / 4;
      for (double v : cfg.grid)
        if (!(v > 0 && v < lim)) throw ConfigError("cap volume out of (0, kappa_n/4): " + io::fmt(v));
      if (cfg.profile_points < 65) throw ConfigError("profile_points must be >= 65");
      break;
    }
    case Experiment::bs_scan:
      if (cfg.grid.empty()) cfg.grid = {1.0, 4.0};
      for (double v : cfg.grid)
        if (!(v >= 1 && v <= 16)) throw ConfigError("bs-scan grid holds profile exponents in [1, 16]");
      if (cfg.bodies < 1) throw ConfigError("bodies must be >= 1");
      if (cfg.profile_points < 65) throw ConfigError("profile_points must be >= 65");
      break;
    case Experiment::pl_scan:
      if (cfg.family.empty()) cfg.family = "asymmetric";
      if (cfg.family != "shift" && cfg.family != "asymmetric")
        throw ConfigError("pl-scan family must be shift or asymmetric");
      if (cfg.grid.empty()) throw ConfigError("pl-scan needs a nonempty grid");
      for (double v : cfg.grid) {
        if (cfg.family == "shift" && !(v >= 0 && v <= 2)) throw ConfigError("shift must lie in [0, 2]");
        if (cfg.family == "asymmetric" && !(v > 0 && v < 1)) throw ConfigError("perturbation must lie in (0, 1)");
      }
      if (cfg.fn_points < 65) throw ConfigError("fn_points must be >= 65");
      break;
    case Experiment::pln_scan:
      if (cfg.family.empty()) cfg.family = "dilation";
      if (cfg.family != "dilation") throw ConfigError("pln-scan family must be dilation");
      if (cfg.grid.empty()) throw ConfigError("pln-scan needs a nonempty grid");
      for (double v : cfg.grid)
        if (!(v > 0 && v <= 1)) throw ConfigError("dilation must lie in (0, 1]");
      if (cfg.levels < 4) throw ConfigError("levels must be >= 4");
      if (cfg.profile_points < 17) throw ConfigError("profile_points must be >= 17");
      break;
  }
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 3) throw InvalidData("fit needs at least 3 points, got " + std::to_string(xy.size()));
  FitResult r;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    const auto [x, y] = xy[i];
    if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y))
      throw InvalidData("point " + std::to_string(i) + " (" + io::fmt(x) + ", " + io::fmt(y) + ") is not positive");
    r.points.emplace_back(std::log(x), std::log(y));
  }
  const double n = static_cast<double>(r.points.size());
  double mx = 0, my = 0;
  for (const auto& [lx, ly] : r.points) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [lx, ly] : r.points) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
    syy += (ly - my) * (ly - my);
  }
  if (!(sxx > 0)) throw InvalidData("fit needs at least two distinct x values");
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss_res = 0;
  for (const auto& [lx, ly] : r.points) {
    const double e = ly - (r.intercept + r.slope * lx);
    ss_res += e * e;
  }
  r.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return r;
}

ScanResult run_cap_scan(const ExperimentConfig& cfg) {
  ScanResult r;
  r.columns = {"eps_cap", "bs_deficit", "delta_bm"};
  r.rows.resize(cfg.grid.size());
  for_each_point(cfg.grid.size(), [&](std::size_t i) {
    const RevolutionBody k = cap_cut_body(cfg.dim, cfg.grid[i], cfg.profile_points);
    const double d = bs_deficit(k).bs_deficit;
    r.rows[i] = {cfg.grid[i], d, bm_distance_to_ball(k)};
  });
  std::vector<std::pair<double, double>> xy;
  for (const auto& row : r.rows) xy.emplace_back(row[1], row[2]);
  r.fit = fit_if_possible(xy, cfg.fit_cutoff);
  r.diagnostics["theory_slope"] = 2.0 / (cfg.dim + 1);
  return r;
}

RevolutionBody random_profile_body(int dim, double p_lo, double p_hi, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = std::exp(std::log(p_lo) + u(rng) * (std::log(p_hi) - std::log(p_lo)));
  const double alpha = std::exp(std::log(0.5) + u(rng) * std::log(4.0));
  const double height = std::exp(std::log(0.5) + u(rng) * std::log(4.0));
  return RevolutionBody::from_function(
      dim, alpha,
      [=](double t) {
        const double s = std::min(1.0, std::abs(t / alpha));
        return height * std::pow(std::max(0.0, 1.0 - std::pow(s, p)), 1.0 / p);
      },
      samples);
}

ScanResult run_bs_scan(const ExperimentConfig& cfg) {
  ScanResult r;
  r.columns = {"bs_deficit", "delta_bm"};
  r.rows.resize(cfg.bodies);
  const auto [lo_it, hi_it] = std::minmax_element(cfg.grid.begin(), cfg.grid.end());
  const double p_lo = *lo_it, p_hi = *hi_it;
  for_each_point(cfg.bodies, [&](std::size_t i) {
    // body 0 is the ball
    const RevolutionBody k = i == 0 ? RevolutionBody::ball(cfg.dim, 1.0, cfg.profile_points)
                                    : random_profile_body(cfg.dim, p_lo, p_hi, cfg.profile_points, cfg.seed + i);
    r.rows[i] = {bs_deficit(k).bs_deficit, bm_distance_to_ball(k)};
  });
  const double e = 2.0 / (3.0 * (cfg.dim + 1));
  double worst = 0;
  for (const auto& row : r.rows)
    if (row[0] > cfg.fit_cutoff) worst = std::max(worst, row[1] / std::pow(row[0], e));
  r.diagnostics["max_delta_over_eps_pow"] = worst;
  r.diagnostics["exponent"] = e;
  return r;
}

ScanResult run_pl_scan(const ExperimentConfig& cfg) {
  ScanResult r;
  r.columns = {"delta", "eps", "l1", "omega", "ratio"};
  r.rows.resize(cfg.grid.size());
  const bool nd = cfg.experiment == Experiment::pln_scan;
  if (nd) {
    for_each_point(cfg.grid.size(), [&](std::size_t i) {
      const double d = cfg.grid[i];
      const auto [f, g] = axis_dilation_pair(cfg.dim, d, cfg.levels, cfg.profile_points);
      MidpointOptions mo;
      mo.exec = Exec::serial;
      const LevelStack m = minimal_midpoint_stack(f, g, mo);
      const TraceReport t = pl_trace(f, g, m);
      const double ratio = t.eps > 0 ? t.l1_fg / std::sqrt(t.omega) : NAN;
      r.rows[i] = {d, t.eps, t.l1_fg, t.omega, ratio};
    });
  } else {
    const std::size_t n = cfg.fn_points;
    const bool shift = cfg.family == "shift";
    for_each_point(cfg.grid.size(), [&](std::size_t i) {
      const double d = cfg.grid[i];
      const GridFn1D g = GridFn1D::sample(gaussian, -6, 6, n);
      const GridFn1D f = shift ? GridFn1D::sample([d](double x) { return gaussian(x - d); }, -6 + d, 6 + d, n)
                               : GridFn1D::sample(
                                     [d](double x) { return gaussian(x) * (1.0 + (x > 0 ? d : x < 0 ? -d : 0.0)); },
                                     -6, 6, n);
      const GridFn1D m = sup_convolution_midpoint(f, g, Mean::arithmetic, Exec::serial);
      const PLReport rep = pl_report(f, g, m, Mean::arithmetic);
      const double l1 = rep.l1_f + rep.l1_g;
      const double ratio = rep.deficit > 0 ? l1 / rep.omega_bound : NAN;
      r.rows[i] = {d, rep.deficit, l1, rep.omega_bound, ratio};
    });
  }
  std::vector<std::pair<double, double>> xy;
  double worst = 0;
  for (const auto& row : r.rows) {
    xy.emplace_back(row[1], row[2]);
    if (std::isfinite(row[4])) worst = std::max(worst, row[4]);
  }
  r.fit = fit_if_possible(xy, cfg.fit_cutoff);
  r.diagnostics["max_ratio"] = worst;
  return r;
}

ScanResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::cap_scan: return run_cap_scan(cfg);
    case Experiment::bs_scan: return run_bs_scan(cfg);
    case Experiment::pl_scan:
    case Experiment::pln_scan: return run_pl_scan(cfg);
  }
  throw ConfigError("unknown experiment");
}

void write_csv(std::ostream& out, const ScanResult& r) {
  for (std::size_t j = 0; j < r.columns.size(); ++j) out << (j ? "," : "") << r.columns[j];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << io::fmt(row[j]);
    out << '\n';
  }
}

ScanResult run_and_write(ExperimentConfig cfg, std::ostream& summary) {
  validate(cfg);
  ScanResult r = run_experiment(cfg);
  if (cfg.output_path.empty()) {
    write_csv(std::cout, r);
  } else {
    std::ostringstream buf;
    write_csv(buf, r);
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.output_path);
    out << buf.str();
  }
  if (r.fit)
    summary << "slope=" << io::fmt(r.fit->slope) << " intercept=" << io::fmt(r.fit->intercept)
            << " r2=" << io::fmt(r.fit->r_squared) << " points=" << r.fit->points.size() << '\n';
  for (const auto& [k, v] : r.diagnostics) summary << k << '=' << io::fmt(v) << '\n';
  return r;
}

}  // namespace stabgeo
