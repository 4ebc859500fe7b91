#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "stabgeo/experiments.hpp"
#include "stabgeo/fmp.hpp"
#include "stabgeo/io.hpp"
#include "stabgeo/pl1d.hpp"
#include "stabgeo/pln.hpp"
#include "stabgeo/polarity.hpp"

using namespace stabgeo;
using io::fmt;

namespace {

struct InputError : Error {
  using Error::Error;
};

void print_row(std::initializer_list<double> v) {
  bool first = true;
  for (double x : v) {
    std::cout << (first ? "" : ",") << fmt(x);
    first = false;
  }
  std::cout << '\n';
}

BodyRef load_body(const std::string& path, bool polygon, bool profile, int dim) {
  try {
    if (polygon) return io::read_polygon(path);
    if (profile) return io::read_profile(path, dim);
    return io::read_body(path, dim);
  } catch (const InvalidData& e) {
    throw InputError(e.what());
  }
}

void print_trace(const TraceReport& t) {
  std::cout << "eps,omega,vacuous,b,b_gap,swapped,fit_l1,l1_fg,l1_fm,l1_gm,l1_tilde_fg,j_mass,j_bound,i_eta,"
               "ab_dev,sectioncap_excess,jsize_holds,sectioncap_holds,ratio_l1_fg,ratio_l1_tilde,ratio_b_gap,"
               "ratio_i_eta\n";
  print_row({t.eps, t.omega, double(t.vacuous), t.b, t.b_gap, double(t.swapped), t.fit_l1, t.l1_fg, t.l1_fm,
             t.l1_gm, t.l1_tilde_fg, t.j_mass, t.j_bound, t.i_eta, t.ab_dev, t.sectioncap_excess,
             double(t.jsize_holds), double(t.sectioncap_holds), t.ratio_l1_fg, t.ratio_l1_tilde, t.ratio_b_gap,
             t.ratio_i_eta});
  std::cout << "\nt,alpha,beta,sigma,eta,in_I\n";
  for (const auto& l : t.levels) print_row({l.t, l.alpha, l.beta, l.sigma, l.eta, double(l.in_I)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability inequalities for convex bodies and log-concave functions"};
  app.require_subcommand(1);

  // santalo
  auto* santalo = app.add_subcommand("santalo", "Santalo point and volume product deficit");
  std::string body_path;
  bool as_polygon = false, as_profile = false;
  int dim = 2;
  santalo->add_option("--body", body_path, "profile (t,phi) or polygon (x,y) CSV")->required();
  auto* pflag = santalo->add_flag("--polygon", as_polygon);
  santalo->add_flag("--profile", as_profile)->excludes(pflag);
  santalo->add_option("--dim", dim, "dimension of a revolution body")->check(CLI::Range(2, 64));

  // pl1d
  auto* pl1d = app.add_subcommand("pl1d", "one-dimensional Prekopa-Leindler report");
  std::string f_path, g_path, m_path, mode = "arith";
  pl1d->add_option("--f", f_path)->required();
  pl1d->add_option("--g", g_path)->required();
  pl1d->add_option("--m", m_path, "midpoint function; defaults to the minimal one");
  pl1d->add_option("--mode", mode)->check(CLI::IsMember({"arith", "geom"}));

  // fmp
  auto* fmp = app.add_subcommand("fmp", "Minkowski midpoint stability bound");
  std::string k_path, c_path;
  fmp->add_option("--k", k_path)->required();
  fmp->add_option("--c", c_path)->required();
  fmp->add_option("--dim", dim)->check(CLI::Range(2, 64));

  // pln
  auto* pln = app.add_subcommand("pln", "level-stack stability trace");
  std::string sf, sg, sm;
  pln->add_option("--f", sf)->required();
  pln->add_option("--g", sg)->required();
  pln->add_option("--m", sm, "midpoint stack; defaults to the minimal one");

  // scans
  struct ScanFlags {
    std::string config, grid, output, family;
    std::optional<int> dim;
    std::optional<std::uint64_t> seed, profile_points, levels, fn_points, bodies;
    std::optional<double> fit_cutoff;
  } sfl;
  std::vector<CLI::App*> scans;
  for (const char* name : {"cap-scan", "bs-scan", "pl-scan", "pln-scan"}) {
    auto* s = app.add_subcommand(name, std::string(name) + " experiment");
    s->add_option("--config", sfl.config, "key=value config file");
    s->add_option("--grid", sfl.grid, "list, logspace(lo,hi,n) or linspace(lo,hi,n)");
    s->add_option("--output", sfl.output);
    s->add_option("--family", sfl.family);
    s->add_option("--dim", sfl.dim);
    s->add_option("--seed", sfl.seed);
    s->add_option("--profile-points", sfl.profile_points);
    s->add_option("--levels", sfl.levels);
    s->add_option("--fn-points", sfl.fn_points);
    s->add_option("--bodies", sfl.bodies);
    s->add_option("--fit-cutoff", sfl.fit_cutoff);
    scans.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (santalo->parsed()) {
      const BodyRef k = load_body(body_path, as_polygon, as_profile, dim);
      const SantaloResult r = santalo_point(k);
      std::cout << "zx,zy,volume,polar_volume,product,deficit\n";
      print_row({r.point.at(0), r.point.size() > 1 ? r.point[1] : 0.0, r.volume, r.polar_volume, r.volume_product,
                 r.bs_deficit});
    } else if (pl1d->parsed()) {
      const Domain d = mode == "geom" ? Domain::half_line : Domain::whole_line;
      const Mean mean = mode == "geom" ? Mean::geometric : Mean::arithmetic;
      std::optional<GridFn1D> f, g, m;
      try {
        f = io::read_function(f_path, d);
        g = io::read_function(g_path, d);
        if (!m_path.empty()) m = io::read_function(m_path, d);
      } catch (const InvalidData& e) {
        throw InputError(e.what());
      }
      if (!m) m = sup_convolution_midpoint(*f, *g, mean);
      const PLReport r = pl_report(*f, *g, *m, mean);
      std::cout << "eps,omega,a,b,l1_f,l1_g,vacuous\n";
      print_row({r.deficit, r.omega_bound, r.a, r.b, r.l1_f, r.l1_g, double(r.vacuous)});
    } else if (fmp->parsed()) {
      const BodyRef k = load_body(k_path, false, false, dim);
      const BodyRef c = load_body(c_path, false, false, dim);
      const FMPReport r = fmp_bound_check(k, c);
      std::cout << "sigma,A,gamma_star,lhs_add,rhs_add,lhs_prod,rhs_prod,eta\n";
      print_row({r.sigma, r.A, r.gamma_star, r.lhs_additive, r.rhs_additive, r.lhs_product, r.rhs_product, r.eta});
    } else if (pln->parsed()) {
      std::optional<LevelStack> f, g, m;
      try {
        f = io::read_stack(sf);
        g = io::read_stack(sg);
        if (!sm.empty()) m = io::read_stack(sm);
      } catch (const InvalidData& e) {
        throw InputError(e.what());
      }
      if (!m) m = minimal_midpoint_stack(*f, *g);
      print_trace(pl_trace(*f, *g, *m));
    } else {
      for (auto* s : scans) {
        if (!s->parsed()) continue;
        ExperimentConfig cfg;
        if (!sfl.config.empty()) {
          cfg = load_config(sfl.config);
          if (experiment_name(cfg.experiment) != s->get_name())
            throw ConfigError("config is for " + experiment_name(cfg.experiment) + ", not " + s->get_name());
        } else {
          cfg.experiment = parse_experiment(s->get_name());
        }
        if (!sfl.grid.empty()) cfg.grid = parse_grid(sfl.grid);
        if (!sfl.output.empty()) cfg.output_path = sfl.output;
        if (!sfl.family.empty()) cfg.family = sfl.family;
        if (sfl.dim) cfg.dim = *sfl.dim;
        if (sfl.seed) cfg.seed = *sfl.seed;
        if (sfl.profile_points) cfg.profile_points = *sfl.profile_points;
        if (sfl.levels) cfg.levels = *sfl.levels;
        if (sfl.fn_points) cfg.fn_points = *sfl.fn_points;
        if (sfl.bodies) cfg.bodies = *sfl.bodies;
        if (sfl.fit_cutoff) cfg.fit_cutoff = *sfl.fit_cutoff;
        run_and_write(cfg, std::cerr);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
