#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stabgeo/io.hpp"

using namespace stabgeo;
namespace fs = std::filesystem;

namespace {

const fs::path& dir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("stabgeo_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return d;
}

struct Run {
  int code;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const auto o = dir() / "out.txt", e = dir() / "err.txt";
  const std::string cmd = std::string(STABGEO_CLI) + " " + args + " >" + o.string() + " 2>" + e.string();
  const int st = std::system(cmd.c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(o), slurp(e)};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

void put(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Cli, SantaloSquare) {
  io::write_polygon(dir() / "sq.csv", ConvexPolygon::box(-1, -1, 1, 1));
  const auto r = run("santalo --body " + (dir() / "sq.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "zx,zy,volume,polar_volume,product,deficit");
  std::istringstream row(r.out.substr(r.out.find('\n') + 1));
  std::string cell;
  std::vector<double> v;
  while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
  ASSERT_EQ(v.size(), 6u);
  EXPECT_NEAR(v[5], M_PI * M_PI / 8 - 1, 1e-6);
}

TEST(Cli, SantaloProfile) {
  io::write_profile(dir() / "ball.csv", RevolutionBody::ball(3, 1.0, 513));
  const auto r = run("santalo --profile --dim 3 --body " + (dir() / "ball.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
}

TEST(Cli, Pl1dIndicators) {
  io::write_function(dir() / "f.csv", GridFn1D({-1, 1}, {1, 1}));
  io::write_function(dir() / "g.csv", GridFn1D({-2, 2}, {1, 1}));
  const auto r = run("pl1d --f " + (dir() / "f.csv").string() + " --g " + (dir() / "g.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "eps,omega,a,b,l1_f,l1_g,vacuous");
  EXPECT_NEAR(std::stod(r.out.substr(r.out.find('\n') + 1)), 3 / (2 * std::sqrt(2.0)) - 1, 1e-12);
}

TEST(Cli, Fmp) {
  io::write_polygon(dir() / "k.csv", ConvexPolygon::regular(6, 1.0));
  io::write_polygon(dir() / "c.csv", ConvexPolygon::box(-1, -0.5, 1, 0.5));
  const auto r = run("fmp --k " + (dir() / "k.csv").string() + " --c " + (dir() / "c.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "sigma,A,gamma_star,lhs_add,rhs_add,lhs_prod,rhs_prod,eta");
}

TEST(Cli, PlnEquality) {
  io::write_stack(dir() / "gs.stack", gaussian_stack(3, 16, 65).volume_normalized());
  const auto s = (dir() / "gs.stack").string();
  const auto r = run("pln --f " + s + " --g " + s);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("eps,omega,vacuous,b,", 0), 0u);
  EXPECT_NE(r.out.find("\nt,alpha,beta,sigma,eta,in_I\n"), std::string::npos);
}

TEST(Cli, ScanToFile) {
  const auto out = dir() / "bs.csv";
  const auto r = run("bs-scan --dim 2 --bodies 3 --profile-points 257 --output " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(slurp(out)), "bs_deficit,delta_bm");
}

TEST(Cli, ConfigFile) {
  put(dir() / "cfg.txt", "experiment=pl-scan\nfamily=asymmetric\ngrid=0.1,0.2,0.3\nfn_points=513\n");
  const auto r = run("pl-scan --config " + (dir() / "cfg.txt").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out), "delta,eps,l1,omega,ratio");
  const auto m = run("bs-scan --config " + (dir() / "cfg.txt").string());
  EXPECT_EQ(m.code, 1);
}

TEST(Cli, ConfigErrorWritesNothing) {
  const auto out = dir() / "never.csv";
  fs::remove(out);
  const auto r = run("cap-scan --grid 5 --output " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("config error"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("pl1d --f").code, 1);
  EXPECT_EQ(run("santalo --body /nonexistent/file.csv").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, NumericalFailureExitsTwo) {
  // zero function: the midpoint has no mass
  io::write_function(dir() / "z.csv", GridFn1D({0, 1}, {0, 0}));
  const auto z = (dir() / "z.csv").string();
  const auto r = run("pl1d --f " + z + " --g " + z);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("numerical failure"), std::string::npos);
}
