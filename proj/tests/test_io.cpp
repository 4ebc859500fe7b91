#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "stabgeo/io.hpp"

using namespace stabgeo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("stabgeo_io_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

void put(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Io, FmtRoundTrips) {
  for (double v : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0}) EXPECT_EQ(std::stod(io::fmt(v)), v);
  EXPECT_EQ(io::fmt(0.5), "0.5");
}

TEST(Io, ProfileRoundTrip) {
  const auto b = RevolutionBody::ball(3, 1.5, 65);
  const auto p = scratch("ball.csv");
  io::write_profile(p, b);
  const auto r = io::read_profile(p, 3);
  EXPECT_EQ(r.t(), b.t());
  EXPECT_EQ(r.phi(), b.phi());
  EXPECT_EQ(r.dim(), 3);
  const auto any = io::read_body(p, 3);
  EXPECT_TRUE(std::holds_alternative<RevolutionBody>(any));
}

TEST(Io, PolygonRoundTrip) {
  const auto k = ConvexPolygon::regular(5, 1.0, 0.3);
  const auto p = scratch("pent.csv");
  io::write_polygon(p, k);
  const auto r = io::read_polygon(p);
  ASSERT_EQ(r.size(), k.size());
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_EQ(r.vertices()[i].x, k.vertices()[i].x);
  EXPECT_TRUE(std::holds_alternative<ConvexPolygon>(io::read_body(p, 2)));
  EXPECT_THROW(io::read_body(p, 3), UnsupportedCombination);
}

TEST(Io, FunctionRoundTrip) {
  const auto f = GridFn1D::sample([](double x) { return std::exp(-x * x); }, -3, 3, 33);
  const auto p = scratch("f.csv");
  io::write_function(p, f);
  const auto r = io::read_function(p);
  EXPECT_EQ(r.x(), f.x());
  EXPECT_EQ(r.values(), f.values());
}

TEST(Io, BadFiles) {
  const auto p = scratch("bad.csv");
  put(p, "a,b\n1,2\n");
  EXPECT_THROW(io::read_profile(p, 2), InvalidData);
  put(p, "t,phi\n0,1\n1,x\n");
  try {
    io::read_profile(p, 2);
    FAIL();
  } catch (const InvalidData& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  put(p, "t,phi\n0,1,2\n");
  EXPECT_THROW(io::read_profile(p, 2), InvalidData);
  EXPECT_THROW(io::read_profile(scratch("missing.csv"), 2), InvalidData);
  put(p, "t, phi\n -1 , 0\n0,1\n 1,0 \n");
  EXPECT_NO_THROW(io::read_profile(p, 2));
}

TEST(Io, StackRoundTripAndRelativePaths) {
  const auto f = gaussian_stack(3, 8, 33);
  const auto dir = scratch("stk");
  fs::create_directories(dir);
  io::write_stack(dir / "g.stack", f);
  // moving the directory keeps the stack readable
  const auto moved = scratch("stk_moved");
  fs::remove_all(moved);
  fs::rename(dir, moved);
  const auto r = io::read_stack(moved / "g.stack");
  ASSERT_EQ(r.size(), f.size());
  EXPECT_EQ(r.heights(), f.heights());
  EXPECT_EQ(r.bodies().back().phi(), f.bodies().back().phi());
}

TEST(Io, StackErrors) {
  const auto dir = scratch("stk_err");
  fs::create_directories(dir);
  io::write_profile(dir / "b.csv", RevolutionBody::ball(3, 1.0, 33));
  put(dir / "s.stack", "dim=3 levels=2\nt=1 profile=b.csv\n");
  EXPECT_THROW(io::read_stack(dir / "s.stack"), InvalidData);
  put(dir / "s.stack", "# c\ndim=3 levels=1\nt=1 profile=b.csv\n");
  EXPECT_EQ(io::read_stack(dir / "s.stack").size(), 1u);
  put(dir / "s.stack", "dim=3 levels=1\nt=1 profile=nope.csv\n");
  EXPECT_THROW(io::read_stack(dir / "s.stack"), InvalidData);
  put(dir / "s.stack", "levels=1\nt=1 profile=b.csv\n");
  EXPECT_THROW(io::read_stack(dir / "s.stack"), InvalidData);
}
