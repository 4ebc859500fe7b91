#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabgeo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Serial or OpenMP path for the data-parallel kernels.
enum class Exec { serial, parallel };

// volume of the unit n-ball, cached per dimension
double unit_ball_volume(int n);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};
class DegenerateInput : public Error {
 public:
  using Error::Error;
};
class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};
class InvalidCenter : public Error {
 public:
  using Error::Error;
};
class EmptyFunction : public Error {
 public:
  using Error::Error;
};
class BodyDegenerates : public Error {
 public:
  using Error::Error;
};
class NormalizationError : public Error {
 public:
  using Error::Error;
};
class InvalidMidpoint : public Error {
 public:
  using Error::Error;
};
class EmptyMidpoint : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};
class InvalidData : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> best_x, double best_f)
      : Error(what), best_x(std::move(best_x)), best_f(best_f) {}
  std::vector<double> best_x;
  double best_f;
};

// Non-fatal diagnostics. Default handler writes to stderr.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler h);
void warn(const std::string& msg);

}  // namespace stabgeo
