#include "stabgeo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace stabgeo::io {

namespace {

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& where) {
  const std::string t = trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw InvalidData("not a number '" + t + "' at " + where);
  return v;
}

std::string first_line(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidData("cannot open " + p.string());
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) return line;
  }
  throw InvalidData("empty file " + p.string());
}

}  // namespace

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::pair<double, double>> read_two_column(const std::filesystem::path& p, const std::string& header) {
  std::ifstream in(p);
  if (!in) throw InvalidData("cannot open " + p.string());
  std::string line;
  std::vector<std::pair<double, double>> rows;
  bool seen_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!seen_header) {
      std::string h;
      for (char c : line)
        if (c != ' ' && c != '\t') h += c;
      if (h != header) throw InvalidData(p.string() + ": expected header '" + header + "'");
      seen_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw InvalidData(p.string() + ":" + std::to_string(lineno) + ": expected two columns");
    const std::string where = p.string() + ":" + std::to_string(lineno);
    rows.emplace_back(parse_double(line.substr(0, comma), where), parse_double(line.substr(comma + 1), where));
  }
  if (!seen_header) throw InvalidData("empty file " + p.string());
  return rows;
}

RevolutionBody read_profile(const std::filesystem::path& p, int dim) {
  const auto rows = read_two_column(p, "t,phi");
  std::vector<double> t, phi;
  for (const auto& [a, b] : rows) {
    t.push_back(a);
    phi.push_back(b);
  }
  return RevolutionBody(dim, std::move(t), std::move(phi));
}

ConvexPolygon read_polygon(const std::filesystem::path& p) {
  const auto rows = read_two_column(p, "x,y");
  std::vector<Vec2> v;
  for (const auto& [a, b] : rows) v.push_back({a, b});
  return ConvexPolygon(std::move(v));
}

BodyRef read_body(const std::filesystem::path& p, int dim) {
  std::string h;
  for (char c : first_line(p))
    if (c != ' ' && c != '\t') h += c;
  if (h == "x,y") {
    if (dim != 2) throw UnsupportedCombination("polygon files are planar bodies");
    return read_polygon(p);
  }
  if (h == "t,phi") return read_profile(p, dim);
  throw InvalidData(p.string() + ": unknown header '" + h + "'");
}

GridFn1D read_function(const std::filesystem::path& p, Domain d) {
  const auto rows = read_two_column(p, "x,value");
  std::vector<double> x, v;
  for (const auto& [a, b] : rows) {
    x.push_back(a);
    v.push_back(b);
  }
  return GridFn1D(std::move(x), std::move(v), d);
}

LevelStack read_stack(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidData("cannot open " + p.string());
  const auto dir = p.parent_path();
  std::string line;
  int dim = -1;
  long levels = -1;
  std::vector<double> heights;
  std::vector<RevolutionBody> bodies;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = p.string() + ":" + std::to_string(lineno);
    std::istringstream ss(line);
    std::string tok;
    std::string t_str, prof;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw InvalidData(where + ": expected key=value");
      const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
      if (k == "dim") dim = static_cast<int>(parse_double(v, where));
      else if (k == "levels") levels = static_cast<long>(parse_double(v, where));
      else if (k == "t") t_str = v;
      else if (k == "profile") prof = v;
      else throw InvalidData(where + ": unknown key '" + k + "'");
    }
    if (t_str.empty() && prof.empty()) continue;
    if (dim < 2 || levels < 1) throw InvalidData(where + ": header `dim=N levels=K` must come first");
    if (t_str.empty() || prof.empty()) throw InvalidData(where + ": level needs both t= and profile=");
    std::filesystem::path pp(prof);
    if (pp.is_relative()) pp = dir / pp;
    heights.push_back(parse_double(t_str, where));
    bodies.push_back(read_profile(pp, dim));
  }
  if (dim < 2 || levels < 1) throw InvalidData(p.string() + ": missing header");
  if (static_cast<long>(heights.size()) != levels)
    throw InvalidData(p.string() + ": header says " + std::to_string(levels) + " levels, found " +
                      std::to_string(heights.size()));
  return LevelStack(std::move(heights), std::move(bodies));
}

void write_profile(const std::filesystem::path& p, const RevolutionBody& b) {
  std::ofstream out(p);
  if (!out) throw InvalidData("cannot write " + p.string());
  out << "t,phi\n";
  for (std::size_t i = 0; i < b.size(); ++i) out << fmt(b.t()[i]) << ',' << fmt(b.phi()[i]) << '\n';
}

void write_polygon(const std::filesystem::path& p, const ConvexPolygon& k) {
  std::ofstream out(p);
  if (!out) throw InvalidData("cannot write " + p.string());
  out << "x,y\n";
  for (const auto& v : k.vertices()) out << fmt(v.x) << ',' << fmt(v.y) << '\n';
}

void write_function(const std::filesystem::path& p, const GridFn1D& f) {
  std::ofstream out(p);
  if (!out) throw InvalidData("cannot write " + p.string());
  out << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) out << fmt(f.x()[i]) << ',' << fmt(f.values()[i]) << '\n';
}

void write_stack(const std::filesystem::path& p, const LevelStack& s) {
  std::ofstream out(p);
  if (!out) throw InvalidData("cannot write " + p.string());
  out << "dim=" << s.dim() << " levels=" << s.size() << '\n';
  const std::string stem = p.stem().string();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::string name = stem + "_" + std::to_string(k) + ".csv";
    write_profile(p.parent_path() / name, s.bodies()[k]);
    out << "t=" << fmt(s.heights()[k]) << " profile=" << name << '\n';
  }
}

}  // namespace stabgeo::io
