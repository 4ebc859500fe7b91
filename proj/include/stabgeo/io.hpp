#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stabgeo/body.hpp"
#include "stabgeo/pl1d.hpp"
#include "stabgeo/pln.hpp"

namespace stabgeo::io {

// Two-column numeric CSV with the given header; InvalidData on anything else.
std::vector<std::pair<double, double>> read_two_column(const std::filesystem::path& p, const std::string& header);

// header `t,phi`
RevolutionBody read_profile(const std::filesystem::path& p, int dim);
// header `x,y`, counterclockwise
ConvexPolygon read_polygon(const std::filesystem::path& p);
// picks by header
BodyRef read_body(const std::filesystem::path& p, int dim);
// header `x,value`
GridFn1D read_function(const std::filesystem::path& p, Domain d = Domain::whole_line);

// `dim=N levels=K`, then K lines `t=<h> profile=<csv>`; paths relative to the stack file
LevelStack read_stack(const std::filesystem::path& p);
// writes profiles next to the stack file as <stem>_<k>.csv
void write_stack(const std::filesystem::path& p, const LevelStack& s);

void write_profile(const std::filesystem::path& p, const RevolutionBody& b);
void write_polygon(const std::filesystem::path& p, const ConvexPolygon& k);
void write_function(const std::filesystem::path& p, const GridFn1D& f);

// shortest round-trip decimal
std::string fmt(double v);

}  // namespace stabgeo::io
