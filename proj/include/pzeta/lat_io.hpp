#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pzeta/lattice.hpp"

namespace pzeta {

// ".lat" text format:
//   n <count>
//   c <a> <b>     a is covered by b
// Blank lines and lines starting with '#' are ignored.

struct LatDocument {
  std::size_t n = 0;
  std::vector<Cover> covers;
};

LatDocument parse_lat(std::istream& in);
LatDocument parse_lat_string(const std::string& text);
Lattice read_lat_file(const std::string& path, const LatticeOptions& options = {});

void write_lat(std::ostream& out, const Lattice& lattice, const std::vector<std::string>& header = {});
std::string to_lat_string(const Lattice& lattice, const std::vector<std::string>& header = {});

}  // namespace pzeta
