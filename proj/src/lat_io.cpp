#include "pzeta/lat_io.hpp"

#include <fstream>
#include <sstream>

#include "pzeta/error.hpp"

namespace pzeta {

LatDocument parse_lat(std::istream& in) {
  LatDocument doc;
  bool have_n = false;
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line.substr(first));
    std::string tag;
    fields >> tag;
    if (tag == "n") {
      if (have_n) bad("duplicate 'n' line");
      long long n = -1;
      if (!(fields >> n) || n < 0) bad("expected 'n <count>'");
      doc.n = static_cast<std::size_t>(n);
      have_n = true;
    } else if (tag == "c") {
      if (!have_n) bad("cover before 'n' line");
      long long a = -1, b = -1;
      if (!(fields >> a >> b) || a < 0 || b < 0) bad("expected 'c <a> <b>'");
      doc.covers.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    } else {
      bad("unknown record '" + tag + "'");
    }
    std::string extra;
    if (fields >> extra) bad("trailing text '" + extra + "'");
  }
  if (!have_n) fail(ErrorCode::ParseError, "missing 'n <count>' line");
  return doc;
}

LatDocument parse_lat_string(const std::string& text) {
  std::istringstream in(text);
  return parse_lat(in);
}

Lattice read_lat_file(const std::string& path, const LatticeOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  auto doc = parse_lat(in);
  return lattice_from_covers(doc.n, doc.covers, options);
}

void write_lat(std::ostream& out, const Lattice& lattice, const std::vector<std::string>& header) {
  for (const auto& h : header) out << "# " << h << '\n';
  out << "n " << lattice.size() << '\n';
  for (auto [a, b] : lattice.covers()) out << "c " << a << ' ' << b << '\n';
}

std::string to_lat_string(const Lattice& lattice, const std::vector<std::string>& header) {
  std::ostringstream out;
  write_lat(out, lattice, header);
  return out.str();
}

}  // namespace pzeta
