#include "pleat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pleat/error.hpp"

namespace pleat {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_number(const ExtendedReal& v) { return format_number(v.value()); }

void write_field_csv(std::ostream& os, const ScalarField& f, const std::string& name) {
  os << "s," << name << '\n';
  for (std::size_t i = 0; i < f.size(); ++i)
    os << format_number(f.node(i)) << ',' << format_number(f.samples()[i]) << '\n';
}

namespace {

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(cell, &used));
  }
  return out;
}

}  // namespace

CurveSamples read_curve_csv(std::istream& is) {
  CurveSamples c;
  std::string line;
  std::size_t row = 0;
  std::size_t cols = 0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> v;
    try {
      v = parse_row(line);
    } catch (const std::exception&) {
      if (c.points.empty() && cols == 0) continue;  // header
      throw GeometryError(ErrorKind::ConfigError,
                          "unparsable curve row " + std::to_string(row));
    }
    if (v.size() != 3 && v.size() != 4)
      throw GeometryError(ErrorKind::ConfigError,
                          "curve rows need columns s,x,y[,z] (row " + std::to_string(row) + ")");
    if (cols == 0) cols = v.size();
    if (v.size() != cols)
      throw GeometryError(ErrorKind::ConfigError, "inconsistent column count at row " +
                                                      std::to_string(row));
    c.points.emplace_back(v[1], v[2], v.size() == 4 ? v[3] : 0.0);
    if (v.size() == 4 && v[3] != 0.0) c.planar = false;
  }
  if (c.points.size() > 2 && (c.points.front() - c.points.back()).norm() < 1e-12) {
    c.points.pop_back();
    c.closed = true;
  }
  return c;
}

CurveSamples read_curve_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GeometryError(ErrorKind::ConfigError, "cannot open curve file " + path);
  return read_curve_csv(f);
}

void write_curve_csv(std::ostream& os, const SpaceCurve& c) {
  os << "s,x,y,z\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec3& p = c.points()[i];
    os << format_number(c.node(i)) << ',' << format_number(p.x()) << ',' << format_number(p.y())
       << ',' << format_number(p.z()) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const PlanarCurve& c) {
  os << "s,x,y\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 p = c.point(i);
    os << format_number(c.node(i)) << ',' << format_number(p.x()) << ',' << format_number(p.y())
       << '\n';
  }
}

}  // namespace pleat
