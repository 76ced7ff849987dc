#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pleat/curves.hpp"
#include "pleat/extended_real.hpp"
#include "pleat/scalar_field.hpp"

namespace pleat {

// Shortest round-trip text for a double ("%.17g"), "inf"/"-inf"/"nan" otherwise.
std::string format_number(double v);
std::string format_number(const ExtendedReal& v);

// CSV with header "s,<name>".
void write_field_csv(std::ostream& os, const ScalarField& f, const std::string& name = "value");

struct CurveSamples {
  std::vector<Vec3> points;
  bool planar = true;  // no z column, or z identically zero
  bool closed = false;
};

// Reads columns s,x,y[,z] (header optional). A repeated first point at the end
// marks the curve closed and is dropped.
CurveSamples read_curve_csv(std::istream& is);
CurveSamples read_curve_csv_file(const std::string& path);

void write_curve_csv(std::ostream& os, const SpaceCurve& c);
void write_curve_csv(std::ostream& os, const PlanarCurve& c);

}  // namespace pleat
