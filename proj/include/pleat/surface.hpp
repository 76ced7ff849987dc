#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "pleat/curves.hpp"
#include "pleat/localfold.hpp"
#include "pleat/propagate.hpp"

namespace pleat {

// One ruled strip: the ridge with the Darboux frame of this surface, its
// rulings, and signed extents along each ruling (v_lo <= 0 <= v_hi).
struct DevelopableStrip {
  std::vector<RidgeFrame> frames;
  FoldDescriptor desc;
  RulingField rulings;
  std::vector<double> v_lo;
  std::vector<double> v_hi;
  PlanarCurve foldline;  // the ridge in the flat sheet
  std::string name;

  std::size_t size() const { return frames.size(); }
  double length() const { return desc.length(); }
  // Signed extent of the far end: v_hi or v_lo, whichever is nonzero.
  double extent(std::size_t i) const { return v_hi[i] != 0.0 ? v_hi[i] : v_lo[i]; }
};

// Strip between a step's two curves; needs the step's 3D frames.
DevelopableStrip strip_from_step(const Step& step, const PlanarCurve& from, std::string name = {});

// Throws RefusedSingular where a same-sign extent comes within margin |d|
// of the regression curve.
void check_strip_extents(const DevelopableStrip& strip, double margin = 1e-3);

struct StripMesh {
  std::string name;
  std::size_t nu = 0;  // columns (rulings)
  std::size_t nt = 0;  // rows along each ruling; row 0 is the ridge
  bool closed = false; // columns wrap around
  std::vector<Vec3> vertices;  // index j * nu + i
  std::vector<Vec3> normals;
  std::vector<std::array<std::size_t, 4>> quads;
  // Row 0 and row nt - 1 as vertex index polylines.
  std::vector<std::vector<std::size_t>> creases;

  std::size_t index(std::size_t i, std::size_t j) const { return j * nu + i; }
};

// Ruled mesh a(u_i, t_j) = gamma(u_i) + (j / (res_t - 1)) v(u_i) r(u_i) over
// [s_begin, s_end] of the strip (whole closed strip when s_end <= s_begin).
// Normals come from the analytic cross product of the parametrization.
StripMesh embed_strip(const DevelopableStrip& strip, std::size_t res_u, std::size_t res_t,
                      double s_begin = 0.0, double s_end = 0.0);

// Columns needed for embed_strip so that mesh edges keep their developed
// length within edge_tolerance (relative). Chord error is measured on the
// node grid against the foldline and shrinks as the square of the spacing;
// the result is the node count times the smallest sufficient power of two.
std::size_t mesh_columns(const DevelopableStrip& strip, double edge_tolerance = 5e-7);

// Angle between the two surface normals across a ridge, against 2 |alpha|
// of the outer strip's descriptor. With a map, the inner strip's far end
// meets the outer ridge at s2(s1); without one the strips share their ridge.
struct CreaseReport {
  double angle_error = 0.0;
  double position_gap = 0.0;
};
CreaseReport crease_check(const DevelopableStrip& inner, const DevelopableStrip& outer,
                          const CorrespondenceMap* map = nullptr);

// Flat image of the strip rebuilt from its 3D data alone: the ridge
// integrated from its geodesic curvature, rulings at their 3D angle to T.
struct DevelopedStrip {
  std::vector<Vec2> ridge;      // at strip nodes
  std::vector<Vec2> direction;  // developed unit rulings
  std::vector<double> beta;     // angle of ruling to the tangent
  std::vector<double> extent;
  ScalarField k_g;              // geodesic curvature measured on the 3D ridge
  double length = 0.0;
};
DevelopedStrip develop_strip(const DevelopableStrip& strip);

// Developed vertices laid out like embed_strip's mesh.
std::vector<Vec2> develop_mesh(const DevelopableStrip& strip, const DevelopedStrip& flat,
                               std::size_t res_u, std::size_t res_t, double s_begin = 0.0,
                               double s_end = 0.0);

struct CurvatureAudit {
  std::vector<double> K;  // per vertex, NaN on the mesh boundary
  double max_abs_K = 0.0;
  double mean_abs_H = 0.0;
  double normalized = 0.0;  // max |K| / mean(|H|)^2
  std::size_t interior = 0;
};

// Angle defect over mixed Voronoi area; mean curvature from the cotangent
// Laplacian sets the scale.
CurvatureAudit gaussian_curvature_audit(const StripMesh& mesh);

// Largest deviation of the mesh normals along a ruling from the ridge normal.
double ruling_normal_deviation(const StripMesh& mesh);

struct Symmetry {
  enum class Kind { None, Reflect, Rotate };
  Kind kind = Kind::None;
  int order = 1;
  static Symmetry parse(const std::string& text);  // "none", "reflect:4", "rotate:5"
  std::string name() const;
};

struct Scene {
  std::vector<StripMesh> meshes;
  double seam_gap = 0.0;
};

// Meshes sector 0 of every strip and copies it around the z axis. Reflect(n)
// mirrors each sector across the vertical plane through its end point;
// rotate(n) turns it by 2 pi / n. res_u counts columns over a whole strip;
// 0 picks mesh_columns per strip. Strips are meshed in parallel. Throws SeamError when the copies do not
// meet the neighbouring sector within tolerance.
Scene annulus_assembly(const std::vector<DevelopableStrip>& strips, const Symmetry& symmetry,
                       std::size_t res_u, std::size_t res_t, double tolerance = 1e-6);

// Seam gap of a symmetry without building meshes or throwing.
double symmetry_seam_gap(const std::vector<DevelopableStrip>& strips, const Symmetry& symmetry,
                         std::size_t res_t);

void write_obj(std::ostream& os, const std::vector<StripMesh>& meshes);

// Foldlines and developed rulings in the plane, every `stride`-th ruling.
void write_developed_svg(std::ostream& os, const std::vector<DevelopableStrip>& strips,
                         const std::vector<PlanarCurve>& foldlines, std::size_t stride = 8);

}  // namespace pleat
