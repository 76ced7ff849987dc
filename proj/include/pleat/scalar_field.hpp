#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pleat {

// Smooth function of arc length backed by an interpolating B-spline of odd
// degree 2m+1 on a uniform grid. Derivatives up to order 2m are continuous
// and evaluated analytically; asking for more raises DepthExhausted.
//
// Periodic fields live on [start, start + period) with `size()` nodes at
// start + i*h, h = period/size(). Open fields live on [start, end] with
// nodes at both ends and use not-a-knot end conditions.
class ScalarField {
 public:
  static constexpr int kDefaultDegree = 5;

  ScalarField() = default;

  static ScalarField periodic(std::vector<double> samples, double start,
                              double period, int degree = kDefaultDegree);
  static ScalarField open(std::vector<double> samples, double start,
                          double end, int degree = kDefaultDegree);
  static ScalarField constant(double value, std::size_t n, double start,
                              double period, int degree = kDefaultDegree);

  // New field on the same grid, degree and periodicity.
  ScalarField with_samples(std::vector<double> samples) const;

  double operator()(double s) const { return derivative(s, 0); }
  double derivative(double s, int order) const;
  // Fills out[0..out.size()-1] with f, f', f'', ...
  void jet(double s, std::span<double> out) const;

  // Samples of the order-th derivative at the grid nodes.
  std::vector<double> node_derivative(int order) const;

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  bool is_periodic() const { return periodic_; }
  int degree() const { return degree_; }
  // Highest derivative order that is continuous.
  int max_order() const { return degree_ - 1; }
  double start() const { return start_; }
  double end() const { return start_ + span_; }
  double period() const { return span_; }
  double spacing() const { return h_; }
  double node(std::size_t i) const { return start_ + static_cast<double>(i) * h_; }
  std::span<const double> samples() const { return samples_; }
  std::vector<double> nodes() const;

  // Number of times this field was rebuilt from samples of derived
  // quantities. Each rebuild loses some derivative accuracy.
  int generation() const { return generation_; }
  ScalarField& set_generation(int g) {
    generation_ = g;
    return *this;
  }

  bool same_grid(const ScalarField& other, double tol = 1e-12) const;

  double min_value() const;
  double max_value() const;
  double max_abs() const;

 private:
  void fit_periodic();
  void fit_open();
  double knot(long k) const;
  long find_span(double s, double& local) const;

  std::vector<double> samples_;
  std::vector<double> coeffs_;
  std::vector<double> knots_;  // open fields only
  double start_ = 0.0;
  double span_ = 0.0;
  double h_ = 0.0;
  int degree_ = kDefaultDegree;
  bool periodic_ = true;
  int generation_ = 0;
};

// Reference-free check that all fields share a grid; throws GridMismatch.
void require_same_grid(const ScalarField& a, const ScalarField& b,
                       const char* context);

// Removes 2*pi jumps between consecutive samples.
std::vector<double> unwrap_angles(std::span<const double> angles);

}  // namespace pleat
