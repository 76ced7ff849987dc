#include "pleat/scalar_field.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr int kMaxDegree = 11;
using BasisTable = std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1>;

// B-spline basis functions and derivatives on knot span `span` (Piegl and
// Tiller, algorithm A2.3). `knot(k)` returns the k-th knot.
template <typename KnotFn>
void basis_derivatives(long span, double u, int p, int n, KnotFn knot,
                       BasisTable& ders) {
  double ndu[kMaxDegree + 1][kMaxDegree + 1];
  double a[2][kMaxDegree + 1];
  double left[kMaxDegree + 1];
  double right[kMaxDegree + 1];

  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knot(span + 1 - j);
    right[j] = knot(span + j) - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
}

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree || degree % 2 == 0) {
    throw GeometryError(ErrorKind::InvalidArgument,
                        "spline degree must be odd and at most 11");
  }
}

}  // namespace

ScalarField ScalarField::periodic(std::vector<double> samples, double start,
                                  double period, int degree) {
  check_degree(degree);
  if (samples.size() < 4) {
    throw GeometryError(ErrorKind::InvalidArgument,
                        "periodic field needs at least 4 samples");
  }
  if (!(period > 0.0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "period must be positive");
  }
  ScalarField f;
  f.samples_ = std::move(samples);
  f.start_ = start;
  f.span_ = period;
  f.h_ = period / static_cast<double>(f.samples_.size());
  f.degree_ = degree;
  f.periodic_ = true;
  f.fit_periodic();
  return f;
}

ScalarField ScalarField::open(std::vector<double> samples, double start,
                              double end, int degree) {
  check_degree(degree);
  if (samples.size() < static_cast<std::size_t>(degree + 1)) {
    throw GeometryError(ErrorKind::InvalidArgument,
                        "open field needs at least degree+1 samples");
  }
  if (!(end > start)) {
    throw GeometryError(ErrorKind::InvalidArgument, "empty open interval");
  }
  ScalarField f;
  f.samples_ = std::move(samples);
  f.start_ = start;
  f.span_ = end - start;
  f.h_ = f.span_ / static_cast<double>(f.samples_.size() - 1);
  f.degree_ = degree;
  f.periodic_ = false;
  f.fit_open();
  return f;
}

ScalarField ScalarField::constant(double value, std::size_t n, double start,
                                  double period, int degree) {
  return periodic(std::vector<double>(n, value), start, period, degree);
}

ScalarField ScalarField::with_samples(std::vector<double> samples) const {
  if (samples.size() != samples_.size())
    throw GeometryError(ErrorKind::GridMismatch, "sample count differs from grid");
  ScalarField f = periodic_ ? periodic(std::move(samples), start_, span_, degree_)
                            : open(std::move(samples), start_, end(), degree_);
  f.generation_ = generation_;
  return f;
}

double ScalarField::knot(long k) const {
  // Periodic knots in units of h relative to start; node i is knot i+m+1.
  const long m = (degree_ - 1) / 2;
  return static_cast<double>(k - m - 1);
}

void ScalarField::fit_periodic() {
  const std::size_t n = samples_.size();
  const int p = degree_;
  const long m = (p - 1) / 2;

  // Basis values at a node: span k = m+1 (node 0), local coordinate 0.
  BasisTable ders{};
  basis_derivatives(m + 1, 0.0, p, 0,
                    [this](long k) { return knot(k); }, ders);
  // A[i][j] = a[(i - j) mod n]; basis r at node i belongs to j = i - m + r.
  std::vector<double> column(n, 0.0);
  for (int r = 0; r <= p; ++r) {
    const long diff = m - r;
    const long idx = ((diff % static_cast<long>(n)) + static_cast<long>(n)) %
                     static_cast<long>(n);
    column[static_cast<std::size_t>(idx)] += ders[0][r];
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> symbol;
  std::vector<std::complex<double>> rhs;
  fft.fwd(symbol, column);
  fft.fwd(rhs, samples_);
  for (std::size_t k = 0; k < n; ++k) rhs[k] /= symbol[k];
  std::vector<double> c;
  fft.inv(c, rhs);
  coeffs_ = std::move(c);
}

void ScalarField::fit_open() {
  const long n = static_cast<long>(samples_.size());
  const int p = degree_;
  const long m = (p - 1) / 2;
  knots_.clear();
  knots_.reserve(static_cast<std::size_t>(n + p + 1));
  for (int i = 0; i <= p; ++i) knots_.push_back(start_);
  for (long i = m + 1; i <= n - m - 2; ++i) knots_.push_back(node(static_cast<std::size_t>(i)));
  for (int i = 0; i <= p; ++i) knots_.push_back(start_ + span_);

  Eigen::SparseMatrix<double> a(n, n);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(n * (p + 1)));
  BasisTable ders{};
  for (long i = 0; i < n; ++i) {
    double local = 0.0;
    const long span = find_span(node(static_cast<std::size_t>(i)), local);
    basis_derivatives(span, local, p, 0,
                      [this](long k) { return knots_[static_cast<std::size_t>(k)]; },
                      ders);
    for (int r = 0; r <= p; ++r) {
      if (ders[0][r] != 0.0) entries.emplace_back(i, span - p + r, ders[0][r]);
    }
  }
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw GeometryError(ErrorKind::Degenerate, "spline collocation is singular");
  }
  Eigen::Map<const Eigen::VectorXd> rhs(samples_.data(), n);
  Eigen::VectorXd c = lu.solve(rhs);
  coeffs_.assign(c.data(), c.data() + n);
}

long ScalarField::find_span(double s, double& local) const {
  if (periodic_) {
    const double n = static_cast<double>(samples_.size());
    double x = (s - start_) / h_;
    x -= std::floor(x / n) * n;
    double cell = std::floor(x);
    if (cell >= n) cell = n - 1;
    local = x - cell;
    const long m = (degree_ - 1) / 2;
    return static_cast<long>(cell) + m + 1;
  }
  const long n = static_cast<long>(samples_.size());
  const long p = degree_;
  const double lo = start_;
  const double hi = start_ + span_;
  const double x = std::clamp(s, lo, hi);
  local = x;
  if (x >= knots_[static_cast<std::size_t>(n)]) return n - 1;
  const auto it = std::upper_bound(knots_.begin() + p, knots_.begin() + n + 1, x);
  return static_cast<long>(it - knots_.begin()) - 1;
}

double ScalarField::derivative(double s, int order) const {
  std::array<double, kMaxDegree + 1> out{};
  if (order < 0) throw GeometryError(ErrorKind::InvalidArgument, "negative order");
  if (order > max_order()) {
    throw GeometryError(ErrorKind::DepthExhausted,
                        "requested derivative order " + std::to_string(order) +
                            " exceeds field depth " + std::to_string(max_order()),
                        s);
  }
  jet(s, std::span<double>(out.data(), static_cast<std::size_t>(order + 1)));
  return out[static_cast<std::size_t>(order)];
}

void ScalarField::jet(double s, std::span<double> out) const {
  if (samples_.empty()) throw GeometryError(ErrorKind::InvalidArgument, "empty field");
  const int n_ders = static_cast<int>(out.size()) - 1;
  if (n_ders > max_order()) {
    throw GeometryError(ErrorKind::DepthExhausted,
                        "requested derivative order " + std::to_string(n_ders) +
                            " exceeds field depth " + std::to_string(max_order()),
                        s);
  }
  const int p = degree_;
  BasisTable ders{};
  double local = 0.0;
  const long span = find_span(s, local);
  if (periodic_) {
    const double u = static_cast<double>(span - (p - 1) / 2 - 1) + local;
    basis_derivatives(span, u, p, n_ders,
                      [this](long k) { return knot(k); }, ders);
    const long n = static_cast<long>(samples_.size());
    const long m = (p - 1) / 2;
    const long first = span - m - 1 - m;  // cell - m
    double scale = 1.0;
    for (int k = 0; k <= n_ders; ++k) {
      double acc = 0.0;
      for (int r = 0; r <= p; ++r) {
        const long j = ((first + r) % n + n) % n;
        acc += ders[k][r] * coeffs_[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(k)] = acc * scale;
      scale /= h_;
    }
    return;
  }
  basis_derivatives(span, local, p, n_ders,
                    [this](long k) { return knots_[static_cast<std::size_t>(k)]; },
                    ders);
  for (int k = 0; k <= n_ders; ++k) {
    double acc = 0.0;
    for (int r = 0; r <= p; ++r) {
      acc += ders[k][r] * coeffs_[static_cast<std::size_t>(span - p + r)];
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
}

std::vector<double> ScalarField::node_derivative(int order) const {
  std::vector<double> out(samples_.size());
  if (order == 0) return samples_;
  for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = derivative(node(i), order);
  return out;
}

std::vector<double> ScalarField::nodes() const {
  std::vector<double> out(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = node(i);
  return out;
}

bool ScalarField::same_grid(const ScalarField& other, double tol) const {
  const double scale = std::max(1.0, std::abs(span_));
  return periodic_ == other.periodic_ && samples_.size() == other.samples_.size() &&
         std::abs(start_ - other.start_) <= tol * scale &&
         std::abs(span_ - other.span_) <= tol * scale;
}

double ScalarField::min_value() const {
  return *std::min_element(samples_.begin(), samples_.end());
}

double ScalarField::max_value() const {
  return *std::max_element(samples_.begin(), samples_.end());
}

double ScalarField::max_abs() const {
  double best = 0.0;
  for (double v : samples_) best = std::max(best, std::abs(v));
  return best;
}

void require_same_grid(const ScalarField& a, const ScalarField& b,
                       const char* context) {
  if (!a.same_grid(b)) {
    throw GeometryError(ErrorKind::GridMismatch,
                        std::string(context) + ": fields do not share a grid");
  }
}

std::vector<double> unwrap_angles(std::span<const double> angles) {
  std::vector<double> out(angles.begin(), angles.end());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double jump = out[i] - out[i - 1];
    out[i] -= two_pi * std::round(jump / two_pi);
  }
  return out;
}

}  // namespace pleat
