#pragma once

#include <array>
#include <cmath>

namespace pleat {

// Truncated Taylor series f(t0 + e) = sum_k c[k] e^k, k <= N. Arithmetic on
// jets propagates exact derivatives through closed-form expressions.
template <int N>
struct Jet {
  std::array<double, N + 1> c{};

  Jet() = default;
  Jet(double value) { c[0] = value; }  // NOLINT: implicit lift of constants

  static Jet variable(double t) {
    Jet j(t);
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  // k-th derivative, i.e. c[k] * k!.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[static_cast<std::size_t>(k)] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N>
Jet<N> operator-(Jet<N> a) { return a *= -1.0; }
template <int N>
Jet<N> operator+(Jet<N> a, double b) { a.c[0] += b; return a; }
template <int N>
Jet<N> operator+(double b, Jet<N> a) { a.c[0] += b; return a; }
template <int N>
Jet<N> operator-(Jet<N> a, double b) { a.c[0] -= b; return a; }
template <int N>
Jet<N> operator-(double b, Jet<N> a) { a *= -1.0; a.c[0] += b; return a; }
template <int N>
Jet<N> operator*(Jet<N> a, double b) { return a *= b; }
template <int N>
Jet<N> operator*(double b, Jet<N> a) { return a *= b; }
template <int N>
Jet<N> operator/(Jet<N> a, double b) { return a *= 1.0 / b; }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
    r.c[k] = acc;
  }
  return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> q;
  for (int k = 0; k <= N; ++k) {
    double acc = a.c[k];
    for (int j = 0; j < k; ++j) acc -= q.c[j] * b.c[k - j];
    q.c[k] = acc / b.c[0];
  }
  return q;
}

template <int N>
Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) / b; }

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = a.c[k];
    for (int j = 1; j < k; ++j) acc -= r.c[j] * r.c[k - j];
    r.c[k] = acc / (2.0 * r.c[0]);
  }
  return r;
}

template <int N>
void sincos(const Jet<N>& u, Jet<N>& s, Jet<N>& co) {
  s = Jet<N>();
  co = Jet<N>();
  s.c[0] = std::sin(u.c[0]);
  co.c[0] = std::cos(u.c[0]);
  for (int k = 1; k <= N; ++k) {
    double as = 0.0;
    double ac = 0.0;
    for (int j = 1; j <= k; ++j) {
      as += j * u.c[j] * co.c[k - j];
      ac -= j * u.c[j] * s.c[k - j];
    }
    s.c[k] = as / k;
    co.c[k] = ac / k;
  }
}

template <int N>
Jet<N> sin(const Jet<N>& u) {
  Jet<N> s, c;
  sincos(u, s, c);
  return s;
}

template <int N>
Jet<N> cos(const Jet<N>& u) {
  Jet<N> s, c;
  sincos(u, s, c);
  return c;
}

template <int N>
Jet<N> exp(const Jet<N>& u) {
  Jet<N> e;
  e.c[0] = std::exp(u.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * u.c[j] * e.c[k - j];
    e.c[k] = acc / k;
  }
  return e;
}

// atan(u) through atan' = u'/(1+u^2).
template <int N>
Jet<N> atan(const Jet<N>& u) {
  const Jet<N> d = 1.0 / (1.0 + u * u);
  Jet<N> r;
  r.c[0] = std::atan(u.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * u.c[j] * d.c[k - j];
    r.c[k] = acc / k;
  }
  return r;
}

// Branch of atan2 continuous at the value point.
template <int N>
Jet<N> atan2(const Jet<N>& y, const Jet<N>& x) {
  const Jet<N> d = 1.0 / (x * x + y * y);
  // derivative: (x y' - y x') / (x^2 + y^2)
  Jet<N> dy;
  Jet<N> dx;
  for (int k = 0; k < N; ++k) {
    dy.c[k] = (k + 1) * y.c[k + 1];
    dx.c[k] = (k + 1) * x.c[k + 1];
  }
  const Jet<N> deriv = (x * dy - y * dx) * d;
  Jet<N> r;
  r.c[0] = std::atan2(y.c[0], x.c[0]);
  for (int k = 1; k <= N; ++k) r.c[k] = deriv.c[k - 1] / k;
  return r;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) { return x.c[0]; }

}  // namespace pleat
