#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace meridian {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& i) {
  return "[" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + "]";
}

/// Cubic Hermite basis on the unit cell, scaled by the cell width h.
struct HermiteWeights {
  double p0, m0, p1, m1;    // value weights
  double dp0, dm0, dp1, dm1;  // first-derivative weights

  HermiteWeights(double s, double h) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    p0 = 2 * s3 - 3 * s2 + 1;
    m0 = (s3 - 2 * s2 + s) * h;
    p1 = -2 * s3 + 3 * s2;
    m1 = (s3 - s2) * h;
    dp0 = (6 * s2 - 6 * s) / h;
    dm0 = 3 * s2 - 4 * s + 1;
    dp1 = (-6 * s2 + 6 * s) / h;
    dm1 = 3 * s2 - 2 * s;
  }

  template <class T>
  T value(const T& y0, const T& d0, const T& y1, const T& d1) const {
    return p0 * y0 + m0 * d0 + p1 * y1 + m1 * d1;
  }
  template <class T>
  T derivative(const T& y0, const T& d0, const T& y1, const T& d1) const {
    return dp0 * y0 + dm0 * d0 + dp1 * y1 + dm1 * d1;
  }
};

/// Quintic Hermite basis using values, first and second derivatives at both
/// ends of a cell of width h.
struct QuinticHermite {
  double w[6], dw[6], ddw[6];

  QuinticHermite(double s, double h) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double h2 = h * h;
    w[0] = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    w[1] = (s - 6 * s3 + 8 * s4 - 3 * s5) * h;
    w[2] = (0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5) * h2;
    w[3] = 10 * s3 - 15 * s4 + 6 * s5;
    w[4] = (-4 * s3 + 7 * s4 - 3 * s5) * h;
    w[5] = (0.5 * s3 - s4 + 0.5 * s5) * h2;
    dw[0] = (-30 * s2 + 60 * s3 - 30 * s4) / h;
    dw[1] = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    dw[2] = (s - 4.5 * s2 + 6 * s3 - 2.5 * s4) * h;
    dw[3] = (30 * s2 - 60 * s3 + 30 * s4) / h;
    dw[4] = -12 * s2 + 28 * s3 - 15 * s4;
    dw[5] = (1.5 * s2 - 4 * s3 + 2.5 * s4) * h;
    ddw[0] = (-60 * s + 180 * s2 - 120 * s3) / h2;
    ddw[1] = (-36 * s + 96 * s2 - 60 * s3) / h;
    ddw[2] = 1 - 9 * s + 18 * s2 - 10 * s3;
    ddw[3] = (60 * s - 180 * s2 + 120 * s3) / h2;
    ddw[4] = (-24 * s + 84 * s2 - 60 * s3) / h;
    ddw[5] = 3 * s - 12 * s2 + 10 * s3;
  }

  /// y = (y0, d0, dd0, y1, d1, dd1)
  double value(const double (&y)[6]) const { return dot(w, y); }
  double derivative(const double (&y)[6]) const { return dot(dw, y); }
  double second_derivative(const double (&y)[6]) const { return dot(ddw, y); }

 private:
  static double dot(const double (&a)[6], const double (&b)[6]) {
    double r = 0.0;
    for (int i = 0; i < 6; ++i) r += a[i] * b[i];
    return r;
  }
};

/// Locates x on the uniform grid x0 + k*h, k = 0..n-1. Returns the cell index
/// and local coordinate s in [0,1]; -1 when x is off the grid (beyond a
/// relative slack of 1e-12).
struct GridCell {
  long index = -1;
  double s = 0.0;
};

inline GridCell locate(double x, double x0, double h, std::size_t n) {
  if (n < 2) return {};
  const double span = h * static_cast<double>(n - 1);
  const double slack = 1e-12 * std::max(1.0, std::abs(span));
  const double r = x - x0;
  if (r < -slack || r > span + slack) return {};
  long k = static_cast<long>(std::floor(r / h));
  k = std::max(0L, std::min(k, static_cast<long>(n) - 2));
  return {k, std::min(1.0, std::max(0.0, (r - static_cast<double>(k) * h) / h))};
}

/// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
/// Each index is handled exactly once, so writes into per-index slots are
/// deterministic. The first exception (lowest index) is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace meridian
