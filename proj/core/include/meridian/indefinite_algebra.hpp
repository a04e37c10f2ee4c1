#pragma once

// Linear algebra for the neutral metric dx1^2 + dx2^2 - dx3^2 - dx4^2 on R^4
// and its two Lorentzian 3-dimensional coordinate restrictions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meridian/errors.hpp"

namespace meridian {

/// Ordered list of +1/-1 metric signs (length 3 or 4).
class Signature {
 public:
  Signature(std::initializer_list<int> signs);
  explicit Signature(std::span<const int> signs);

  /// (+,+,-,-) on span{e1,e2,e3,e4}.
  static Signature neutral4();
  /// (+,+,-) on span{e1,e2,e3}.
  static Signature minkowski31();
  /// (+,-,-) on span{e2,e3,e4}.
  static Signature minkowski32();

  std::size_t size() const { return size_; }
  int operator[](std::size_t i) const { return signs_[i]; }
  std::span<const int> signs() const { return {signs_.data(), size_}; }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.size_ == b.size_ && a.signs_ == b.signs_;
  }

 private:
  std::array<int, 4> signs_{};
  std::size_t size_ = 0;
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

std::string_view to_string(CausalCharacter c);

struct Vec4 {
  std::array<double, 4> x{};

  constexpr Vec4() = default;
  constexpr Vec4(double x1, double x2, double x3, double x4) : x{x1, x2, x3, x4} {}

  static constexpr Vec4 basis(int i) {
    Vec4 e;
    e.x[static_cast<std::size_t>(i)] = 1.0;
    return e;
  }

  double& operator[](std::size_t i) { return x[i]; }
  double operator[](std::size_t i) const { return x[i]; }
  std::span<const double> coords() const { return x; }

  Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) x[i] += o.x[i];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) x[i] -= o.x[i];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (double& c : x) c *= s;
    return *this;
  }
  friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend Vec4 operator-(Vec4 a) { return a *= -1.0; }
  friend Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend Vec4 operator/(Vec4 a, double s) { return a *= 1.0 / s; }
  friend bool operator==(const Vec4&, const Vec4&) = default;
};

/// Which 3-dimensional coordinate subspace a Vec3 lives in.
enum class Space3 {
  E31,  ///< span{e1,e2,e3}, signature (+,+,-)
  E32,  ///< span{e2,e3,e4}, signature (+,-,-)
};

struct Vec3 {
  std::array<double, 3> x{};
  Space3 space = Space3::E31;

  constexpr Vec3() = default;
  constexpr Vec3(double x1, double x2, double x3, Space3 s = Space3::E31)
      : x{x1, x2, x3}, space(s) {}

  Signature signature() const;

  double& operator[](std::size_t i) { return x[i]; }
  double operator[](std::size_t i) const { return x[i]; }
  std::span<const double> coords() const { return x; }

  Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) x[i] += o.x[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) x[i] -= o.x[i];
    return *this;
  }
  Vec3& operator*=(double s) {
    for (double& c : x) c *= s;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(Vec3 a) { return a *= -1.0; }
  friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Places a Vec3 into R^4 according to its subspace tag.
Vec4 embed(const Vec3& v);

/// Sum of sig_i * x_i * y_i. Throws UsageError on dimension mismatch.
double inner(std::span<const double> x, std::span<const double> y, const Signature& sig);
/// Neutral inner product on R^4.
double inner(const Vec4& x, const Vec4& y);
/// Inner product in the subspace both vectors are tagged with.
double inner(const Vec3& x, const Vec3& y);

/// Euclidean (coordinate) norms, used for scales and tolerances only.
double euclidean_norm(std::span<const double> x);
double max_abs(std::span<const double> x);
inline double max_abs(const Vec4& v) { return max_abs(v.coords()); }
inline double max_abs(const Vec3& v) { return max_abs(v.coords()); }

/// Default causal tolerance: 1e-9 * max(1, |v|_2^2).
double default_causal_tolerance(std::span<const double> v);

/// Spacelike if <v,v> > eps or v is (numerically) zero, Timelike if
/// <v,v> < -eps, Lightlike otherwise.
CausalCharacter causal_character(std::span<const double> v, const Signature& sig,
                                 std::optional<double> eps = std::nullopt);
CausalCharacter causal_character(const Vec4& v, std::optional<double> eps = std::nullopt);
CausalCharacter causal_character(const Vec3& v, std::optional<double> eps = std::nullopt);

/// max_ij |<f_i, f_j> - diag(expected_signs)_ij|.
double orthonormality_deviation(std::span<const std::vector<double>> frame,
                                std::span<const int> expected_signs, const Signature& sig);
double orthonormality_deviation(std::span<const Vec4> frame, std::span<const int> expected_signs);
double orthonormality_deviation(std::span<const Vec3> frame, std::span<const int> expected_signs);

struct AffineRank {
  int rank = 0;
  /// First discarded singular value over the largest one (0 if none).
  double residual = 0.0;
  std::array<double, 4> singular_values{};
};

/// Numerical dimension of the affine hull of the points (Euclidean SVD of the
/// mean-centred point matrix). Needs at least 5 points.
AffineRank affine_rank(std::span<const Vec4> points, double tol);

/// In-place indefinite Gram-Schmidt. Each vector is normalised to
/// |<v,v>| = 1 and its sign recorded. A partial result with
/// |<v,v>| < degeneracy_tol * max(1, |v|_2^2) throws DegeneracyError.
template <class V>
std::vector<int> indefinite_gram_schmidt(std::span<V> vectors, double degeneracy_tol = 1e-12) {
  std::vector<int> signs;
  signs.reserve(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    V w = vectors[k];
    for (std::size_t j = 0; j < k; ++j) {
      w -= static_cast<double>(signs[j]) * inner(w, vectors[j]) * vectors[j];
    }
    const double q = inner(w, w);
    const double scale = std::max(1.0, std::pow(euclidean_norm(w.coords()), 2));
    if (!(std::abs(q) >= degeneracy_tol * scale)) {
      throw DegeneracyError("indefinite Gram-Schmidt: vector " + std::to_string(k) +
                            " is null (|<v,v>| = " + std::to_string(std::abs(q)) + ")");
    }
    signs.push_back(q > 0 ? 1 : -1);
    vectors[k] = w / std::sqrt(std::abs(q));
  }
  return signs;
}

}  // namespace meridian
