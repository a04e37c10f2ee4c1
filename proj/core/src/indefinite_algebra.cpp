#include "meridian/indefinite_algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <string>

namespace meridian {

namespace {

void check_signs(std::span<const int> signs) {
  if (signs.size() != 3 && signs.size() != 4) {
    throw UsageError("signature must have 3 or 4 entries, got " + std::to_string(signs.size()));
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw UsageError("signature entries must be +1 or -1");
  }
}

}  // namespace

Signature::Signature(std::initializer_list<int> signs)
    : Signature(std::span<const int>(signs.begin(), signs.size())) {}

Signature::Signature(std::span<const int> signs) {
  check_signs(signs);
  std::copy(signs.begin(), signs.end(), signs_.begin());
  size_ = signs.size();
}

Signature Signature::neutral4() { return {1, 1, -1, -1}; }
Signature Signature::minkowski31() { return {1, 1, -1}; }
Signature Signature::minkowski32() { return {1, -1, -1}; }

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
  }
  return "unknown";
}

Signature Vec3::signature() const {
  return space == Space3::E31 ? Signature::minkowski31() : Signature::minkowski32();
}

Vec4 embed(const Vec3& v) {
  if (v.space == Space3::E31) return {v.x[0], v.x[1], v.x[2], 0.0};
  return {0.0, v.x[0], v.x[1], v.x[2]};
}

double inner(std::span<const double> x, std::span<const double> y, const Signature& sig) {
  if (x.size() != sig.size() || y.size() != sig.size()) {
    throw UsageError("inner: dimension mismatch (" + std::to_string(x.size()) + ", " +
                     std::to_string(y.size()) + ") vs signature of length " +
                     std::to_string(sig.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += sig[i] * x[i] * y[i];
  return s;
}

double inner(const Vec4& x, const Vec4& y) {
  return x.x[0] * y.x[0] + x.x[1] * y.x[1] - x.x[2] * y.x[2] - x.x[3] * y.x[3];
}

double inner(const Vec3& x, const Vec3& y) {
  if (x.space != y.space) throw UsageError("inner: Vec3 operands live in different subspaces");
  if (x.space == Space3::E31) return x.x[0] * y.x[0] + x.x[1] * y.x[1] - x.x[2] * y.x[2];
  return x.x[0] * y.x[0] - x.x[1] * y.x[1] - x.x[2] * y.x[2];
}

double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double c : x) m = std::max(m, std::abs(c));
  return m;
}

double default_causal_tolerance(std::span<const double> v) {
  const double n = euclidean_norm(v);
  return 1e-9 * std::max(1.0, n * n);
}

CausalCharacter causal_character(std::span<const double> v, const Signature& sig,
                                 std::optional<double> eps) {
  const double tol = eps.value_or(default_causal_tolerance(v));
  const double q = inner(v, v, sig);
  if (std::abs(q) <= tol) {
    return max_abs(v) > tol ? CausalCharacter::Lightlike : CausalCharacter::Spacelike;
  }
  return q > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

CausalCharacter causal_character(const Vec4& v, std::optional<double> eps) {
  return causal_character(v.coords(), Signature::neutral4(), eps);
}

CausalCharacter causal_character(const Vec3& v, std::optional<double> eps) {
  return causal_character(v.coords(), v.signature(), eps);
}

double orthonormality_deviation(std::span<const std::vector<double>> frame,
                                std::span<const int> expected_signs, const Signature& sig) {
  if (frame.size() != expected_signs.size()) {
    throw UsageError("orthonormality_deviation: " + std::to_string(frame.size()) +
                     " vectors but " + std::to_string(expected_signs.size()) + " signs");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = 0; j < frame.size(); ++j) {
      const double target = i == j ? expected_signs[i] : 0.0;
      dev = std::max(dev, std::abs(inner(frame[i], frame[j], sig) - target));
    }
  }
  return dev;
}

namespace {

template <class V>
double deviation_impl(std::span<const V> frame, std::span<const int> expected_signs) {
  if (frame.size() != expected_signs.size()) {
    throw UsageError("orthonormality_deviation: " + std::to_string(frame.size()) +
                     " vectors but " + std::to_string(expected_signs.size()) + " signs");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = 0; j < frame.size(); ++j) {
      const double target = i == j ? expected_signs[i] : 0.0;
      dev = std::max(dev, std::abs(inner(frame[i], frame[j]) - target));
    }
  }
  return dev;
}

}  // namespace

double orthonormality_deviation(std::span<const Vec4> frame, std::span<const int> expected_signs) {
  return deviation_impl(frame, expected_signs);
}

double orthonormality_deviation(std::span<const Vec3> frame, std::span<const int> expected_signs) {
  return deviation_impl(frame, expected_signs);
}

AffineRank affine_rank(std::span<const Vec4> points, double tol) {
  if (points.size() < 5) {
    throw UsageError("affine_rank: need at least 5 points, got " + std::to_string(points.size()));
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd m(n, 4);
  Eigen::RowVector4d mean = Eigen::RowVector4d::Zero();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < 4; ++k) m(i, k) = points[static_cast<std::size_t>(i)].x[k];
    mean += m.row(i);
  }
  mean /= static_cast<double>(n);
  m.rowwise() -= mean;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();

  AffineRank out;
  for (Eigen::Index k = 0; k < sv.size() && k < 4; ++k) out.singular_values[k] = sv(k);
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top == 0.0) return out;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol * top) {
      ++out.rank;
    } else {
      out.residual = sv(k) / top;
      break;
    }
  }
  return out;
}

}  // namespace meridian
