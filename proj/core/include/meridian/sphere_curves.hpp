#pragma once

// Moving frames {l, t, n} of arc-length curves on the pseudo-spheres
// S^2_1(1) = {<V,V> = 1} and H^2_1(-1) = {<V,V> = -1} in Minkowski 3-space
// span{e1,e2,e3}, plus the coordinate charts of the rotational hypersurfaces.

#include <array>
#include <functional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "meridian/common.hpp"
#include "meridian/indefinite_algebra.hpp"

namespace meridian {

enum class CurveFamily {
  SpacelikeOnS21,  ///< <l,l> = 1, <t,t> = 1, <n,n> = -1
  TimelikeOnS21,   ///< <l,l> = 1, <t,t> = -1, <n,n> = 1
  SpacelikeOnH21,  ///< <l,l> = -1, <t,t> = 1, <n,n> = 1
};

std::string_view to_string(CurveFamily f);

struct FrameSigns {
  int l = 1;
  int t = 1;
  int n = -1;

  std::array<int, 3> as_array() const { return {l, t, n}; }
};

FrameSigns frame_signs(CurveFamily family);

struct FrenetState {
  double v = 0.0;
  Vec3 l;
  Vec3 t;
  Vec3 n;
};

/// Spherical curvature kappa(v) of the curve.
class CurvatureLaw {
 public:
  explicit CurvatureLaw(std::function<double(double)> kappa) : kappa_(std::move(kappa)) {}

  static CurvatureLaw constant(double kappa) {
    return CurvatureLaw([kappa](double) { return kappa; });
  }

  double operator()(double v) const { return kappa_(v); }

 private:
  std::function<double(double)> kappa_;
};

struct FrenetDerivative {
  Vec3 dl;
  Vec3 dt;
  Vec3 dn;
};

/// Right-hand side of the family's Frenet system:
///   SpacelikeOnS21: l' = t, t' = -k n - l, n' = -k t
///   TimelikeOnS21:  l' = t, t' =  k n + l, n' =  k t
///   SpacelikeOnH21: l' = t, t' =  k n + l, n' = -k t
FrenetDerivative frenet_derivative(CurveFamily family, double kappa, const FrenetState& s);

/// Exponential growth rate of the frame under constant curvature kappa:
/// t'' = mu t with mu = kappa^2 - 1 (SpacelikeOnS21), kappa^2 + 1
/// (TimelikeOnS21) or 1 - kappa^2 (SpacelikeOnH21); returns sqrt(max(mu, 0)).
double frame_growth_rate(CurveFamily family, double kappa);

/// Frenet frames sampled on a uniform v-grid. Immutable once built.
class FrameField {
 public:
  /// Samples must be on a uniform, increasing grid with at least 2 entries;
  /// kappa holds the spherical curvature at each sample.
  FrameField(CurveFamily family, std::vector<FrenetState> samples, std::vector<double> kappa,
             double max_gram_drift = 0.0);

  CurveFamily family() const { return family_; }
  const std::vector<FrenetState>& samples() const { return samples_; }
  const std::vector<double>& kappa_samples() const { return kappa_; }
  double step() const { return step_; }
  double v_min() const { return samples_.front().v; }
  double v_max() const { return samples_.back().v; }
  /// Worst Gram deviation observed before each re-orthonormalisation.
  double max_gram_drift() const { return max_gram_drift_; }

  /// Frame at arbitrary v by Hermite interpolation with the Frenet
  /// derivatives at the neighbouring samples: quintic for l (using l'' = t'),
  /// cubic for t and n. Throws DomainError off-grid.
  FrenetState state_at(double v) const;
  /// Curvature at v, linear between samples.
  double kappa_at(double v) const;

 private:
  GridCell cell(double v) const;

  CurveFamily family_;
  std::vector<FrenetState> samples_;
  std::vector<double> kappa_;
  double step_ = 0.0;
  double max_gram_drift_ = 0.0;
};

enum class ChartKind {
  S21,       ///< l^I on S^2_1(1) in span{e1,e2,e3}
  H21,       ///< l^II on H^2_1(-1) in span{e1,e2,e3}
  S21Tilde,  ///< tilde l^I on the de Sitter sphere of span{e2,e3,e4}
  H21Tilde,  ///< tilde l^II on the hyperbolic sphere of span{e2,e3,e4}
};

/// Unit position vectors of the rotational hypersurfaces:
///   S21      (cosh w1 cos w2, cosh w1 sin w2, sinh w1)         in E^3_1
///   H21      (sinh w1 cos w2, sinh w1 sin w2, cosh w1)         in E^3_1
///   S21Tilde cosh w1 e2 + sinh w1 cos w2 e3 + sinh w1 sin w2 e4  in R^4
///   H21Tilde sinh w1 e2 + cosh w1 cos w2 e3 + cosh w1 sin w2 e4  in R^4
std::variant<Vec3, Vec4> chart(ChartKind kind, double w1, double w2);
Vec3 chart3(ChartKind kind, double w1, double w2);
Vec4 chart4(ChartKind kind, double w1, double w2);

/// Inverse of chart3 for a point on S^2_1 (kind S21) or on the upper sheet of
/// H^2_1 (kind H21). Returns (w1, w2).
std::pair<double, double> chart_parameters(ChartKind kind, const Vec3& p);

FrenetState standard_initial_frame(CurveFamily family);

/// Fixed-step RK4 for the Frenet system with post-step indefinite
/// Gram-Schmidt (order l, t, n). The grid is init.v + k*step and covers
/// v_span, which must contain init.v.
FrameField integrate_frenet(CurveFamily family, const CurvatureLaw& law, const FrenetState& init,
                            Interval v_span, double step = 1e-3);

/// kappa = <t', n> per sample, t' by central differences (second-order
/// one-sided at the ends).
std::vector<double> curvature_estimate(const FrameField& field);

}  // namespace meridian
