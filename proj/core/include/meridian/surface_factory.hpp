#pragma once

// Meridian surfaces z(u,v) = f(u) l(v) + g(u) e4 on the rotational
// hypersurfaces, with their analytic frames and mean curvature vectors, and
// the congruent "tilde" surfaces obtained through T.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "meridian/common.hpp"
#include "meridian/indefinite_algebra.hpp"
#include "meridian/meridian_profiles.hpp"
#include "meridian/numeric_oracle.hpp"
#include "meridian/sphere_curves.hpp"

namespace meridian {

enum class SurfaceFamily { Ma, Mb, Mpp };

std::string_view to_string(SurfaceFamily f);

/// Expected (<X,X>, <Y,Y>, <n1,n1>, <n2,n2>).
std::array<int, 4> surface_frame_signs(SurfaceFamily family);
CurveFamily curve_family(SurfaceFamily family);
ProfileFamily profile_family(SurfaceFamily family);

struct SurfaceFrame {
  Vec4 X;
  Vec4 Y;
  Vec4 n1;
  Vec4 n2;

  std::array<Vec4, 4> as_array() const { return {X, Y, n1, n2}; }
};

struct MeanCurvatureDecomp {
  double h1 = 0.0;  ///< coefficient along n1
  double h2 = 0.0;  ///< coefficient along n2
  Vec4 H;
  double norm2 = 0.0;
};

class MeridianSurface {
 public:
  SurfaceFamily family() const { return family_; }
  const FrameField& curve() const { return curve_; }
  const MeridianProfile& profile() const { return profile_; }
  Interval u_span() const { return {profile_.u_min(), profile_.u_max()}; }
  Interval v_span() const { return {curve_.v_min(), curve_.v_max()}; }

  Vec4 operator()(double u, double v) const;

 private:
  friend MeridianSurface assemble(SurfaceFamily, FrameField, MeridianProfile);
  MeridianSurface(SurfaceFamily family, FrameField curve, MeridianProfile profile)
      : family_(family), curve_(std::move(curve)), profile_(std::move(profile)) {}

  SurfaceFamily family_;
  FrameField curve_;
  MeridianProfile profile_;
};

/// Throws UsageError unless curve and profile belong to `family`.
MeridianSurface assemble(SurfaceFamily family, FrameField curve, MeridianProfile profile);

Vec4 eval_immersion(const MeridianSurface& surface, double u, double v);

/// X = f' l + g' e4, Y = t, n1 = n and
///   n2 = g' l + f' e4 (Ma, Mb), n2 = -g' l + f' e4 (Mpp).
SurfaceFrame analytic_frames(const MeridianSurface& surface, double u, double v);

/// kappa_m = f''/g' (Ma, Mb), -f''/g' (Mpp).
double meridian_curvature(const MeridianSurface& surface, double u);

/// H = h1 n1 + h2 n2 with
///   Ma  h1 = -k/(2f), h2 = -(f f'' + f'^2 + 1)/(2 f g')
///   Mb  h1 = -k/(2f), h2 =  (f f'' + f'^2 - 1)/(2 f g')
///   Mpp h1 =  k/(2f), h2 =  (f f'' + f'^2 - 1)/(2 f g')
MeanCurvatureDecomp analytic_H(const MeridianSurface& surface, double u, double v);

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

/// Sup-norm residuals of the eight covariant derivative formulas of the
/// frame {X, Y, n1, n2}, using directional derivatives d/du and (1/f) d/dv of
/// the analytic frame by central differences with step h.
std::vector<NamedResidual> frame_equation_residuals(const MeridianSurface& surface, double u,
                                                    double v, double h = 1e-4);

/// T x = (x4, x3, x1, x2); <Tx, Ty> = -<x, y>.
Vec4 transform_T(const Vec4& x);

/// Uniform nu x nv parameter grid.
struct SurfaceGrid {
  std::size_t nu = 0;
  std::size_t nv = 0;
  Interval u_span;
  Interval v_span;

  double u_at(std::size_t i) const;
  double v_at(std::size_t j) const;
  std::size_t size() const { return nu * nv; }

  /// Grid shrunk by `margin` times the width on each side.
  static SurfaceGrid interior(std::size_t nu, std::size_t nv, Interval u_span, Interval v_span,
                              double margin = 0.01);
};

/// Points of an immersion on a grid, row-major with u outer and v inner.
struct SampledSurface {
  std::string name;
  SurfaceGrid grid;
  std::vector<Vec4> points;

  const Vec4& at(std::size_t i, std::size_t j) const { return points[i * grid.nv + j]; }
};

SampledSurface sample_surface(const Immersion& immersion, const SurfaceGrid& grid,
                              std::string name);
SampledSurface sample_surface(const MeridianSurface& surface, const SurfaceGrid& grid);
SampledSurface transform_T(const SampledSurface& grid);

enum class TildeKind {
  TildePrime,    ///< image of Mpp: g e1 + f tilde l^I
  TildeDoubleA,  ///< image of Mb: g e1 + f tilde l^II
  TildeDoubleB,  ///< image of Ma: g e1 + f tilde l^II
};

std::string_view to_string(TildeKind k);
SurfaceFamily tilde_source(TildeKind k);

/// T applied to the source surface on `grid`.
SampledSurface tilde_surface(TildeKind kind, const MeridianSurface& source, const SurfaceGrid& grid);

/// The tilde surface evaluated from its own parametrisation g(u) e1 +
/// f(u) tilde-l(w1(v), w2(v)), with (w1, w2) read off the source curve.
Vec4 tilde_parametrization(TildeKind kind, const MeridianSurface& source, double u, double v);

}  // namespace meridian
