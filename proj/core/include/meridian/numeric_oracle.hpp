#pragma once

// Finite-difference differential geometry of an arbitrary immersion into
// R^4 with the neutral metric. Independent of the analytic surface formulas.

#include <array>
#include <functional>
#include <optional>

#include "meridian/indefinite_algebra.hpp"

namespace meridian {

using Immersion = std::function<Vec4(double, double)>;

struct Jet2 {
  double u = 0.0;
  double v = 0.0;
  double h = 0.0;
  Vec4 z, zu, zv, zuu, zuv, zvv;
};

/// 1e-4 * max(1, |u|, |v|).
double default_fd_step(double u, double v);

/// Second-order central differences on the 3x3 stencil around (u, v).
/// Failures inside the stencil are rethrown with the stencil coordinates.
Jet2 fd_jet(const Immersion& immersion, double u, double v, std::optional<double> h = std::nullopt);

/// Normal vector (as a Vec4) and its coordinates (s_k <w, n_k>) in the normal basis.
struct NormalPart {
  Vec4 vec;
  std::array<double, 2> coeff{};
};

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double det = 0.0;  ///< EG - F^2
  Vec4 zu, zv;
  std::array<Vec4, 2> normal;
  std::array<int, 2> normal_signs{};
  std::array<int, 2> normal_seeds{};  ///< canonical basis indices the normals came from
  NormalPart h_uu, h_uv, h_vv;
  Vec4 H;
  double norm2H = 0.0;
};

/// Tangent projection sum g^{ij} <w, z_j> z_i.
Vec4 tangent_projection(const FundamentalForms& forms, const Vec4& w);

/// First and second fundamental forms and H = (E h_vv - 2F h_uv + G h_uu) / (2(EG - F^2)).
/// The normal basis is Gram-Schmidt of the rejections of two canonical basis
/// vectors, largest rejection first; `seeds` forces a starting pair.
FundamentalForms fundamental_forms(const Jet2& jet,
                                   std::optional<std::array<int, 2>> seeds = std::nullopt);

struct MeanCurvature {
  Vec4 H;
  double norm2 = 0.0;
};

MeanCurvature mean_curvature_fd(const Immersion& immersion, double u, double v,
                                std::optional<double> h = std::nullopt);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Matrix of A_xi in the basis (z_u, z_v): g^{-1} (<h_ij, xi>).
/// Throws UsageError unless xi is normal within 1e-8 (relative).
Matrix2 shape_operator(const FundamentalForms& forms, const Vec4& xi);

/// Real eigenvalues of a 2x2 matrix in increasing order; NaN if complex.
std::array<double, 2> eigenvalues(const Matrix2& m);

}  // namespace meridian
