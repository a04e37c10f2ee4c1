#include "meridian/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "meridian/errors.hpp"

namespace meridian {

namespace {

std::string at_str(double u, double v) {
  std::ostringstream s;
  s.precision(12);
  s << "stencil point (u, v) = (" << u << ", " << v << ")";
  return s.str();
}

NormalPart normal_part(const Vec4& w, const std::array<Vec4, 2>& n, const std::array<int, 2>& s) {
  NormalPart out;
  for (int k = 0; k < 2; ++k) {
    out.coeff[k] = s[k] * inner(w, n[k]);
    out.vec += out.coeff[k] * n[k];
  }
  return out;
}

}  // namespace

double default_fd_step(double u, double v) {
  return 1e-4 * std::max({1.0, std::abs(u), std::abs(v)});
}

Jet2 fd_jet(const Immersion& immersion, double u, double v, std::optional<double> step) {
  const double h = step.value_or(default_fd_step(u, v));
  if (!(h > 0.0)) throw UsageError("fd_jet: step must be positive");

  auto z = [&](int i, int j) -> Vec4 {
    const double uu = u + i * h;
    const double vv = v + j * h;
    Vec4 p;
    try {
      p = immersion(uu, vv);
    } catch (const DomainError& e) {
      throw DomainError(at_str(uu, vv) + ": " + e.what());
    } catch (const DegeneracyError& e) {
      throw DegeneracyError(at_str(uu, vv) + ": " + e.what());
    } catch (const IntegrationError& e) {
      throw IntegrationError(at_str(uu, vv) + ": " + e.what());
    } catch (const UsageError& e) {
      throw UsageError(at_str(uu, vv) + ": " + e.what());
    }
    for (double c : p.x) {
      if (!std::isfinite(c)) throw DomainError(at_str(uu, vv) + ": non-finite immersion value");
    }
    return p;
  };

  const Vec4 c = z(0, 0);
  const Vec4 up = z(1, 0), um = z(-1, 0), vp = z(0, 1), vm = z(0, -1);
  const Vec4 pp = z(1, 1), pm = z(1, -1), mp = z(-1, 1), mm = z(-1, -1);

  Jet2 j;
  j.u = u;
  j.v = v;
  j.h = h;
  j.z = c;
  j.zu = (up - um) / (2 * h);
  j.zv = (vp - vm) / (2 * h);
  j.zuu = (up - 2.0 * c + um) / (h * h);
  j.zvv = (vp - 2.0 * c + vm) / (h * h);
  j.zuv = (pp - pm - mp + mm) / (4 * h * h);
  return j;
}

Vec4 tangent_projection(const FundamentalForms& f, const Vec4& w) {
  const double a = inner(w, f.zu);
  const double b = inner(w, f.zv);
  // g^{-1} = [[G, -F], [-F, E]] / det
  const double cu = (f.G * a - f.F * b) / f.det;
  const double cv = (-f.F * a + f.E * b) / f.det;
  return cu * f.zu + cv * f.zv;
}

FundamentalForms fundamental_forms(const Jet2& jet, std::optional<std::array<int, 2>> seeds) {
  FundamentalForms f;
  f.zu = jet.zu;
  f.zv = jet.zv;
  f.E = inner(jet.zu, jet.zu);
  f.F = inner(jet.zu, jet.zv);
  f.G = inner(jet.zv, jet.zv);
  f.det = f.E * f.G - f.F * f.F;
  if (std::abs(f.det) <= 1e-10) {
    std::ostringstream m;
    m << "fundamental_forms: degenerate induced metric (EG - F^2 = " << f.det << ") at (u, v) = ("
      << jet.u << ", " << jet.v << ")";
    throw DegeneracyError(m.str());
  }

  std::array<Vec4, 4> rej;
  std::array<double, 4> norm{};
  for (int k = 0; k < 4; ++k) {
    const Vec4 e = Vec4::basis(k);
    rej[k] = e - tangent_projection(f, e);
    norm[k] = euclidean_norm(rej[k].coords());
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return norm[a] > norm[b]; });

  std::vector<std::array<int, 2>> pairs;
  if (seeds) pairs.push_back(*seeds);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) pairs.push_back({order[i], order[j]});
  }

  bool found = false;
  for (const auto& p : pairs) {
    if (p[0] == p[1] || p[0] < 0 || p[0] > 3 || p[1] < 0 || p[1] > 3) continue;
    std::array<Vec4, 2> basis{rej[p[0]], rej[p[1]]};
    try {
      const auto s = indefinite_gram_schmidt(std::span<Vec4>(basis), 1e-12);
      f.normal = basis;
      f.normal_signs = {s[0], s[1]};
      f.normal_seeds = p;
      found = true;
      break;
    } catch (const DegeneracyError&) {
    }
  }
  if (!found) {
    throw DegeneracyError("fundamental_forms: no nondegenerate normal basis at (u, v) = (" +
                          std::to_string(jet.u) + ", " + std::to_string(jet.v) + ")");
  }

  f.h_uu = normal_part(jet.zuu, f.normal, f.normal_signs);
  f.h_uv = normal_part(jet.zuv, f.normal, f.normal_signs);
  f.h_vv = normal_part(jet.zvv, f.normal, f.normal_signs);
  f.H = (f.E * f.h_vv.vec - 2.0 * f.F * f.h_uv.vec + f.G * f.h_uu.vec) / (2.0 * f.det);
  f.norm2H = inner(f.H, f.H);
  return f;
}

MeanCurvature mean_curvature_fd(const Immersion& immersion, double u, double v, std::optional<double> h) {
  const FundamentalForms f = fundamental_forms(fd_jet(immersion, u, v, h));
  return {f.H, f.norm2H};
}

Matrix2 shape_operator(const FundamentalForms& f, const Vec4& xi) {
  const double nx = euclidean_norm(xi.coords());
  for (const Vec4* t : {&f.zu, &f.zv}) {
    const double scale = std::max(1.0, nx * euclidean_norm(t->coords()));
    if (std::abs(inner(xi, *t)) > 1e-8 * scale) {
      throw UsageError("shape_operator: xi is not normal to the tangent plane");
    }
  }
  const double buu = inner(f.h_uu.vec, xi);
  const double buv = inner(f.h_uv.vec, xi);
  const double bvv = inner(f.h_vv.vec, xi);
  const double gi[2][2] = {{f.G / f.det, -f.F / f.det}, {-f.F / f.det, f.E / f.det}};
  const double b[2][2] = {{buu, buv}, {buv, bvv}};
  Matrix2 a{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a[i][j] = gi[i][0] * b[0][j] + gi[i][1] * b[1][j];
  }
  return a;
}

std::array<double, 2> eigenvalues(const Matrix2& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = tr * tr / 4.0 - det;
  if (disc < 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const double r = std::sqrt(disc);
  return {tr / 2.0 - r, tr / 2.0 + r};
}

}  // namespace meridian
