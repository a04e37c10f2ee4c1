#include "meridian/surface_factory.hpp"

#include <cmath>
#include <sstream>

#include "meridian/errors.hpp"

namespace meridian {

namespace {

constexpr double kMinF = 1e-8;
constexpr double kSingularGprime = 1e-10;

std::string point_str(double u, double v) {
  std::ostringstream s;
  s.precision(12);
  s << "(u, v) = (" << u << ", " << v << ")";
  return s.str();
}

struct PointData {
  ProfileJet jet;
  FrenetState frame;
  double kappa;
};

PointData point_data(const MeridianSurface& s, double u, double v) {
  PointData d{s.profile().at(u), s.curve().state_at(v), s.curve().kappa_at(v)};
  if (!(d.jet.f > kMinF)) {
    throw DomainError("meridian surface degenerates (f <= 1e-8) at " + point_str(u, v));
  }
  return d;
}

double checked_gprime(const MeridianSurface& s, const ProfileJet& jet, double u) {
  if (std::abs(gprime_squared(profile_family(s.family()), jet.fp)) <= kSingularGprime ||
      jet.gp == 0.0) {
    std::ostringstream m;
    m.precision(12);
    m << "singular meridian (g'^2 ~ 0) at u = " << u;
    throw DomainError(m.str());
  }
  return jet.gp;
}

}  // namespace

std::string_view to_string(SurfaceFamily f) {
  switch (f) {
    case SurfaceFamily::Ma: return "ma";
    case SurfaceFamily::Mb: return "mb";
    case SurfaceFamily::Mpp: return "mpp";
  }
  return "unknown";
}

std::array<int, 4> surface_frame_signs(SurfaceFamily family) {
  switch (family) {
    case SurfaceFamily::Ma: return {-1, 1, -1, 1};
    case SurfaceFamily::Mb: return {1, -1, 1, -1};
    case SurfaceFamily::Mpp: return {-1, 1, 1, -1};
  }
  return {};
}

CurveFamily curve_family(SurfaceFamily family) {
  switch (family) {
    case SurfaceFamily::Ma: return CurveFamily::SpacelikeOnS21;
    case SurfaceFamily::Mb: return CurveFamily::TimelikeOnS21;
    case SurfaceFamily::Mpp: return CurveFamily::SpacelikeOnH21;
  }
  return CurveFamily::SpacelikeOnS21;
}

ProfileFamily profile_family(SurfaceFamily family) {
  switch (family) {
    case SurfaceFamily::Ma: return ProfileFamily::Ma;
    case SurfaceFamily::Mb: return ProfileFamily::Mb;
    case SurfaceFamily::Mpp: return ProfileFamily::Mpp;
  }
  return ProfileFamily::Ma;
}

MeridianSurface assemble(SurfaceFamily family, FrameField curve, MeridianProfile profile) {
  if (curve.family() != curve_family(family)) {
    throw UsageError("assemble: surface family " + std::string(to_string(family)) +
                     " needs a " + std::string(to_string(curve_family(family))) + " curve, got " +
                     std::string(to_string(curve.family())));
  }
  if (profile.family() != profile_family(family)) {
    throw UsageError("assemble: surface family " + std::string(to_string(family)) +
                     " got a profile of family " + std::string(to_string(profile.family())));
  }
  for (double k : curve.kappa_samples()) {
    if (!std::isfinite(k)) throw UsageError("assemble: curve has non-finite curvature samples");
  }
  return MeridianSurface(family, std::move(curve), std::move(profile));
}

Vec4 MeridianSurface::operator()(double u, double v) const {
  const ProfileJet jet = profile_.at(u);
  const FrenetState st = curve_.state_at(v);
  Vec4 z = jet.f * embed(st.l);
  z[3] += jet.g;
  return z;
}

Vec4 eval_immersion(const MeridianSurface& surface, double u, double v) { return surface(u, v); }

SurfaceFrame analytic_frames(const MeridianSurface& surface, double u, double v) {
  const PointData d = point_data(surface, u, v);
  const Vec4 l = embed(d.frame.l);
  const Vec4 e4 = Vec4::basis(3);
  const double sg = surface.family() == SurfaceFamily::Mpp ? -1.0 : 1.0;
  return {d.jet.fp * l + d.jet.gp * e4, embed(d.frame.t), embed(d.frame.n),
          sg * d.jet.gp * l + d.jet.fp * e4};
}

double meridian_curvature(const MeridianSurface& surface, double u) {
  const ProfileJet jet = surface.profile().at(u);
  const double gp = checked_gprime(surface, jet, u);
  const double k = jet.fpp / gp;
  return surface.family() == SurfaceFamily::Mpp ? -k : k;
}

MeanCurvatureDecomp analytic_H(const MeridianSurface& surface, double u, double v) {
  const PointData d = point_data(surface, u, v);
  const double gp = checked_gprime(surface, d.jet, u);
  const double f = d.jet.f;
  const double fp = d.jet.fp;
  const double fpp = d.jet.fpp;

  MeanCurvatureDecomp out;
  switch (surface.family()) {
    case SurfaceFamily::Ma:
      out.h1 = -d.kappa / (2 * f);
      out.h2 = -(f * fpp + fp * fp + 1) / (2 * f * gp);
      break;
    case SurfaceFamily::Mb:
      out.h1 = -d.kappa / (2 * f);
      out.h2 = (f * fpp + fp * fp - 1) / (2 * f * gp);
      break;
    case SurfaceFamily::Mpp:
      out.h1 = d.kappa / (2 * f);
      out.h2 = (f * fpp + fp * fp - 1) / (2 * f * gp);
      break;
  }
  const SurfaceFrame fr = analytic_frames(surface, u, v);
  const auto s = surface_frame_signs(surface.family());
  out.H = out.h1 * fr.n1 + out.h2 * fr.n2;
  out.norm2 = s[2] * out.h1 * out.h1 + s[3] * out.h2 * out.h2;
  return out;
}

std::vector<NamedResidual> frame_equation_residuals(const MeridianSurface& surface, double u,
                                                    double v, double h) {
  const SurfaceFrame c = analytic_frames(surface, u, v);
  const SurfaceFrame up = analytic_frames(surface, u + h, v);
  const SurfaceFrame um = analytic_frames(surface, u - h, v);
  const SurfaceFrame vp = analytic_frames(surface, u, v + h);
  const SurfaceFrame vm = analytic_frames(surface, u, v - h);
  const ProfileJet jet = surface.profile().at(u);
  const double f = jet.f;
  const double fp = jet.fp;
  const double gp = checked_gprime(surface, jet, u);
  const double kappa = surface.curve().kappa_at(v);
  const double km = meridian_curvature(surface, u);

  auto dX = [&](Vec4 SurfaceFrame::*m) { return (up.*m - um.*m) / (2 * h); };
  auto dY = [&](Vec4 SurfaceFrame::*m) { return (vp.*m - vm.*m) / (2 * h * f); };

  // Signs that differ between the families.
  double yy_n1 = -1, y_n1 = -1, x_n2 = 1, y_n2 = 1;
  switch (surface.family()) {
    case SurfaceFamily::Ma: break;
    case SurfaceFamily::Mb: yy_n1 = 1; y_n1 = 1; break;
    case SurfaceFamily::Mpp: yy_n1 = 1; x_n2 = -1; y_n2 = -1; break;
  }

  const Vec4 zero{};
  const std::vector<std::pair<std::string, Vec4>> eqs = {
      {"dX X", dX(&SurfaceFrame::X) - km * c.n2},
      {"dX Y", dX(&SurfaceFrame::Y) - zero},
      {"dY X", dY(&SurfaceFrame::X) - (fp / f) * c.Y},
      {"dY Y", dY(&SurfaceFrame::Y) - ((fp / f) * c.X + yy_n1 * (kappa / f) * c.n1 - (gp / f) * c.n2)},
      {"dX n1", dX(&SurfaceFrame::n1) - zero},
      {"dY n1", dY(&SurfaceFrame::n1) - y_n1 * (kappa / f) * c.Y},
      {"dX n2", dX(&SurfaceFrame::n2) - x_n2 * km * c.X},
      {"dY n2", dY(&SurfaceFrame::n2) - y_n2 * (gp / f) * c.Y},
  };
  std::vector<NamedResidual> out;
  out.reserve(eqs.size());
  for (const auto& [name, r] : eqs) out.push_back({name, max_abs(r)});
  return out;
}

Vec4 transform_T(const Vec4& x) { return {x[3], x[2], x[0], x[1]}; }

double SurfaceGrid::u_at(std::size_t i) const {
  if (nu < 2) return u_span.lo;
  return i + 1 == nu ? u_span.hi : u_span.lo + u_span.width() * static_cast<double>(i) / static_cast<double>(nu - 1);
}

double SurfaceGrid::v_at(std::size_t j) const {
  if (nv < 2) return v_span.lo;
  return j + 1 == nv ? v_span.hi : v_span.lo + v_span.width() * static_cast<double>(j) / static_cast<double>(nv - 1);
}

SurfaceGrid SurfaceGrid::interior(std::size_t nu, std::size_t nv, Interval u_span, Interval v_span,
                                  double margin) {
  const double du = margin * u_span.width();
  const double dv = margin * v_span.width();
  return {nu, nv, {u_span.lo + du, u_span.hi - du}, {v_span.lo + dv, v_span.hi - dv}};
}

SampledSurface sample_surface(const Immersion& immersion, const SurfaceGrid& grid, std::string name) {
  SampledSurface out{std::move(name), grid, std::vector<Vec4>(grid.size())};
  parallel_for(grid.nu, [&](std::size_t i) {
    const double u = grid.u_at(i);
    for (std::size_t j = 0; j < grid.nv; ++j) out.points[i * grid.nv + j] = immersion(u, grid.v_at(j));
  });
  return out;
}

SampledSurface sample_surface(const MeridianSurface& surface, const SurfaceGrid& grid) {
  return sample_surface([&surface](double u, double v) { return surface(u, v); }, grid,
                        std::string(to_string(surface.family())));
}

SampledSurface transform_T(const SampledSurface& grid) {
  SampledSurface out{grid.name, grid.grid, {}};
  out.points.reserve(grid.points.size());
  for (const Vec4& p : grid.points) out.points.push_back(transform_T(p));
  return out;
}

std::string_view to_string(TildeKind k) {
  switch (k) {
    case TildeKind::TildePrime: return "tilde-prime";
    case TildeKind::TildeDoubleA: return "tilde-double-a";
    case TildeKind::TildeDoubleB: return "tilde-double-b";
  }
  return "unknown";
}

SurfaceFamily tilde_source(TildeKind k) {
  switch (k) {
    case TildeKind::TildePrime: return SurfaceFamily::Mpp;
    case TildeKind::TildeDoubleA: return SurfaceFamily::Mb;
    case TildeKind::TildeDoubleB: return SurfaceFamily::Ma;
  }
  return SurfaceFamily::Ma;
}

namespace {

void check_tilde_source(TildeKind kind, const MeridianSurface& source) {
  if (source.family() != tilde_source(kind)) {
    throw UsageError(std::string(to_string(kind)) + " is the image of a " +
                     std::string(to_string(tilde_source(kind))) + " surface, got " +
                     std::string(to_string(source.family())));
  }
}

}  // namespace

SampledSurface tilde_surface(TildeKind kind, const MeridianSurface& source, const SurfaceGrid& grid) {
  check_tilde_source(kind, source);
  SampledSurface out = transform_T(sample_surface(source, grid));
  out.name = std::string(to_string(kind));
  return out;
}

Vec4 tilde_parametrization(TildeKind kind, const MeridianSurface& source, double u, double v) {
  check_tilde_source(kind, source);
  const ProfileJet jet = source.profile().at(u);
  const FrenetState st = source.curve().state_at(v);
  const bool on_h21 = kind == TildeKind::TildePrime;
  const auto [w1, w2] = chart_parameters(on_h21 ? ChartKind::H21 : ChartKind::S21, st.l);
  const Vec4 lt = chart4(on_h21 ? ChartKind::S21Tilde : ChartKind::H21Tilde, w1, w2);
  return jet.g * Vec4::basis(0) + jet.f * lt;
}

}  // namespace meridian
