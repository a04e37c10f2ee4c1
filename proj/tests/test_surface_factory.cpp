#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "meridian/numeric_oracle.hpp"
#include "meridian/surface_factory.hpp"

using namespace meridian;

namespace {

FrameField curve_for(SurfaceFamily family, double kappa, Interval v_span = {0.0, 1.0}) {
  const CurveFamily cf = curve_family(family);
  return integrate_frenet(cf, CurvatureLaw::constant(kappa), standard_initial_frame(cf), v_span, 1e-3);
}

MeridianProfile minimal_for(SurfaceFamily family) {
  ProfileParams p;
  switch (family) {
    case SurfaceFamily::Ma: p.a = 0.0; p.b = 1.0; return minimal_profile(ProfileFamily::Ma, p, {-0.8, 0.8}, 1601);
    case SurfaceFamily::Mb: p.a = 2.0; p.b = 1.0; return minimal_profile(ProfileFamily::Mb, p, {0.0, 1.0}, 1001);
    case SurfaceFamily::Mpp: p.a = 0.0; p.b = 1.0; return minimal_profile(ProfileFamily::Mpp, p, {-1.0, 1.0}, 2001);
  }
  throw std::logic_error("family");
}

// f = scale * 2 and g = scale * (g0 + u): a cylinder over the curve.
MeridianProfile cylinder_profile(double scale = 1.0, double g0 = 0.0) {
  MeridianProfile::Samples s;
  const double du = 0.01;
  for (int i = 0; i <= 100; ++i) {
    s.f.push_back(2.0 * scale);
    s.fp.push_back(0.0);
    s.fpp.push_back(0.0);
    s.g.push_back(scale * (g0 + i * du));
    s.gp.push_back(scale);
  }
  return MeridianProfile(ProfileFamily::Ma, Provenance::UserSupplied, {}, 0.0, du, s);
}

Immersion immersion_of(const MeridianSurface& s) {
  return [&s](double u, double v) { return s(u, v); };
}

constexpr SurfaceFamily kFamilies[] = {SurfaceFamily::Ma, SurfaceFamily::Mb, SurfaceFamily::Mpp};

}  // namespace

TEST_CASE("family tags") {
  CHECK(surface_frame_signs(SurfaceFamily::Ma) == std::array<int, 4>{-1, 1, -1, 1});
  CHECK(surface_frame_signs(SurfaceFamily::Mb) == std::array<int, 4>{1, -1, 1, -1});
  CHECK(surface_frame_signs(SurfaceFamily::Mpp) == std::array<int, 4>{-1, 1, 1, -1});
  CHECK(curve_family(SurfaceFamily::Mb) == CurveFamily::TimelikeOnS21);
  CHECK(profile_family(SurfaceFamily::Mpp) == ProfileFamily::Mpp);
  CHECK_THROWS_AS(assemble(SurfaceFamily::Mb, curve_for(SurfaceFamily::Ma, 0.0), minimal_for(SurfaceFamily::Ma)),
                  UsageError);
  CHECK_THROWS_AS(assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.0), minimal_for(SurfaceFamily::Mb)),
                  UsageError);
}

TEST_CASE("immersion") {
  const MeridianSurface cyl = assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.0), cylinder_profile(1.0, 0.3));
  CHECK(cyl(0.0, 0.0) == Vec4{2, 0, 0, 0.3});
  CHECK(eval_immersion(cyl, 0.0, 0.0) == cyl(0.0, 0.0));
  CHECK_THROWS_AS(cyl(1.5, 0.0), DomainError);
  CHECK_THROWS_AS(cyl(0.5, 1.5), DomainError);

  const MeridianSurface twice =
      assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.0), cylinder_profile(2.0, 0.3));
  for (double u : {0.1, 0.55}) {
    for (double v : {0.2, 0.8}) CHECK(max_abs(twice(u, v) - 2.0 * cyl(u, v)) <= 1e-14);
  }

  const MeridianSurface mpp = assemble(SurfaceFamily::Mpp, curve_for(SurfaceFamily::Mpp, 0.0), minimal_for(SurfaceFamily::Mpp));
  for (double u : {-0.5, 0.0, 0.7}) {
    const ProfileJet j = mpp.profile().at(u);
    const Vec4 z = mpp(u, 0.0);
    CHECK(z == Vec4{0, 0, j.f, j.g});
  }
}

TEST_CASE("first fundamental form of Ma") {
  const MeridianSurface s = assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.4), minimal_for(SurfaceFamily::Ma));
  for (double u : {-0.5, 0.1, 0.6}) {
    for (double v : {0.2, 0.7}) {
      const FundamentalForms ff = fundamental_forms(fd_jet(immersion_of(s), u, v));
      const double f = s.profile().at(u).f;
      CHECK(std::abs(ff.E + 1.0) <= 1e-6);
      CHECK(std::abs(ff.F) <= 1e-6);
      CHECK(std::abs(ff.G - f * f) <= 1e-6);
    }
  }
}

TEST_CASE("analytic frames") {
  for (SurfaceFamily fam : kFamilies) {
    CAPTURE(to_string(fam));
    const MeridianSurface s = assemble(fam, curve_for(fam, 0.7), minimal_for(fam));
    const Interval us = s.u_span();
    for (double a : {0.2, 0.5, 0.8}) {
      const double u = us.lo + a * (us.hi - us.lo);
      const double v = 0.3 + 0.4 * a;
      const SurfaceFrame fr = analytic_frames(s, u, v);
      CHECK(orthonormality_deviation(fr.as_array(), surface_frame_signs(fam)) <= 1e-8);
      const Jet2 jet = fd_jet(immersion_of(s), u, v);
      CHECK(max_abs(fr.X - jet.zu) <= 1e-6);
    }
  }

  const MeridianSurface cyl = assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.3), cylinder_profile());
  const SurfaceFrame fr = analytic_frames(cyl, 0.4, 0.6);
  CHECK(max_abs(fr.n2 - embed(cyl.curve().state_at(0.6).l)) <= 1e-15);
}

TEST_CASE("analytic mean curvature") {
  const MeridianSurface minimal =
      assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.0), minimal_for(SurfaceFamily::Ma));
  for (double u : {-0.7, 0.0, 0.45}) {
    const MeanCurvatureDecomp d = analytic_H(minimal, u, 0.5);
    CHECK(std::abs(d.h1) <= 1e-9);
    CHECK(std::abs(d.h2) <= 1e-9);
  }

  for (double a : {1.0, 0.5}) {
    const MeridianSurface cyl = assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, a), cylinder_profile());
    const MeanCurvatureDecomp d = analytic_H(cyl, 0.5, 0.5);
    CHECK(d.h1 == doctest::Approx(-a / 4));
    CHECK(d.h2 == doctest::Approx(-0.25));
    CHECK(d.norm2 == doctest::Approx((1 - a * a) / 16).epsilon(1e-12));
    CHECK(std::abs(d.norm2 - (1 - a * a) / 16) <= 1e-12);
  }

  for (SurfaceFamily fam : kFamilies) {
    CAPTURE(to_string(fam));
    const MeridianSurface s = assemble(fam, curve_for(fam, 0.6), minimal_for(fam));
    const auto signs = surface_frame_signs(fam);
    std::mt19937_64 rng(9);
    const Interval us = s.u_span();
    std::uniform_real_distribution<double> pu(us.lo + 0.05 * (us.hi - us.lo), us.hi - 0.05 * (us.hi - us.lo));
    std::uniform_real_distribution<double> pv(0.05, 0.95);
    for (int k = 0; k < 20; ++k) {
      const double u = pu(rng);
      const double v = pv(rng);
      const MeanCurvatureDecomp d = analytic_H(s, u, v);
      const SurfaceFrame fr = analytic_frames(s, u, v);
      CHECK(max_abs(d.H - (d.h1 * fr.n1 + d.h2 * fr.n2)) <= 1e-10);
      CHECK(std::abs(d.norm2 - (signs[2] * d.h1 * d.h1 + signs[3] * d.h2 * d.h2)) <= 1e-10);
      const MeanCurvature fd = mean_curvature_fd(immersion_of(s), u, v);
      CHECK(max_abs(fd.H - d.H) <= 1e-5);
    }
  }
}

TEST_CASE("lightlike meridian is rejected") {
  MeridianProfile::Samples s;
  for (int i = 0; i <= 10; ++i) {
    s.f.push_back(1.0 + 0.1 * i);
    s.fp.push_back(1.0);
    s.fpp.push_back(0.0);
    s.g.push_back(0.0);
    s.gp.push_back(0.0);
  }
  const MeridianProfile p(ProfileFamily::Mb, Provenance::UserSupplied, {}, 0.0, 0.1, s);
  const MeridianSurface m = assemble(SurfaceFamily::Mb, curve_for(SurfaceFamily::Mb, 0.0), p);
  CHECK_THROWS_AS(analytic_H(m, 0.5, 0.5), DomainError);
}

TEST_CASE("frame equations and meridian curvature") {
  for (SurfaceFamily fam : kFamilies) {
    CAPTURE(to_string(fam));
    const MeridianSurface s = assemble(fam, curve_for(fam, 0.8), minimal_for(fam));
    const Interval us = s.u_span();
    const ProfileJet j = s.profile().at(0.5 * (us.lo + us.hi));
    const double expected = (fam == SurfaceFamily::Mpp ? -1.0 : 1.0) * j.fpp / j.gp;
    CHECK(meridian_curvature(s, 0.5 * (us.lo + us.hi)) == doctest::Approx(expected));
    for (double a : {0.15, 0.5, 0.85}) {
      const std::vector<NamedResidual> res = frame_equation_residuals(s, us.lo + a * (us.hi - us.lo), a);
      CHECK(res.size() == 8);
      for (const NamedResidual& r : res) {
        CAPTURE(r.name);
        CHECK(r.value <= 1e-5);
      }
    }
  }
}

TEST_CASE("transformation T") {
  CHECK(transform_T(Vec4::basis(0)) == Vec4::basis(2));
  CHECK(transform_T(Vec4{1, 2, 3, 4}) == Vec4{4, 3, 1, 2});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(inner(transform_T(Vec4::basis(i)), transform_T(Vec4::basis(j))) ==
            -inner(Vec4::basis(i), Vec4::basis(j)));
    }
  }
  const Vec4 x{0.3, -1.7, 2.2, 5.0};
  CHECK(transform_T(transform_T(transform_T(transform_T(x)))) == x);
  CHECK(transform_T(Vec4::basis(2)) == Vec4::basis(1));
  CHECK(transform_T(Vec4::basis(1)) == Vec4::basis(3));
  CHECK(transform_T(Vec4::basis(3)) == Vec4::basis(0));
}

TEST_CASE("tilde surfaces") {
  const TildeKind kinds[] = {TildeKind::TildePrime, TildeKind::TildeDoubleA, TildeKind::TildeDoubleB};
  for (TildeKind k : kinds) {
    CAPTURE(to_string(k));
    const SurfaceFamily fam = tilde_source(k);
    const MeridianSurface s = assemble(fam, curve_for(fam, 0.5), minimal_for(fam));
    const SurfaceGrid grid = SurfaceGrid::interior(9, 9, s.u_span(), s.v_span(), 0.05);
    const SampledSurface t = tilde_surface(k, s, grid);
    CHECK(t.name == to_string(k));
    CHECK(t.points.size() == grid.size());
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.nu; ++i) {
      for (std::size_t j = 0; j < grid.nv; ++j) {
        gap = std::max(gap, max_abs(t.at(i, j) - tilde_parametrization(k, s, grid.u_at(i), grid.v_at(j))));
      }
    }
    CHECK(gap <= 1e-10);

    const Immersion image = [&s](double u, double v) { return transform_T(s(u, v)); };
    for (double a : {0.3, 0.6}) {
      const double u = grid.u_at(2) + a * (grid.u_at(6) - grid.u_at(2));
      const double v = a;
      const MeanCurvature src = mean_curvature_fd(immersion_of(s), u, v);
      const MeanCurvature img = mean_curvature_fd(image, u, v);
      CHECK(std::abs(img.norm2 + src.norm2) <= 1e-5);
      const Jet2 js = fd_jet(immersion_of(s), u, v);
      const Jet2 ji = fd_jet(image, u, v);
      CHECK(causal_character(ji.zu) == (causal_character(js.zu) == CausalCharacter::Timelike
                                            ? CausalCharacter::Spacelike
                                            : CausalCharacter::Timelike));
      CHECK(causal_character(ji.zv) == (causal_character(js.zv) == CausalCharacter::Timelike
                                            ? CausalCharacter::Spacelike
                                            : CausalCharacter::Timelike));
    }
  }
  const MeridianSurface ma = assemble(SurfaceFamily::Ma, curve_for(SurfaceFamily::Ma, 0.5), minimal_for(SurfaceFamily::Ma));
  const SurfaceGrid grid = SurfaceGrid::interior(5, 5, ma.u_span(), ma.v_span());
  CHECK_THROWS_AS(tilde_surface(TildeKind::TildePrime, ma, grid), UsageError);
}

TEST_CASE("grids") {
  const SurfaceGrid g = SurfaceGrid::interior(11, 6, {0.0, 1.0}, {-1.0, 1.0}, 0.1);
  CHECK(g.u_at(0) == doctest::Approx(0.1));
  CHECK(g.u_at(10) == doctest::Approx(0.9));
  CHECK(g.v_at(5) == doctest::Approx(0.8));
  CHECK(g.size() == 66);

  const MeridianSurface s = assemble(SurfaceFamily::Mb, curve_for(SurfaceFamily::Mb, 0.2), minimal_for(SurfaceFamily::Mb));
  const SampledSurface a = sample_surface(s, g.interior(4, 3, s.u_span(), s.v_span()));
  CHECK(a.at(3, 2) == s(a.grid.u_at(3), a.grid.v_at(2)));
  const SampledSurface b = transform_T(a);
  CHECK(b.at(1, 1) == transform_T(a.at(1, 1)));
}
