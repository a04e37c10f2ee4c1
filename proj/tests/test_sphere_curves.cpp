#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "meridian/sphere_curves.hpp"

using namespace meridian;

namespace {

double gram_error(CurveFamily family, const FrenetState& s) {
  const std::array<Vec3, 3> f{s.l, s.t, s.n};
  return orthonormality_deviation(f, frame_signs(family).as_array());
}

constexpr CurveFamily kFamilies[] = {CurveFamily::SpacelikeOnS21, CurveFamily::TimelikeOnS21,
                                     CurveFamily::SpacelikeOnH21};

}  // namespace

TEST_CASE("charts") {
  CHECK(chart3(ChartKind::S21, 0, 0) == Vec3{1, 0, 0});
  const Vec3 h = chart3(ChartKind::H21, 0, 0.5);
  CHECK(h[0] == 0.0);
  CHECK(h[1] == 0.0);
  CHECK(h[2] == 1.0);

  const Vec3 p = chart3(ChartKind::S21, 0.7, 1.2);
  CHECK(p[0] == doctest::Approx(0.4548202224).epsilon(1e-10));
  CHECK(p[1] == doctest::Approx(1.1698665727).epsilon(1e-10));
  CHECK(p[2] == doctest::Approx(0.7585837018).epsilon(1e-10));
  CHECK(std::abs(inner(p, p) - 1.0) <= 1e-12);

  CHECK(std::abs(inner(chart3(ChartKind::H21, 0.9, -2.0), chart3(ChartKind::H21, 0.9, -2.0)) + 1.0) <= 1e-12);
  const Vec4 st = chart4(ChartKind::S21Tilde, 0.4, 2.1);
  const Vec4 ht = chart4(ChartKind::H21Tilde, 0.4, 2.1);
  CHECK(st[0] == 0.0);
  CHECK(ht[0] == 0.0);
  CHECK(std::abs(inner(st, st) - 1.0) <= 1e-12);
  CHECK(std::abs(inner(ht, ht) + 1.0) <= 1e-12);
  CHECK(std::holds_alternative<Vec4>(chart(ChartKind::S21Tilde, 0, 0)));
  CHECK_THROWS_AS(chart3(ChartKind::S21Tilde, 0, 0), UsageError);
}

TEST_CASE("chart parameters invert the charts") {
  for (double w1 : {-0.8, 0.0, 0.3, 1.1}) {
    for (double w2 : {-2.5, 0.0, 0.7, 3.0}) {
      const auto [a, b] = chart_parameters(ChartKind::S21, chart3(ChartKind::S21, w1, w2));
      CHECK(a == doctest::Approx(w1).epsilon(1e-12));
      CHECK(b == doctest::Approx(w2).epsilon(1e-12));
    }
  }
  const auto [a, b] = chart_parameters(ChartKind::H21, chart3(ChartKind::H21, 0.6, -1.3));
  CHECK(a == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(b == doctest::Approx(-1.3).epsilon(1e-12));
}

TEST_CASE("standard initial frames are exact") {
  for (CurveFamily f : kFamilies) CHECK(gram_error(f, standard_initial_frame(f)) == 0.0);
  const FrenetState s = standard_initial_frame(CurveFamily::TimelikeOnS21);
  CHECK(s.l == Vec3{1, 0, 0});
  CHECK(s.t == Vec3{0, 0, 1});
  CHECK(s.n == Vec3{0, 1, 0});
  const FrenetState h = standard_initial_frame(CurveFamily::SpacelikeOnH21);
  CHECK(h.l == Vec3{0, 0, 1});
  CHECK(h.t == Vec3{1, 0, 0});
}

TEST_CASE("geodesics integrate to their closed forms") {
  const auto geo = CurvatureLaw::constant(0.0);
  const FrameField s21 = integrate_frenet(CurveFamily::SpacelikeOnS21, geo,
                                          standard_initial_frame(CurveFamily::SpacelikeOnS21),
                                          {0.0, 2.0}, 1e-3);
  const FrenetState q = s21.state_at(std::numbers::pi / 2);
  CHECK(std::abs(q.l[0]) <= 1e-8);
  CHECK(std::abs(q.l[1] - 1.0) <= 1e-8);
  CHECK(std::abs(q.l[2]) <= 1e-8);

  const FrameField h21 = integrate_frenet(CurveFamily::SpacelikeOnH21, geo,
                                          standard_initial_frame(CurveFamily::SpacelikeOnH21),
                                          {0.0, 1.0}, 1e-3);
  const FrenetState e = h21.samples().back();
  CHECK(e.v == doctest::Approx(1.0));
  CHECK(std::abs(e.l[0] - 1.1752011936) <= 1e-8);
  CHECK(std::abs(e.l[1]) <= 1e-8);
  CHECK(std::abs(e.l[2] - 1.5430806348) <= 1e-8);

  for (double k : curvature_estimate(s21)) CHECK(std::abs(k) <= 1e-6);
}

namespace {

void constant_round_trip(CurveFamily f, double reach) {
  CAPTURE(to_string(f));
  const FrameField field =
      integrate_frenet(f, CurvatureLaw::constant(0.8), standard_initial_frame(f), {-reach, reach}, 1e-3);
  double worst = 0.0;
  for (double k : curvature_estimate(field)) worst = std::max(worst, std::abs(k - 0.8));
  CHECK(worst <= 1e-6);
  double norm_err = 0.0;
  for (const FrenetState& s : field.samples()) {
    norm_err = std::max(norm_err, std::abs(inner(s.l, s.l) - frame_signs(f).l));
  }
  CHECK(norm_err <= 1e-8);
}

}  // namespace

TEST_CASE("constant curvature round trip") {
  constant_round_trip(CurveFamily::SpacelikeOnS21, 10.0);
  constant_round_trip(CurveFamily::SpacelikeOnH21, 10.0);
  // |l| grows like exp(1.28 |v|) here; beyond |v| = 6 the samples are roundoff limited.
  constant_round_trip(CurveFamily::TimelikeOnS21, 6.0);
}

TEST_CASE("timelike round trip out to |v| = 10" * doctest::may_fail()) {
  constant_round_trip(CurveFamily::TimelikeOnS21, 10.0);
}

TEST_CASE("variable curvature round trip") {
  const CurvatureLaw law([](double v) { return 0.3 + 0.1 * std::sin(v); });
  const FrameField field = integrate_frenet(CurveFamily::SpacelikeOnS21, law,
                                            standard_initial_frame(CurveFamily::SpacelikeOnS21),
                                            {0.0, 5.0}, 1e-3);
  const std::vector<double> est = curvature_estimate(field);
  double worst = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    worst = std::max(worst, std::abs(est[i] - law(field.samples()[i].v)));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("latitude circle has curvature tanh theta") {
  const double theta = 0.5;
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  const double h = 1e-3;
  std::vector<FrenetState> samples;
  std::vector<double> kappa;
  for (int i = 0; i <= 1000; ++i) {
    const double v = i * h;
    const double s = v / ch;
    samples.push_back({v, Vec3{ch * std::cos(s), ch * std::sin(s), sh}, Vec3{-std::sin(s), std::cos(s), 0.0},
                       Vec3{sh * std::cos(s), sh * std::sin(s), ch}});
    kappa.push_back(-std::tanh(theta));
  }
  const FrameField field(CurveFamily::SpacelikeOnS21, samples, kappa);
  CHECK(gram_error(CurveFamily::SpacelikeOnS21, samples[300]) <= 1e-14);
  for (double k : curvature_estimate(field)) CHECK(std::abs(std::abs(k) - 0.462117157260) <= 1e-6);
}

TEST_CASE("pre-correction Gram drift is fifth order per step") {
  for (CurveFamily f : kFamilies) {
    CAPTURE(to_string(f));
    const auto law = CurvatureLaw::constant(0.8);
    const double coarse =
        integrate_frenet(f, law, standard_initial_frame(f), {0.0, 0.4}, 0.2).max_gram_drift();
    const double fine =
        integrate_frenet(f, law, standard_initial_frame(f), {0.0, 0.4}, 0.1).max_gram_drift();
    CHECK(coarse > 0.0);
    CHECK(coarse / fine >= 16.0);
  }
}

TEST_CASE("integration commutes with isometries") {
  // Rotation in (x1, x2) followed by a boost in (x1, x3).
  const double phi = 0.7;
  const double eta = 0.4;
  auto iso = [&](const Vec3& x) {
    const double r1 = std::cos(phi) * x[0] - std::sin(phi) * x[1];
    const double r2 = std::sin(phi) * x[0] + std::cos(phi) * x[1];
    return Vec3{std::cosh(eta) * r1 + std::sinh(eta) * x[2], r2, std::sinh(eta) * r1 + std::cosh(eta) * x[2]};
  };
  for (CurveFamily f : kFamilies) {
    CAPTURE(to_string(f));
    const FrenetState s0 = standard_initial_frame(f);
    const FrenetState s1{0.0, iso(s0.l), iso(s0.t), iso(s0.n)};
    const CurvatureLaw law([](double v) { return 0.5 + 0.2 * std::cos(v); });
    const FrameField a = integrate_frenet(f, law, s0, {0.0, 2.0}, 1e-3);
    const FrameField b = integrate_frenet(f, law, s1, {0.0, 2.0}, 1e-3);
    for (double v : {0.1, 0.5, 0.9, 1.3, 1.9}) {
      const Vec3 d = iso(a.state_at(v).l) - b.state_at(v).l;
      CHECK(max_abs(d) <= 1e-8);
    }
  }
}

TEST_CASE("frame field errors") {
  const CurvatureLaw bad([](double v) { return v > 0.5 ? std::nan("") : 0.0; });
  CHECK_THROWS_AS(integrate_frenet(CurveFamily::SpacelikeOnS21, bad,
                                   standard_initial_frame(CurveFamily::SpacelikeOnS21), {0.0, 1.0}, 1e-2),
                  IntegrationError);
  FrenetState skew = standard_initial_frame(CurveFamily::SpacelikeOnS21);
  skew.t = Vec3{0.1, 1, 0};
  CHECK_THROWS_AS(integrate_frenet(CurveFamily::SpacelikeOnS21, CurvatureLaw::constant(0.0), skew,
                                   {0.0, 1.0}, 1e-2),
                  UsageError);

  const FrameField field = integrate_frenet(CurveFamily::SpacelikeOnS21, CurvatureLaw::constant(0.2),
                                            standard_initial_frame(CurveFamily::SpacelikeOnS21),
                                            {0.0, 1.0}, 1e-2);
  CHECK_THROWS_AS(field.state_at(1.5), DomainError);
  CHECK_NOTHROW(field.state_at(1.0));

  std::vector<FrenetState> two(field.samples().begin(), field.samples().begin() + 2);
  const FrameField tiny(CurveFamily::SpacelikeOnS21, two, {0.2, 0.2});
  CHECK_THROWS_AS(curvature_estimate(tiny), UsageError);
}

TEST_CASE("frame growth rate") {
  CHECK(frame_growth_rate(CurveFamily::SpacelikeOnS21, 0.5) == 0.0);
  CHECK(frame_growth_rate(CurveFamily::SpacelikeOnS21, 2.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(frame_growth_rate(CurveFamily::TimelikeOnS21, 0.0) == doctest::Approx(1.0));
  CHECK(frame_growth_rate(CurveFamily::SpacelikeOnH21, 0.0) == doctest::Approx(1.0));
  CHECK(frame_growth_rate(CurveFamily::SpacelikeOnH21, 1.5) == 0.0);
}
