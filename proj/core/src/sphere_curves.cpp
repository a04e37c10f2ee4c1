#include "meridian/sphere_curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace meridian {

std::string_view to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::SpacelikeOnS21: return "spacelike-on-S21";
    case CurveFamily::TimelikeOnS21: return "timelike-on-S21";
    case CurveFamily::SpacelikeOnH21: return "spacelike-on-H21";
  }
  return "unknown";
}

FrameSigns frame_signs(CurveFamily family) {
  switch (family) {
    case CurveFamily::SpacelikeOnS21: return {1, 1, -1};
    case CurveFamily::TimelikeOnS21: return {1, -1, 1};
    case CurveFamily::SpacelikeOnH21: return {-1, 1, 1};
  }
  throw UsageError("unknown curve family");
}

FrenetDerivative frenet_derivative(CurveFamily family, double kappa, const FrenetState& s) {
  switch (family) {
    case CurveFamily::SpacelikeOnS21: return {s.t, -kappa * s.n - s.l, -kappa * s.t};
    case CurveFamily::TimelikeOnS21: return {s.t, kappa * s.n + s.l, kappa * s.t};
    case CurveFamily::SpacelikeOnH21: return {s.t, kappa * s.n + s.l, -kappa * s.t};
  }
  throw UsageError("unknown curve family");
}

namespace {

double gram_deviation(CurveFamily family, const FrenetState& s) {
  const std::array<Vec3, 3> frame{s.l, s.t, s.n};
  const auto signs = frame_signs(family).as_array();
  return orthonormality_deviation(std::span<const Vec3>(frame), signs);
}

FrenetState axpy(const FrenetState& s, double h, const FrenetDerivative& d) {
  FrenetState out = s;
  out.l += h * d.dl;
  out.t += h * d.dt;
  out.n += h * d.dn;
  return out;
}

void reorthonormalize(CurveFamily family, FrenetState& s) {
  std::array<Vec3, 3> frame{s.l, s.t, s.n};
  const auto got = indefinite_gram_schmidt(std::span<Vec3>(frame));
  const auto want = frame_signs(family).as_array();
  for (std::size_t k = 0; k < 3; ++k) {
    if (got[k] != want[k]) {
      std::ostringstream msg;
      msg << "Frenet frame changed causal character at v = " << s.v;
      throw DegeneracyError(msg.str());
    }
  }
  s.l = frame[0];
  s.t = frame[1];
  s.n = frame[2];
}

double checked_kappa(const CurvatureLaw& law, double v) {
  const double k = law(v);
  if (!std::isfinite(k)) {
    std::ostringstream msg;
    msg << "curvature law is not finite at v = " << v;
    throw IntegrationError(msg.str());
  }
  return k;
}

FrenetState rk4_step(CurveFamily family, const CurvatureLaw& law, const FrenetState& s, double h) {
  const double v = s.v;
  const double k1 = checked_kappa(law, v);
  const double k2 = checked_kappa(law, v + 0.5 * h);
  const double k4 = checked_kappa(law, v + h);

  const FrenetDerivative d1 = frenet_derivative(family, k1, s);
  const FrenetDerivative d2 = frenet_derivative(family, k2, axpy(s, 0.5 * h, d1));
  const FrenetDerivative d3 = frenet_derivative(family, k2, axpy(s, 0.5 * h, d2));
  const FrenetDerivative d4 = frenet_derivative(family, k4, axpy(s, h, d3));

  FrenetState out = s;
  out.v = v + h;
  out.l += (h / 6.0) * (d1.dl + 2.0 * d2.dl + 2.0 * d3.dl + d4.dl);
  out.t += (h / 6.0) * (d1.dt + 2.0 * d2.dt + 2.0 * d3.dt + d4.dt);
  out.n += (h / 6.0) * (d1.dn + 2.0 * d2.dn + 2.0 * d3.dn + d4.dn);
  return out;
}

}  // namespace

FrameField::FrameField(CurveFamily family, std::vector<FrenetState> samples,
                       std::vector<double> kappa, double max_gram_drift)
    : family_(family),
      samples_(std::move(samples)),
      kappa_(std::move(kappa)),
      max_gram_drift_(max_gram_drift) {
  if (samples_.size() < 2) throw UsageError("FrameField needs at least 2 samples");
  if (kappa_.size() != samples_.size()) {
    throw UsageError("FrameField: kappa and frame sample counts differ");
  }
  step_ = (samples_.back().v - samples_.front().v) / static_cast<double>(samples_.size() - 1);
  if (!(step_ > 0.0)) throw UsageError("FrameField: v-grid must be increasing");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double expected = samples_.front().v + static_cast<double>(i) * step_;
    if (std::abs(samples_[i].v - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw UsageError("FrameField: v-grid is not uniform");
    }
    if (!std::isfinite(kappa_[i])) throw UsageError("FrameField: non-finite curvature sample");
  }
}

GridCell FrameField::cell(double v) const {
  const GridCell c = locate(v, samples_.front().v, step_, samples_.size());
  if (c.index < 0) {
    std::ostringstream msg;
    msg << "v = " << v << " is outside the frame field [" << v_min() << ", " << v_max() << "]";
    throw DomainError(msg.str());
  }
  return c;
}

double frame_growth_rate(CurveFamily family, double kappa) {
  const double k2 = kappa * kappa;
  double mu = 0.0;
  switch (family) {
    case CurveFamily::SpacelikeOnS21: mu = k2 - 1.0; break;
    case CurveFamily::TimelikeOnS21: mu = k2 + 1.0; break;
    case CurveFamily::SpacelikeOnH21: mu = 1.0 - k2; break;
  }
  return std::sqrt(std::max(mu, 0.0));
}

FrenetState FrameField::state_at(double v) const {
  const GridCell c = cell(v);
  const auto i = static_cast<std::size_t>(c.index);
  const FrenetState& a = samples_[i];
  const FrenetState& b = samples_[i + 1];
  const FrenetDerivative da = frenet_derivative(family_, kappa_[i], a);
  const FrenetDerivative db = frenet_derivative(family_, kappa_[i + 1], b);
  const HermiteWeights w(c.s, step_);
  const QuinticHermite q(c.s, step_);
  FrenetState out;
  out.v = v;
  // l'' = t' is known exactly, so l gets the quintic interpolant.
  out.l = a.l;
  for (std::size_t k = 0; k < 3; ++k) {
    const double y[6] = {a.l[k], da.dl[k], da.dt[k], b.l[k], db.dl[k], db.dt[k]};
    out.l[k] = q.value(y);
  }
  out.t = w.value(a.t, da.dt, b.t, db.dt);
  out.n = w.value(a.n, da.dn, b.n, db.dn);
  return out;
}

double FrameField::kappa_at(double v) const {
  const GridCell c = cell(v);
  const auto i = static_cast<std::size_t>(c.index);
  return (1.0 - c.s) * kappa_[i] + c.s * kappa_[i + 1];
}

std::variant<Vec3, Vec4> chart(ChartKind kind, double w1, double w2) {
  if (kind == ChartKind::S21 || kind == ChartKind::H21) return chart3(kind, w1, w2);
  return chart4(kind, w1, w2);
}

Vec3 chart3(ChartKind kind, double w1, double w2) {
  switch (kind) {
    case ChartKind::S21:
      return {std::cosh(w1) * std::cos(w2), std::cosh(w1) * std::sin(w2), std::sinh(w1)};
    case ChartKind::H21:
      return {std::sinh(w1) * std::cos(w2), std::sinh(w1) * std::sin(w2), std::cosh(w1)};
    default:
      throw UsageError("chart3: tilde charts live in R^4, use chart4");
  }
}

Vec4 chart4(ChartKind kind, double w1, double w2) {
  switch (kind) {
    case ChartKind::S21Tilde:
      return {0.0, std::cosh(w1), std::sinh(w1) * std::cos(w2), std::sinh(w1) * std::sin(w2)};
    case ChartKind::H21Tilde:
      return {0.0, std::sinh(w1), std::cosh(w1) * std::cos(w2), std::cosh(w1) * std::sin(w2)};
    default:
      return embed(chart3(kind, w1, w2));
  }
}

std::pair<double, double> chart_parameters(ChartKind kind, const Vec3& p) {
  switch (kind) {
    case ChartKind::S21: return {std::asinh(p.x[2]), std::atan2(p.x[1], p.x[0])};
    case ChartKind::H21:
      if (p.x[2] < 1.0 - 1e-12) throw DomainError("chart_parameters: point is not on the upper sheet of H21");
      return {std::acosh(std::max(1.0, p.x[2])), std::atan2(p.x[1], p.x[0])};
    default:
      throw UsageError("chart_parameters: only S21 and H21 are invertible here");
  }
}

FrenetState standard_initial_frame(CurveFamily family) {
  const Vec3 e1{1, 0, 0};
  const Vec3 e2{0, 1, 0};
  const Vec3 e3{0, 0, 1};
  switch (family) {
    case CurveFamily::SpacelikeOnS21: return {0.0, e1, e2, e3};
    case CurveFamily::TimelikeOnS21: return {0.0, e1, e3, e2};
    case CurveFamily::SpacelikeOnH21: return {0.0, e3, e1, e2};
  }
  throw UsageError("unknown curve family");
}

FrameField integrate_frenet(CurveFamily family, const CurvatureLaw& law, const FrenetState& init,
                            Interval v_span, double step) {
  if (!(step > 0.0)) throw UsageError("integrate_frenet: step must be positive");
  if (!(v_span.lo <= init.v && init.v <= v_span.hi)) {
    throw UsageError("integrate_frenet: initial v must lie inside the v span");
  }
  for (const Vec3* w : {&init.l, &init.t, &init.n}) {
    if (w->space != Space3::E31) throw UsageError("integrate_frenet: frame must live in E^3_1");
  }
  const double init_dev = gram_deviation(family, init);
  if (init_dev > 1e-10) {
    throw UsageError("integrate_frenet: initial frame violates the family Gram matrix (deviation " +
                     std::to_string(init_dev) + ")");
  }

  const auto back = static_cast<std::size_t>(std::ceil((init.v - v_span.lo) / step - 1e-9));
  const auto fwd = static_cast<std::size_t>(std::ceil((v_span.hi - init.v) / step - 1e-9));
  std::vector<FrenetState> samples(back + fwd + 1);
  std::vector<double> kappa(samples.size());

  double drift = 0.0;
  samples[back] = init;
  kappa[back] = checked_kappa(law, init.v);

  auto advance = [&](std::size_t from, std::size_t to, double h) {
    FrenetState next = rk4_step(family, law, samples[from], h);
    next.v = init.v + (static_cast<double>(to) - static_cast<double>(back)) * step;
    drift = std::max(drift, gram_deviation(family, next));
    reorthonormalize(family, next);
    samples[to] = next;
    kappa[to] = checked_kappa(law, next.v);
  };
  for (std::size_t k = 0; k < fwd; ++k) advance(back + k, back + k + 1, step);
  for (std::size_t k = 0; k < back; ++k) advance(back - k, back - k - 1, -step);

  return FrameField(family, std::move(samples), std::move(kappa), drift);
}

std::vector<double> curvature_estimate(const FrameField& field) {
  const auto& s = field.samples();
  if (s.size() < 3) throw UsageError("curvature_estimate: need at least 3 samples");
  const double h = field.step();
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Vec3 dt;
    if (i == 0) {
      dt = (-3.0 * s[0].t + 4.0 * s[1].t - s[2].t) / (2.0 * h);
    } else if (i + 1 == s.size()) {
      dt = (3.0 * s[i].t - 4.0 * s[i - 1].t + s[i - 2].t) / (2.0 * h);
    } else {
      dt = (s[i + 1].t - s[i - 1].t) / (2.0 * h);
    }
    out[i] = inner(dt, s[i].n);
  }
  return out;
}

}  // namespace meridian
