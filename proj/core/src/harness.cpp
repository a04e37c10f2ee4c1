#include "meridian/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "meridian/errors.hpp"
#include "meridian/numeric_oracle.hpp"

#ifndef MERIDIAN_VERSION_STRING
#define MERIDIAN_VERSION_STRING "0.0.0"
#endif

namespace meridian {

using Json = nlohmann::ordered_json;

std::string_view tool_version() { return MERIDIAN_VERSION_STRING; }

namespace {

constexpr struct {
  Theorem theorem;
  std::string_view name;
} kTheoremNames[] = {
    {Theorem::MinimalA, "minimal-a"},   {Theorem::MinimalB, "minimal-b"},
    {Theorem::MinimalC, "minimal-c"},   {Theorem::QuasiA, "quasi-a"},
    {Theorem::QuasiB, "quasi-b"},       {Theorem::QuasiC, "quasi-c"},
    {Theorem::CmcA, "cmc-a"},           {Theorem::CmcB, "cmc-b"},
    {Theorem::CmcC, "cmc-c"},           {Theorem::CongruenceTilde, "congruence"},
    {Theorem::NegativeControl, "negative-control"},
};

bool is_minimal(Theorem t) {
  return t == Theorem::MinimalA || t == Theorem::MinimalB || t == Theorem::MinimalC;
}
bool is_quasi(Theorem t) { return t == Theorem::QuasiA || t == Theorem::QuasiB || t == Theorem::QuasiC; }
bool is_cmc(Theorem t) { return t == Theorem::CmcA || t == Theorem::CmcB || t == Theorem::CmcC; }

TildeKind tilde_for(SurfaceFamily f) {
  switch (f) {
    case SurfaceFamily::Mpp: return TildeKind::TildePrime;
    case SurfaceFamily::Mb: return TildeKind::TildeDoubleA;
    case SurfaceFamily::Ma: return TildeKind::TildeDoubleB;
  }
  return TildeKind::TildePrime;
}

}  // namespace

std::string_view to_string(Theorem t) {
  for (const auto& e : kTheoremNames) {
    if (e.theorem == t) return e.name;
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  for (const auto& e : kTheoremNames) {
    if (e.name == name) return e.theorem;
  }
  throw UsageError("unknown theorem \"" + std::string(name) + "\"");
}

SurfaceFamily parse_family(std::string_view name) {
  if (name == "ma") return SurfaceFamily::Ma;
  if (name == "mb") return SurfaceFamily::Mb;
  if (name == "mpp") return SurfaceFamily::Mpp;
  throw UsageError("unknown surface family \"" + std::string(name) + "\" (expected ma, mb or mpp)");
}

SurfaceFamily theorem_family(const CaseSpec& spec) {
  switch (spec.theorem) {
    case Theorem::MinimalA:
    case Theorem::QuasiA:
    case Theorem::CmcA:
    case Theorem::NegativeControl: return SurfaceFamily::Ma;
    case Theorem::MinimalB:
    case Theorem::QuasiB:
    case Theorem::CmcB: return SurfaceFamily::Mb;
    case Theorem::MinimalC:
    case Theorem::QuasiC:
    case Theorem::CmcC: return SurfaceFamily::Mpp;
    case Theorem::CongruenceTilde: return spec.family;
  }
  return SurfaceFamily::Ma;
}

double default_kappa(const CaseSpec& spec) {
  if (is_quasi(spec.theorem) || is_cmc(spec.theorem)) return spec.params.a;
  if (spec.theorem == Theorem::CongruenceTilde) return 0.5;
  return 0.0;
}

Interval effective_v_span(const CaseSpec& spec) {
  if (spec.v_span) return *spec.v_span;
  const double rate = frame_growth_rate(curve_family(theorem_family(spec)), spec.kappa.value_or(default_kappa(spec)));
  return {0.0, rate > 0.0 ? std::min(2.0, 1.4 / rate) : 2.0};
}

double norm2_target(const CaseSpec& spec) { return is_cmc(spec.theorem) ? spec.params.c : 0.0; }

double norm2_tolerance(const Tolerances& tol, double target) {
  return std::abs(target) <= 1.0 ? tol.norm2 : tol.norm2_relative * std::abs(target);
}

CaseSpec default_case(Theorem theorem) {
  CaseSpec s;
  s.theorem = theorem;
  ProfileParams& p = s.params;
  switch (theorem) {
    case Theorem::MinimalA:
      p.a = 0; p.b = 1; s.u_span = {-0.8, 0.8};
      break;
    case Theorem::MinimalB:
      p.a = 2; p.b = 1; s.u_span = {0.0, 1.0};
      break;
    case Theorem::MinimalC:
      p.a = 0; p.b = 1; s.u_span = {-1.0, 1.0};
      break;
    case Theorem::QuasiA:
      p.a = 1; p.c = 2; s.f0 = 3; s.u_span = {0.0, 1.0};
      break;
    case Theorem::QuasiB:
      p.a = 1; p.c = 2; s.f0 = 1; s.u_span = {0.0, 1.0};
      break;
    case Theorem::QuasiC:
      p.a = 1; p.c = 2; p.signs = {1, -1}; s.f0 = 3; s.u_span = {0.0, 1.0};
      break;
    case Theorem::CmcA:
      p.a = 1; p.b = 0; p.c = 0.5; s.f0 = 1; s.u_span = {0.0, 1.0};
      break;
    case Theorem::CmcB:
      p.a = 1; p.b = 1; p.c = -0.5; s.f0 = 1; s.u_span = {0.0, 1.0};
      break;
    case Theorem::CmcC:
      p.a = 1; p.b = 1; p.c = -0.5; p.signs = {1, -1}; s.f0 = 1; s.u_span = {0.0, 0.5};
      break;
    case Theorem::CongruenceTilde:
      s.family = SurfaceFamily::Mpp; p.a = 0; p.b = 1; s.u_span = {-1.0, 1.0}; s.nu = 11; s.nv = 11;
      break;
    case Theorem::NegativeControl:
      s.u_span = {-0.8, 0.8};
      break;
  }
  return s;
}

void validate(const CaseSpec& s) {
  if (s.nu < 5 || s.nv < 5) throw UsageError("grid must be at least 5x5");
  const Tolerances& t = s.tol;
  for (double x : {t.H, t.norm2, t.norm2_relative, t.frame, t.profile, t.analytic_minimal}) {
    if (!(x > 0.0)) throw UsageError("tolerances must be positive");
  }
  if (!(s.step > 0.0) || !(s.curve_step > 0.0)) throw UsageError("steps must be positive");
  if (!(s.u_span.hi > s.u_span.lo)) throw UsageError("u span must satisfy u-min < u-max");
  if (s.v_span && !(s.v_span->hi > s.v_span->lo)) throw UsageError("v span must satisfy v-min < v-max");
  for (int sg : {s.params.signs.outer, s.params.signs.inner}) {
    if (sg != 1 && sg != -1) throw UsageError("branch signs must be +1 or -1");
  }
}

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::LessEqual: return "<=";
    case Comparator::GreaterEqual: return ">=";
    case Comparator::Equal: return "==";
    case Comparator::Less: return "<";
  }
  return "?";
}

Comparator parse_comparator(std::string_view text) {
  for (Comparator c : {Comparator::LessEqual, Comparator::GreaterEqual, Comparator::Equal, Comparator::Less}) {
    if (to_string(c) == text) return c;
  }
  throw UsageError("unknown comparator \"" + std::string(text) + "\"");
}

bool compare(double value, Comparator c, double threshold) {
  switch (c) {
    case Comparator::LessEqual: return value <= threshold;
    case Comparator::GreaterEqual: return value >= threshold;
    case Comparator::Equal: return value == threshold;
    case Comparator::Less: return value < threshold;
  }
  return false;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::DomainTruncated: return "domain-truncated";
  }
  return "unknown";
}

const Check* VerificationReport::find(std::string_view name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<double> VerificationReport::statistic(std::string_view name) const {
  for (const auto& [k, v] : statistics) {
    if (k == name) return v;
  }
  return std::nullopt;
}

UnitRng::UnitRng(std::uint64_t seed) : engine_(seed) {}

double UnitRng::next() {
  // The engine's output sequence is fixed by the standard; the library
  // distributions are not, so the mapping to [0, 1) is done here.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Building

BuiltCase build_case_surface(const CaseSpec& spec) {
  validate(spec);
  const SurfaceFamily fam = theorem_family(spec);
  const ProfileFamily pf = profile_family(fam);
  const CurveFamily cf = curve_family(fam);
  const double kappa = spec.kappa.value_or(default_kappa(spec));

  const Interval v_span = effective_v_span(spec);
  FrenetState init = standard_initial_frame(cf);
  init.v = std::clamp(0.0, v_span.lo, v_span.hi);
  FrameField curve = integrate_frenet(cf, CurvatureLaw::constant(kappa), init, v_span, spec.curve_step);

  const Theorem t = spec.theorem;
  if (is_minimal(t) || t == Theorem::CongruenceTilde) {
    const auto n = static_cast<std::size_t>(std::llround(spec.u_span.width() / spec.step)) + 1;
    return {assemble(fam, std::move(curve), minimal_profile(pf, spec.params, spec.u_span, std::max<std::size_t>(n, 2))),
            false};
  }
  if (t == Theorem::NegativeControl) {
    // f = u + 2 with g chosen to satisfy the unit-speed constraint: not minimal.
    const auto n = static_cast<std::size_t>(std::llround(spec.u_span.width() / spec.step)) + 1;
    const double du = spec.u_span.width() / static_cast<double>(n - 1);
    MeridianProfile::Samples smp;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = spec.u_span.lo + du * static_cast<double>(i);
      smp.f.push_back(u + 2.0);
      smp.fp.push_back(1.0);
      smp.fpp.push_back(0.0);
      smp.g.push_back(std::sqrt(2.0) * u + spec.params.c0);
      smp.gp.push_back(std::sqrt(2.0));
    }
    MeridianProfile prof(pf, Provenance::UserSupplied, spec.params, spec.u_span.lo, du, std::move(smp));
    return {assemble(fam, std::move(curve), std::move(prof)), false};
  }
  const PhiKind kind = is_quasi(t) ? PhiKind::Quasi : PhiKind::Cmc;
  const PhiFunction phi = phi_closed_form(kind, pf, spec.params);
  MeridianProfile prof = integrate_profile(phi, spec.f0, spec.u_span, spec.step, spec.params.c0);
  const bool truncated = prof.truncated();
  return {assemble(fam, std::move(curve), std::move(prof)), truncated};
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct PointEval {
  double h1 = 0, h2 = 0, an_norm2 = 0;
  double fd_norm2 = 0, fd_Hmax = 0, gap = 0, det = 0, hxy = 0, orth = 0;
  CausalCharacter fd_character = CausalCharacter::Spacelike;
  // congruence only
  double tilde_display = 0, tilde_norm2 = 0;
  bool tangent_flip = true;
};

PointEval evaluate_point(const MeridianSurface& s, double u, double v, bool congruence) {
  PointEval p;
  const MeanCurvatureDecomp an = analytic_H(s, u, v);
  const Immersion z = [&s](double uu, double vv) { return s(uu, vv); };
  const FundamentalForms ff = fundamental_forms(fd_jet(z, u, v));
  const SurfaceFrame fr = analytic_frames(s, u, v);
  const auto signs = surface_frame_signs(s.family());
  const auto frame = fr.as_array();

  p.h1 = an.h1;
  p.h2 = an.h2;
  p.an_norm2 = an.norm2;
  p.fd_norm2 = ff.norm2H;
  p.fd_Hmax = max_abs(ff.H);
  p.gap = max_abs(ff.H - an.H);
  p.det = ff.det;
  p.hxy = max_abs(ff.h_uv.vec) / s.profile().at(u).f;
  p.orth = orthonormality_deviation(std::span<const Vec4>(frame), std::span<const int>(signs));
  p.fd_character = causal_character(ff.H);

  if (congruence) {
    const TildeKind kind = tilde_for(s.family());
    p.tilde_display = max_abs(transform_T(s(u, v)) - tilde_parametrization(kind, s, u, v));
    const Immersion tz = [&s](double uu, double vv) { return transform_T(s(uu, vv)); };
    p.tilde_norm2 = mean_curvature_fd(tz, u, v).norm2;
    for (const Vec4& w : {fr.X, fr.Y}) {
      const CausalCharacter before = causal_character(w);
      const CausalCharacter after = causal_character(transform_T(w));
      const bool flipped = (before == CausalCharacter::Spacelike && after == CausalCharacter::Timelike) ||
                           (before == CausalCharacter::Timelike && after == CausalCharacter::Spacelike);
      p.tangent_flip = p.tangent_flip && flipped;
    }
  }
  return p;
}

double t_anti_isometry_defect() {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Vec4 x = Vec4::basis(i);
      const Vec4 y = Vec4::basis(j);
      worst = std::max(worst, std::abs(inner(transform_T(x), transform_T(y)) + inner(x, y)));
    }
  }
  return worst;
}

}  // namespace

VerificationReport verify_case(const CaseSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.spec = spec;
  BuiltCase built = build_case_surface(spec);
  const MeridianSurface& s = built.surface;
  const Theorem th = spec.theorem;
  const bool congruence = th == Theorem::CongruenceTilde;

  if (built.truncated) {
    r.reached_u_max = s.profile().u_max();
    std::ostringstream w;
    w.precision(12);
    w << "profile left the admissible domain of phi; integrated u-span reached " << s.profile().u_max()
      << " of " << spec.u_span.hi;
    r.warnings.push_back(w.str());
  }

  const Interval us = s.u_span();
  const Interval vs = s.v_span();
  const double fd_room = 4.0 * default_fd_step(std::max(std::abs(us.lo), std::abs(us.hi)),
                                               std::max(std::abs(vs.lo), std::abs(vs.hi)));
  const double mu = std::max(0.01 * us.width(), fd_room);
  const double mv = std::max(0.01 * vs.width(), fd_room);
  if (!(us.width() > 2 * mu) || !(vs.width() > 2 * mv)) {
    if (built.truncated) {
      r.status = Status::DomainTruncated;
      r.warnings.push_back("reached span too short to evaluate any checks");
      r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
    throw DomainError("surface parameter domain too small for finite differences");
  }
  const SurfaceGrid grid{spec.nu, spec.nv, {us.lo + mu, us.hi - mu}, {vs.lo + mv, vs.hi - mv}};

  // Grid sweep.
  std::vector<PointEval> evals(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    evals[k] = evaluate_point(s, grid.u_at(k / grid.nv), grid.v_at(k % grid.nv), congruence);
  });

  // Random interior points.
  UnitRng rng(spec.seed);
  std::vector<std::pair<double, double>> rpts;
  for (std::size_t k = 0; k < spec.random_points; ++k) {
    const double u = rng.uniform(grid.u_span.lo, grid.u_span.hi);
    const double v = rng.uniform(grid.v_span.lo, grid.v_span.hi);
    rpts.emplace_back(u, v);
  }
  std::vector<double> frame_res(rpts.size());
  std::vector<PointEval> revals(rpts.size());
  parallel_for(rpts.size(), [&](std::size_t k) {
    double m = 0.0;
    for (const NamedResidual& nr : frame_equation_residuals(s, rpts[k].first, rpts[k].second)) {
      m = std::max(m, nr.value);
    }
    frame_res[k] = m;
    revals[k] = evaluate_point(s, rpts[k].first, rpts[k].second, false);
  });

  const double target = norm2_target(spec);
  const double inf = std::numeric_limits<double>::infinity();
  double max_h1 = 0, max_h2 = 0, max_h = 0, min_h = inf, max_fd = 0, min_fd = inf;
  double max_fd_norm2_gap = 0, max_an_norm2_gap = 0, max_gap = 0, max_det = -inf, max_hxy = 0, max_orth = 0;
  double max_display = 0, max_negation = 0, max_src_norm2 = 0;
  int causal_mismatch = 0, flip_mismatch = 0;
  const CausalCharacter expected_char = target < 0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike;
  for (const PointEval& p : evals) {
    max_h1 = std::max(max_h1, std::abs(p.h1));
    max_h2 = std::max(max_h2, std::abs(p.h2));
    const double hn = std::hypot(p.h1, p.h2);
    max_h = std::max(max_h, hn);
    min_h = std::min(min_h, hn);
    max_fd = std::max(max_fd, p.fd_Hmax);
    min_fd = std::min(min_fd, p.fd_Hmax);
    max_fd_norm2_gap = std::max(max_fd_norm2_gap, std::abs(p.fd_norm2 - target));
    max_an_norm2_gap = std::max(max_an_norm2_gap, std::abs(p.an_norm2 - target));
    max_gap = std::max(max_gap, p.gap);
    max_det = std::max(max_det, p.det);
    max_hxy = std::max(max_hxy, p.hxy);
    max_orth = std::max(max_orth, p.orth);
    if (p.fd_character != expected_char) ++causal_mismatch;
    if (congruence) {
      max_display = std::max(max_display, p.tilde_display);
      max_negation = std::max(max_negation, std::abs(p.tilde_norm2 + p.fd_norm2));
      max_src_norm2 = std::max(max_src_norm2, std::abs(p.fd_norm2));
      if (!p.tangent_flip) ++flip_mismatch;
    }
  }
  for (const PointEval& p : revals) {
    max_gap = std::max(max_gap, p.gap);
    max_hxy = std::max(max_hxy, p.hxy);
  }
  double max_frame = 0;
  for (double x : frame_res) max_frame = std::max(max_frame, x);

  ResidualKind rk = ResidualKind::Minimal;
  if (is_quasi(th)) rk = ResidualKind::Quasi;
  if (is_cmc(th)) rk = ResidualKind::Cmc;
  const ProfileResiduals pres = profile_residuals(s.profile(), rk, spec.params);
  if (pres.warning) r.warnings.push_back(*pres.warning);

  const SampledSurface sampled = sample_surface(s, grid);
  const AffineRank rank = affine_rank(sampled.points, 1e-8);

  auto add = [&](std::string name, double value, Comparator c, double thr) {
    r.checks.push_back({std::move(name), value, thr, c, compare(value, c, thr)});
  };
  const Tolerances& tol = spec.tol;
  const double tol_n2 = norm2_tolerance(tol, target);

  if (is_minimal(th) || th == Theorem::NegativeControl) {
    add("analytic_h_max", std::max(max_h1, max_h2), Comparator::LessEqual, tol.analytic_minimal);
    add("fd_H_max", max_fd, Comparator::LessEqual, tol.H);
    add("profile_governing", pres.max_governing(), Comparator::LessEqual, tol.analytic_minimal);
    add("affine_rank", rank.rank, Comparator::Equal, 3);
    add("affine_residual", rank.residual, Comparator::LessEqual, 1e-8);
  } else if (is_quasi(th)) {
    add("fd_norm2_abs", max_fd_norm2_gap, Comparator::LessEqual, tol_n2);
    add("analytic_norm2_abs", max_an_norm2_gap, Comparator::LessEqual, tol.profile);
    add("fd_H_min", min_fd, Comparator::GreaterEqual, 1e-3);
    add("analytic_h_min", min_h, Comparator::GreaterEqual, 1e-3);
    add("profile_governing", pres.max_governing(), Comparator::LessEqual, tol.profile);
  } else if (is_cmc(th)) {
    add("fd_norm2_gap", max_fd_norm2_gap, Comparator::LessEqual, tol_n2);
    add("analytic_norm2_gap", max_an_norm2_gap, Comparator::LessEqual, tol_n2);
    add("H_causal_mismatch", causal_mismatch, Comparator::Equal, 0);
    add("profile_governing", pres.max_governing(), Comparator::LessEqual, tol.profile);
  } else {
    add("tilde_display_gap", max_display, Comparator::LessEqual, 1e-10);
    add("T_anti_isometry", t_anti_isometry_defect(), Comparator::Equal, 0);
    add("tilde_norm2_negation", max_negation, Comparator::LessEqual, norm2_tolerance(tol, max_src_norm2));
    add("tangent_causal_flip_mismatch", flip_mismatch, Comparator::Equal, 0);
  }
  add("oracle_gap", max_gap, Comparator::LessEqual, tol.H);
  add("frame_orthonormality", max_orth, Comparator::LessEqual, 1e-8);
  add("frame_equations", max_frame, Comparator::LessEqual, tol.frame);
  add("h_XY", max_hxy, Comparator::LessEqual, tol.frame);
  add("lorentzian_max_det", max_det, Comparator::Less, 0.0);
  add("profile_constraint", pres.max_constraint(), Comparator::LessEqual, tol.profile);

  r.statistics = {
      {"norm2_target", target},
      {"max_abs_h1", max_h1},
      {"max_abs_h2", max_h2},
      {"min_h_norm", min_h},
      {"max_h_norm", max_h},
      {"max_H_fd", max_fd},
      {"min_H_fd", min_fd},
      {"max_norm2_fd_gap", max_fd_norm2_gap},
      {"max_norm2_analytic_gap", max_an_norm2_gap},
      {"max_oracle_gap", max_gap},
      {"max_frame_residual", max_frame},
      {"max_governing_residual", pres.max_governing()},
      {"max_constraint_residual", pres.max_constraint()},
      {"affine_rank", static_cast<double>(rank.rank)},
      {"affine_residual", rank.residual},
      {"curve_gram_drift", s.curve().max_gram_drift()},
      {"H_causal_mismatch", static_cast<double>(causal_mismatch)},
      {"grid_points", static_cast<double>(grid.size())},
  };

  r.status = recompute_status(r);
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Status recompute_status(const VerificationReport& report) {
  if (report.reached_u_max) return Status::DomainTruncated;
  for (const Check& c : report.checks) {
    if (!compare(c.value, c.comparator, c.threshold)) return Status::Fail;
  }
  return report.checks.empty() ? Status::Fail : Status::Pass;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json case_json(const CaseSpec& s) {
  Json j;
  j["theorem"] = to_string(s.theorem);
  j["family"] = to_string(theorem_family(s));
  j["params"] = {{"a", s.params.a},
                 {"b", s.params.b},
                 {"c", s.params.c},
                 {"c0", s.params.c0},
                 {"branch_signs", s.params.signs.str()}};
  j["kappa"] = s.kappa.value_or(default_kappa(s));
  j["f0"] = s.f0;
  j["grid"] = {{"nu", s.nu},
               {"nv", s.nv},
               {"u_span", {s.u_span.lo, s.u_span.hi}},
               {"v_span", s.v_span ? Json{s.v_span->lo, s.v_span->hi} : Json(nullptr)}};
  j["step"] = s.step;
  j["curve_step"] = s.curve_step;
  j["tolerances"] = {{"H", s.tol.H},
                     {"norm2", s.tol.norm2},
                     {"norm2_relative", s.tol.norm2_relative},
                     {"frame", s.tol.frame},
                     {"profile", s.tol.profile},
                     {"analytic_minimal", s.tol.analytic_minimal}};
  j["seed"] = s.seed;
  j["random_points"] = s.random_points;
  return j;
}

template <class T>
void read_opt(const Json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

Interval read_span(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw UsageError("spans must be [lo, hi] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

CaseSpec case_from(const Json& j) {
  if (!j.is_object()) throw UsageError("case JSON must be an object");
  if (!j.contains("theorem")) throw UsageError("case JSON needs a \"theorem\" field");
  CaseSpec s = default_case(parse_theorem(j.at("theorem").get<std::string>()));
  if (j.contains("family")) {
    const SurfaceFamily f = parse_family(j.at("family").get<std::string>());
    if (s.theorem == Theorem::CongruenceTilde) {
      s.family = f;
    } else if (f != theorem_family(s)) {
      throw UsageError("family " + std::string(to_string(f)) + " does not match theorem " +
                       std::string(to_string(s.theorem)));
    }
  }
  if (j.contains("params")) {
    const Json& p = j.at("params");
    read_opt(p, "a", s.params.a);
    read_opt(p, "b", s.params.b);
    read_opt(p, "c", s.params.c);
    read_opt(p, "c0", s.params.c0);
    if (p.contains("branch_signs")) s.params.signs = BranchSigns::parse(p.at("branch_signs").get<std::string>());
  }
  if (j.contains("kappa") && !j.at("kappa").is_null()) s.kappa = j.at("kappa").get<double>();
  read_opt(j, "f0", s.f0);
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    read_opt(g, "nu", s.nu);
    read_opt(g, "nv", s.nv);
    if (g.contains("u_span")) s.u_span = read_span(g.at("u_span"));
    if (g.contains("v_span") && !g.at("v_span").is_null()) s.v_span = read_span(g.at("v_span"));
  }
  read_opt(j, "step", s.step);
  read_opt(j, "curve_step", s.curve_step);
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    read_opt(t, "H", s.tol.H);
    read_opt(t, "norm2", s.tol.norm2);
    read_opt(t, "norm2_relative", s.tol.norm2_relative);
    read_opt(t, "frame", s.tol.frame);
    read_opt(t, "profile", s.tol.profile);
    read_opt(t, "analytic_minimal", s.tol.analytic_minimal);
  }
  read_opt(j, "seed", s.seed);
  read_opt(j, "random_points", s.random_points);
  validate(s);
  return s;
}

Json report_json(const VerificationReport& r, bool include_timing) {
  Json j;
  j["schema"] = 1;
  j["tool_version"] = tool_version();
  j["case"] = case_json(r.spec);
  j["status"] = to_string(r.status);
  Json checks = Json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"comparator", to_string(c.comparator)},
                      {"passed", c.passed}});
  }
  j["checks"] = std::move(checks);
  Json stats = Json::object();
  for (const auto& [k, v] : r.statistics) stats[k] = v;
  j["statistics"] = std::move(stats);
  j["warnings"] = r.warnings;
  if (r.reached_u_max) j["reached_u_max"] = *r.reached_u_max;
  if (include_timing) j["timing"] = {{"runtime_seconds", r.runtime_seconds}};
  return j;
}

}  // namespace

std::string case_to_json(const CaseSpec& spec) { return case_json(spec).dump(2); }

CaseSpec case_from_json(std::string_view text) {
  try {
    return case_from(Json::parse(text));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("invalid case JSON: ") + e.what());
  }
}

std::string report_to_json(const VerificationReport& report, bool include_timing) {
  return report_json(report, include_timing).dump(2) + "\n";
}

Status recompute_status_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.contains("reached_u_max")) return Status::DomainTruncated;
    const Json& checks = j.at("checks");
    if (checks.empty()) return Status::Fail;
    for (const Json& c : checks) {
      const Comparator cmp = parse_comparator(c.at("comparator").get<std::string>());
      if (!compare(c.at("value").get<double>(), cmp, c.at("threshold").get<double>())) return Status::Fail;
    }
    return Status::Pass;
  } catch (const Json::exception& e) {
    throw UsageError(std::string("invalid report JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Suite

bool SuiteEntry::ok() const {
  if (!report) return false;
  return report->passed() == expect_pass && (expect_pass || report->status == Status::Fail);
}

bool SuiteResult::ok() const {
  if (!corollary_ok) return false;
  return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.ok(); });
}

std::vector<SuiteEntry> theorem_suite() {
  std::vector<SuiteEntry> out;
  auto push = [&](std::string label, CaseSpec spec, bool expect = true) {
    out.push_back({std::move(label), std::move(spec), expect, std::nullopt, {}});
  };
  for (Theorem t : {Theorem::MinimalA, Theorem::MinimalB, Theorem::MinimalC, Theorem::QuasiA, Theorem::QuasiB,
                    Theorem::QuasiC}) {
    push(std::string(to_string(t)), default_case(t));
  }

  // CMC over both signs of c.
  CaseSpec ca = default_case(Theorem::CmcA);
  push("cmc-a c=+0.5", ca);
  ca.params = {3.0, 1.0, -1.0, 0.0, {-1, -1}};
  ca.f0 = 1.0;
  ca.u_span = {0.0, 0.5};
  push("cmc-a c=-1", ca);

  CaseSpec cb = default_case(Theorem::CmcB);
  push("cmc-b c=-0.5", cb);
  cb.params = {2.0, -1.0, 0.5, 0.0, {1, 1}};
  cb.f0 = 0.75;
  cb.u_span = {0.0, 0.5};
  push("cmc-b c=+0.5", cb);

  CaseSpec cc = default_case(Theorem::CmcC);
  push("cmc-c c=-0.5", cc);
  cc.params = {2.0, 1.0, 0.5, 0.0, {1, -1}};
  cc.f0 = 1.0;
  cc.u_span = {0.0, 0.5};
  push("cmc-c c=+0.5", cc);

  for (SurfaceFamily f : {SurfaceFamily::Mpp, SurfaceFamily::Mb, SurfaceFamily::Ma}) {
    CaseSpec c = default_case(Theorem::CongruenceTilde);
    c.family = f;
    const CaseSpec minimal = default_case(f == SurfaceFamily::Ma   ? Theorem::MinimalA
                                          : f == SurfaceFamily::Mb ? Theorem::MinimalB
                                                                   : Theorem::MinimalC);
    c.params = minimal.params;
    c.u_span = minimal.u_span;
    push("congruence " + std::string(to_string(f)), c);
  }

  push("negative-control", default_case(Theorem::NegativeControl), false);
  CaseSpec wrong = default_case(Theorem::QuasiA);
  wrong.kappa = wrong.params.a + 0.5;
  push("negative-control quasi-a kappa=a+0.5", wrong, false);
  return out;
}

SuiteResult run_suite(std::vector<SuiteEntry> entries) {
  SuiteResult res;
  bool minimal_rank3 = true;
  bool quasi_rank4 = false;
  for (SuiteEntry& e : entries) {
    try {
      e.report = verify_case(e.spec);
    } catch (const Error& ex) {
      e.error = ex.what();
      continue;
    }
    const double rank = e.report->statistic("affine_rank").value_or(-1);
    if (is_minimal(e.spec.theorem)) minimal_rank3 = minimal_rank3 && rank == 3;
    if (is_quasi(e.spec.theorem) && e.expect_pass && rank == 4) quasi_rank4 = true;
  }
  res.corollary_ok = minimal_rank3 && quasi_rank4;
  res.entries = std::move(entries);
  return res;
}

std::string suite_to_json(const SuiteResult& result, bool include_timing) {
  Json j;
  j["schema"] = 1;
  j["tool_version"] = tool_version();
  Json cases = Json::array();
  std::size_t ok = 0;
  for (const SuiteEntry& e : result.entries) {
    Json c;
    c["label"] = e.label;
    c["expect"] = e.expect_pass ? "pass" : "fail";
    c["ok"] = e.ok();
    if (e.report) {
      c["report"] = report_json(*e.report, include_timing);
    } else {
      c["error"] = e.error;
    }
    if (e.ok()) ++ok;
    cases.push_back(std::move(c));
  }
  j["cases"] = std::move(cases);
  j["summary"] = {{"cases", result.entries.size()},
                  {"as_expected", ok},
                  {"corollary", result.corollary_ok},
                  {"ok", result.ok()}};
  return j.dump(2) + "\n";
}

}  // namespace meridian
