#include "meridian/meridian_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "meridian/errors.hpp"

namespace meridian {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMinF = 1e-8;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

int sign_of(int s, const char* what) {
  if (s != 1 && s != -1) throw UsageError(std::string("branch sign ") + what + " must be +1 or -1");
  return s;
}

}  // namespace

std::string_view to_string(ProfileFamily f) {
  switch (f) {
    case ProfileFamily::Ma: return "ma";
    case ProfileFamily::Mb: return "mb";
    case ProfileFamily::Mpp: return "mpp";
  }
  return "unknown";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedFormMinimal: return "closed-form-minimal";
    case Provenance::OdeQuasiMinimal: return "ode-quasi-minimal";
    case Provenance::OdeCmc: return "ode-cmc";
    case Provenance::UserSupplied: return "user-supplied";
  }
  return "unknown";
}

double gprime_squared(ProfileFamily family, double fp) {
  switch (family) {
    case ProfileFamily::Ma: return fp * fp + 1.0;
    case ProfileFamily::Mb: return fp * fp - 1.0;
    case ProfileFamily::Mpp: return 1.0 - fp * fp;
  }
  return kNaN;
}

double unit_speed_residual(ProfileFamily family, double fp, double gp) {
  switch (family) {
    case ProfileFamily::Ma: return fp * fp - gp * gp + 1.0;
    case ProfileFamily::Mb: return fp * fp - gp * gp - 1.0;
    case ProfileFamily::Mpp: return fp * fp + gp * gp - 1.0;
  }
  return kNaN;
}

BranchSigns BranchSigns::parse(std::string_view text) {
  if (text.size() != 2) throw UsageError("branch signs must look like \"+-\", got \"" + std::string(text) + "\"");
  auto one = [&](char ch) {
    if (ch == '+') return 1;
    if (ch == '-') return -1;
    throw UsageError("branch signs must be made of '+' and '-', got \"" + std::string(text) + "\"");
  };
  return {one(text[0]), one(text[1])};
}

std::string BranchSigns::str() const {
  return std::string(1, outer > 0 ? '+' : '-') + std::string(1, inner > 0 ? '+' : '-');
}

// ---------------------------------------------------------------------------
// MeridianProfile

MeridianProfile::MeridianProfile(ProfileFamily family, Provenance provenance, ProfileParams params,
                                 double u0, double du, Samples samples, ExactEvaluator exact)
    : family_(family),
      provenance_(provenance),
      params_(params),
      u0_(u0),
      du_(du),
      samples_(std::move(samples)),
      exact_(std::move(exact)),
      requested_u_max_(0.0) {
  const std::size_t n = samples_.f.size();
  if (n < 2) throw UsageError("MeridianProfile needs at least 2 samples");
  for (const auto* v : {&samples_.fp, &samples_.fpp, &samples_.g, &samples_.gp}) {
    if (v->size() != n) throw UsageError("MeridianProfile: sample arrays differ in length");
  }
  if (!(du_ > 0.0)) throw UsageError("MeridianProfile: u-step must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    const ProfileJet j = node(i);
    if (!std::isfinite(j.f) || !std::isfinite(j.fp) || !std::isfinite(j.fpp) || !std::isfinite(j.g) ||
        !std::isfinite(j.gp)) {
      throw DomainError("MeridianProfile: non-finite sample at u = " + fmt(u_at(i)));
    }
    if (j.f < kMinF) throw DomainError("MeridianProfile: f <= 0 at u = " + fmt(u_at(i)));
  }
  requested_u_max_ = u_max();
}

ProfileJet MeridianProfile::node(std::size_t i) const {
  return {samples_.f[i], samples_.fp[i], samples_.fpp[i], samples_.g[i], samples_.gp[i]};
}

ProfileJet MeridianProfile::at(double u) const {
  const GridCell c = locate(u, u0_, du_, size());
  if (c.index < 0) {
    throw DomainError("u = " + fmt(u) + " is outside the profile [" + fmt(u_min()) + ", " +
                      fmt(u_max()) + "]");
  }
  if (exact_) return exact_(u);

  const auto i = static_cast<std::size_t>(c.index);
  const ProfileJet a = node(i);
  const ProfileJet b = node(i + 1);
  ProfileJet out;
  if (provenance_ == Provenance::UserSupplied) {
    const HermiteWeights w(c.s, du_);
    out.f = w.value(a.f, a.fp, b.f, b.fp);
    out.fp = w.value(a.fp, a.fpp, b.fp, b.fpp);
    out.fpp = (1.0 - c.s) * a.fpp + c.s * b.fpp;
    out.g = w.value(a.g, a.gp, b.g, b.gp);
    out.gp = (1.0 - c.s) * a.gp + c.s * b.gp;
    return out;
  }
  // g'' from differentiating the unit-speed constraint.
  const double sg = family_ == ProfileFamily::Mpp ? -1.0 : 1.0;
  auto gpp = [&](const ProfileJet& j) { return j.gp == 0.0 ? 0.0 : sg * j.fp * j.fpp / j.gp; };
  const QuinticHermite q(c.s, du_);
  const double fy[6] = {a.f, a.fp, a.fpp, b.f, b.fp, b.fpp};
  const double gy[6] = {a.g, a.gp, gpp(a), b.g, b.gp, gpp(b)};
  out.f = q.value(fy);
  out.fp = q.derivative(fy);
  out.fpp = q.second_derivative(fy);
  out.g = q.value(gy);
  const double sgn = (a.gp + b.gp) < 0.0 ? -1.0 : 1.0;
  out.gp = sgn * std::sqrt(std::max(0.0, gprime_squared(family_, out.fp)));
  return out;
}

// ---------------------------------------------------------------------------
// Minimal meridians

MeridianProfile minimal_profile(ProfileFamily family, const ProfileParams& params, Interval u_span,
                                std::size_t n_samples) {
  if (n_samples < 2) throw UsageError("minimal_profile: need at least 2 samples");
  if (!(u_span.hi > u_span.lo)) throw UsageError("minimal_profile: empty u span");
  const double a = params.a;
  const double b = params.b;
  const double s = sign_of(params.signs.outer, "outer");

  // f^2 as a function of u, and the constant D under the g' root.
  double D = 0.0;
  switch (family) {
    case ProfileFamily::Ma: D = a * a + b; break;
    case ProfileFamily::Mb: D = a * a - b; break;
    case ProfileFamily::Mpp: D = b - a * a; break;
  }
  if (!(D > 0.0)) {
    const char* cond = family == ProfileFamily::Ma   ? "a^2 + b > 0"
                       : family == ProfileFamily::Mb ? "a^2 - b > 0"
                                                     : "b - a^2 > 0";
    throw DomainError(std::string("minimal_profile: parameters violate ") + cond);
  }
  const double rootD = std::sqrt(D);
  const auto radicand = [&](double u) {
    return family == ProfileFamily::Ma ? -u * u + 2 * a * u + b : u * u + 2 * a * u + b;
  };
  const auto check_point = [&](double u, const char* which) {
    const double r = radicand(u);
    if (!(r >= kRadicandMargin) || std::sqrt(r) < kMinF) {
      throw DomainError(std::string("minimal_profile: ") + which + " u = " + fmt(u) +
                        " touches a zero of the f-radicand (value " + fmt(r) + ")");
    }
  };
  check_point(u_span.lo, "lower endpoint");
  check_point(u_span.hi, "upper endpoint");
  if (family == ProfileFamily::Mb && u_span.lo < -a && -a < u_span.hi) {
    throw DomainError("minimal_profile: u span crosses u = " + fmt(-a) +
                      " where the f-radicand is negative");
  }

  const ProfileFamily fam = family;
  const double c0 = params.c0;
  MeridianProfile::ExactEvaluator exact = [=](double u) {
    ProfileJet j;
    if (fam == ProfileFamily::Ma) {
      j.f = std::sqrt(-u * u + 2 * a * u + b);
      j.fp = (a - u) / j.f;
      j.fpp = -D / (j.f * j.f * j.f);
      j.gp = s * rootD / j.f;
      j.g = s * rootD * std::asin(std::clamp((u - a) / rootD, -1.0, 1.0)) + c0;
    } else {
      j.f = std::sqrt(u * u + 2 * a * u + b);
      j.fp = (u + a) / j.f;
      j.fpp = (fam == ProfileFamily::Mb ? -D : D) / (j.f * j.f * j.f);
      j.gp = s * rootD / j.f;
      j.g = s * rootD * std::log(std::abs(u + a + j.f)) + c0;
    }
    return j;
  };

  const double du = u_span.width() / static_cast<double>(n_samples - 1);
  MeridianProfile::Samples smp;
  for (auto* v : {&smp.f, &smp.fp, &smp.fpp, &smp.g, &smp.gp}) v->reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double u = i + 1 == n_samples ? u_span.hi : u_span.lo + du * static_cast<double>(i);
    const ProfileJet j = exact(u);
    smp.f.push_back(j.f);
    smp.fp.push_back(j.fp);
    smp.fpp.push_back(j.fpp);
    smp.g.push_back(j.g);
    smp.gp.push_back(j.gp);
  }
  return MeridianProfile(family, Provenance::ClosedFormMinimal, params, u_span.lo, du,
                         std::move(smp), std::move(exact));
}

// ---------------------------------------------------------------------------
// phi

PhiFunction::PhiFunction(PhiKind kind, ProfileFamily family, ProfileParams params)
    : kind_(kind), family_(family), params_(params) {}

double PhiFunction::integrand_radicand(double t) const {
  const double a2 = params_.a * params_.a;
  if (kind_ == PhiKind::Quasi) return a2;
  const double c = params_.c;
  return family_ == ProfileFamily::Ma ? a2 + 4 * c * t * t : a2 - 4 * c * t * t;
}

// Antiderivative of sqrt(a^2 + 4ct^2) (Ma) or sqrt(a^2 - 4ct^2) (Mb, Mpp).
double PhiFunction::integral(double t) const {
  const double a = std::abs(params_.a);
  const double c = params_.c;
  const double k = 2.0 * std::sqrt(std::abs(c));
  const bool growing = (family_ == ProfileFamily::Ma) == (c > 0.0);
  if (growing) {
    const double root = std::sqrt(a * a + k * k * t * t);
    return 0.5 * t * root + a * a / (2.0 * k) * std::log(std::abs(k * t + root));
  }
  const double q = a * a - k * k * t * t;
  if (q < 0.0) return kNaN;
  return 0.5 * t * std::sqrt(q) + a * a / (2.0 * k) * std::asin(std::min(1.0, k * t / a));
}

double PhiFunction::w(double t) const {
  const double s_in = params_.signs.inner;
  if (kind_ == PhiKind::Quasi) return params_.c + s_in * params_.a * t;
  return params_.b + s_in * integral(t);
}

double PhiFunction::phi_radicand(double t) const {
  const double W = w(t);
  switch (family_) {
    case ProfileFamily::Ma: return W * W - t * t;
    case ProfileFamily::Mb: return W * W + t * t;
    case ProfileFamily::Mpp: return t * t - W * W;
  }
  return kNaN;
}

double PhiFunction::squared(double t) const {
  if (degenerate_) return 0.0;
  return phi_radicand(t) / (t * t);
}

double PhiFunction::operator()(double t) const {
  if (degenerate_) return 0.0;
  const double r = phi_radicand(t);
  if (!(r >= 0.0) || !(t > 0.0)) return kNaN;
  return params_.signs.outer * std::sqrt(r) / t;
}

double PhiFunction::half_squared_derivative(double t) const {
  if (degenerate_) return 0.0;
  const double h = 1e-6 * std::max(1.0, t);
  const double sp = squared(t + h);
  const double sm = squared(t - h);
  if (std::isfinite(sp) && std::isfinite(sm) && t - h > 0.0) return (sp - sm) / (4.0 * h);
  const double s0 = squared(t);
  if (std::isfinite(sp)) {
    const double sp2 = squared(t + 2 * h);
    return (-3.0 * s0 + 4.0 * sp - sp2) / (4.0 * h);
  }
  const double sm2 = squared(t - 2 * h);
  return (3.0 * s0 - 4.0 * sm + sm2) / (4.0 * h);
}

double PhiFunction::gprime(double t) const {
  // g'^2 = phi^2 + 1, phi^2 - 1 or 1 - phi^2, which is W^2 / t^2 in every family.
  if (degenerate_) return 1.0;
  return std::abs(w(t)) / t;
}

double PhiFunction::margin(double t) const {
  if (!(t > 0.0)) return -1.0;
  const double W = w(t);
  const double g2 = W * W / (t * t);
  const double m = degenerate_ ? g2 - kRadicandMargin
                               : std::min(phi_radicand(t), g2) - kRadicandMargin;
  return std::isfinite(m) ? m : -1.0;
}

bool PhiFunction::admissible(double t) const {
  if (!(margin(t) >= 0.0)) return false;
  for (const Interval& i : domain_) {
    if (i.contains(t)) return true;
  }
  return domain_.empty();
}

PhiFunction phi_closed_form(PhiKind kind, ProfileFamily family, const ProfileParams& params,
                            Interval window) {
  if (params.a == 0.0) {
    throw UsageError("phi_closed_form: the spherical curve must have constant curvature a != 0");
  }
  if (kind == PhiKind::Cmc && params.c == 0.0) {
    throw UsageError("phi_closed_form: CMC needs a non-zero target <H,H> = c");
  }
  sign_of(params.signs.outer, "outer");
  sign_of(params.signs.inner, "inner");
  if (!(window.lo > 0.0 && window.hi > window.lo)) {
    throw UsageError("phi_closed_form: t-window must satisfy 0 < lo < hi");
  }

  PhiFunction phi(kind, family, params);

  constexpr int kScan = 4000;
  std::vector<double> ts(kScan + 1);
  const double ratio = std::log(window.hi / window.lo);
  for (int k = 0; k <= kScan; ++k) ts[k] = window.lo * std::exp(ratio * k / kScan);
  ts.back() = window.hi;

  if (kind == PhiKind::Quasi && family != ProfileFamily::Mb) {
    bool zero = true;
    for (double t : ts) {
      if (std::abs(phi.phi_radicand(t)) > 1e-12 * std::max(1.0, t * t)) {
        zero = false;
        break;
      }
    }
    if (zero) {
      phi.degenerate_ = true;
      phi.domain_ = {window};
      return phi;
    }
  }

  auto inside = [&](double t) { return phi.margin(t) >= 0.0; };
  auto crossing = [&](double lo, double hi) {
    const bool lo_in = inside(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (inside(mid) == lo_in ? lo : hi) = mid;
    }
    // Return the admissible side of the bracket.
    return lo_in ? lo : hi;
  };

  std::vector<Interval> domain;
  bool open = inside(ts[0]);
  double start = ts[0];
  for (int k = 1; k <= kScan; ++k) {
    const bool now = inside(ts[k]);
    if (now == open) continue;
    const double x = crossing(ts[k - 1], ts[k]);
    if (open) {
      domain.push_back({start, x});
    } else {
      start = x;
    }
    open = now;
  }
  if (open) domain.push_back({start, window.hi});
  std::erase_if(domain, [](const Interval& i) { return !(i.hi > i.lo); });

  if (domain.empty()) {
    std::ostringstream msg;
    msg << "phi_closed_form: empty admissible domain on t in [" << window.lo << ", " << window.hi
        << "]";
    throw DomainError(msg.str());
  }
  phi.domain_ = std::move(domain);
  return phi;
}

// ---------------------------------------------------------------------------
// ODE meridians

namespace {

std::optional<double> rk4(const PhiFunction& phi, double f, double h) {
  auto eval = [&](double t) -> std::optional<double> {
    if (!phi.admissible(t)) return std::nullopt;
    return phi(t);
  };
  const auto k1 = eval(f);
  if (!k1) return std::nullopt;
  const auto k2 = eval(f + 0.5 * h * *k1);
  if (!k2) return std::nullopt;
  const auto k3 = eval(f + 0.5 * h * *k2);
  if (!k3) return std::nullopt;
  const auto k4 = eval(f + h * *k3);
  if (!k4) return std::nullopt;
  const double next = f + h / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
  if (!phi.admissible(next) || next < kMinF) return std::nullopt;
  return next;
}

}  // namespace

MeridianProfile integrate_profile(const PhiFunction& phi, double f0, Interval u_span, double step,
                                  double g0) {
  if (!(step > 0.0)) throw UsageError("integrate_profile: step must be positive");
  if (!(u_span.hi > u_span.lo)) throw UsageError("integrate_profile: empty u span");
  if (!(f0 > 0.0) || !phi.admissible(f0)) {
    throw DomainError("integrate_profile: f0 = " + fmt(f0) + " is outside the admissible domain of phi");
  }

  const auto n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(u_span.width() / step)));
  const double h = u_span.width() / static_cast<double>(n_steps);

  MeridianProfile::Samples smp;
  auto record = [&](double f, double g) {
    smp.f.push_back(f);
    smp.fp.push_back(phi(f));
    smp.fpp.push_back(phi.half_squared_derivative(f));
    smp.g.push_back(g);
    smp.gp.push_back(phi.gprime(f));
  };

  double f = f0;
  double g = g0;
  record(f, g);
  bool truncated = false;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const auto mid = rk4(phi, f, 0.5 * h);
    const auto next = rk4(phi, f, h);
    if (!mid || !next) {
      truncated = true;
      break;
    }
    g += h / 6.0 * (phi.gprime(f) + 4.0 * phi.gprime(*mid) + phi.gprime(*next));
    f = *next;
    record(f, g);
  }
  if (smp.f.size() < 2) {
    throw DomainError("integrate_profile: phi leaves its admissible domain within the first step from f0 = " +
                      fmt(f0));
  }

  const Provenance prov = phi.kind() == PhiKind::Quasi ? Provenance::OdeQuasiMinimal : Provenance::OdeCmc;
  MeridianProfile profile(phi.family(), prov, phi.params(), u_span.lo, h, std::move(smp));
  if (truncated) profile.mark_truncated(u_span.hi);
  return profile;
}

// ---------------------------------------------------------------------------
// Residuals

double ProfileResiduals::max_governing() const {
  double m = 0.0;
  for (double r : governing) m = std::max(m, std::abs(r));
  return m;
}

double ProfileResiduals::max_constraint() const {
  double m = 0.0;
  for (double r : constraint) m = std::max(m, std::abs(r));
  return m;
}

ProfileResiduals profile_residuals(const MeridianProfile& profile, ResidualKind kind,
                                   const ProfileParams& params) {
  ProfileResiduals out;
  const Provenance prov = profile.provenance();
  const bool matches = prov == Provenance::UserSupplied ||
                       (kind == ResidualKind::Minimal && prov == Provenance::ClosedFormMinimal) ||
                       (kind == ResidualKind::Quasi && prov == Provenance::OdeQuasiMinimal) ||
                       (kind == ResidualKind::Cmc && prov == Provenance::OdeCmc);
  if (!matches) {
    out.warning = "profile of provenance " + std::string(to_string(prov)) +
                  " checked against a different governing equation";
  }

  const ProfileFamily fam = profile.family();
  const double a2 = params.a * params.a;
  const double c = params.c;
  out.governing.reserve(profile.size());
  out.constraint.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const ProfileJet j = profile.node(i);
    const double P = j.f * j.fpp + j.fp * j.fp + (fam == ProfileFamily::Ma ? 1.0 : -1.0);
    const double G2 = std::max(0.0, gprime_squared(fam, j.fp));
    double r = 0.0;
    switch (kind) {
      case ResidualKind::Minimal: r = P; break;
      case ResidualKind::Quasi: r = std::abs(P) - std::abs(params.a) * std::sqrt(G2); break;
      case ResidualKind::Cmc:
        r = fam == ProfileFamily::Ma ? P * P - 4.0 * c * j.f * j.f * G2 - a2 * G2
                                     : P * P - (a2 - 4.0 * c * j.f * j.f) * G2;
        break;
    }
    out.governing.push_back(r);
    out.constraint.push_back(unit_speed_residual(fam, j.fp, j.gp));
  }
  return out;
}

}  // namespace meridian
