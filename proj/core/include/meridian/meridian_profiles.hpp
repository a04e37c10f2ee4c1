#pragma once

// Meridian curves m: u -> (f(u), g(u)) of the three surface families.
// Minimal meridians are closed form; quasi-minimal and CMC meridians solve
// f' = phi(f) for the closed-form phi of the classification.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meridian/common.hpp"

namespace meridian {

/// Ma: f'^2 - g'^2 = -1 (timelike meridian, curve on S21 spacelike)
/// Mb: f'^2 - g'^2 =  1 (spacelike meridian, curve on S21 timelike)
/// Mpp: f'^2 + g'^2 = 1 (curve on H21)
enum class ProfileFamily { Ma, Mb, Mpp };

enum class PhiKind { Quasi, Cmc };
enum class ResidualKind { Minimal, Quasi, Cmc };
enum class Provenance { ClosedFormMinimal, OdeQuasiMinimal, OdeCmc, UserSupplied };

std::string_view to_string(ProfileFamily f);
std::string_view to_string(Provenance p);

/// g'^2 implied by the unit-speed constraint: Ma f'^2+1, Mb f'^2-1, Mpp 1-f'^2.
double gprime_squared(ProfileFamily family, double fp);
/// Signed violation of the unit-speed constraint.
double unit_speed_residual(ProfileFamily family, double fp, double gp);

/// The two sign choices of every classification formula.
///   minimal:   outer = sign of g (f is always the positive root)
///   quasi/CMC: outer = sign of phi, inner = sign of the a*t term
///              (quasi) or of the integral term (CMC)
struct BranchSigns {
  int outer = 1;
  int inner = 1;

  /// Parses "++", "+-", "-+" or "--".
  static BranchSigns parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const BranchSigns&, const BranchSigns&) = default;
};

struct ProfileParams {
  double a = 0.0;   ///< constant curvature of the spherical curve, or minimal-profile constant
  double b = 0.0;   ///< minimal-profile constant, or CMC integration constant
  double c = 0.0;   ///< quasi integration constant, or target <H,H> for CMC
  double c0 = 0.0;  ///< additive constant in g
  BranchSigns signs;
};

struct ProfileJet {
  double f = 0.0;
  double fp = 0.0;
  double fpp = 0.0;
  double g = 0.0;
  double gp = 0.0;
};

/// Meridian sampled on a uniform u-grid.
class MeridianProfile {
 public:
  struct Samples {
    std::vector<double> f, fp, fpp, g, gp;
  };
  using ExactEvaluator = std::function<ProfileJet(double)>;

  MeridianProfile(ProfileFamily family, Provenance provenance, ProfileParams params, double u0,
                  double du, Samples samples, ExactEvaluator exact = {});

  ProfileFamily family() const { return family_; }
  Provenance provenance() const { return provenance_; }
  const ProfileParams& params() const { return params_; }
  const Samples& samples() const { return samples_; }
  std::size_t size() const { return samples_.f.size(); }
  double step() const { return du_; }
  double u_min() const { return u0_; }
  double u_max() const { return u0_ + du_ * static_cast<double>(size() - 1); }
  double u_at(std::size_t i) const { return u0_ + du_ * static_cast<double>(i); }
  bool has_exact() const { return static_cast<bool>(exact_); }

  /// True when integration stopped before the requested span.
  bool truncated() const { return truncated_; }
  double requested_u_max() const { return requested_u_max_; }
  void mark_truncated(double requested_u_max) {
    truncated_ = true;
    requested_u_max_ = requested_u_max;
  }

  ProfileJet node(std::size_t i) const;
  /// Jet at arbitrary u: the closed form when available, otherwise quintic
  /// Hermite interpolation of f and g (g'' from the differentiated
  /// constraint) with g' recovered from the unit-speed constraint. User
  /// supplied profiles use cubic Hermite in f and g and linear g'.
  ProfileJet at(double u) const;

 private:
  ProfileFamily family_;
  Provenance provenance_;
  ProfileParams params_;
  double u0_;
  double du_;
  Samples samples_;
  ExactEvaluator exact_;
  bool truncated_ = false;
  double requested_u_max_ = 0.0;
};

/// Closed-form minimal meridian:
///   Ma  f = sqrt(-u^2+2au+b), g = s sqrt(a^2+b) asin((u-a)/sqrt(a^2+b)) + c0
///   Mb  f = sqrt(u^2+2au+b),  g = s sqrt(a^2-b) ln|u+a+f| + c0   (a^2-b > 0)
///   Mpp f = sqrt(u^2+2au+b),  g = s sqrt(b-a^2) ln|u+a+f| + c0   (b-a^2 > 0)
MeridianProfile minimal_profile(ProfileFamily family, const ProfileParams& params, Interval u_span,
                                std::size_t n_samples);

/// phi(t) with f' = phi(f). Writing W(t) = c + s_in a t (quasi) or
/// W(t) = b + s_in * integral of sqrt(a^2 +- 4 c t^2) (CMC):
///   Ma  phi = s_out sqrt(W^2 - t^2)/t
///   Mb  phi = s_out sqrt(W^2 + t^2)/t
///   Mpp phi = s_out sqrt(t^2 - W^2)/t
class PhiFunction {
 public:
  PhiFunction(PhiKind kind, ProfileFamily family, ProfileParams params);

  PhiKind kind() const { return kind_; }
  ProfileFamily family() const { return family_; }
  const ProfileParams& params() const { return params_; }

  double operator()(double t) const;
  /// phi(t)^2, smooth wherever W is.
  double squared(double t) const;
  /// (phi^2)'(t) / 2 = phi phi', by central differences.
  double half_squared_derivative(double t) const;
  /// W(t) from the closed form; the reduced variable is z = |W|/t.
  double w(double t) const;
  /// a^2 + 4ct^2 (Ma) or a^2 - 4ct^2 (Mb, Mpp) for CMC; a^2 for quasi.
  double integrand_radicand(double t) const;
  /// g'(t) = sqrt(g'^2(phi(t))) on the admissible domain.
  double gprime(double t) const;

  /// Smallest of the radicands under phi and under g', minus the 1e-10
  /// margin; admissible iff >= 0.
  double margin(double t) const;
  bool admissible(double t) const;

  const std::vector<Interval>& domain() const { return domain_; }
  /// phi vanishes identically on the window (radicand == 0).
  bool degenerate() const { return degenerate_; }

 private:
  friend PhiFunction phi_closed_form(PhiKind, ProfileFamily, const ProfileParams&, Interval);

  double integral(double t) const;
  double phi_radicand(double t) const;

  PhiKind kind_;
  ProfileFamily family_;
  ProfileParams params_;
  std::vector<Interval> domain_;
  bool degenerate_ = false;
};

inline constexpr double kRadicandMargin = 1e-10;

/// Builds phi and its admissible t-domain inside `window` (sign changes of
/// the margin function located by scanning and bisection).
PhiFunction phi_closed_form(PhiKind kind, ProfileFamily family, const ProfileParams& params,
                            Interval window = {1e-6, 100.0});

/// RK4 on f' = phi(f) from f(u_span.lo) = f0, g by per-step Simpson
/// quadrature of the family's g' rule from g0. Stops early (and marks the
/// profile truncated) when f leaves the admissible domain.
MeridianProfile integrate_profile(const PhiFunction& phi, double f0, Interval u_span, double step,
                                  double g0 = 0.0);

struct ProfileResiduals {
  std::vector<double> governing;
  std::vector<double> constraint;
  std::optional<std::string> warning;

  double max_governing() const;
  double max_constraint() const;
};

/// Per-sample residual of the governing ODE for `kind` and of the
/// unit-speed constraint:
///   Minimal  f f'' + f'^2 + 1 (Ma), f f'' + f'^2 - 1 (Mb, Mpp)
///   Quasi    |P| - |a| sqrt(g'^2(f'))    with P the minimal expression
///   Cmc      P^2 - 4 c f^2 (f'^2+1) - a^2 (f'^2+1)             (Ma)
///            P^2 - (a^2 - 4 c f^2) g'^2(f')                     (Mb, Mpp)
ProfileResiduals profile_residuals(const MeridianProfile& profile, ResidualKind kind,
                                   const ProfileParams& params);

}  // namespace meridian
