#pragma once

// Theorem-level verification cases and their reports.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meridian/meridian_profiles.hpp"
#include "meridian/surface_factory.hpp"

namespace meridian {

std::string_view tool_version();

enum class Theorem {
  MinimalA,
  MinimalB,
  MinimalC,
  QuasiA,
  QuasiB,
  QuasiC,
  CmcA,
  CmcB,
  CmcC,
  CongruenceTilde,
  NegativeControl,
};

std::string_view to_string(Theorem t);
/// "minimal-a", ..., "cmc-c", "congruence", "negative-control".
Theorem parse_theorem(std::string_view name);
SurfaceFamily parse_family(std::string_view name);

struct Tolerances {
  double H = 1e-5;
  /// Absolute bound on <H,H> - target when |target| <= 1 ...
  double norm2 = 1e-5;
  /// ... relative bound otherwise.
  double norm2_relative = 1e-4;
  double frame = 1e-5;
  double profile = 1e-6;
  double analytic_minimal = 1e-9;
};

struct CaseSpec {
  Theorem theorem = Theorem::MinimalA;
  /// Only read for CongruenceTilde; the other theorems fix the family.
  SurfaceFamily family = SurfaceFamily::Mpp;
  ProfileParams params;
  /// Spherical curvature of the curve; default 0 (minimal, negative
  /// control), a (quasi, CMC) or 0.5 (congruence).
  std::optional<double> kappa;
  double f0 = 1.0;
  std::size_t nu = 21;
  std::size_t nv = 21;
  Interval u_span{-0.8, 0.8};
  /// Unset: [0, min(2, 1.4 / growth rate)], see effective_v_span.
  std::optional<Interval> v_span;
  double step = 1e-3;        ///< profile step in u
  double curve_step = 1e-3;  ///< Frenet step in v
  Tolerances tol;
  std::uint64_t seed = 1;
  std::size_t random_points = 20;
};

/// Surface family a theorem is stated for.
SurfaceFamily theorem_family(const CaseSpec& spec);
double default_kappa(const CaseSpec& spec);
/// The v-span of the case. When unset it is cut so that the curve frame
/// grows by at most e^1.4 (about 4x): second differences of a growing
/// immersion amplify its rounding error by |z| / h^2.
Interval effective_v_span(const CaseSpec& spec);
/// Target value of <H,H>: c for CMC, 0 otherwise.
double norm2_target(const CaseSpec& spec);
double norm2_tolerance(const Tolerances& tol, double target);

/// Built-in admissible parameters for each theorem.
CaseSpec default_case(Theorem theorem);
/// Throws UsageError for grids below 5x5, non-positive tolerances or steps.
void validate(const CaseSpec& spec);

enum class Comparator { LessEqual, GreaterEqual, Equal, Less };
std::string_view to_string(Comparator c);
Comparator parse_comparator(std::string_view text);
bool compare(double value, Comparator c, double threshold);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Comparator comparator = Comparator::LessEqual;
  bool passed = false;
};

enum class Status { Pass, Fail, DomainTruncated };
std::string_view to_string(Status s);

struct VerificationReport {
  CaseSpec spec;
  Status status = Status::Fail;
  std::vector<Check> checks;
  /// Summary numbers (ordered); checks hold the thresholded ones.
  std::vector<std::pair<std::string, double>> statistics;
  std::vector<std::string> warnings;
  std::optional<double> reached_u_max;
  double runtime_seconds = 0.0;

  bool passed() const { return status == Status::Pass; }
  const Check* find(std::string_view name) const;
  std::optional<double> statistic(std::string_view name) const;
};

/// Builds curve, profile and surface for the case and runs every check.
/// Throws UsageError / DomainError for inadmissible specs; a profile that
/// leaves its domain gives status DomainTruncated.
VerificationReport verify_case(const CaseSpec& spec);

/// Surface of a case, built the same way verify_case builds it.
struct BuiltCase {
  MeridianSurface surface;
  bool truncated = false;
};
BuiltCase build_case_surface(const CaseSpec& spec);

/// Status implied by the recorded checks.
Status recompute_status(const VerificationReport& report);

std::string case_to_json(const CaseSpec& spec);
CaseSpec case_from_json(std::string_view text);
/// Pretty JSON with "schema": 1. Timing lives under "timing" and is left
/// out when include_timing is false.
std::string report_to_json(const VerificationReport& report, bool include_timing = true);
/// Status recomputed from the checks recorded in a report JSON document.
Status recompute_status_from_json(std::string_view report_json);

struct SuiteEntry {
  std::string label;
  CaseSpec spec;
  bool expect_pass = true;
  std::optional<VerificationReport> report;
  std::string error;  ///< set when the case threw

  /// Outcome matched the expectation.
  bool ok() const;
};

struct SuiteResult {
  std::vector<SuiteEntry> entries;
  /// Every minimal case spans a hyperplane and some quasi case does not.
  bool corollary_ok = false;

  bool ok() const;
};

/// Minimal a/b/c, quasi a/b/c, CMC a/b/c over both signs of c where
/// admissible, the three congruences and two negative controls.
std::vector<SuiteEntry> theorem_suite();
SuiteResult run_suite(std::vector<SuiteEntry> entries);
std::string suite_to_json(const SuiteResult& result, bool include_timing = true);

/// Deterministic uniform draws in [0, 1) from a 64-bit seed.
class UnitRng {
 public:
  explicit UnitRng(std::uint64_t seed);
  double next();
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace meridian
