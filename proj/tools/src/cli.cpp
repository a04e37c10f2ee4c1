#include "meridian_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "meridian/errors.hpp"
#include "meridian/harness.hpp"
#include "meridian/mesh_export.hpp"

namespace meridian::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CaseFlags {
  std::string family, theorem, a, b, c, c0, f0, kappa;
  std::string u_min, u_max, v_min, v_max, nu, nv, step;
  std::string branch_signs, tol_h, seed, case_file;
};

struct OutputFlags {
  std::string out, report, format;
};

void add_case_flags(CLI::App& app, CaseFlags& f, bool lists) {
  const std::string list_note = lists ? " (comma-separated list)" : "";
  app.add_option("--family", f.family, "surface family: ma, mb or mpp");
  app.add_option("--theorem", f.theorem,
                 "minimal-a|b|c, quasi-a|b|c, cmc-a|b|c, congruence, negative-control");
  app.add_option("--a", f.a, "curvature of the spherical curve / profile constant a" + list_note);
  app.add_option("--b", f.b, "profile constant b" + list_note);
  app.add_option("--c", f.c, "quasi constant c, or CMC target <H,H>" + list_note);
  app.add_option("--c0", f.c0, "additive constant of g" + list_note);
  app.add_option("--f0", f.f0, "initial value f(u-min) for ODE profiles" + list_note);
  app.add_option("--kappa", f.kappa, "override the curve curvature" + list_note);
  app.add_option("--u-min", f.u_min, "profile span start");
  app.add_option("--u-max", f.u_max, "profile span end");
  app.add_option("--v-min", f.v_min, "curve span start");
  app.add_option("--v-max", f.v_max, "curve span end");
  app.add_option("--nu", f.nu, "grid points in u");
  app.add_option("--nv", f.nv, "grid points in v");
  app.add_option("--step", f.step, "profile integration step");
  app.add_option("--branch-signs", f.branch_signs, "outer and inner sign, e.g. +- " + list_note);
  app.add_option("--tol-h", f.tol_h, "tolerance on the mean curvature vector");
  app.add_option("--seed", f.seed, "seed for random interior sample points");
  app.add_option("--case", f.case_file, "JSON case file; flags override its fields");
}

double parse_double(const std::string& flag, std::string_view text) {
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(x)) {
    throw UsageError("--" + flag + ": expected a number, got \"" + std::string(text) + "\"");
  }
  return x;
}

template <class Int>
Int parse_int(const std::string& flag, std::string_view text) {
  Int x{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw UsageError("--" + flag + ": expected a non-negative integer, got \"" + std::string(text) + "\"");
  }
  return x;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(',', pos);
    out.push_back(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Theorem minimal_for(SurfaceFamily f) {
  switch (f) {
    case SurfaceFamily::Ma: return Theorem::MinimalA;
    case SurfaceFamily::Mb: return Theorem::MinimalB;
    case SurfaceFamily::Mpp: return Theorem::MinimalC;
  }
  return Theorem::MinimalA;
}

/// Case from --case and the single-valued flags. The per-case parameter
/// flags (a, b, c, c0, f0, kappa, branch-signs) are applied by the caller.
CaseSpec base_case(const CaseFlags& f) {
  CaseSpec s;
  std::optional<SurfaceFamily> family;
  if (!f.family.empty()) family = parse_family(f.family);
  if (!f.case_file.empty()) {
    s = case_from_json(read_file(f.case_file));
    if (!f.theorem.empty()) s.theorem = parse_theorem(f.theorem);
  } else if (!f.theorem.empty()) {
    s = default_case(parse_theorem(f.theorem));
  } else {
    s = default_case(family ? minimal_for(*family) : Theorem::MinimalA);
  }
  if (family) {
    if (s.theorem == Theorem::CongruenceTilde) {
      s.family = *family;
    } else if (theorem_family(s) != *family) {
      throw UsageError("--family " + f.family + " does not match theorem " + std::string(to_string(s.theorem)) +
                       " (family " + std::string(to_string(theorem_family(s))) + ")");
    }
  }
  if (!f.u_min.empty()) s.u_span.lo = parse_double("u-min", f.u_min);
  if (!f.u_max.empty()) s.u_span.hi = parse_double("u-max", f.u_max);
  if (!f.nu.empty()) s.nu = parse_int<std::size_t>("nu", f.nu);
  if (!f.nv.empty()) s.nv = parse_int<std::size_t>("nv", f.nv);
  if (!f.step.empty()) s.step = parse_double("step", f.step);
  if (!f.tol_h.empty()) s.tol.H = parse_double("tol-h", f.tol_h);
  if (!f.seed.empty()) s.seed = parse_int<std::uint64_t>("seed", f.seed);
  return s;
}

/// Explicit v bounds; a missing one comes from the automatic span, which
/// depends on the curvature and so runs after the parameter flags.
void apply_v_span(CaseSpec& s, const CaseFlags& f) {
  if (!f.v_min.empty() || !f.v_max.empty()) {
    Interval v = effective_v_span(s);
    if (!f.v_min.empty()) v.lo = parse_double("v-min", f.v_min);
    if (!f.v_max.empty()) v.hi = parse_double("v-max", f.v_max);
    s.v_span = v;
  }
  validate(s);
}

struct ParamValues {
  std::optional<std::string> a, b, c, c0, f0, kappa, signs;
};

void apply_params(CaseSpec& s, const ParamValues& p) {
  if (p.a) s.params.a = parse_double("a", *p.a);
  if (p.b) s.params.b = parse_double("b", *p.b);
  if (p.c) s.params.c = parse_double("c", *p.c);
  if (p.c0) s.params.c0 = parse_double("c0", *p.c0);
  if (p.f0) s.f0 = parse_double("f0", *p.f0);
  if (p.kappa) s.kappa = parse_double("kappa", *p.kappa);
  if (p.signs) s.params.signs = BranchSigns::parse(*p.signs);
  validate(s);
}

ParamValues single_params(const CaseFlags& f) {
  auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };
  return {opt(f.a), opt(f.b), opt(f.c), opt(f.c0), opt(f.f0), opt(f.kappa), opt(f.branch_signs)};
}

CaseSpec single_case(const CaseFlags& f) {
  const ParamValues p = single_params(f);
  for (const auto& v : {p.a, p.b, p.c, p.c0, p.f0, p.kappa, p.signs}) {
    if (v && v->find(',') != std::string::npos) throw UsageError("lists of values are only accepted by sweep");
  }
  CaseSpec s = base_case(f);
  apply_params(s, p);
  apply_v_span(s, f);
  return s;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_text_file(path, content);
  }
}

void print_report_summary(const VerificationReport& r, std::ostream& out) {
  out << to_string(r.spec.theorem) << " [" << to_string(theorem_family(r.spec)) << "]: " << to_string(r.status)
      << "\n";
  for (const Check& c : r.checks) {
    if (!c.passed) {
      out << "  failed " << c.name << ": " << format_double(c.value) << " " << to_string(c.comparator) << " "
          << format_double(c.threshold) << " does not hold\n";
    }
  }
  for (const std::string& w : r.warnings) out << "  warning: " << w << "\n";
}

// ---------------------------------------------------------------------------

int cmd_generate(const CaseFlags& f, const OutputFlags& o, std::ostream& out, std::ostream& err) {
  const CaseSpec spec = single_case(f);
  const BuiltCase built = build_case_surface(spec);
  const MeridianSurface& s = built.surface;
  if (built.truncated) {
    err << "warning: profile left the admissible domain at u = " << format_double(s.profile().u_max()) << "\n";
  }
  const SurfaceGrid grid{spec.nu, spec.nv, s.u_span(), s.v_span()};
  SampledSurface mesh = spec.theorem == Theorem::CongruenceTilde
                            ? tilde_surface(spec.family == SurfaceFamily::Mpp  ? TildeKind::TildePrime
                                            : spec.family == SurfaceFamily::Mb ? TildeKind::TildeDoubleA
                                                                               : TildeKind::TildeDoubleB,
                                            s, grid)
                            : sample_surface(s, grid);

  MeshFormat format = MeshFormat::Csv;
  if (!o.format.empty()) {
    format = parse_mesh_format(o.format);
  } else if (!o.out.empty()) {
    const std::string ext = std::filesystem::path(o.out).extension().string();
    if (ext == ".obj") format = MeshFormat::Obj;
    if (ext == ".json") format = MeshFormat::Json;
  }
  MeshMetadata meta;
  meta.family = std::string(to_string(theorem_family(spec)));
  meta.params = {{"a", spec.params.a},
                 {"b", spec.params.b},
                 {"c", spec.params.c},
                 {"c0", spec.params.c0},
                 {"f0", spec.f0},
                 {"kappa", spec.kappa.value_or(default_kappa(spec))}};
  meta.branch_signs = spec.params.signs.str();
  emit(o.out, render_mesh(mesh, format, meta), out);
  if (!o.out.empty()) {
    out << "wrote " << mesh.points.size() << " samples (" << to_string(format) << ") to " << o.out << "\n";
  }
  return kExitPass;
}

int cmd_verify(const CaseFlags& f, const OutputFlags& o, std::ostream& out) {
  const CaseSpec spec = single_case(f);
  const VerificationReport r = verify_case(spec);
  const std::string json = report_to_json(r);
  if (o.report.empty()) {
    out << json;
  } else {
    write_text_file(o.report, json);
    print_report_summary(r, out);
  }
  return r.passed() ? kExitPass : kExitFail;
}

int cmd_sweep(const CaseFlags& f, const OutputFlags& o, std::ostream& out) {
  const CaseSpec base = base_case(f);
  const ParamValues single = single_params(f);
  auto values = [](const std::optional<std::string>& v) {
    return v ? split_list(*v) : std::vector<std::string>{""};
  };
  const auto as = values(single.a), bs = values(single.b), cs = values(single.c), c0s = values(single.c0),
             f0s = values(single.f0), ks = values(single.kappa), ss = values(single.signs);
  auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };

  // Parse everything up front so a bad list entry is a usage error.
  std::vector<CaseSpec> specs;
  for (const auto& a : as)
    for (const auto& b : bs)
      for (const auto& c : cs)
        for (const auto& c0 : c0s)
          for (const auto& f0 : f0s)
            for (const auto& k : ks)
              for (const auto& sg : ss) {
                CaseSpec s = base;
                apply_params(s, {opt(a), opt(b), opt(c), opt(c0), opt(f0), opt(k), opt(sg)});
                apply_v_span(s, f);
                specs.push_back(s);
              }

  Json cases = Json::array();
  std::size_t passed = 0, failed = 0, truncated = 0, errors = 0;
  for (const CaseSpec& s : specs) {
    Json entry;
    entry["case"] = Json::parse(case_to_json(s));
    try {
      const VerificationReport r = verify_case(s);
      entry["status"] = to_string(r.status);
      entry["report"] = Json::parse(report_to_json(r));
      if (r.status == Status::Pass) ++passed;
      if (r.status == Status::Fail) ++failed;
      if (r.status == Status::DomainTruncated) ++truncated;
    } catch (const Error& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      ++errors;
    }
    out << to_string(s.theorem) << " a=" << format_double(s.params.a) << " b=" << format_double(s.params.b)
        << " c=" << format_double(s.params.c) << " f0=" << format_double(s.f0) << " signs=" << s.params.signs.str()
        << ": " << entry["status"].get<std::string>() << "\n";
    cases.push_back(std::move(entry));
  }
  Json j;
  j["schema"] = 1;
  j["tool_version"] = tool_version();
  j["cases"] = std::move(cases);
  j["summary"] = {{"total", specs.size()}, {"pass", passed}, {"fail", failed},
                  {"domain_truncated", truncated}, {"error", errors}};
  if (!o.report.empty()) write_text_file(o.report, j.dump(2) + "\n");
  out << "sweep: " << passed << "/" << specs.size() << " passed\n";
  return passed == specs.size() ? kExitPass : kExitFail;
}

int cmd_theorems(const OutputFlags& o, std::ostream& out) {
  const SuiteResult res = run_suite(theorem_suite());
  for (const SuiteEntry& e : res.entries) {
    out << (e.ok() ? "ok   " : "FAIL ") << e.label << ": ";
    if (e.report) {
      out << to_string(e.report->status) << " (expected " << (e.expect_pass ? "pass" : "fail") << ")";
    } else {
      out << "error: " << e.error;
    }
    out << "\n";
  }
  out << (res.corollary_ok ? "ok   " : "FAIL ")
      << "corollary: minimal cases span hyperplanes, a quasi-minimal case does not\n";
  if (!o.report.empty()) write_text_file(o.report, suite_to_json(res));
  out << (res.ok() ? "all theorem checks behaved as expected\n" : "some theorem checks misbehaved\n");
  return res.ok() ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meridian surfaces in neutral 4-space: generation and theorem verification", "meridian"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  CaseFlags gen_case, ver_case, sweep_case;
  OutputFlags gen_out, ver_out, sweep_out, thm_out;

  CLI::App* gen = app.add_subcommand("generate", "build a surface and export a mesh");
  add_case_flags(*gen, gen_case, false);
  gen->add_option("--out", gen_out.out, "output file (stdout if omitted)");
  gen->add_option("--format", gen_out.format, "csv, obj or json (default from --out extension, else csv)");

  CLI::App* ver = app.add_subcommand("verify", "run one verification case and write a JSON report");
  add_case_flags(*ver, ver_case, false);
  ver->add_option("--report,--out", ver_out.report, "report file (stdout if omitted)");

  CLI::App* sweep = app.add_subcommand("sweep", "verify the Cartesian product of parameter lists");
  add_case_flags(*sweep, sweep_case, true);
  sweep->add_option("--report,--out", sweep_out.report, "aggregate report file");

  CLI::App* thm = app.add_subcommand("theorems", "run the built-in theorem suite");
  thm->add_option("--report,--out", thm_out.report, "suite report file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) {
      err << app.help();
      return kExitUsage;
    }
    return kExitPass;
  }

  try {
    if (*gen) return cmd_generate(gen_case, gen_out, out, err);
    if (*ver) return cmd_verify(ver_case, ver_out, out);
    if (*sweep) return cmd_sweep(sweep_case, sweep_out, out);
    if (*thm) return cmd_theorems(thm_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace meridian::cli
