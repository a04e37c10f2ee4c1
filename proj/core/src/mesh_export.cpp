#include "meridian/mesh_export.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "meridian/errors.hpp"
#include "meridian/harness.hpp"

namespace meridian {

std::string_view to_string(MeshFormat f) {
  switch (f) {
    case MeshFormat::Csv: return "csv";
    case MeshFormat::Obj: return "obj";
    case MeshFormat::Json: return "json";
  }
  return "unknown";
}

MeshFormat parse_mesh_format(std::string_view name) {
  if (name == "csv") return MeshFormat::Csv;
  if (name == "obj") return MeshFormat::Obj;
  if (name == "json") return MeshFormat::Json;
  throw UsageError("unknown mesh format \"" + std::string(name) + "\" (expected csv, obj or json)");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string mesh_csv(const SampledSurface& s) {
  std::string out = "u,v,x1,x2,x3,x4\n";
  for (std::size_t i = 0; i < s.grid.nu; ++i) {
    for (std::size_t j = 0; j < s.grid.nv; ++j) {
      const Vec4& p = s.at(i, j);
      out += format_double(s.grid.u_at(i));
      out += ',';
      out += format_double(s.grid.v_at(j));
      for (double c : p.x) {
        out += ',';
        out += format_double(c);
      }
      out += '\n';
    }
  }
  return out;
}

std::string mesh_obj(const SampledSurface& s) {
  std::string out = "# " + s.name + ": projection (x1, x2, x3), x4 dropped\n";
  out += "# grid " + std::to_string(s.grid.nu) + " x " + std::to_string(s.grid.nv) + "\n";
  for (const Vec4& p : s.points) {
    out += "v " + format_double(p[0]) + ' ' + format_double(p[1]) + ' ' + format_double(p[2]) + '\n';
  }
  const std::size_t nv = s.grid.nv;
  for (std::size_t i = 0; i + 1 < s.grid.nu; ++i) {
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const std::size_t a = i * nv + j + 1;
      const std::size_t b = a + 1;
      const std::size_t c = a + nv;
      const std::size_t d = c + 1;
      out += "f " + std::to_string(a) + ' ' + std::to_string(c) + ' ' + std::to_string(d) + '\n';
      out += "f " + std::to_string(a) + ' ' + std::to_string(d) + ' ' + std::to_string(b) + '\n';
    }
  }
  return out;
}

std::string mesh_json(const SampledSurface& s, const MeshMetadata& meta) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["tool_version"] = tool_version();
  j["name"] = s.name;
  j["family"] = meta.family;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  if (!meta.branch_signs.empty()) params["branch_signs"] = meta.branch_signs;
  j["params"] = std::move(params);
  j["grid"] = {{"nu", s.grid.nu},
               {"nv", s.grid.nv},
               {"u_span", {s.grid.u_span.lo, s.grid.u_span.hi}},
               {"v_span", {s.grid.v_span.lo, s.grid.v_span.hi}}};
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.grid.nu; ++i) {
    for (std::size_t k = 0; k < s.grid.nv; ++k) {
      const Vec4& p = s.at(i, k);
      samples.push_back({s.grid.u_at(i), s.grid.v_at(k), p[0], p[1], p[2], p[3]});
    }
  }
  j["sample_fields"] = {"u", "v", "x1", "x2", "x3", "x4"};
  j["samples"] = std::move(samples);
  return j.dump(1) + "\n";
}

std::string render_mesh(const SampledSurface& s, MeshFormat format, const MeshMetadata& meta) {
  switch (format) {
    case MeshFormat::Csv: return mesh_csv(s);
    case MeshFormat::Obj: return mesh_obj(s);
    case MeshFormat::Json: return mesh_json(s, meta);
  }
  return {};
}

namespace {

double parse_number(std::string_view field, std::size_t line) {
  double x = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), x);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw UsageError("csv line " + std::to_string(line) + ": bad number \"" + std::string(field) + "\"");
  }
  return x;
}

}  // namespace

SampledSurface parse_mesh_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "u,v,x1,x2,x3,x4") {
    throw UsageError("csv mesh must start with the header u,v,x1,x2,x3,x4");
  }
  std::vector<std::array<double, 6>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 6> row{};
    std::size_t pos = 0;
    for (int k = 0; k < 6; ++k) {
      const std::size_t next = k < 5 ? line.find(',', pos) : line.size();
      if (next == std::string::npos) throw UsageError("csv line " + std::to_string(lineno) + ": expected 6 fields");
      row[k] = parse_number(std::string_view(line).substr(pos, next - pos), lineno);
      pos = next + 1;
    }
    if (pos <= line.size()) throw UsageError("csv line " + std::to_string(lineno) + ": expected 6 fields");
    rows.push_back(row);
  }
  if (rows.empty()) throw UsageError("csv mesh has no samples");

  std::size_t nv = 1;
  while (nv < rows.size() && rows[nv][0] == rows[0][0]) ++nv;
  if (rows.size() % nv != 0) throw UsageError("csv mesh is not a full u x v grid");

  SampledSurface s;
  s.name = "csv";
  s.grid.nu = rows.size() / nv;
  s.grid.nv = nv;
  s.grid.u_span = {rows.front()[0], rows.back()[0]};
  s.grid.v_span = {rows.front()[1], rows[nv - 1][1]};
  s.points.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (r[0] != s.grid.u_at(k / nv) || r[1] != s.grid.v_at(k % nv)) {
      throw UsageError("csv mesh row " + std::to_string(k + 1) + " is off the uniform grid");
    }
    s.points.push_back({r[2], r[3], r[4], r[5]});
  }
  return s;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

void export_mesh(const SampledSurface& s, MeshFormat format, const std::filesystem::path& path,
                 const MeshMetadata& meta) {
  write_text_file(path, render_mesh(s, format, meta));
}

}  // namespace meridian
