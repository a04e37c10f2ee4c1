#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "meridian/harness.hpp"
#include "meridian/mesh_export.hpp"

using namespace meridian;

namespace {

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

SampledSurface plane_grid(std::size_t nu, std::size_t nv) {
  const Immersion plane = [](double u, double v) { return Vec4{u, v, 0, 0}; };
  return sample_surface(plane, SurfaceGrid{nu, nv, {0.0, 1.0}, {0.0, 1.0}}, "plane");
}

SampledSurface quasi_grid() {
  const BuiltCase c = build_case_surface(default_case(Theorem::QuasiA));
  return sample_surface(c.surface, SurfaceGrid::interior(7, 5, c.surface.u_span(), c.surface.v_span()));
}

}  // namespace

TEST_CASE("csv layout") {
  const std::string csv = mesh_csv(plane_grid(2, 2));
  CHECK(csv == "u,v,x1,x2,x3,x4\n0,0,0,0,0,0\n0,1,0,1,0,0\n1,0,1,0,0,0\n1,1,1,1,0,0\n");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("csv round trip is byte identical") {
  const SampledSurface s = quasi_grid();
  const std::string once = mesh_csv(s);
  const SampledSurface back = parse_mesh_csv(once);
  CHECK(back.grid.nu == 7);
  CHECK(back.grid.nv == 5);
  CHECK(back.points == s.points);
  CHECK(mesh_csv(back) == once);
}

TEST_CASE("csv parse errors") {
  CHECK_THROWS_AS(parse_mesh_csv("x,y\n"), UsageError);
  CHECK_THROWS_AS(parse_mesh_csv("u,v,x1,x2,x3,x4\n"), UsageError);
  CHECK_THROWS_AS(parse_mesh_csv("u,v,x1,x2,x3,x4\n0,0,1,2,3\n"), UsageError);
  CHECK_THROWS_AS(parse_mesh_csv("u,v,x1,x2,x3,x4\n0,0,1,2,3,abc\n"), UsageError);
  CHECK_THROWS_AS(parse_mesh_csv("u,v,x1,x2,x3,x4\n0,0,0,0,0,0\n0,1,0,0,0,0\n1,0,0,0,0,0\n"), UsageError);
}

TEST_CASE("obj counts") {
  const SampledSurface s = plane_grid(6, 4);
  const std::string obj = mesh_obj(s);
  CHECK(count_prefix(obj, "v ") == 24);
  CHECK(count_prefix(obj, "f ") == 2 * 5 * 3);
  CHECK(obj.rfind("# plane: projection (x1, x2, x3), x4 dropped", 0) == 0);
}

TEST_CASE("json mesh") {
  const SampledSurface s = plane_grid(3, 2);
  const MeshMetadata meta{"ma", {{"a", 0.0}, {"b", 1.0}}, "++"};
  const auto j = nlohmann::json::parse(mesh_json(s, meta));
  CHECK(j["schema"] == 1);
  CHECK(j["tool_version"] == std::string(tool_version()));
  CHECK(j["family"] == "ma");
  CHECK(j["params"]["b"] == 1.0);
  CHECK(j["params"]["branch_signs"] == "++");
  CHECK(j["grid"]["nu"] == 3);
  CHECK(j["samples"].size() == 6);
  CHECK(j["samples"][5][1] == 1.0);
}

TEST_CASE("export writes files and reports the path on failure") {
  const auto dir = std::filesystem::temp_directory_path() / "meridian_mesh_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "plane.csv";
  export_mesh(plane_grid(3, 3), MeshFormat::Csv, file);
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == mesh_csv(plane_grid(3, 3)));
  std::filesystem::remove_all(dir);

  const auto bad = dir / "missing" / "x.obj";
  try {
    export_mesh(plane_grid(3, 3), MeshFormat::Obj, bad);
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
  CHECK(parse_mesh_format("obj") == MeshFormat::Obj);
  CHECK_THROWS_AS(parse_mesh_format("ply"), UsageError);
}
