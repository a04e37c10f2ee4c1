#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meridian/surface_factory.hpp"

namespace meridian {

enum class MeshFormat { Csv, Obj, Json };

std::string_view to_string(MeshFormat f);
MeshFormat parse_mesh_format(std::string_view name);

struct MeshMetadata {
  std::string family;
  std::vector<std::pair<std::string, double>> params;
  std::string branch_signs;
};

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// Header "u,v,x1,x2,x3,x4", one row per sample, u outer and v inner.
std::string mesh_csv(const SampledSurface& s);
/// Vertices (x1, x2, x3) and two triangles per grid cell, 1-based.
std::string mesh_obj(const SampledSurface& s);
std::string mesh_json(const SampledSurface& s, const MeshMetadata& meta);
std::string render_mesh(const SampledSurface& s, MeshFormat format, const MeshMetadata& meta);

/// Inverse of mesh_csv; the grid is inferred from the u and v columns.
SampledSurface parse_mesh_csv(std::string_view text);

/// Throws Error naming the path on I/O failure.
void export_mesh(const SampledSurface& s, MeshFormat format, const std::filesystem::path& path,
                 const MeshMetadata& meta = {});
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace meridian
