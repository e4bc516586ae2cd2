#pragma once

#include "flatdel/types.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace flatdel::io {

// Shortest decimal that round-trips; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);

// Writes path.tmp then renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

using Metadata = std::vector<std::pair<std::string, std::string>>;

// '#'-prefixed "key: value" header lines, then one comma-separated point per line.
std::string cloud_to_csv(const PointCloud& cloud, const Metadata& meta = {});
struct CsvCloud {
  PointCloud cloud;
  Metadata meta;
};
CsvCloud cloud_from_csv(const std::string& text);
void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud, const Metadata& meta = {});
CsvCloud read_cloud_csv(const std::filesystem::path& path);

// ASCII OFF with every cloud point as a vertex and the triangles as faces (3-D coordinates; lower
// ambient dimension is zero-padded).
std::string complex_to_off(const PointCloud& cloud, const SimplexSet& k);
// "i j" per edge.
std::string complex_to_edge_list(const SimplexSet& k);

}  // namespace flatdel::io
