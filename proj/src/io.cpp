#include "flatdel/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace flatdel::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string cloud_to_csv(const PointCloud& cloud, const Metadata& meta) {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
  out += "# dim: " + std::to_string(cloud.dim()) + "\n";
  out += "# count: " + std::to_string(cloud.size()) + "\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t k = 0; k < cloud.dim(); ++k) {
      if (k) out += ',';
      out += format_double(cloud.coord(i, k));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, std::size_t line) {
  const std::string t = trim(tok);
  if (t == "inf") return kInf;
  if (t == "-inf") return -kInf;
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw Error("line " + std::to_string(line) + ": bad number '" + t + "'");
  return v;
}

}  // namespace

CsvCloud cloud_from_csv(const std::string& text) {
  CsvCloud out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0, dim = 0;
  bool have_dim = false;
  std::vector<Vec> pts;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(body.substr(0, colon));
      const std::string val = trim(body.substr(colon + 1));
      if (key == "dim") {
        dim = std::stoul(val);
        have_dim = true;
      } else if (key != "count") {
        out.meta.emplace_back(key, val);
      }
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = t.find(',', start);
      row.push_back(parse_double(t.substr(start, comma - start), lineno));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!have_dim) {
      dim = row.size();
      have_dim = true;
    }
    if (row.size() != dim) throw DimensionMismatch("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coordinates");
    pts.push_back(Eigen::Map<Vec>(row.data(), static_cast<Eigen::Index>(row.size())));
  }
  out.cloud = PointCloud(dim, pts);
  return out;
}

void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud, const Metadata& meta) {
  write_atomic(path, cloud_to_csv(cloud, meta));
}

CsvCloud read_cloud_csv(const std::filesystem::path& path) { return cloud_from_csv(read_file(path)); }

std::string complex_to_off(const PointCloud& cloud, const SimplexSet& k) {
  std::size_t faces = 0, edges = 0;
  for (const auto& s : k) {
    if (s.size() == 3) ++faces;
    if (s.size() == 2) ++edges;
  }
  std::string out = "OFF\n" + std::to_string(cloud.size()) + " " + std::to_string(faces) + " " + std::to_string(edges) + "\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (c) out += ' ';
      out += c < cloud.dim() ? format_double(cloud.coord(i, c)) : "0";
    }
    out += '\n';
  }
  for (const auto& s : k)
    if (s.size() == 3) out += "3 " + std::to_string(s[0]) + " " + std::to_string(s[1]) + " " + std::to_string(s[2]) + "\n";
  return out;
}

std::string complex_to_edge_list(const SimplexSet& k) {
  std::string out;
  for (const auto& s : k)
    if (s.size() == 2) out += std::to_string(s[0]) + " " + std::to_string(s[1]) + "\n";
  return out;
}

}  // namespace flatdel::io
