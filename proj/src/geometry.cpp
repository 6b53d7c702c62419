#include "pointwalk/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pointwalk/rng.hpp"

namespace pointwalk {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

PointCloud load_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open point file: " + path.string());

  PointCloud cloud;
  cloud.id = path.stem().string();

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::istringstream fields{std::string(body)};
    Vec3 p;
    std::string extra;
    if (!(fields >> p.x >> p.y >> p.z)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected three numbers per line");
    }
    if (fields >> extra) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected three numbers per line, got extra field '" + extra + "'");
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-finite coordinate");
    }
    cloud.points.push_back(p);
  }
  if (cloud.points.empty()) throw DataError("empty point file: " + path.string());
  return cloud;
}

void save_xyz(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write point file: " + path.string());
  out.precision(17);
  for (const Vec3& p : cloud.points) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

std::pair<PointCloud, ScaleInfo> normalize(const PointCloud& cloud) {
  if (cloud.points.empty()) throw std::invalid_argument("normalize: empty cloud");

  Vec3 lo = cloud.points.front(), hi = cloud.points.front();
  Vec3 sum;
  for (const Vec3& p : cloud.points) {
    sum += p;
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  ScaleInfo info;
  info.centroid = sum / double(cloud.size());
  info.bbox_diagonal = (hi - lo).norm();

  double max_norm2 = 0.0;
  for (const Vec3& p : cloud.points) max_norm2 = std::max(max_norm2, (p - info.centroid).norm2());
  info.scale_factor = std::sqrt(max_norm2);
  if (info.scale_factor == 0.0) throw DataError("degenerate cloud: all points identical");

  PointCloud out;
  out.id = cloud.id;
  out.label = cloud.label;
  out.points.reserve(cloud.points.size());
  for (const Vec3& p : cloud.points) out.points.push_back((p - info.centroid) / info.scale_factor);
  return {std::move(out), info};
}

ShapeKind shape_kind_from_string(std::string_view name) {
  if (name == "sphere") return ShapeKind::Sphere;
  if (name == "cube") return ShapeKind::Cube;
  if (name == "cylinder") return ShapeKind::Cylinder;
  if (name == "torus") return ShapeKind::Torus;
  throw DataError("unknown shape kind: " + std::string(name));
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Cube: return "cube";
    case ShapeKind::Cylinder: return "cylinder";
    case ShapeKind::Torus: return "torus";
  }
  return "?";
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Vec3 sample_sphere(Rng& rng) {
  const double z = rng.uniform_real(-1.0, 1.0);
  const double phi = kTwoPi * rng.uniform_real();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Vec3 sample_cube(Rng& rng) {
  const int face = int(rng.uniform_index(6));
  const double u = rng.uniform_real(-1.0, 1.0);
  const double v = rng.uniform_real(-1.0, 1.0);
  const double s = (face % 2 == 0) ? 1.0 : -1.0;
  switch (face / 2) {
    case 0: return {s, u, v};
    case 1: return {u, s, v};
    default: return {u, v, s};
  }
}

Vec3 sample_cylinder(Rng& rng) {
  // Radius 1, z in [-1, 1], closed by caps. Side area 4*pi, caps pi each.
  const double pick = rng.uniform_real() * 6.0;
  if (pick < 4.0) {
    const double theta = kTwoPi * rng.uniform_real();
    const double z = rng.uniform_real(-1.0, 1.0);
    return {std::cos(theta), std::sin(theta), z};
  }
  const double z = pick < 5.0 ? 1.0 : -1.0;
  const double r = std::sqrt(rng.uniform_real());
  const double theta = kTwoPi * rng.uniform_real();
  return {r * std::cos(theta), r * std::sin(theta), z};
}

Vec3 sample_torus(Rng& rng) {
  // Major radius 1, minor 0.4; rejection on the surface-area Jacobian.
  constexpr double R = 1.0, r = 0.4;
  const double phi = kTwoPi * rng.uniform_real();
  double theta;
  for (;;) {
    theta = kTwoPi * rng.uniform_real();
    if (rng.uniform_real() * (R + r) <= R + r * std::cos(theta)) break;
  }
  const double w = R + r * std::cos(theta);
  return {w * std::cos(phi), w * std::sin(phi), r * std::sin(theta)};
}

}  // namespace

PointCloud synth_shape(ShapeKind kind, int n, uint64_t seed) {
  if (n < 8) throw std::invalid_argument("synth_shape: need at least 8 points");
  Rng rng = Rng(seed).substream(stream::shape, uint64_t(kind));
  PointCloud cloud;
  cloud.id = std::string(to_string(kind)) + "_" + std::to_string(seed);
  cloud.points.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    switch (kind) {
      case ShapeKind::Sphere: cloud.points.push_back(sample_sphere(rng)); break;
      case ShapeKind::Cube: cloud.points.push_back(sample_cube(rng)); break;
      case ShapeKind::Cylinder: cloud.points.push_back(sample_cylinder(rng)); break;
      case ShapeKind::Torus: cloud.points.push_back(sample_torus(rng)); break;
    }
  }
  return cloud;
}

PointCloud perturb(const PointCloud& cloud, double sigma, uint64_t seed) {
  Rng rng = Rng(seed).substream(stream::noise);
  PointCloud out = cloud;
  for (Vec3& p : out.points) {
    p.x += sigma * rng.normal();
    p.y += sigma * rng.normal();
    p.z += sigma * rng.normal();
  }
  return out;
}

LabeledDataset load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path.string());

  std::string line;
  if (!std::getline(in, line) || trim(line) != "path,label") {
    throw DataError(path.string() + ": manifest must start with header \"path,label\"");
  }

  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";
  LabeledDataset ds;
  std::set<std::string> seen_paths;
  std::set<std::string> seen_ids;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const size_t comma = body.rfind(',');
    if (comma == std::string_view::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected \"path,label\"");
    }
    const std::string raw_path{trim(body.substr(0, comma))};
    const std::string label{trim(body.substr(comma + 1))};
    if (raw_path.empty() || label.empty()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected \"path,label\"");
    }
    if (!seen_paths.insert(raw_path).second) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": duplicate cloud path " + raw_path);
    }

    std::filesystem::path file(raw_path);
    if (file.is_relative()) file = base / file;
    if (!std::filesystem::exists(file)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": referenced file does not exist: " + file.string());
    }

    auto it = std::find(ds.class_names.begin(), ds.class_names.end(), label);
    int cls;
    if (it == ds.class_names.end()) {
      cls = int(ds.class_names.size());
      ds.class_names.push_back(label);
    } else {
      cls = int(it - ds.class_names.begin());
    }

    DatasetEntry entry{file.stem().string(), file, cls};
    if (!seen_ids.insert(entry.id).second) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": duplicate cloud id " + entry.id);
    }
    ds.entries.push_back(std::move(entry));
  }
  return ds;
}

}  // namespace pointwalk
