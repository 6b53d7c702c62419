#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pointwalk/common.hpp"

namespace pointwalk {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  bool operator==(const Vec3& o) const = default;
};

inline double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

// An ordered set of 3D points. Indices 0..n-1 are stable for the cloud's
// lifetime; walks and trees reference points by index.
struct PointCloud {
  std::string id;
  std::vector<Vec3> points;
  std::optional<int> label;

  int size() const { return static_cast<int>(points.size()); }
};

// What normalize() removed: applying (p - centroid) / scale_factor to the
// original points reproduces the normalized cloud exactly.
struct ScaleInfo {
  Vec3 centroid;
  double bbox_diagonal = 0.0;  // axis-aligned, measured before normalization
  double scale_factor = 1.0;
};

// Parses an ASCII XYZ file: one point per line, three whitespace-separated
// numbers. Blank lines and lines whose first non-space char is '#' are
// skipped. The cloud id is the file stem.
PointCloud load_xyz(const std::filesystem::path& path);

void save_xyz(const std::filesystem::path& path, const PointCloud& cloud);

// Centers the cloud on its centroid and scales so the farthest point sits on
// the unit sphere. Throws DataError("degenerate cloud") if all points
// coincide.
std::pair<PointCloud, ScaleInfo> normalize(const PointCloud& cloud);

enum class ShapeKind { Sphere, Cube, Cylinder, Torus };

ShapeKind shape_kind_from_string(std::string_view name);
std::string_view to_string(ShapeKind kind);

// n points sampled uniformly on the surface of the primitive; deterministic
// per (kind, n, seed). Requires n >= 8.
PointCloud synth_shape(ShapeKind kind, int n, uint64_t seed);

// Per-coordinate Gaussian jitter, deterministic per seed.
PointCloud perturb(const PointCloud& cloud, double sigma, uint64_t seed);

struct DatasetEntry {
  std::string id;
  std::filesystem::path path;
  int label = 0;
};

struct LabeledDataset {
  std::vector<DatasetEntry> entries;
  std::vector<std::string> class_names;

  int num_classes() const { return static_cast<int>(class_names.size()); }
};

// CSV manifest with header "path,label". Labels map to class indices in
// first-appearance order. Relative paths resolve against the manifest's
// directory; every referenced file must exist.
LabeledDataset load_manifest(const std::filesystem::path& path);

}  // namespace pointwalk
