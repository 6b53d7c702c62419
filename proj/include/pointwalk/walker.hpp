#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pointwalk/geometry.hpp"
#include "pointwalk/kdtree.hpp"
#include "pointwalk/rng.hpp"

namespace pointwalk {

enum class WalkStrategy { Random, HighVariance, Combined };

WalkStrategy walk_strategy_from_string(std::string_view name);
std::string_view to_string(WalkStrategy s);

struct WalkParams {
  int length = 800;       // points per walk; ignored when fraction > 0
  double fraction = 0.0;  // walk length as a fraction of cloud size
  int k = 20;
  WalkStrategy strategy = WalkStrategy::Random;
  double combined_variance_prob = 0.3;

  // Effective length for a cloud of n points. Fixed lengths longer than the
  // cloud are an error; fractional lengths round and clamp to [1, n].
  int resolve_length(int n) const;
};

// round(fraction * n) clamped to [1, n].
int walk_length_from_fraction(double fraction, int n);

struct Walk {
  std::string cloud_id;
  std::vector<int> indices;
  std::vector<int> teleport_positions;  // sorted positions where a restart happened

  int length() const { return int(indices.size()); }
};

// One random walk: uniform origin, then each step draws from the unvisited
// members of the current point's k nearest neighbors (per strategy). When
// all k neighbors are visited the walk teleports to a uniformly random
// unvisited point and records the position. Deterministic per rng state.
Walk generate_walk(const PointCloud& cloud, const KdTree& tree, const WalkParams& params,
                   Rng& rng);

// m walks with independent sub-streams, reproducible per (seed, ordinal).
std::vector<Walk> generate_walks(const PointCloud& cloud, const KdTree& tree,
                                 const WalkParams& params, int m, const Rng& rng);

// The unvisited candidate that maximizes the trace of the coordinate
// covariance of (walk points so far + candidate); ties go to the lowest
// point index. Returns a point index from `candidates`.
int high_variance_step(std::span<const Vec3> walk_points, std::span<const int> candidates,
                       const PointCloud& cloud);

// Cache format: one line per walk, "cloud_id idx0 idx1 ... idx{l-1}".
// Teleport positions are not part of the format.
void save_walks(const std::filesystem::path& path, std::span<const Walk> walks);
std::vector<Walk> load_walks(const std::filesystem::path& path);

}  // namespace pointwalk
