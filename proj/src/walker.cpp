#include "pointwalk/walker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pointwalk {

WalkStrategy walk_strategy_from_string(std::string_view name) {
  if (name == "random") return WalkStrategy::Random;
  if (name == "high_variance") return WalkStrategy::HighVariance;
  if (name == "combined") return WalkStrategy::Combined;
  throw DataError("unknown walk strategy: " + std::string(name));
}

std::string_view to_string(WalkStrategy s) {
  switch (s) {
    case WalkStrategy::Random: return "random";
    case WalkStrategy::HighVariance: return "high_variance";
    case WalkStrategy::Combined: return "combined";
  }
  return "?";
}

int walk_length_from_fraction(double fraction, int n) {
  const int l = int(std::lround(fraction * n));
  return std::clamp(l, 1, n);
}

int WalkParams::resolve_length(int n) const {
  if (fraction > 0.0) return walk_length_from_fraction(fraction, n);
  if (length > n) {
    throw std::invalid_argument("walk longer than cloud: l=" + std::to_string(length) +
                                ", n=" + std::to_string(n));
  }
  if (length < 1) throw std::invalid_argument("walk length must be positive");
  return length;
}

namespace {

// Running per-axis sums and square sums of the walk so far. The covariance
// trace of (walk + candidate) is then O(1) per candidate.
struct Moments {
  Vec3 sum, sq;
  int count = 0;

  void add(const Vec3& p) {
    sum += p;
    sq += Vec3{p.x * p.x, p.y * p.y, p.z * p.z};
    ++count;
  }

  double trace_with(const Vec3& c) const {
    const double n = count + 1;
    double tr = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double mean = (sum[a] + c[a]) / n;
      const double mean_sq = (sq[a] + c[a] * c[a]) / n;
      tr += mean_sq - mean * mean;
    }
    return tr;
  }
};

int pick_max_trace(const Moments& m, std::span<const int> candidates, const PointCloud& cloud) {
  int best = candidates.front();
  double best_trace = m.trace_with(cloud.points[size_t(best)]);
  for (size_t i = 1; i < candidates.size(); ++i) {
    const int idx = candidates[i];
    const double tr = m.trace_with(cloud.points[size_t(idx)]);
    if (tr > best_trace || (tr == best_trace && idx < best)) {
      best = idx;
      best_trace = tr;
    }
  }
  return best;
}

}  // namespace

int high_variance_step(std::span<const Vec3> walk_points, std::span<const int> candidates,
                       const PointCloud& cloud) {
  if (candidates.empty()) throw std::invalid_argument("high_variance_step: no candidates");
  Moments m;
  for (const Vec3& p : walk_points) m.add(p);
  return pick_max_trace(m, candidates, cloud);
}

Walk generate_walk(const PointCloud& cloud, const KdTree& tree, const WalkParams& params,
                   Rng& rng) {
  const int n = cloud.size();
  const int l = params.resolve_length(n);
  const int k = std::min(params.k, n - 1);

  // Coin flips for the combined strategy live on their own stream so that
  // prob 0 reproduces the random strategy draw-for-draw and prob 1 the
  // high-variance one.
  Rng strat_rng = rng.substream(stream::strategy);

  Walk walk;
  walk.cloud_id = cloud.id;
  walk.indices.reserve(size_t(l));

  std::vector<char> visited(size_t(n), 0);
  Moments moments;

  int current = int(rng.uniform_index(uint64_t(n)));
  walk.indices.push_back(current);
  visited[size_t(current)] = 1;
  moments.add(cloud.points[size_t(current)]);

  std::vector<int> neighbors, cands;
  for (int t = 1; t < l; ++t) {
    cands.clear();
    if (k >= 1) {
      tree.knn(current, k, neighbors);
      for (int idx : neighbors) {
        if (!visited[size_t(idx)]) cands.push_back(idx);
      }
    }

    int next;
    if (cands.empty()) {
      // All k neighbors already visited: restart at a random unvisited point.
      uint64_t target = rng.uniform_index(uint64_t(n - t));
      next = -1;
      for (int i = 0; i < n; ++i) {
        if (!visited[size_t(i)] && target-- == 0) {
          next = i;
          break;
        }
      }
      walk.teleport_positions.push_back(t);
    } else {
      switch (params.strategy) {
        case WalkStrategy::Random:
          next = cands[size_t(rng.uniform_index(cands.size()))];
          break;
        case WalkStrategy::HighVariance:
          next = pick_max_trace(moments, cands, cloud);
          break;
        case WalkStrategy::Combined:
          next = strat_rng.bernoulli(params.combined_variance_prob)
                     ? pick_max_trace(moments, cands, cloud)
                     : cands[size_t(rng.uniform_index(cands.size()))];
          break;
        default:
          throw std::invalid_argument("unknown walk strategy");
      }
    }

    walk.indices.push_back(next);
    visited[size_t(next)] = 1;
    moments.add(cloud.points[size_t(next)]);
    current = next;
  }
  return walk;
}

std::vector<Walk> generate_walks(const PointCloud& cloud, const KdTree& tree,
                                 const WalkParams& params, int m, const Rng& rng) {
  if (m < 0) throw std::invalid_argument("generate_walks: m must be >= 0");
  std::vector<Walk> walks;
  walks.reserve(size_t(m));
  for (int j = 0; j < m; ++j) {
    Rng sub = rng.substream(stream::walk_ordinal, uint64_t(j));
    walks.push_back(generate_walk(cloud, tree, params, sub));
  }
  return walks;
}

void save_walks(const std::filesystem::path& path, std::span<const Walk> walks) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write walk file: " + path.string());
  for (const Walk& w : walks) {
    out << w.cloud_id;
    for (int idx : w.indices) out << ' ' << idx;
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<Walk> load_walks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open walk file: " + path.string());
  std::vector<Walk> walks;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    Walk w;
    if (!(fields >> w.cloud_id)) continue;
    int idx;
    while (fields >> idx) w.indices.push_back(idx);
    if (w.indices.empty()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": walk without indices");
    }
    walks.push_back(std::move(w));
  }
  return walks;
}

}  // namespace pointwalk
