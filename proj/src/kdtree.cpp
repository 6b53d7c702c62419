#include "pointwalk/kdtree.hpp"

#include <algorithm>
#include <stdexcept>

namespace pointwalk {

KdTree::KdTree(const PointCloud& cloud) : cloud_(&cloud), id_(cloud.id) {
  if (cloud.points.empty()) throw std::invalid_argument("KdTree: empty cloud");
  order_.resize(cloud.points.size());
  for (size_t i = 0; i < order_.size(); ++i) order_[i] = int(i);
  nodes_.reserve(2 * order_.size() / kLeafSize + 2);
  build(0, int(order_.size()));
}

int KdTree::build(int begin, int end) {
  const int node_id = int(nodes_.size());
  nodes_.push_back({});

  if (end - begin <= kLeafSize) {
    nodes_[node_id].begin = begin;
    nodes_[node_id].end = end;
    return node_id;
  }

  // Split on the widest-spread axis; ties resolve to the lowest axis.
  const auto& pts = cloud_->points;
  Vec3 lo = pts[order_[begin]], hi = lo;
  for (int i = begin + 1; i < end; ++i) {
    const Vec3& p = pts[order_[i]];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  }

  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int ia, int ib) {
                     const double ca = pts[ia][axis], cb = pts[ib][axis];
                     return ca < cb || (ca == cb && ia < ib);
                   });

  const double split = pts[order_[mid]][axis];
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[node_id].axis = axis;
  nodes_[node_id].split = split;
  nodes_[node_id].left = left;
  nodes_[node_id].right = right;
  return node_id;
}

namespace {

struct Cand {
  double d2;
  int idx;
  // Lexicographic (distance, index); the heap keeps the worst on top.
  bool operator<(const Cand& o) const { return d2 < o.d2 || (d2 == o.d2 && idx < o.idx); }
};

}  // namespace

void KdTree::knn(int query_index, int k, std::vector<int>& out) const {
  const int n = size();
  if (query_index < 0 || query_index >= n) throw std::invalid_argument("knn: bad query index");
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("knn: k must be in [1, n-1], got k=" + std::to_string(k) +
                                " with n=" + std::to_string(n));
  }

  const Vec3 q = cloud_->points[query_index];
  std::vector<Cand> heap;
  heap.reserve(size_t(k));

  // Near side first; the far side is skipped only when the heap is full and
  // even an exact distance tie there could not improve it.
  auto visit = [&](auto&& self, int node_id) -> void {
    const Node& node = nodes_[node_id];
    if (node.axis < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int idx = order_[i];
        if (idx == query_index) continue;
        const Cand c{dist2(q, cloud_->points[idx]), idx};
        if (int(heap.size()) < k) {
          heap.push_back(c);
          std::push_heap(heap.begin(), heap.end());
        } else if (c < heap.front()) {
          std::pop_heap(heap.begin(), heap.end());
          heap.back() = c;
          std::push_heap(heap.begin(), heap.end());
        }
      }
      return;
    }
    const double diff = q[node.axis] - node.split;
    const int near = diff < 0.0 ? node.left : node.right;
    const int far = diff < 0.0 ? node.right : node.left;
    self(self, near);
    if (int(heap.size()) < k || diff * diff <= heap.front().d2) self(self, far);
  };
  visit(visit, 0);

  std::sort(heap.begin(), heap.end());
  out.clear();
  out.reserve(heap.size());
  for (const Cand& c : heap) out.push_back(c.idx);
}

std::vector<int> KdTree::knn(int query_index, int k) const {
  std::vector<int> out;
  knn(query_index, k, out);
  return out;
}

}  // namespace pointwalk
