#pragma once

#include <string>
#include <vector>

#include "pointwalk/geometry.hpp"

namespace pointwalk {

// Exact k-nearest-neighbor index over one point cloud. Median split on the
// widest-spread axis, leaves hold up to 16 points. The cloud must outlive
// the tree; queries are read-only and safe to run concurrently.
class KdTree {
 public:
  struct Node {
    int axis = -1;        // -1 marks a leaf
    double split = 0.0;
    int left = -1, right = -1;
    int begin = 0, end = 0;  // leaf range into order()
  };

  explicit KdTree(const PointCloud& cloud);

  // The k indices nearest to point `query_index`, excluding the query
  // itself, sorted by ascending distance with ties broken by ascending
  // index. Requires 1 <= k <= n-1.
  std::vector<int> knn(int query_index, int k) const;
  void knn(int query_index, int k, std::vector<int>& out) const;

  const std::string& cloud_id() const { return id_; }
  int size() const { return int(order_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& order() const { return order_; }

  static constexpr int kLeafSize = 16;

 private:
  int build(int begin, int end);

  const PointCloud* cloud_;
  std::string id_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace pointwalk
