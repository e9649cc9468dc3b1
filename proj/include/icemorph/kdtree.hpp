#pragma once

#include <cstddef>
#include <vector>

#include "icemorph/vec.hpp"

namespace icemorph {

// Static kd-tree for exact nearest-neighbor queries, 2D or 3D.
class KdTree {
 public:
  KdTree() = default;
  KdTree(std::vector<Vec3> points, int dim);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  // Index of the closest stored point and its distance. Tree must be non-empty.
  std::size_t nearest(const Vec3& query, double& dist) const;
  double nearest_distance(const Vec3& query) const;

 private:
  struct Node {
    std::size_t point = 0;
    int axis = 0;
    std::size_t left = npos;
    std::size_t right = npos;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t build(std::size_t begin, std::size_t end);
  void search(std::size_t node, const Vec3& query, std::size_t& best,
              double& best_sq) const;

  std::vector<Vec3> points_;
  std::vector<std::size_t> order_;  // permutation being partitioned at build
  std::vector<Node> nodes_;
  std::size_t root_ = npos;
  int dim_ = 3;
};

}  // namespace icemorph
