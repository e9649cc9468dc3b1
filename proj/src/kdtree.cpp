#include "icemorph/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace icemorph {

namespace {

double component(const Vec3& p, int axis) {
  switch (axis) {
    case 0: return p.x;
    case 1: return p.y;
    default: return p.z;
  }
}

}  // namespace

KdTree::KdTree(std::vector<Vec3> points, int dim)
    : points_(std::move(points)), dim_(dim) {
  if (dim_ != 2 && dim_ != 3) throw std::invalid_argument("kd-tree dim must be 2 or 3");
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  nodes_.reserve(points_.size());
  if (!points_.empty()) root_ = build(0, points_.size());
  order_.clear();
  order_.shrink_to_fit();
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  // Split along the widest axis of this subset's bounding box.
  Vec3 lo = points_[order_[begin]], hi = points_[order_[begin]];
  for (std::size_t i = begin; i < end; ++i) {
    const Vec3& p = points_[order_[i]];
    lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
    lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
    lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
  }
  int axis = 0;
  double extent = hi.x - lo.x;
  if (hi.y - lo.y > extent) { axis = 1; extent = hi.y - lo.y; }
  if (dim_ == 3 && hi.z - lo.z > extent) axis = 2;

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](std::size_t a, std::size_t b) {
                     return component(points_[a], axis) < component(points_[b], axis);
                   });

  const std::size_t node_index = nodes_.size();
  nodes_.push_back({order_[mid], axis, npos, npos});
  if (mid > begin) nodes_[node_index].left = build(begin, mid);
  if (mid + 1 < end) nodes_[node_index].right = build(mid + 1, end);
  return node_index;
}

void KdTree::search(std::size_t node, const Vec3& query, std::size_t& best,
                    double& best_sq) const {
  const Node& n = nodes_[node];
  const double d_sq = squared_distance(points_[n.point], query);
  if (d_sq < best_sq || (d_sq == best_sq && n.point < best)) {
    best_sq = d_sq;
    best = n.point;
  }
  const double delta = component(query, n.axis) - component(points_[n.point], n.axis);
  const std::size_t near = delta < 0.0 ? n.left : n.right;
  const std::size_t far = delta < 0.0 ? n.right : n.left;
  if (near != npos) search(near, query, best, best_sq);
  if (far != npos && delta * delta <= best_sq) search(far, query, best, best_sq);
}

std::size_t KdTree::nearest(const Vec3& query, double& dist) const {
  if (points_.empty()) throw std::logic_error("nearest() on an empty kd-tree");
  std::size_t best = points_.size();
  double best_sq = std::numeric_limits<double>::infinity();
  search(root_, query, best, best_sq);
  dist = std::sqrt(best_sq);
  return best;
}

double KdTree::nearest_distance(const Vec3& query) const {
  double d = 0.0;
  nearest(query, d);
  return d;
}

}  // namespace icemorph
