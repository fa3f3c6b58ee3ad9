#include "hairweave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>

namespace hairweave {

namespace {

void require_non_empty(const PointCloud& cloud) {
    if (cloud.points.empty()) throw DataError("point cloud is empty");
}

double mean_nearest(const PointCloud& from, const KdTree& to) {
    double sum = 0.0;
    for (const Vec3& p : from.points) sum += to.nearest_distance(p);
    return sum / static_cast<double>(from.points.size());
}

}  // namespace

PointCloud strand_cloud(std::span<const Strand> strands) {
    PointCloud cloud;
    for (const Strand& s : strands) cloud.points.insert(cloud.points.end(), s.points().begin(), s.points().end());
    return cloud;
}

KdTree::KdTree(std::span<const Vec3> points) : points_(points.begin(), points.end()) {
    std::vector<int> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(order, 0, static_cast<int>(order.size()), 0);
}

int KdTree::build(std::vector<int>& order, int begin, int end, int depth) {
    if (begin >= end) return -1;
    const int axis = depth % 3;
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end, [&](int a, int b) {
        if (points_[a][axis] != points_[b][axis]) return points_[a][axis] < points_[b][axis];
        return a < b;
    });
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back({order[mid], axis, -1, -1});
    const int left = build(order, begin, mid, depth + 1);
    const int right = build(order, mid + 1, end, depth + 1);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

void KdTree::search(int node, const Vec3& q, double& best_sq) const {
    if (node < 0) return;
    const Node& n = nodes_[node];
    const double d_sq = (points_[n.point] - q).squaredNorm();
    best_sq = std::min(best_sq, d_sq);
    const double delta = q[n.axis] - points_[n.point][n.axis];
    const int near = delta < 0.0 ? n.left : n.right;
    const int far = delta < 0.0 ? n.right : n.left;
    search(near, q, best_sq);
    if (delta * delta <= best_sq) search(far, q, best_sq);
}

double KdTree::nearest_distance(const Vec3& query) const {
    if (root_ < 0) throw DataError("nearest-neighbour query on an empty tree");
    double best_sq = std::numeric_limits<double>::infinity();
    search(root_, query, best_sq);
    return std::sqrt(best_sq);
}

double chamfer(const PointCloud& a, const PointCloud& b) {
    require_non_empty(a);
    require_non_empty(b);
    const KdTree tree_a(a.points);
    const KdTree tree_b(b.points);
    return 0.5 * (mean_nearest(a, tree_b) + mean_nearest(b, tree_a));
}

VoxelGrid voxelize(const PointCloud& cloud, double voxel_size, const Vec3& origin) {
    if (!(voxel_size > 0.0)) throw DataError("voxel size must be positive");
    VoxelGrid grid;
    grid.origin = origin;
    grid.voxel_size = voxel_size;
    grid.occupied.reserve(cloud.points.size());
    for (const Vec3& p : cloud.points) {
        VoxelIndex v;
        for (int k = 0; k < 3; ++k) v[k] = static_cast<std::int64_t>(std::floor((p[k] - origin[k]) / voxel_size));
        grid.occupied.push_back(v);
    }
    std::sort(grid.occupied.begin(), grid.occupied.end());
    grid.occupied.erase(std::unique(grid.occupied.begin(), grid.occupied.end()), grid.occupied.end());
    return grid;
}

double point_cloud_iou(const PointCloud& a, const PointCloud& b, double voxel_size) {
    require_non_empty(a);
    require_non_empty(b);
    Vec3 origin = a.points.front();
    for (const Vec3& p : a.points) origin = origin.cwiseMin(p);
    for (const Vec3& p : b.points) origin = origin.cwiseMin(p);
    const VoxelGrid ga = voxelize(a, voxel_size, origin);
    const VoxelGrid gb = voxelize(b, voxel_size, origin);
    std::vector<VoxelIndex> common;
    std::set_intersection(ga.occupied.begin(), ga.occupied.end(), gb.occupied.begin(), gb.occupied.end(),
                          std::back_inserter(common));
    const std::size_t united = ga.occupied.size() + gb.occupied.size() - common.size();
    return static_cast<double>(common.size()) / static_cast<double>(united);
}

}  // namespace hairweave
