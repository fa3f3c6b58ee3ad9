#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hairweave/common.hpp"
#include "hairweave/strand.hpp"

namespace hairweave {

inline constexpr double kDefaultVoxelSize = 0.01;

struct PointCloud {
    std::vector<Vec3> points;
};

// All polyline points of the strands, in order.
PointCloud strand_cloud(std::span<const Strand> strands);

// Static 3D tree over a point set for exact nearest-neighbour distance queries.
class KdTree {
public:
    explicit KdTree(std::span<const Vec3> points);

    // Euclidean distance to the nearest stored point.
    double nearest_distance(const Vec3& query) const;

private:
    struct Node {
        int point;
        int axis;
        int left;
        int right;
    };

    int build(std::vector<int>& order, int begin, int end, int depth);
    void search(int node, const Vec3& q, double& best_sq) const;

    std::vector<Vec3> points_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

// 0.5 * (mean_a min_b |a-b| + mean_b min_a |a-b|), in meters.
double chamfer(const PointCloud& a, const PointCloud& b);

using VoxelIndex = std::array<std::int64_t, 3>;

struct VoxelGrid {
    Vec3 origin = Vec3::Zero();
    double voxel_size = kDefaultVoxelSize;
    std::vector<VoxelIndex> occupied;  // sorted, unique
};

VoxelGrid voxelize(const PointCloud& cloud, double voxel_size, const Vec3& origin);

// Intersection over union of voxel occupancy with the origin at the union's minimum corner.
double point_cloud_iou(const PointCloud& a, const PointCloud& b, double voxel_size = kDefaultVoxelSize);

}  // namespace hairweave
