#include <doctest.h>

#include <cmath>
#include <set>

#include "hairweave/metrics.hpp"
#include "support.hpp"

using namespace hairweave;

namespace {

std::vector<Vec3> filled_box(const Vec3& lo, double side, int per_axis) {
    std::vector<Vec3> out;
    const double step = side / per_axis;
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j)
            for (int k = 0; k < per_axis; ++k) out.push_back(lo + step * Vec3(i + 0.5, j + 0.5, k + 0.5));
    return out;
}

PointCloud cloud(std::vector<Vec3> pts) { return PointCloud{std::move(pts)}; }

}  // namespace

TEST_CASE("chamfer") {
    Rng rng(31);
    SUBCASE("examples") {
        const PointCloud a = cloud(testing::random_points(rng, 50));
        CHECK(chamfer(a, a) == 0.0);
        CHECK(chamfer(cloud({Vec3(0, 0, 0)}), cloud({Vec3(1, 0, 0)})) == 1.0);
        CHECK(chamfer(cloud({Vec3(0, 0, 0)}), cloud({Vec3(0, 0, 0), Vec3(2, 0, 0)})) == doctest::Approx(0.5));
    }
    SUBCASE("matches brute force") {
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = testing::random_points(rng, 200);
            const auto b = testing::random_points(rng, 200 + trial * 13, 0.5);
            CHECK(std::abs(chamfer(cloud(a), cloud(b)) - testing::brute_force_chamfer(a, b)) <= 1e-12);
        }
        // Duplicates and collinear points stress the tree splits.
        std::vector<Vec3> line;
        for (int i = 0; i < 300; ++i) line.emplace_back(0.01 * (i % 37), 0.0, 0.0);
        const auto q = testing::random_points(rng, 100, 0.3);
        CHECK(std::abs(chamfer(cloud(line), cloud(q)) - testing::brute_force_chamfer(line, q)) <= 1e-12);
    }
    SUBCASE("symmetric, non-negative, zero on coincident sets") {
        for (int trial = 0; trial < 10; ++trial) {
            const PointCloud a = cloud(testing::random_points(rng, 80));
            const PointCloud b = cloud(testing::random_points(rng, 120));
            CHECK(chamfer(a, b) == chamfer(b, a));
            CHECK(chamfer(a, b) > 0.0);
        }
        const auto base = testing::random_points(rng, 40);
        std::vector<Vec3> repeated = base;
        repeated.insert(repeated.end(), base.begin(), base.begin() + 10);
        std::reverse(repeated.begin(), repeated.end());
        CHECK(chamfer(cloud(base), cloud(repeated)) == 0.0);
    }
    SUBCASE("rigid invariance") {
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = testing::random_points(rng, 150, 0.1);
            const auto b = testing::random_points(rng, 150, 0.1);
            const Eigen::Matrix3d r = testing::random_rotation(rng);
            const Vec3 t(rng.normal(), rng.normal(), rng.normal());
            std::vector<Vec3> ma;
            std::vector<Vec3> mb;
            for (const Vec3& p : a) ma.push_back(r * p + t);
            for (const Vec3& p : b) mb.push_back(r * p + t);
            CHECK(std::abs(chamfer(cloud(a), cloud(b)) - chamfer(cloud(ma), cloud(mb))) <= 1e-9);
        }
    }
    SUBCASE("empty clouds") {
        CHECK_THROWS_AS(chamfer(PointCloud{}, cloud({Vec3::Zero()})), DataError);
        CHECK_THROWS_AS(chamfer(cloud({Vec3::Zero()}), PointCloud{}), DataError);
    }
    SUBCASE("strand cloud keeps every polyline point") {
        const std::vector<Strand> strands{testing::random_walk_strand(rng, 7), testing::random_walk_strand(rng, 7)};
        const PointCloud c = strand_cloud(strands);
        REQUIRE(c.points.size() == 14);
        CHECK(c.points[8] == strands[1][1]);
    }
}

TEST_CASE("voxelize") {
    const VoxelGrid one = voxelize(cloud({Vec3::Zero()}), 0.01, Vec3::Zero());
    REQUIRE(one.occupied.size() == 1);
    CHECK(one.occupied[0] == VoxelIndex{0, 0, 0});

    const VoxelGrid same = voxelize(cloud({Vec3(0.001, 0.002, 0.003), Vec3(0.009, 0.005, 0.0)}), 0.01, Vec3::Zero());
    CHECK(same.occupied.size() == 1);

    const VoxelGrid negative = voxelize(cloud({Vec3(-0.005, 0.0, 0.0)}), 0.01, Vec3::Zero());
    CHECK(negative.occupied[0] == VoxelIndex{-1, 0, 0});

    for (double size : {0.01, 0.037, 0.25}) {
        const Vec3 origin(0.3, -0.2, 0.1);
        const auto pts = filled_box(origin, 7 * size, 7);
        const VoxelGrid g = voxelize(cloud(pts), size, origin);
        CHECK(g.occupied.size() == pts.size());
        CHECK(std::is_sorted(g.occupied.begin(), g.occupied.end()));
    }
    CHECK_THROWS_AS(voxelize(cloud({Vec3::Zero()}), 0.0, Vec3::Zero()), DataError);
}

TEST_CASE("point cloud iou") {
    Rng rng(41);
    SUBCASE("identical and separated") {
        const PointCloud a = cloud(testing::random_points(rng, 500, 0.1));
        CHECK(point_cloud_iou(a, a) == 1.0);
        std::vector<Vec3> far;
        for (const Vec3& p : a.points) far.push_back(p + Vec3(5, 0, 0));
        CHECK(point_cloud_iou(a, cloud(far)) == 0.0);
    }
    SUBCASE("half-overlapping cubes") {
        const auto a = filled_box(Vec3::Zero(), 0.2, 60);
        const auto b = filled_box(Vec3(0.1, 0.0, 0.0), 0.2, 60);
        const double iou = point_cloud_iou(cloud(a), cloud(b), 0.005);
        CHECK(std::abs(iou - 1.0 / 3.0) <= 0.02 / 3.0);
    }
    SUBCASE("matches set arithmetic") {
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = testing::random_points(rng, 400, 0.05);
            auto b = testing::random_points(rng, 300, 0.05);
            for (Vec3& p : b) p += Vec3(0.01 * trial, 0.0, 0.0);
            const double size = 0.004 + 0.002 * trial;
            const double got = point_cloud_iou(cloud(a), cloud(b), size);
            CHECK(std::abs(got - testing::brute_force_iou(a, b, size)) <= 1e-15);
            CHECK(got >= 0.0);
            CHECK(got <= 1.0);
        }
    }
    SUBCASE("translation away never increases overlap") {
        const auto a = filled_box(Vec3::Zero(), 0.1, 40);
        for (int axis = 0; axis < 3; ++axis) {
            double previous = 1.0;
            for (int step = 0; step <= 40; ++step) {
                std::vector<Vec3> b = a;
                for (Vec3& p : b) p[axis] += 0.0033 * step;
                const double iou = point_cloud_iou(cloud(a), cloud(b), 0.01);
                CHECK(iou <= previous + 1e-15);
                previous = iou;
            }
            CHECK(previous == 0.0);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(point_cloud_iou(PointCloud{}, cloud({Vec3::Zero()})), DataError);
        CHECK_THROWS_AS(point_cloud_iou(cloud({Vec3::Zero()}), cloud({Vec3::Zero()}), -1.0), DataError);
    }
}
