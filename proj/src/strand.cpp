#include "hairweave/strand.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace hairweave {

namespace {

bool finite(const Vec3& p) { return std::isfinite(p.x()) && std::isfinite(p.y()) && std::isfinite(p.z()); }

// Closest point on triangle abc to p; returns barycentric weights (u, v, w) of (a, b, c).
Vec3 closest_barycentric(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return {1.0, 0.0, 0.0};

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return {0.0, 1.0, 0.0};

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return {1.0 - v, v, 0.0};
    }

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return {0.0, 0.0, 1.0};

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return {1.0 - w, 0.0, w};
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return {0.0, 1.0 - w, w};
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return {1.0 - v - w, v, w};
}

Vec3 any_perpendicular(const Vec3& t) {
    int axis = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(t[i]) < std::abs(t[axis])) axis = i;
    }
    Vec3 e = Vec3::Zero();
    e[axis] = 1.0;
    return (e - e.dot(t) * t).normalized();
}

// Rotates v by the minimal rotation taking unit vector `from` onto unit vector `to`.
Vec3 transport(const Vec3& v, const Vec3& from, const Vec3& to) {
    const Vec3 axis = from.cross(to);
    const double c = from.dot(to);
    if (axis.squaredNorm() < 1e-30 || c <= -1.0 + 1e-12) return v;
    return v * c + axis.cross(v) + axis * (axis.dot(v) / (1.0 + c));
}

FrenetFrame make_frame(const Vec3& position, const Vec3& tangent, const Vec3& binormal_hint) {
    Vec3 b = binormal_hint - binormal_hint.dot(tangent) * tangent;
    const double norm = b.norm();
    b = norm > 1e-300 ? Vec3(b / norm) : any_perpendicular(tangent).cross(tangent);
    const Vec3 n = b.cross(tangent).normalized();
    return {position, tangent, n, tangent.cross(n)};
}

}  // namespace

Strand::Strand(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DataError("strand needs at least 2 points");
    for (const Vec3& p : points_) {
        if (!finite(p)) throw DataError("strand has non-finite coordinates");
    }
}

double Strand::arc_length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) total += (points_[i] - points_[i - 1]).norm();
    return total;
}

Strand Strand::transformed(const Eigen::Matrix3d& rotation, const Vec3& translation) const {
    std::vector<Vec3> out;
    out.reserve(points_.size());
    for (const Vec3& p : points_) out.emplace_back(rotation * p + translation);
    return Strand(std::move(out));
}

Strand Strand::translated(const Vec3& offset) const {
    std::vector<Vec3> out;
    out.reserve(points_.size());
    for (const Vec3& p : points_) out.emplace_back(p + offset);
    return Strand(std::move(out));
}

ScalpSurface::ScalpSurface(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces,
                           std::vector<Vec2> uvs)
    : vertices_(std::move(vertices)), faces_(std::move(faces)), uvs_(std::move(uvs)) {
    if (faces_.empty()) throw DataError("scalp mesh has no faces");
    if (uvs_.size() != vertices_.size()) throw DataError("scalp needs one UV per vertex");
    for (const Vec2& uv : uvs_) {
        if (!(uv.x() >= 0.0 && uv.x() <= 1.0 && uv.y() >= 0.0 && uv.y() <= 1.0)) {
            throw DataError("scalp UV outside [0,1]^2");
        }
    }
    std::map<std::pair<int, int>, int> edge_use;
    const int n = static_cast<int>(vertices_.size());
    for (const auto& f : faces_) {
        for (int k = 0; k < 3; ++k) {
            if (f[k] < 0 || f[k] >= n) throw DataError("scalp face references a missing vertex");
        }
        const Vec2 e1 = uvs_[f[1]] - uvs_[f[0]];
        const Vec2 e2 = uvs_[f[2]] - uvs_[f[0]];
        if (std::abs(e1.x() * e2.y() - e1.y() * e2.x()) <= 1e-14) {
            throw DataError("scalp face has a degenerate UV triangle");
        }
        for (int k = 0; k < 3; ++k) {
            const int a = f[k];
            const int b = f[(k + 1) % 3];
            if (++edge_use[{std::min(a, b), std::max(a, b)}] > 2) {
                throw DataError("scalp mesh is not a manifold patch");
            }
        }
    }
    face_centers_.reserve(faces_.size());
    face_radii_.reserve(faces_.size());
    for (const auto& f : faces_) {
        const Vec3 c = (vertices_[f[0]] + vertices_[f[1]] + vertices_[f[2]]) / 3.0;
        double r = 0.0;
        for (int k = 0; k < 3; ++k) r = std::max(r, (vertices_[f[k]] - c).norm());
        face_centers_.push_back(c);
        face_radii_.push_back(r);
    }
}

SurfacePoint ScalpSurface::closest_point(const Vec3& p) const {
    SurfacePoint best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        if ((p - face_centers_[i]).norm() - face_radii_[i] > best.distance) continue;
        const auto& f = faces_[i];
        const Vec3 bary = closest_barycentric(p, vertices_[f[0]], vertices_[f[1]], vertices_[f[2]]);
        const Vec3 q = bary[0] * vertices_[f[0]] + bary[1] * vertices_[f[1]] + bary[2] * vertices_[f[2]];
        const double d = (p - q).norm();
        if (d < best.distance) {
            best.distance = d;
            best.position = q;
            best.uv = bary[0] * uvs_[f[0]] + bary[1] * uvs_[f[1]] + bary[2] * uvs_[f[2]];
            best.face = static_cast<int>(i);
        }
    }
    best.uv = best.uv.cwiseMax(0.0).cwiseMin(1.0);
    return best;
}

Hairstyle::Hairstyle(std::vector<Strand> strands, std::shared_ptr<const ScalpSurface> scalp,
                     double root_tolerance, UpAxis up)
    : strands_(std::move(strands)), scalp_(std::move(scalp)), root_tolerance_(root_tolerance), up_(up) {
    if (strands_.empty()) throw DataError("hairstyle has no strands");
    if (!scalp_) throw DataError("hairstyle needs a scalp surface");
    const std::size_t length = strands_.front().size();
    roots_.reserve(strands_.size());
    for (std::size_t i = 0; i < strands_.size(); ++i) {
        if (strands_[i].size() != length) {
            throw DataError("strand " + std::to_string(i) + " has " + std::to_string(strands_[i].size()) +
                            " points, expected " + std::to_string(length));
        }
        roots_.push_back(scalp_->closest_point(strands_[i].root()));
        if (roots_.back().distance > root_tolerance_) {
            throw DataError("strand " + std::to_string(i) + " root is " + std::to_string(roots_.back().distance) +
                            " m from the scalp");
        }
    }
}

Strand resample(const Strand& strand, std::size_t count) {
    if (count < 2) throw DataError("resample needs at least 2 output points");
    const auto pts = strand.points();
    std::vector<double> cumulative(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) cumulative[i] = cumulative[i - 1] + (pts[i] - pts[i - 1]).norm();
    const double total = cumulative.back();
    if (!(total > 0.0)) throw DataError("zero-length strand");

    std::vector<Vec3> out(count);
    out.front() = pts.front();
    out.back() = pts.back();
    std::size_t seg = 0;
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double s = total * static_cast<double>(i) / static_cast<double>(count - 1);
        while (seg + 2 < pts.size() && cumulative[seg + 1] < s) ++seg;
        const double len = cumulative[seg + 1] - cumulative[seg];
        const double t = len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
        out[i] = pts[seg] + t * (pts[seg + 1] - pts[seg]);
    }
    return Strand(std::move(out));
}

std::vector<Vec3> directions(const Strand& strand) {
    const auto pts = strand.points();
    std::vector<Vec3> d;
    d.reserve(pts.size() - 1);
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) d.emplace_back(pts[j + 1] - pts[j]);
    return d;
}

std::vector<double> curvature_proxy(const Strand& strand) {
    const auto d = directions(strand);
    std::vector<double> g;
    if (d.size() < 2) return g;
    g.reserve(d.size() - 1);
    for (std::size_t j = 0; j + 1 < d.size(); ++j) g.push_back(d[j].cross(d[j + 1]).norm());
    return g;
}

std::vector<FrenetFrame> frenet_frames(const Strand& strand) {
    const auto pts = strand.points();
    const std::size_t n = pts.size();
    if (n < 3) throw DataError("Frenet frames need at least 3 points");
    if (!(strand.arc_length() > 0.0)) throw DataError("zero-length strand");

    const auto d = directions(strand);

    std::vector<Vec3> tangents(n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec3 t = Vec3::Zero();
        if (j > 0 && j + 1 < n) t = pts[j + 1] - pts[j - 1];
        if (t.squaredNorm() == 0.0 && j + 1 < n) t = d[j];
        if (t.squaredNorm() == 0.0 && j > 0) t = d[j - 1];
        if (t.squaredNorm() == 0.0 && j > 0) t = tangents[j - 1];
        tangents[j] = t;
    }
    // Leading coincident points borrow the first usable tangent.
    std::size_t first_valid = 0;
    while (first_valid < n && tangents[first_valid].squaredNorm() == 0.0) ++first_valid;
    for (std::size_t j = 0; j < first_valid; ++j) tangents[j] = tangents[first_valid];
    for (Vec3& t : tangents) t.normalize();

    // Binormal candidates at interior vertices; endpoints reuse their neighbour's.
    std::vector<std::optional<Vec3>> candidate(n);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const Vec3 b = d[j - 1].cross(d[j]);
        const double threshold = 1e-8 * d[j - 1].norm() * d[j].norm();
        if (b.norm() >= threshold && b.squaredNorm() > 0.0) candidate[j] = b;
    }
    candidate[0] = candidate[1];
    candidate[n - 1] = candidate[n - 2];

    std::vector<FrenetFrame> frames;
    frames.reserve(n);
    if (candidate[0]) {
        frames.push_back(make_frame(pts[0], tangents[0], *candidate[0]));
    } else {
        std::size_t k = 1;
        while (k < n && !candidate[k]) ++k;
        const Vec3 hint = k < n ? *candidate[k] : any_perpendicular(tangents[0]).cross(tangents[0]);
        frames.push_back(make_frame(pts[0], tangents[0], hint));
    }
    for (std::size_t j = 1; j < n; ++j) {
        if (candidate[j]) {
            frames.push_back(make_frame(pts[j], tangents[j], *candidate[j]));
        } else {
            const FrenetFrame& prev = frames.back();
            const Vec3 b = transport(prev.binormal, prev.tangent, tangents[j]);
            frames.push_back(make_frame(pts[j], tangents[j], b));
        }
    }
    return frames;
}

Strand laplacian_smooth(const Strand& strand, double lambda, int iterations) {
    if (strand.size() < 3) throw DataError("Laplacian smoothing needs at least 3 points");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw DataError("smoothing weight must lie in (0, 1]");
    if (iterations < 0) throw DataError("smoothing iteration count must be non-negative");
    std::vector<Vec3> current(strand.points().begin(), strand.points().end());
    std::vector<Vec3> next = current;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t j = 1; j + 1 < current.size(); ++j) {
            const Vec3 target = 0.5 * (current[j - 1] + current[j + 1]);
            next[j] = current[j] + lambda * (target - current[j]);
        }
        std::swap(current, next);
        next.front() = current.front();
        next.back() = current.back();
    }
    return Strand(std::move(current));
}

double laplacian_energy(const Strand& strand) {
    const auto pts = strand.points();
    double energy = 0.0;
    for (std::size_t j = 1; j + 1 < pts.size(); ++j) {
        energy += (pts[j - 1] - 2.0 * pts[j] + pts[j + 1]).squaredNorm();
    }
    return energy;
}

}  // namespace hairweave
