#include "hairweave/codec.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace hairweave {

namespace {

struct AxisTap {
    int index;
    double weight;
};

// Source taps for each destination index along one axis.
std::vector<std::vector<AxisTap>> axis_taps(int source, int dest) {
    std::vector<std::vector<AxisTap>> taps(dest);
    const double scale = static_cast<double>(source) / dest;
    if (dest <= source) {
        for (int x = 0; x < dest; ++x) {
            const double lo = x * scale;
            const double hi = (x + 1) * scale;
            for (int i = static_cast<int>(std::floor(lo)); i < source && i < hi; ++i) {
                const double overlap = std::min(hi, i + 1.0) - std::max(lo, static_cast<double>(i));
                if (overlap > 0.0) taps[x].push_back({i, overlap});
            }
        }
    } else {
        for (int x = 0; x < dest; ++x) {
            const double f = (x + 0.5) * scale - 0.5;
            const int i0 = static_cast<int>(std::floor(f));
            const double t = f - i0;
            if (i0 >= 0 && 1.0 - t > 0.0) taps[x].push_back({i0, 1.0 - t});
            if (i0 + 1 < source && t > 0.0) taps[x].push_back({i0 + 1, t});
        }
    }
    return taps;
}

// Weighted mean accumulated as offsets from the first contributor, so equal inputs
// reproduce themselves bit for bit.
class WeightedMean {
public:
    explicit WeightedMean(int channels) : reference_(channels), sum_(Tensor::Zero(channels)) {}

    void add(std::span<const double> value, double weight) {
        if (weight_ == 0.0) {
            for (std::size_t c = 0; c < value.size(); ++c) reference_[c] = value[c];
        }
        for (std::size_t c = 0; c < value.size(); ++c) sum_[c] += weight * (value[c] - reference_[c]);
        weight_ += weight;
    }

    bool empty() const { return weight_ == 0.0; }
    Tensor result() const { return reference_ + sum_ / weight_; }

private:
    Tensor reference_;
    Tensor sum_;
    double weight_ = 0.0;
};

}  // namespace

PcaBasis::PcaBasis(Tensor mean, Eigen::MatrixXd components, Tensor eigenvalues)
    : mean_(std::move(mean)), components_(std::move(components)), eigenvalues_(std::move(eigenvalues)) {
    if (mean_.size() < 6 || mean_.size() % 3 != 0) throw DataError("basis mean must hold at least 2 points");
    if (components_.rows() != mean_.size() && components_.cols() > 0) {
        throw DataError("basis components do not match the mean strand length");
    }
    if (components_.cols() == 0) components_.resize(mean_.size(), 0);
    if (eigenvalues_.size() != components_.cols()) throw DataError("basis needs one eigenvalue per component");
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        if (!(eigenvalues_[k] >= 0.0)) throw DataError("basis eigenvalues must be non-negative");
        if (k > 0 && eigenvalues_[k] > eigenvalues_[k - 1]) throw DataError("basis eigenvalues must be descending");
    }
}

Tensor flatten(const Strand& strand) {
    Tensor flat(3 * static_cast<Eigen::Index>(strand.size()));
    for (std::size_t i = 0; i < strand.size(); ++i) flat.segment<3>(3 * static_cast<Eigen::Index>(i)) = strand[i];
    return flat;
}

Strand unflatten(const Tensor& flat) {
    if (flat.size() % 3 != 0) throw DataError("flattened strand length is not a multiple of 3");
    std::vector<Vec3> points(static_cast<std::size_t>(flat.size() / 3));
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = flat.segment<3>(3 * static_cast<Eigen::Index>(i));
    return Strand(std::move(points));
}

PcaBasis fit_basis(std::span<const Strand> strands, int components) {
    if (strands.empty()) throw DataError("fit_basis needs at least one strand");
    const std::size_t length = strands.front().size();
    const auto n = static_cast<Eigen::Index>(strands.size());
    const Eigen::Index dim = 3 * static_cast<Eigen::Index>(length);

    Eigen::MatrixXd data(n, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (strands[i].size() != length) {
            throw DataError("strand " + std::to_string(i) + " length differs from strand 0");
        }
        data.row(i) = flatten(strands[i]).transpose();
    }
    const Tensor mean = data.colwise().mean().transpose();

    if (n == 1) {
        if (components != 0) throw DataError("a single strand admits only K = 0");
        return PcaBasis(mean, Eigen::MatrixXd(dim, 0), Tensor(0));
    }
    const Eigen::Index max_k = std::min(dim, n - 1);
    if (components < 1 || components > max_k) {
        throw DataError("K = " + std::to_string(components) + " outside [1, " + std::to_string(max_k) + "]");
    }

    data.rowwise() -= mean.transpose();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinV);
    Eigen::MatrixXd basis = svd.matrixV().leftCols(components);
    Tensor eigenvalues = svd.singularValues().head(components).array().square() / static_cast<double>(n - 1);

    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            if (std::abs(basis(r, k)) > 1e-12) {
                if (basis(r, k) < 0.0) basis.col(k) *= -1.0;
                break;
            }
        }
    }
    return PcaBasis(mean, std::move(basis), std::move(eigenvalues));
}

Tensor encode_strand(const PcaBasis& basis, const Strand& strand) {
    if (strand.size() != basis.strand_length()) {
        throw DataError("strand has " + std::to_string(strand.size()) + " points, basis expects " +
                        std::to_string(basis.strand_length()));
    }
    return basis.components().transpose() * (flatten(strand) - basis.mean());
}

Strand decode_strand(const PcaBasis& basis, const Tensor& latent) {
    if (latent.size() != basis.latent_dim()) throw DataError("latent size does not match the basis");
    const Tensor flat = basis.mean() + basis.components() * latent;
    if (!flat.allFinite()) throw NumericError("decoded strand has non-finite coordinates");
    return unflatten(flat);
}

double reconstruction_rmse(const PcaBasis& basis, std::span<const Strand> strands) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Strand& s : strands) {
        const Strand r = decode_strand(basis, encode_strand(basis, s));
        for (std::size_t i = 0; i < s.size(); ++i) sum += (r[i] - s[i]).squaredNorm();
        count += s.size();
    }
    return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

LatentMap::LatentMap(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
    if (width <= 0 || height <= 0) throw DataError("latent map dimensions must be positive");
    if (channels < 0) throw DataError("latent map channel count must be non-negative");
    data_.assign(texel_count() * static_cast<std::size_t>(channels), 0.0);
    occupancy_.assign(texel_count(), 0);
}

std::size_t LatentMap::occupied_count() const {
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

std::span<const double> LatentMap::texel(int x, int y) const {
    return std::span<const double>(data_).subspan(index(x, y) * channels_, channels_);
}

Tensor LatentMap::texel_vector(int x, int y) const {
    const auto t = texel(x, y);
    return Eigen::Map<const Tensor>(t.data(), channels_);
}

void LatentMap::set(int x, int y, std::span<const double> latent) {
    if (static_cast<int>(latent.size()) != channels_) throw DataError("latent size does not match map channels");
    for (double v : latent) {
        if (!std::isfinite(v)) throw NumericError("non-finite latent value");
    }
    std::copy(latent.begin(), latent.end(), data_.begin() + static_cast<std::ptrdiff_t>(index(x, y) * channels_));
    occupancy_[index(x, y)] = 1;
}

void LatentMap::clear(int x, int y) {
    std::fill_n(data_.begin() + static_cast<std::ptrdiff_t>(index(x, y) * channels_), channels_, 0.0);
    occupancy_[index(x, y)] = 0;
}

Tensor LatentMap::to_tensor() const { return Eigen::Map<const Tensor>(data_.data(), static_cast<Eigen::Index>(data_.size())); }

void LatentMap::assign(const Tensor& values) {
    if (values.size() != static_cast<Eigen::Index>(data_.size())) throw DataError("tensor size does not match latent map");
    for (std::size_t t = 0; t < texel_count(); ++t) {
        for (int c = 0; c < channels_; ++c) {
            const std::size_t i = t * channels_ + c;
            data_[i] = occupancy_[t] ? values[static_cast<Eigen::Index>(i)] : 0.0;
        }
    }
}

std::array<int, 2> texel_of(const Vec2& uv, int width, int height) {
    const int x = std::clamp(static_cast<int>(std::floor(uv.x() * width)), 0, width - 1);
    const int y = std::clamp(static_cast<int>(std::floor(uv.y() * height)), 0, height - 1);
    return {x, y};
}

LatentMap build_latent_map(const Hairstyle& hairstyle, const PcaBasis& basis, int width, int height,
                           double root_tolerance) {
    const int k = basis.latent_dim();
    LatentMap map(width, height, k);
    std::vector<Tensor> sums(map.texel_count());
    std::vector<int> counts(map.texel_count(), 0);
    for (std::size_t i = 0; i < hairstyle.size(); ++i) {
        const SurfacePoint& root = hairstyle.root_projection(i);
        if (root.distance > root_tolerance) {
            throw DataError("strand " + std::to_string(i) + " root is " + std::to_string(root.distance) +
                            " m from the scalp");
        }
        const auto [x, y] = texel_of(root.uv, width, height);
        const std::size_t t = static_cast<std::size_t>(y) * width + x;
        const Tensor z = encode_strand(basis, hairstyle.strand(i));
        if (counts[t] == 0) {
            sums[t] = z;
        } else {
            sums[t] += z;
        }
        ++counts[t];
    }
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t t = static_cast<std::size_t>(y) * width + x;
            if (counts[t] == 0) continue;
            const Tensor mean = counts[t] == 1 ? sums[t] : Tensor(sums[t] / counts[t]);
            map.set(x, y, std::span<const double>(mean.data(), static_cast<std::size_t>(mean.size())));
        }
    }
    return map;
}

Tensor sample_latent_map(const LatentMap& map, const Vec2& uv, int search_radius) {
    if (!(uv.x() >= 0.0 && uv.x() <= 1.0 && uv.y() >= 0.0 && uv.y() <= 1.0)) {
        throw DataError("sample UV outside [0,1]^2");
    }
    const double fx = uv.x() * map.width() - 0.5;
    const double fy = uv.y() * map.height() - 0.5;
    const int x0 = static_cast<int>(std::floor(fx));
    const int y0 = static_cast<int>(std::floor(fy));
    const double tx = fx - x0;
    const double ty = fy - y0;

    WeightedMean acc(map.channels());
    for (int dy = 0; dy <= 1; ++dy) {
        for (int dx = 0; dx <= 1; ++dx) {
            const int x = x0 + dx;
            const int y = y0 + dy;
            if (x < 0 || y < 0 || x >= map.width() || y >= map.height() || !map.occupied(x, y)) continue;
            const double w = (dx ? tx : 1.0 - tx) * (dy ? ty : 1.0 - ty);
            if (w > 0.0) acc.add(map.texel(x, y), w);
        }
    }
    if (!acc.empty()) return acc.result();

    // Nearest occupied texel center; ties resolved in row-major order.
    double best = std::numeric_limits<double>::infinity();
    int bx = -1;
    int by = -1;
    const int reach = search_radius + 1;
    for (int y = std::max(0, y0 - reach); y <= std::min(map.height() - 1, y0 + reach + 1); ++y) {
        for (int x = std::max(0, x0 - reach); x <= std::min(map.width() - 1, x0 + reach + 1); ++x) {
            if (!map.occupied(x, y)) continue;
            const double d = std::hypot(x - fx, y - fy);
            if (d <= search_radius && d < best) {
                best = d;
                bx = x;
                by = y;
            }
        }
    }
    if (bx < 0) throw DataError("sparse region: no occupied texel within " + std::to_string(search_radius) + " texels");
    return map.texel_vector(bx, by);
}

LatentMap resize_latent_map(const LatentMap& map, int width, int height) {
    LatentMap out(width, height, map.channels());
    const auto xtaps = axis_taps(map.width(), width);
    const auto ytaps = axis_taps(map.height(), height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            WeightedMean acc(map.channels());
            for (const AxisTap& ty : ytaps[y]) {
                for (const AxisTap& tx : xtaps[x]) {
                    if (map.occupied(tx.index, ty.index)) acc.add(map.texel(tx.index, ty.index), tx.weight * ty.weight);
                }
            }
            if (acc.empty()) continue;
            const Tensor v = acc.result();
            out.set(x, y, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
        }
    }
    return out;
}

FidelityReport fidelity_metrics(std::span<const Strand> predicted, std::span<const Strand> truth,
                                const FidelityWeights& weights) {
    if (predicted.size() != truth.size()) throw DataError("fidelity metrics need equal strand counts");
    if (predicted.empty()) throw DataError("fidelity metrics need at least one strand");
    double pos = 0.0;
    double dir = 0.0;
    double curv = 0.0;
    std::size_t npos = 0;
    std::size_t ndir = 0;
    std::size_t ncurv = 0;
    for (std::size_t s = 0; s < truth.size(); ++s) {
        const Strand& a = predicted[s];
        const Strand& b = truth[s];
        if (a.size() != b.size()) throw DataError("strand " + std::to_string(s) + " point counts differ");
        for (std::size_t j = 0; j < a.size(); ++j) pos += (a[j] - b[j]).norm();
        npos += a.size();

        const auto da = directions(a);
        const auto db = directions(b);
        for (std::size_t j = 0; j < da.size(); ++j) {
            const double na = da[j].norm();
            const double nb = db[j].norm();
            if (na == 0.0 || nb == 0.0 || da[j] == db[j]) continue;
            dir += 1.0 - std::clamp(da[j].dot(db[j]) / (na * nb), -1.0, 1.0);
        }
        ndir += da.size();

        const auto ga = curvature_proxy(a);
        const auto gb = curvature_proxy(b);
        for (std::size_t j = 0; j < ga.size(); ++j) curv += std::abs(ga[j] - gb[j]);
        ncurv += ga.size();
    }
    FidelityReport report;
    report.pos_l2 = weights.position * pos / static_cast<double>(npos);
    report.dir_cos_loss = weights.direction * dir / static_cast<double>(ndir);
    report.curv_l2 = ncurv > 0 ? weights.curvature * curv / static_cast<double>(ncurv) : 0.0;
    return report;
}

}  // namespace hairweave
