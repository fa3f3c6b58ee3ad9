#include "hairweave/io.hpp"

#include <bit>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace hairweave {

namespace {

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& buf, double v) { put_u32(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
void put_f64(std::string& buf, double v) { put_u64(buf, std::bit_cast<std::uint64_t>(v)); }

// Bounds-checked little-endian reader over a byte string.
class Reader {
public:
    Reader(const std::string& bytes, std::string source) : bytes_(bytes), source_(std::move(source)) {}

    void expect_magic(const char* magic, const char* kind) {
        if (bytes_.size() < 4 || std::memcmp(bytes_.data(), magic, 4) != 0) {
            throw DataError(source_ + ": not a " + kind + " file (bad magic)");
        }
        pos_ = 4;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }

    double f32() { return static_cast<double>(std::bit_cast<float>(u32())); }
    double f64() { return std::bit_cast<double>(u64()); }

    unsigned char byte() {
        need(1);
        return static_cast<unsigned char>(bytes_[pos_++]);
    }

    void expect_size(std::size_t total) const {
        if (bytes_.size() != total) {
            throw DataError(source_ + ": expected " + std::to_string(total) + " bytes, found " +
                            std::to_string(bytes_.size()));
        }
    }

    void expect_end() const {
        if (pos_ != bytes_.size()) throw DataError(source_ + ": trailing bytes after payload");
    }

    const std::string& source() const { return source_; }

private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size()) throw DataError(source_ + ": truncated file");
    }

    const std::string& bytes_;
    std::string source_;
    std::size_t pos_ = 0;
};

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

void write_strands(std::ostream& out, std::span<const Strand> strands) {
    const std::size_t length = strands.empty() ? 0 : strands.front().size();
    std::string buf("HSTR");
    put_u32(buf, kStrandFileVersion);
    put_u32(buf, static_cast<std::uint32_t>(strands.size()));
    put_u32(buf, static_cast<std::uint32_t>(length));
    buf.reserve(16 + 12 * strands.size() * length);
    for (const Strand& s : strands) {
        if (s.size() != length) throw DataError("strand files need equal-length strands");
        for (const Vec3& p : s.points()) {
            put_f32(buf, p.x());
            put_f32(buf, p.y());
            put_f32(buf, p.z());
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<Strand> read_strands(std::istream& in, const std::string& source) {
    const std::string bytes = slurp(in);
    Reader r(bytes, source);
    r.expect_magic("HSTR", "strand");
    const std::uint32_t version = r.u32();
    if (version != kStrandFileVersion) throw DataError(source + ": unsupported strand file version " + std::to_string(version));
    const std::uint32_t count = r.u32();
    const std::uint32_t length = r.u32();
    r.expect_size(16 + 12ULL * count * length);
    std::vector<Strand> strands;
    strands.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::vector<Vec3> pts(length);
        for (Vec3& p : pts) {
            p.x() = r.f32();
            p.y() = r.f32();
            p.z() = r.f32();
        }
        try {
            strands.emplace_back(std::move(pts));
        } catch (const DataError& e) {
            throw DataError(source + ": strand " + std::to_string(i) + ": " + e.what());
        }
    }
    return strands;
}

void write_latent_map(std::ostream& out, const LatentMap& map) {
    std::string buf("HLAT");
    put_u32(buf, kLatentFileVersion);
    put_u32(buf, static_cast<std::uint32_t>(map.width()));
    put_u32(buf, static_cast<std::uint32_t>(map.height()));
    put_u32(buf, static_cast<std::uint32_t>(map.channels()));
    for (double v : map.data()) put_f32(buf, v);
    std::string bits((map.texel_count() + 7) / 8, '\0');
    const auto occ = map.occupancy();
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (occ[i]) bits[i / 8] = static_cast<char>(static_cast<unsigned char>(bits[i / 8]) | (1u << (i % 8)));
    }
    buf += bits;
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

LatentMap read_latent_map(std::istream& in, const std::string& source) {
    const std::string bytes = slurp(in);
    Reader r(bytes, source);
    r.expect_magic("HLAT", "latent map");
    const std::uint32_t version = r.u32();
    if (version != kLatentFileVersion) throw DataError(source + ": unsupported latent map version " + std::to_string(version));
    const std::uint32_t width = r.u32();
    const std::uint32_t height = r.u32();
    const std::uint32_t channels = r.u32();
    if (width == 0 || height == 0) throw DataError(source + ": latent map has zero size");
    const std::uint64_t texels = static_cast<std::uint64_t>(width) * height;
    r.expect_size(20 + 4 * texels * channels + (texels + 7) / 8);
    std::vector<double> values(texels * channels);
    for (double& v : values) v = r.f32();
    LatentMap map(static_cast<int>(width), static_cast<int>(height), static_cast<int>(channels));
    std::uint64_t t = 0;
    for (std::uint64_t byte = 0; byte < (texels + 7) / 8; ++byte) {
        const unsigned char bits = r.byte();
        for (int b = 0; b < 8 && t < texels; ++b, ++t) {
            if (!(bits & (1u << b))) continue;
            const int x = static_cast<int>(t % width);
            const int y = static_cast<int>(t / width);
            try {
                map.set(x, y, std::span<const double>(values).subspan(t * channels, channels));
            } catch (const Error& e) {
                throw DataError(source + ": texel (" + std::to_string(x) + ", " + std::to_string(y) + "): " + e.what());
            }
        }
    }
    r.expect_end();
    return map;
}

void write_basis(std::ostream& out, const PcaBasis& basis) {
    std::string buf("HPCA");
    put_u32(buf, kBasisFileVersion);
    put_u32(buf, static_cast<std::uint32_t>(basis.strand_length()));
    put_u32(buf, static_cast<std::uint32_t>(basis.latent_dim()));
    for (Eigen::Index i = 0; i < basis.mean().size(); ++i) put_f64(buf, basis.mean()[i]);
    for (Eigen::Index k = 0; k < basis.eigenvalues().size(); ++k) put_f64(buf, basis.eigenvalues()[k]);
    for (Eigen::Index k = 0; k < basis.components().cols(); ++k) {
        for (Eigen::Index i = 0; i < basis.components().rows(); ++i) put_f64(buf, basis.components()(i, k));
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

PcaBasis read_basis(std::istream& in, const std::string& source) {
    const std::string bytes = slurp(in);
    Reader r(bytes, source);
    r.expect_magic("HPCA", "basis");
    const std::uint32_t version = r.u32();
    if (version != kBasisFileVersion) throw DataError(source + ": unsupported basis version " + std::to_string(version));
    const std::uint32_t length = r.u32();
    const std::uint32_t k = r.u32();
    const std::uint64_t dim = 3ULL * length;
    r.expect_size(16 + 8 * (dim + k + k * dim));
    Tensor mean(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < mean.size(); ++i) mean[i] = r.f64();
    Tensor eig(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < eig.size(); ++i) eig[i] = r.f64();
    Eigen::MatrixXd comps(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(k));
    for (Eigen::Index c = 0; c < comps.cols(); ++c) {
        for (Eigen::Index i = 0; i < comps.rows(); ++i) comps(i, c) = r.f64();
    }
    if (!mean.allFinite() || !eig.allFinite() || !comps.allFinite()) throw DataError(source + ": non-finite basis values");
    if (k > 0) {
        const Eigen::MatrixXd gram = comps.transpose() * comps;
        if ((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-8) {
            throw DataError(source + ": basis components are not orthonormal");
        }
    }
    try {
        return PcaBasis(std::move(mean), std::move(comps), std::move(eig));
    } catch (const DataError& e) {
        throw DataError(source + ": " + e.what());
    }
}

std::string encode_pbm(const BinaryImage& image) {
    std::string out = "P4\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
    const int row_bytes = (image.width() + 7) / 8;
    for (int y = 0; y < image.height(); ++y) {
        std::string row(static_cast<std::size_t>(row_bytes), '\0');
        for (int x = 0; x < image.width(); ++x) {
            if (image.get(x, y)) row[x / 8] = static_cast<char>(static_cast<unsigned char>(row[x / 8]) | (0x80u >> (x % 8)));
        }
        out += row;
    }
    return out;
}

std::string encode_pgm(const BinaryImage& image) {
    std::string out = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    for (std::uint8_t p : image.pixels()) out.push_back(static_cast<char>(p ? 255 : 0));
    return out;
}

BinaryImage decode_bitmap(const std::string& bytes, const std::string& source) {
    std::size_t pos = 0;
    const auto token = [&]() {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        return bytes.substr(start, pos - start);
    };
    const std::string magic = token();
    if (magic != "P4" && magic != "P5") throw DataError(source + ": expected a P4 or P5 image");
    const long long w = parse_integer(token(), source + " width");
    const long long h = parse_integer(token(), source + " height");
    if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16) throw DataError(source + ": invalid image size");
    if (magic == "P5") {
        const long long maxval = parse_integer(token(), source + " maxval");
        if (maxval <= 0 || maxval > 255) throw DataError(source + ": only 8-bit graymaps are supported");
    }
    ++pos;  // single whitespace before the raster
    BinaryImage image(static_cast<int>(w), static_cast<int>(h));
    if (magic == "P4") {
        const std::size_t row_bytes = static_cast<std::size_t>((w + 7) / 8);
        if (bytes.size() != pos + row_bytes * static_cast<std::size_t>(h)) throw DataError(source + ": raster size mismatch");
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const auto byte = static_cast<unsigned char>(bytes[pos + y * row_bytes + x / 8]);
                if (byte & (0x80u >> (x % 8))) image.set(x, y);
            }
        }
    } else {
        if (bytes.size() != pos + static_cast<std::size_t>(w * h)) throw DataError(source + ": raster size mismatch");
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (bytes[pos + static_cast<std::size_t>(y) * w + x] != 0) image.set(x, y);
            }
        }
    }
    return image;
}

void write_obj(std::ostream& out, std::span<const Strand> strands) {
    out.precision(9);
    for (const Strand& s : strands) {
        for (const Vec3& p : s.points()) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    }
    std::size_t base = 1;
    for (const Strand& s : strands) {
        out << 'l';
        for (std::size_t i = 0; i < s.size(); ++i) out << ' ' << base + i;
        out << '\n';
        base += s.size();
    }
}

std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& source) {
    std::vector<KeyValue> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError(source + ":" + std::to_string(number) + ": expected `key = value`");
        }
        KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), number};
        if (kv.key.empty()) throw DataError(source + ":" + std::to_string(number) + ": empty key");
        entries.push_back(std::move(kv));
    }
    return entries;
}

std::vector<KeyValue> read_key_value_file(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return parse_key_values(in, path.string());
}

double parse_double(const std::string& text, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
        throw DataError("invalid number '" + text + "' for " + what);
    }
    return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw DataError("invalid integer '" + text + "' for " + what);
    }
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw DataError("invalid unsigned integer '" + text + "' for " + what);
    }
    return v;
}

void apply_braid_param(BraidParams& params, const std::string& key, const std::string& value) {
    if (key == "num_groups") {
        params.num_groups = static_cast<int>(parse_integer(value, key));
    } else if (key == "width") {
        params.width = parse_double(value, key);
    } else if (key == "thickness") {
        params.thickness = parse_double(value, key);
    } else if (key == "oscillation_period") {
        params.oscillation_period = parse_double(value, key);
    } else if (key == "strands_per_group") {
        params.strands_per_group = static_cast<int>(parse_integer(value, key));
    } else if (key == "group_radius") {
        params.group_radius = parse_double(value, key);
    } else if (key == "phase_offsets") {
        params.phase_offsets.clear();
        std::istringstream list(value);
        std::string item;
        while (std::getline(list, item, ',')) params.phase_offsets.push_back(parse_double(trim(item), key));
    } else if (key == "smooth_lambda") {
        params.smooth_lambda = parse_double(value, key);
    } else if (key == "smooth_iterations") {
        params.smooth_iterations = static_cast<int>(parse_integer(value, key));
    } else {
        throw DataError("unknown braid parameter '" + key + "'");
    }
}

BraidParams parse_braid_params(std::span<const KeyValue> entries) {
    BraidParams params;
    for (const KeyValue& kv : entries) apply_braid_param(params, kv.key, kv.value);
    params.validate();
    return params;
}

void apply_sampler_param(SamplerConfig& config, const std::string& key, const std::string& value) {
    if (key == "steps") {
        config.steps = static_cast<int>(parse_integer(value, key));
    } else if (key == "guidance_scale") {
        config.guidance_scale = parse_double(value, key);
    } else if (key == "eta") {
        config.eta = parse_double(value, key);
    } else if (key == "seed") {
        config.seed = parse_u64(value, key);
    } else {
        throw DataError("unknown sampler parameter '" + key + "'");
    }
}

SamplerConfig parse_sampler_config(std::span<const KeyValue> entries) {
    SamplerConfig config;
    for (const KeyValue& kv : entries) apply_sampler_param(config, kv.key, kv.value);
    return config;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + path.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw DataError("cannot write " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError("cannot write " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    return slurp(in);
}

void write_strand_file(const std::filesystem::path& path, std::span<const Strand> strands) {
    std::ostringstream out;
    write_strands(out, strands);
    write_file_atomically(path, out.str());
}

std::vector<Strand> read_strand_file(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_strands(in, path.string());
}

void write_latent_file(const std::filesystem::path& path, const LatentMap& map) {
    std::ostringstream out;
    write_latent_map(out, map);
    write_file_atomically(path, out.str());
}

LatentMap read_latent_file(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_latent_map(in, path.string());
}

void write_basis_file(const std::filesystem::path& path, const PcaBasis& basis) {
    std::ostringstream out;
    write_basis(out, basis);
    write_file_atomically(path, out.str());
}

PcaBasis read_basis_file(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return read_basis(in, path.string());
}

void write_pbm_file(const std::filesystem::path& path, const BinaryImage& image) {
    write_file_atomically(path, encode_pbm(image));
}

BinaryImage read_bitmap_file(const std::filesystem::path& path) { return decode_bitmap(read_file(path), path.string()); }

}  // namespace hairweave
