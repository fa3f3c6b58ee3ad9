#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hairweave/braid.hpp"
#include "hairweave/codec.hpp"
#include "hairweave/diffusion.hpp"
#include "hairweave/image.hpp"
#include "hairweave/strand.hpp"

namespace hairweave {

// Strand container, little-endian:
//   "HSTR" | u32 version = 1 | u32 strand_count | u32 L | strand_count * L * 3 f32 (x, y, z)
inline constexpr std::uint32_t kStrandFileVersion = 1;
// Latent map container, little-endian:
//   "HLAT" | u32 version = 1 | u32 width | u32 height | u32 K | W*H*K f32 (row-major, channels innermost)
//   | ceil(W*H/8) bytes occupancy, texel i at bit (i % 8) of byte i / 8
inline constexpr std::uint32_t kLatentFileVersion = 1;
// Codec basis container, little-endian:
//   "HPCA" | u32 version = 1 | u32 L | u32 K | 3L f64 mean | K f64 eigenvalues | K * 3L f64 components
inline constexpr std::uint32_t kBasisFileVersion = 1;

void write_strands(std::ostream& out, std::span<const Strand> strands);
std::vector<Strand> read_strands(std::istream& in, const std::string& source);
void write_strand_file(const std::filesystem::path& path, std::span<const Strand> strands);
std::vector<Strand> read_strand_file(const std::filesystem::path& path);

void write_latent_map(std::ostream& out, const LatentMap& map);
LatentMap read_latent_map(std::istream& in, const std::string& source);
void write_latent_file(const std::filesystem::path& path, const LatentMap& map);
LatentMap read_latent_file(const std::filesystem::path& path);

void write_basis(std::ostream& out, const PcaBasis& basis);
PcaBasis read_basis(std::istream& in, const std::string& source);
void write_basis_file(const std::filesystem::path& path, const PcaBasis& basis);
PcaBasis read_basis_file(const std::filesystem::path& path);

// "P4\n<w> <h>\n" followed by rows packed MSB first.
std::string encode_pbm(const BinaryImage& image);
// "P5\n<w> <h>\n255\n" followed by one byte per pixel (0 or 255).
std::string encode_pgm(const BinaryImage& image);
// Accepts P4 and P5 (non-zero gray is foreground).
BinaryImage decode_bitmap(const std::string& bytes, const std::string& source);
void write_pbm_file(const std::filesystem::path& path, const BinaryImage& image);
BinaryImage read_bitmap_file(const std::filesystem::path& path);

// Polyline OBJ: one `v` line per point, one `l` line per strand.
void write_obj(std::ostream& out, std::span<const Strand> strands);

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

// `key = value` lines; `#` starts a comment; blank lines ignored.
std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& source);
std::vector<KeyValue> read_key_value_file(const std::filesystem::path& path);

// Keys are the BraidParams field names; phase_offsets is a comma-separated list.
BraidParams parse_braid_params(std::span<const KeyValue> entries);
void apply_braid_param(BraidParams& params, const std::string& key, const std::string& value);
// Keys: steps, guidance_scale, eta, seed.
SamplerConfig parse_sampler_config(std::span<const KeyValue> entries);
void apply_sampler_param(SamplerConfig& config, const std::string& key, const std::string& value);

double parse_double(const std::string& text, const std::string& what);
long long parse_integer(const std::string& text, const std::string& what);
std::uint64_t parse_u64(const std::string& text, const std::string& what);

// Writes through a temporary sibling and renames it into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace hairweave
