#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>

#include "hairweave/strand.hpp"

namespace hairweave {

inline constexpr double kHeadRadius = 0.09;

// Spherical cap around +y out to 80 degrees from the crown. UVs map the cap to
// the disk of radius 0.5 centered at (0.5, 0.5); the crown is the center.
std::shared_ptr<const ScalpSurface> make_hemisphere_scalp(double radius = kHeadRadius, int rings = 24,
                                                          int segments = 64);

// Shared default scalp used by the command-line tools.
std::shared_ptr<const ScalpSurface> builtin_scalp();

enum class StyleKind { Straight, Wavy, Curly };

StyleKind parse_style(std::string_view name);
std::string_view style_name(StyleKind kind);

// Procedural hairstyle: roots area-uniform on the scalp, strands falling under a
// gravity-like blend with style-dependent sinusoidal or helical perturbation.
Hairstyle synth_hairstyle(StyleKind kind, std::size_t strand_count, std::uint64_t seed,
                          std::size_t points = kDefaultStrandLength,
                          std::shared_ptr<const ScalpSurface> scalp = builtin_scalp());

}  // namespace hairweave
