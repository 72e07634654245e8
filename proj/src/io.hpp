#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "color.hpp"
#include "lightfield.hpp"

namespace lfsr {

// Decoded PNG: one plane per channel (1 = gray, 3 = RGB; alpha dropped),
// intensities scaled to [0, 1].
struct Raster {
  std::vector<Image> planes;
  int bit_depth = 8;  // 8 or 16
};

Raster read_png(const std::filesystem::path& path);
// Values are quantized with round-half-up to the bit depth after clamping
// to [0, 1]. One plane writes gray, three write RGB.
void write_png(const std::filesystem::path& path, const std::vector<Image>& planes, int bit_depth);
std::uint32_t quantize(double value, int bit_depth);

// A light field on disk: a directory of view_SS_TT.png files (1-based,
// zero-padded) plus an optional lightfield.cfg holding `angular_size = M`.
struct Dataset {
  std::vector<LightField> channels;  // 1 (gray) or 3 (RGB)
  int bit_depth = 8;

  const LightFieldShape& shape() const { return channels.front().shape(); }
  ColorLightField color() const;  // gray is replicated into R, G and B
  LightField luma() const;
};

std::string view_filename(int s, int t);

// Throws IoError naming the offending file on a missing view, an
// unreadable file or inconsistent sizes.
Dataset load_lightfield(const std::filesystem::path& dir);
void save_lightfield(const Dataset& data, const std::filesystem::path& dir);

}  // namespace lfsr
