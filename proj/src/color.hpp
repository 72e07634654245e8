#pragma once

#include <array>

#include "lightfield.hpp"

namespace lfsr {

// ITU-R BT.601 full-range (JFIF) transform:
//   Y  =  0.299    R + 0.587    G + 0.114    B
//   Cb = -0.168736 R - 0.331264 G + 0.5      B + 0.5
//   Cr =  0.5      R - 0.418688 G - 0.081312 B + 0.5
// Chroma is offset by 0.5 so that neutral gray maps to Cb = Cr = 0.5 and
// every channel stays in [0, 1]. The inverse is the exact matrix inverse.
struct LumaChroma {
  double y, cb, cr;
};

LumaChroma rgb_to_ycbcr(double r, double g, double b);
std::array<double, 3> ycbcr_to_rgb(double y, double cb, double cr);

struct ColorLightField {
  std::array<LightField, 3> rgb;
};

struct LumaChromaLightField {
  LightField luma;
  LightField cb;
  LightField cr;
};

LumaChromaLightField rgb_to_luma_chroma(const ColorLightField& color);
// Results are clamped to [0, 1].
ColorLightField luma_chroma_to_rgb(const LumaChromaLightField& ycc);

}  // namespace lfsr
