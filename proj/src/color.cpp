#include "color.hpp"

#include <algorithm>

#include <Eigen/Dense>

#include "errors.hpp"

namespace lfsr {

namespace {

const Eigen::Matrix3d& forward_matrix() {
  static const Eigen::Matrix3d m = [] {
    Eigen::Matrix3d f;
    f << 0.299, 0.587, 0.114,
        -0.168736, -0.331264, 0.5,
        0.5, -0.418688, -0.081312;
    return f;
  }();
  return m;
}

const Eigen::Matrix3d& inverse_matrix() {
  static const Eigen::Matrix3d m = forward_matrix().inverse();
  return m;
}

}  // namespace

LumaChroma rgb_to_ycbcr(double r, double g, double b) {
  const Eigen::Vector3d ycc = forward_matrix() * Eigen::Vector3d(r, g, b);
  return {ycc(0), ycc(1) + 0.5, ycc(2) + 0.5};
}

std::array<double, 3> ycbcr_to_rgb(double y, double cb, double cr) {
  const Eigen::Vector3d rgb = inverse_matrix() * Eigen::Vector3d(y, cb - 0.5, cr - 0.5);
  return {rgb(0), rgb(1), rgb(2)};
}

LumaChromaLightField rgb_to_luma_chroma(const ColorLightField& color) {
  const auto& shape = color.rgb[0].shape();
  if (!(color.rgb[1].shape() == shape) || !(color.rgb[2].shape() == shape))
    throw DomainError("color channels have mismatched shapes");
  LumaChromaLightField out{LightField(shape), LightField(shape), LightField(shape)};
  const auto n = shape.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto ycc = rgb_to_ycbcr(color.rgb[0].data()[i], color.rgb[1].data()[i],
                                  color.rgb[2].data()[i]);
    out.luma.data()[i] = std::clamp(ycc.y, 0.0, 1.0);
    out.cb.data()[i] = std::clamp(ycc.cb, 0.0, 1.0);
    out.cr.data()[i] = std::clamp(ycc.cr, 0.0, 1.0);
  }
  return out;
}

ColorLightField luma_chroma_to_rgb(const LumaChromaLightField& ycc) {
  const auto& shape = ycc.luma.shape();
  if (!(ycc.cb.shape() == shape) || !(ycc.cr.shape() == shape))
    throw DomainError("luma and chroma have mismatched shapes");
  ColorLightField out{{LightField(shape), LightField(shape), LightField(shape)}};
  const auto n = shape.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto rgb = ycbcr_to_rgb(ycc.luma.data()[i], ycc.cb.data()[i], ycc.cr.data()[i]);
    for (int c = 0; c < 3; ++c) out.rgb[c].data()[i] = std::clamp(rgb[c], 0.0, 1.0);
  }
  return out;
}

}  // namespace lfsr
