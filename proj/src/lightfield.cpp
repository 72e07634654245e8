#include "lightfield.hpp"

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace lfsr {

int linear_index(ViewCoord c, int M) {
  if (M < 1 || c.s < 1 || c.s > M || c.t < 1 || c.t > M) {
    throw DomainError("view coordinate (" + std::to_string(c.s) + "," +
                      std::to_string(c.t) + ") outside a " + std::to_string(M) +
                      "x" + std::to_string(M) + " array");
  }
  return (c.t - 1) * M + c.s;
}

ViewCoord view_coord(int k, int M) {
  if (M < 1 || k < 1 || k > M * M) {
    throw DomainError("linear view index " + std::to_string(k) + " outside 1.." +
                      std::to_string(M * M));
  }
  return {(k - 1) % M + 1, (k - 1) / M + 1};
}

Image::Image(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      px_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 1 || cols < 1) throw DomainError("image dimensions must be positive");
}

Image::Image(int rows, int cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), px_(std::move(column_major)) {
  if (rows < 1 || cols < 1) throw DomainError("image dimensions must be positive");
  if (px_.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("image buffer does not match its dimensions");
}

namespace {

void check_shape(const LightFieldShape& s) {
  if (s.M < 1 || s.rows < 1 || s.cols < 1)
    throw DomainError("light field dimensions must be positive");
}

}  // namespace

LightField::LightField(LightFieldShape shape, double fill) : shape_(shape) {
  check_shape(shape_);
  data_.assign(shape_.size(), fill);
}

LightField::LightField(LightFieldShape shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  check_shape(shape_);
  if (data_.size() != shape_.size())
    throw DomainError("light field buffer has " + std::to_string(data_.size()) +
                      " entries, expected " + std::to_string(shape_.size()));
}

LightField LightField::from_views(int M, const std::vector<Image>& views) {
  if (M < 1 || views.size() != static_cast<std::size_t>(M) * M)
    throw DomainError("expected " + std::to_string(M * M) + " views");
  LightField lf({M, views.front().rows(), views.front().cols()});
  for (std::size_t k = 0; k < views.size(); ++k) lf.set_view(static_cast<int>(k), views[k]);
  lf.validate_unit_range();
  return lf;
}

std::span<const double> LightField::view_data(int view) const {
  return std::span<const double>(data_).subspan(view * shape_.view_size(),
                                                shape_.view_size());
}

std::span<double> LightField::view_data(int view) {
  return std::span<double>(data_).subspan(view * shape_.view_size(),
                                          shape_.view_size());
}

Image LightField::view(int view) const {
  auto src = view_data(view);
  return Image(rows(), cols(), std::vector<double>(src.begin(), src.end()));
}

void LightField::set_view(int view, const Image& image) {
  if (image.rows() != rows() || image.cols() != cols())
    throw DomainError("view " + std::to_string(view + 1) + " has shape " +
                      std::to_string(image.rows()) + "x" + std::to_string(image.cols()) +
                      ", expected " + std::to_string(rows()) + "x" +
                      std::to_string(cols()));
  std::ranges::copy(image.data(), view_data(view).begin());
}

bool LightField::in_unit_range() const {
  return std::ranges::all_of(data_, [](double v) { return v >= 0.0 && v <= 1.0; });
}

void LightField::validate_unit_range() const {
  if (!in_unit_range()) throw DomainError("light field intensities must lie in [0, 1]");
}

VectorizedLightField vectorize(const LightField& lf) {
  VectorizedLightField v{lf.shape(), Eigen::VectorXd(lf.data().size())};
  std::ranges::copy(lf.data(), v.data.data());
  return v;
}

LightField devectorize(const VectorizedLightField& v) {
  if (static_cast<std::size_t>(v.data.size()) != v.layout.size())
    throw DomainError("vector length does not match its light field layout");
  return LightField(v.layout, std::vector<double>(v.data.begin(), v.data.end()));
}

Epi extract_epi(const LightField& lf, int s, int x) {
  if (s < 1 || s > lf.M() || x < 1 || x > lf.rows())
    throw DomainError("EPI index (s=" + std::to_string(s) + ", x=" + std::to_string(x) +
                      ") out of range");
  Image m(lf.M(), lf.cols());
  for (int t = 1; t <= lf.M(); ++t) {
    const int k = linear_index({s, t}, lf.M()) - 1;
    for (int y = 0; y < lf.cols(); ++y) m(t - 1, y) = lf.at(k, x - 1, y);
  }
  return {std::move(m), true, s, x};
}

Epi extract_epi_vertical(const LightField& lf, int t, int y) {
  if (t < 1 || t > lf.M() || y < 1 || y > lf.cols())
    throw DomainError("EPI index (t=" + std::to_string(t) + ", y=" + std::to_string(y) +
                      ") out of range");
  Image m(lf.M(), lf.rows());
  for (int s = 1; s <= lf.M(); ++s) {
    const int k = linear_index({s, t}, lf.M()) - 1;
    for (int x = 0; x < lf.rows(); ++x) m(s - 1, x) = lf.at(k, x, y - 1);
  }
  return {std::move(m), false, t, y};
}

}  // namespace lfsr
