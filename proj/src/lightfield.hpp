#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace lfsr {

// Angular position in the camera array, 1-based: s is the row, t the column.
struct ViewCoord {
  int s = 1;
  int t = 1;
  friend bool operator==(const ViewCoord&, const ViewCoord&) = default;
};

// Column-major linear view index k = (t-1)*M + s, 1-based.
int linear_index(ViewCoord c, int M);
ViewCoord view_coord(int k, int M);

// Single-channel image in column-major order. Pixel (x, y) is row x,
// column y, both 0-based.
class Image {
 public:
  Image() = default;
  Image(int rows, int cols, double fill = 0.0);
  Image(int rows, int cols, std::vector<double> column_major);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return px_.size(); }

  double operator()(int x, int y) const { return px_[index(x, y)]; }
  double& operator()(int x, int y) { return px_[index(x, y)]; }

  std::span<const double> data() const { return px_; }
  std::span<double> data() { return px_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * rows_ + x;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> px_;
};

struct LightFieldShape {
  int M = 1;
  int rows = 1;
  int cols = 1;

  std::size_t view_size() const { return static_cast<std::size_t>(rows) * cols; }
  std::size_t num_views() const { return static_cast<std::size_t>(M) * M; }
  std::size_t size() const { return view_size() * num_views(); }
  friend bool operator==(const LightFieldShape&, const LightFieldShape&) = default;
};

// M x M grid of rows x cols single-channel views. Storage is the vectorized
// layout: views ordered by linear index, pixels column-major within a view.
// Accessors take a 0-based view index (k - 1) and 0-based pixel coordinates.
class LightField {
 public:
  LightField() = default;
  explicit LightField(LightFieldShape shape, double fill = 0.0);
  LightField(LightFieldShape shape, std::vector<double> data);

  // Views listed by linear index. Throws DomainError on mismatched sizes
  // or intensities outside [0, 1].
  static LightField from_views(int M, const std::vector<Image>& views);

  const LightFieldShape& shape() const { return shape_; }
  int M() const { return shape_.M; }
  int rows() const { return shape_.rows; }
  int cols() const { return shape_.cols; }

  double at(int view, int x, int y) const { return data_[offset(view, x, y)]; }
  double& at(int view, int x, int y) { return data_[offset(view, x, y)]; }

  std::span<const double> view_data(int view) const;
  std::span<double> view_data(int view);
  Image view(int view) const;
  void set_view(int view, const Image& image);

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool in_unit_range() const;
  // Throws DomainError when an intensity leaves [0, 1].
  void validate_unit_range() const;

  friend bool operator==(const LightField&, const LightField&) = default;

 private:
  std::size_t offset(int view, int x, int y) const {
    return static_cast<std::size_t>(view) * shape_.view_size() +
           static_cast<std::size_t>(y) * shape_.rows + x;
  }
  LightFieldShape shape_;
  std::vector<double> data_;
};

struct VectorizedLightField {
  LightFieldShape layout;
  Eigen::VectorXd data;
};

VectorizedLightField vectorize(const LightField& lf);
LightField devectorize(const VectorizedLightField& v);

// Epipolar plane image. Horizontal: row t' holds row x of view (s, t'),
// shape M x cols. Vertical: row s' holds column y of view (s', t), shape
// M x rows.
struct Epi {
  Image matrix;
  bool horizontal = true;
  int angular = 1;  // s for horizontal, t for vertical (1-based)
  int spatial = 1;  // x for horizontal, y for vertical (1-based)
};

// s and x are 1-based, as in ViewCoord.
Epi extract_epi(const LightField& lf, int s, int x);
Epi extract_epi_vertical(const LightField& lf, int t, int y);

}  // namespace lfsr
