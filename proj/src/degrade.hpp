#pragma once

#include <span>

#include <Eigen/Core>

#include "lightfield.hpp"

namespace lfsr {

// Box blur of size alpha x alpha followed by regular sampling, realized as
// exact averaging over disjoint alpha x alpha blocks. Works on one
// column-major view; light-field-wide application is block diagonal.
class BlurSampleOperator {
 public:
  // Throws ConfigError when the shape is not divisible by alpha.
  BlurSampleOperator(int hi_rows, int hi_cols, int alpha);

  int alpha() const { return alpha_; }
  int hi_rows() const { return hi_rows_; }
  int hi_cols() const { return hi_cols_; }
  int lo_rows() const { return hi_rows_ / alpha_; }
  int lo_cols() const { return hi_cols_ / alpha_; }
  std::size_t hi_size() const { return static_cast<std::size_t>(hi_rows_) * hi_cols_; }
  std::size_t lo_size() const { return static_cast<std::size_t>(lo_rows()) * lo_cols(); }

  void apply(std::span<const double> hi, std::span<double> lo) const;
  void apply_adjoint(std::span<const double> lo, std::span<double> hi) const;

  Image apply(const Image& hi) const;
  Image apply_adjoint(const Image& lo) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& hi) const;
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& lo) const;

  // A = I (x) SB over all views of a vectorized light field.
  Eigen::VectorXd apply_all(const Eigen::VectorXd& hi, int num_views) const;
  Eigen::VectorXd apply_adjoint_all(const Eigen::VectorXd& lo, int num_views) const;

 private:
  int hi_rows_;
  int hi_cols_;
  int alpha_;
};

BlurSampleOperator make_operator(int hi_rows, int hi_cols, int alpha);

// Block-averages every view. alpha == 1 returns the input unchanged.
LightField degrade_lightfield(const LightField& lf, int alpha);

}  // namespace lfsr
