#include "degrade.hpp"

#include <string>

#include "errors.hpp"

namespace lfsr {

BlurSampleOperator::BlurSampleOperator(int hi_rows, int hi_cols, int alpha)
    : hi_rows_(hi_rows), hi_cols_(hi_cols), alpha_(alpha) {
  if (alpha < 1) throw ConfigError("super-resolution factor must be a positive integer");
  if (hi_rows < 1 || hi_cols < 1) throw ConfigError("image dimensions must be positive");
  if (hi_rows % alpha != 0 || hi_cols % alpha != 0)
    throw ConfigError("image of size " + std::to_string(hi_rows) + "x" +
                      std::to_string(hi_cols) + " is not divisible by alpha=" +
                      std::to_string(alpha));
}

void BlurSampleOperator::apply(std::span<const double> hi, std::span<double> lo) const {
  if (hi.size() != hi_size() || lo.size() != lo_size())
    throw DomainError("blur/sample operator: input or output length mismatch");
  const int lr = lo_rows();
  const double inv = 1.0 / (alpha_ * alpha_);
  for (int Y = 0; Y < lo_cols(); ++Y) {
    for (int X = 0; X < lr; ++X) {
      double sum = 0.0;
      for (int dy = 0; dy < alpha_; ++dy) {
        const double* col = hi.data() + static_cast<std::size_t>(Y * alpha_ + dy) * hi_rows_;
        for (int dx = 0; dx < alpha_; ++dx) sum += col[X * alpha_ + dx];
      }
      lo[static_cast<std::size_t>(Y) * lr + X] = sum * inv;
    }
  }
}

void BlurSampleOperator::apply_adjoint(std::span<const double> lo, std::span<double> hi) const {
  if (hi.size() != hi_size() || lo.size() != lo_size())
    throw DomainError("blur/sample adjoint: input or output length mismatch");
  const int lr = lo_rows();
  const double inv = 1.0 / (alpha_ * alpha_);
  for (int y = 0; y < hi_cols_; ++y) {
    const double* lo_col = lo.data() + static_cast<std::size_t>(y / alpha_) * lr;
    double* col = hi.data() + static_cast<std::size_t>(y) * hi_rows_;
    for (int x = 0; x < hi_rows_; ++x) col[x] = lo_col[x / alpha_] * inv;
  }
}

Image BlurSampleOperator::apply(const Image& hi) const {
  if (hi.rows() != hi_rows_ || hi.cols() != hi_cols_)
    throw DomainError("blur/sample operator: image shape mismatch");
  Image lo(lo_rows(), lo_cols());
  apply(hi.data(), lo.data());
  return lo;
}

Image BlurSampleOperator::apply_adjoint(const Image& lo) const {
  if (lo.rows() != lo_rows() || lo.cols() != lo_cols())
    throw DomainError("blur/sample adjoint: image shape mismatch");
  Image hi(hi_rows_, hi_cols_);
  apply_adjoint(lo.data(), hi.data());
  return hi;
}

Eigen::VectorXd BlurSampleOperator::apply(const Eigen::VectorXd& hi) const {
  Eigen::VectorXd lo(lo_size());
  apply(std::span<const double>(hi.data(), hi.size()), std::span<double>(lo.data(), lo.size()));
  return lo;
}

Eigen::VectorXd BlurSampleOperator::apply_adjoint(const Eigen::VectorXd& lo) const {
  Eigen::VectorXd hi(hi_size());
  apply_adjoint(std::span<const double>(lo.data(), lo.size()),
                std::span<double>(hi.data(), hi.size()));
  return hi;
}

Eigen::VectorXd BlurSampleOperator::apply_all(const Eigen::VectorXd& hi, int num_views) const {
  if (static_cast<std::size_t>(hi.size()) != hi_size() * num_views)
    throw DomainError("blur/sample operator: light field length mismatch");
  Eigen::VectorXd lo(lo_size() * num_views);
  for (int k = 0; k < num_views; ++k)
    apply(std::span<const double>(hi.data() + k * hi_size(), hi_size()),
          std::span<double>(lo.data() + k * lo_size(), lo_size()));
  return lo;
}

Eigen::VectorXd BlurSampleOperator::apply_adjoint_all(const Eigen::VectorXd& lo,
                                                      int num_views) const {
  if (static_cast<std::size_t>(lo.size()) != lo_size() * num_views)
    throw DomainError("blur/sample adjoint: light field length mismatch");
  Eigen::VectorXd hi(hi_size() * num_views);
  for (int k = 0; k < num_views; ++k)
    apply_adjoint(std::span<const double>(lo.data() + k * lo_size(), lo_size()),
                  std::span<double>(hi.data() + k * hi_size(), hi_size()));
  return hi;
}

BlurSampleOperator make_operator(int hi_rows, int hi_cols, int alpha) {
  return BlurSampleOperator(hi_rows, hi_cols, alpha);
}

LightField degrade_lightfield(const LightField& lf, int alpha) {
  const BlurSampleOperator op(lf.rows(), lf.cols(), alpha);
  if (alpha == 1) return lf;
  LightField out({lf.M(), op.lo_rows(), op.lo_cols()});
  for (int k = 0; k < static_cast<int>(lf.shape().num_views()); ++k)
    op.apply(lf.view_data(k), out.view_data(k));
  return out;
}

}  // namespace lfsr
