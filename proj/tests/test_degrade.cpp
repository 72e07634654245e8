#include <doctest.h>

#include <random>

#include "degrade.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace lfsr;

namespace {

Image random_image(int rows, int cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(rows, cols);
  for (auto& v : img.data()) v = u(rng);
  return img;
}

// Block means by a direct double loop.
Image block_means(const Image& hi, int alpha) {
  Image lo(hi.rows() / alpha, hi.cols() / alpha);
  for (int Y = 0; Y < lo.cols(); ++Y)
    for (int X = 0; X < lo.rows(); ++X) {
      double sum = 0.0;
      for (int i = 0; i < alpha; ++i)
        for (int j = 0; j < alpha; ++j) sum += hi(X * alpha + i, Y * alpha + j);
      lo(X, Y) = sum / (alpha * alpha);
    }
  return lo;
}

}  // namespace

TEST_CASE("alpha 1 is the identity") {
  std::mt19937 rng(1);
  const Image img = random_image(5, 7, rng);
  const BlurSampleOperator sb(5, 7, 1);
  CHECK(sb.apply(img) == img);
  CHECK(sb.apply_adjoint(img) == img);
}

TEST_CASE("block mean of a checker block") {
  Image img(2, 2);
  img(0, 0) = 0;
  img(0, 1) = 1;
  img(1, 0) = 1;
  img(1, 1) = 0;
  const Image lo = BlurSampleOperator(2, 2, 2).apply(img);
  REQUIRE(lo.rows() == 1);
  CHECK(lo(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("forward operator matches block means") {
  std::mt19937 rng(2);
  for (int alpha : {2, 3}) {
    const int n = alpha == 2 ? 8 : 6;
    const Image hi = random_image(n, n, rng);
    const Image lo = BlurSampleOperator(n, n, alpha).apply(hi);
    const Image ref = block_means(hi, alpha);
    REQUIRE(lo.rows() == ref.rows());
    for (int y = 0; y < ref.cols(); ++y)
      for (int x = 0; x < ref.rows(); ++x) CHECK(lo(x, y) == doctest::Approx(ref(x, y)).epsilon(1e-14));
  }
}

TEST_CASE("constants are preserved") {
  for (double c : {0.0, 0.3, 1.0}) {
    const Image lo = BlurSampleOperator(6, 4, 2).apply(Image(6, 4, c));
    for (double v : lo.data()) CHECK(v == doctest::Approx(c).epsilon(1e-15));
  }
}

TEST_CASE("adjoint spreads a unit pixel over its block") {
  Image lo(2, 2, 0.0);
  lo(1, 0) = 1.0;
  const Image hi = BlurSampleOperator(4, 4, 2).apply_adjoint(lo);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(hi(x, y) == ((x >= 2 && y < 2) ? 0.25 : 0.0));
}

TEST_CASE("adjoint identity over random pairs") {
  std::mt19937 rng(3);
  const BlurSampleOperator sb(12, 9, 3);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd x = oracle::random_vector(108, rng, -1, 1);
    const Eigen::VectorXd y = oracle::random_vector(12, rng, -1, 1);
    CHECK(std::abs(sb.apply(x).dot(y) - x.dot(sb.apply_adjoint(y))) <= 1e-10);
  }
}

TEST_CASE("materialized operator equals the brute-force matrix and its transpose") {
  for (auto [r, c, a] : {std::tuple{4, 4, 2}, std::tuple{8, 8, 2}, std::tuple{6, 6, 3}}) {
    const BlurSampleOperator sb(r, c, a);
    const Eigen::MatrixXd ref = oracle::blur_sample(r, c, a);
    Eigen::MatrixXd fwd(ref.rows(), ref.cols()), adj(ref.cols(), ref.rows());
    for (int j = 0; j < ref.cols(); ++j) fwd.col(j) = sb.apply(Eigen::VectorXd::Unit(ref.cols(), j));
    for (int j = 0; j < ref.rows(); ++j) adj.col(j) = sb.apply_adjoint(Eigen::VectorXd::Unit(ref.rows(), j));
    CHECK((fwd - ref).cwiseAbs().maxCoeff() == 0.0);
    CHECK((adj - ref.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("non-divisible sizes are rejected") {
  CHECK_THROWS_AS(BlurSampleOperator(64, 64, 3), ConfigError);
  CHECK_THROWS_AS(BlurSampleOperator(4, 4, 0), ConfigError);
}

TEST_CASE("degrade_lightfield works per view") {
  std::mt19937 rng(4);
  const Image v = random_image(4, 4, rng);
  const LightField lf = LightField::from_views(2, std::vector<Image>(4, v));
  const LightField lo = degrade_lightfield(lf, 2);
  CHECK(lo.shape() == LightFieldShape{2, 2, 2});
  for (int k = 1; k < 4; ++k) CHECK(lo.view(k) == lo.view(0));
  CHECK(degrade_lightfield(lf, 1) == lf);
}

TEST_CASE("stacked application handles every view") {
  std::mt19937 rng(5);
  const BlurSampleOperator sb(4, 4, 2);
  const Eigen::VectorXd hi = oracle::random_vector(64, rng);
  const Eigen::VectorXd lo = sb.apply_all(hi, 4);
  REQUIRE(lo.size() == 16);
  for (int k = 0; k < 4; ++k) CHECK((lo.segment(4 * k, 4) - sb.apply(Eigen::VectorXd(hi.segment(16 * k, 16)))).norm() == 0.0);
  const Eigen::VectorXd y = oracle::random_vector(16, rng);
  CHECK(std::abs(lo.dot(y) - hi.dot(sb.apply_adjoint_all(y, 4))) < 1e-12);
}
