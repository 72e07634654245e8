#include <doctest.h>

#include <random>

#include "color.hpp"
#include "errors.hpp"
#include "lightfield.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace lfsr;

TEST_CASE("linear index follows (t-1)M + s") {
  CHECK(linear_index({1, 1}, 5) == 1);
  CHECK(linear_index({2, 3}, 5) == 12);
  CHECK(view_coord(12, 5) == ViewCoord{2, 3});
  for (int k = 1; k <= 49; ++k) CHECK(linear_index(view_coord(k, 7), 7) == k);
  CHECK_THROWS_AS(linear_index({0, 1}, 5), DomainError);
  CHECK_THROWS_AS(linear_index({1, 6}, 5), DomainError);
  CHECK_THROWS_AS(view_coord(26, 5), DomainError);
}

TEST_CASE("vectorize stacks views column-major") {
  // Single 2x2 view [[a, c], [b, d]] with rows indexed by x.
  LightField lf({1, 2, 2});
  lf.at(0, 0, 0) = 0.1;  // a
  lf.at(0, 1, 0) = 0.2;  // b
  lf.at(0, 0, 1) = 0.3;  // c
  lf.at(0, 1, 1) = 0.4;  // d
  const auto v = vectorize(lf);
  REQUIRE(v.data.size() == 4);
  CHECK(v.data(0) == 0.1);
  CHECK(v.data(1) == 0.2);
  CHECK(v.data(2) == 0.3);
  CHECK(v.data(3) == 0.4);

  const auto half = vectorize(LightField({2, 3, 3}, 0.5));
  CHECK(half.data.size() == 36);
  CHECK((half.data.array() == 0.5).all());
}

TEST_CASE("vectorize and devectorize are inverse") {
  std::mt19937 rng(1);
  const LightField lf = oracle::random_lightfield({2, 3, 3}, rng);
  const auto v = vectorize(lf);
  for (int t = 1; t <= 2; ++t)
    for (int s = 1; s <= 2; ++s)
      for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) {
          const int k = linear_index({s, t}, 2) - 1;
          CHECK(v.data(k * 9 + y * 3 + x) == lf.at(k, x, y));
        }
  CHECK(devectorize(v) == lf);
}

TEST_CASE("light field rejects values outside the unit range") {
  std::vector<Image> views(4, Image(2, 2, 0.5));
  CHECK_NOTHROW(LightField::from_views(2, views));
  views[3](1, 1) = 1.5;
  CHECK_THROWS_AS(LightField::from_views(2, views), DomainError);
  views.pop_back();
  CHECK_THROWS_AS(LightField::from_views(2, views), DomainError);
}

TEST_CASE("EPI of identical views has equal rows") {
  const Image base = testing::random_texture(10, 10, 3);
  const LightField lf = testing::shifted_lightfield(base, 3, 10, 10, 0);
  const Epi epi = extract_epi(lf, 2, 4);
  REQUIRE(epi.matrix.rows() == 3);
  REQUIRE(epi.matrix.cols() == 10);
  for (int t = 1; t < 3; ++t)
    for (int y = 0; y < 10; ++y) CHECK(epi.matrix(t, y) == epi.matrix(0, y));
}

TEST_CASE("EPI of a shifted field has shifted rows") {
  const Image base = testing::random_texture(20, 20, 4);
  const LightField lf = testing::shifted_lightfield(base, 3, 16, 16, 1);
  const Epi h = extract_epi(lf, 1, 5);
  for (int t = 1; t < 3; ++t)
    for (int y = 0; y + 1 < 16; ++y) CHECK(h.matrix(t, y) == h.matrix(t - 1, y + 1));
  const Epi v = extract_epi_vertical(lf, 2, 7);
  CHECK_FALSE(v.horizontal);
  for (int s = 1; s < 3; ++s)
    for (int x = 0; x + 1 < 16; ++x) CHECK(v.matrix(s, x) == v.matrix(s - 1, x + 1));
}

TEST_CASE("EPI of a single view is one image row") {
  std::mt19937 rng(5);
  const LightField lf = oracle::random_lightfield({1, 4, 6}, rng);
  const Epi epi = extract_epi(lf, 1, 3);
  REQUIRE(epi.matrix.rows() == 1);
  for (int y = 0; y < 6; ++y) CHECK(epi.matrix(0, y) == lf.at(0, 2, y));
  CHECK_THROWS_AS(extract_epi(lf, 2, 1), DomainError);
  CHECK_THROWS_AS(extract_epi(lf, 1, 5), DomainError);
}

TEST_CASE("gray maps to neutral chroma") {
  const auto c = rgb_to_ycbcr(0.5, 0.5, 0.5);
  CHECK(c.y == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.cb == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.cr == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pure red luma is the red coefficient") {
  CHECK(rgb_to_ycbcr(1, 0, 0).y == doctest::Approx(0.299).epsilon(1e-12));
  CHECK(rgb_to_ycbcr(0, 1, 0).y == doctest::Approx(0.587).epsilon(1e-12));
  CHECK(rgb_to_ycbcr(0, 0, 1).y == doctest::Approx(0.114).epsilon(1e-12));
}

TEST_CASE("color conversion round-trips") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = u(rng), g = u(rng), b = u(rng);
    const auto c = rgb_to_ycbcr(r, g, b);
    const auto back = ycbcr_to_rgb(c.y, c.cb, c.cr);
    CHECK(std::abs(back[0] - r) < 1e-6);
    CHECK(std::abs(back[1] - g) < 1e-6);
    CHECK(std::abs(back[2] - b) < 1e-6);
  }

  ColorLightField color{{oracle::random_lightfield({2, 3, 3}, rng),
                         oracle::random_lightfield({2, 3, 3}, rng),
                         oracle::random_lightfield({2, 3, 3}, rng)}};
  const auto back = luma_chroma_to_rgb(rgb_to_luma_chroma(color));
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < color.rgb[c].data().size(); ++i)
      CHECK(std::abs(back.rgb[c].data()[i] - color.rgb[c].data()[i]) < 1e-6);
}
