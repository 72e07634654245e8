#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "config.hpp"
#include "degrade.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "io.hpp"
#include "oracles.hpp"

using namespace lfsr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lfsr_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Dataset gray_dataset(int M, int n, unsigned seed, int bit_depth = 8) {
  std::mt19937 rng(seed);
  LightField lf = oracle::random_lightfield({M, n, n}, rng);
  const double levels = std::pow(2.0, bit_depth) - 1;
  for (auto& v : lf.data()) v = std::round(v * levels) / levels;
  return {{lf}, bit_depth};
}

}  // namespace

TEST_CASE("view file names") {
  CHECK(view_filename(3, 2) == "view_03_02.png");
  CHECK(view_filename(12, 1) == "view_12_01.png");
}

TEST_CASE("quantization rounds half up and clamps") {
  CHECK(quantize(0.0, 8) == 0);
  CHECK(quantize(1.0, 8) == 255);
  CHECK(quantize(1.0, 16) == 65535);
  CHECK(quantize(0.5, 8) == 128);  // 127.5 rounds up
  CHECK(quantize((94.0 + 95.0) / 2 / 255, 8) == 95);
  CHECK(quantize(94.49 / 255, 8) == 94);
  CHECK(quantize(-0.2, 8) == 0);
  CHECK(quantize(1.7, 8) == 255);
}

TEST_CASE("light field directories round-trip") {
  for (int depth : {8, 16}) {
    const fs::path dir = scratch("rt" + std::to_string(depth));
    const Dataset d = gray_dataset(3, 10, 1, depth);
    save_lightfield(d, dir);
    CHECK(fs::exists(dir / "view_03_02.png"));
    const Dataset back = load_lightfield(dir);
    CHECK(back.bit_depth == depth);
    REQUIRE(back.channels.size() == 1);
    CHECK(back.shape() == d.shape());
    for (std::size_t i = 0; i < d.channels[0].data().size(); ++i)
      CHECK(back.channels[0].data()[i] == doctest::Approx(d.channels[0].data()[i]).epsilon(1e-12));
  }
}

TEST_CASE("a 5x5 grid of 64x64 views loads with its shape") {
  const fs::path dir = scratch("grid");
  save_lightfield(gray_dataset(5, 64, 2), dir);
  fs::remove(dir / "lightfield.cfg");  // angular size inferred from names
  const Dataset d = load_lightfield(dir);
  CHECK(d.shape() == LightFieldShape{5, 64, 64});
}

TEST_CASE("a missing view is reported by name") {
  const fs::path dir = scratch("missing");
  save_lightfield(gray_dataset(5, 8, 3), dir);
  fs::remove(dir / "view_03_02.png");
  try {
    load_lightfield(dir);
    FAIL("expected an error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("view_03_02.png") != std::string::npos);
  }
  CHECK_THROWS_AS(load_lightfield(dir / "nope"), IoError);
}

TEST_CASE("16-bit maximum reads as 1.0") {
  const fs::path dir = scratch("sixteen");
  write_png(dir / "max.png", {Image(2, 3, 1.0)}, 16);
  const Raster r = read_png(dir / "max.png");
  CHECK(r.bit_depth == 16);
  for (double v : r.planes[0].data()) CHECK(v == 1.0);
}

TEST_CASE("color images keep three planes") {
  const fs::path dir = scratch("color");
  std::mt19937 rng(4);
  std::vector<Image> planes;
  for (int c = 0; c < 3; ++c) {
    Image img(4, 5);
    for (auto& v : img.data()) v = std::round(std::uniform_real_distribution<double>(0, 1)(rng) * 255) / 255;
    planes.push_back(img);
  }
  write_png(dir / "c.png", planes, 8);
  const Raster r = read_png(dir / "c.png");
  REQUIRE(r.planes.size() == 3);
  for (int c = 0; c < 3; ++c) CHECK(r.planes[c] == planes[c]);
}

TEST_CASE("degraded PNGs match quantized block means") {
  const Dataset d = gray_dataset(2, 8, 5);
  const LightField lo = degrade_lightfield(d.channels[0], 2);
  const fs::path dir = scratch("degrade");
  save_lightfield({{lo}, 8}, dir);
  const Dataset back = load_lightfield(dir);
  CHECK(back.shape() == LightFieldShape{2, 4, 4});
  for (int k = 0; k < 4; ++k)
    for (int Y = 0; Y < 4; ++Y)
      for (int X = 0; X < 4; ++X) {
        // Integer levels: the block mean rounds half up.
        long sum = 0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) sum += std::lround(d.channels[0].at(k, 2 * X + i, 2 * Y + j) * 255);
        CHECK(back.channels[0].at(k, X, Y) == static_cast<double>((sum + 2) / 4) / 255);
      }
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "alpha = 3\n"
      "lambda2 = 0.5   # trailing comment\n"
      "variant = dr\n"
      "\n"
      "tile_overlap=5\n");
  const RunConfig c = parse_run_config(in);
  CHECK(c.pipeline.alpha == 3);
  CHECK(c.pipeline.solver.lambda2 == 0.5);
  CHECK(c.pipeline.variant == WarpVariant::DR);
  CHECK(c.resolved().tile_side == 70);
  CHECK(get_config_value(c, "tile_side") == "70");
  CHECK(c.resolved().tile_overlap == 5);

  std::istringstream bad("alpha = 2\nlamda2 = 0.1\n");
  try {
    parse_run_config(bad);
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("lamda2") != std::string::npos);
  }
  std::istringstream neg("beta = -1\n");
  CHECK_THROWS_AS(parse_run_config(neg), ConfigError);
  std::istringstream junk("alpha = two\n");
  CHECK_THROWS_AS(parse_run_config(junk), ConfigError);
}

TEST_CASE("config defaults") {
  const RunConfig c;
  const auto p = c.resolved();
  CHECK(p.alpha == 2);
  CHECK(p.tile_side == 100);
  CHECK(p.graph.patch_side == 7);
  CHECK(p.graph.sigma == 0.7229);
  CHECK(p.graph.window == 13);
  CHECK(p.solver.lambda2 == 0.2);
  CHECK(p.solver.lambda3 == 0.0055);
  CHECK(p.solver.beta == 1.0);
  CHECK(c.crop_border == 15);

  RunConfig r;
  set_config_value(r, "sigma", "0.5");
  std::istringstream back(to_text(r));
  CHECK(parse_run_config(back).pipeline.graph.sigma == 0.5);
  CHECK_THROWS_AS(get_config_value(r, "unknown"), ConfigError);
  CHECK_THROWS_AS(parse_variant("xx"), ConfigError);
}

TEST_CASE("PSNR values") {
  Image a(20, 20, 0.5);
  CHECK(std::isinf(psnr(a, a, 0)));
  Image b(20, 20, 0.6);  // squared error 1e-2 everywhere
  CHECK(psnr(a, b, 0) == doctest::Approx(20.0).epsilon(1e-9));
  // Crop removes the only differing pixel.
  Image c = a;
  c(0, 0) = 0.0;
  CHECK(std::isinf(psnr(a, c, 1)));
  CHECK_THROWS_AS(psnr(a, b, 10), DomainError);
}

TEST_CASE("PSNR report statistics") {
  LightField truth({2, 10, 10}, 0.5);
  LightField recon = truth;
  const double err[4] = {0.1, 0.01, 0.05, 0.2};
  for (int k = 0; k < 4; ++k)
    for (auto& v : recon.view_data(k)) v += err[k];
  const PsnrReport r = evaluate_psnr(recon, truth, 2);
  REQUIRE(r.views.size() == 4);
  double mean = 0;
  for (int k = 0; k < 4; ++k) {
    const double expect = -10 * std::log10(err[k] * err[k]);
    CHECK(r.views[k].psnr == doctest::Approx(expect).epsilon(1e-9));
    mean += expect / 4;
  }
  double var = 0;
  for (int k = 0; k < 4; ++k) var += std::pow(r.views[k].psnr - mean, 2) / 4;
  CHECK(r.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(r.variance == doctest::Approx(var).epsilon(1e-12));
  CHECK(r.views[1].s == 2);
  CHECK(r.views[2].t == 2);
  const std::string csv = r.to_csv();
  CHECK(csv.find("s,t,psnr\n1,1,20.0000\n") != std::string::npos);
  CHECK(csv.find("mean,variance\n") != std::string::npos);

  const PsnrReport same = evaluate_psnr(truth, truth, 0);
  CHECK(std::isinf(same.mean));
  CHECK(same.variance == 0.0);
  CHECK(same.to_csv().find("inf") != std::string::npos);
}
