// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "lfsr/lfsr.h"

namespace {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using LightField = std::unique_ptr<lfsr_lightfield, Deleter<lfsr_lightfield, lfsr_lightfield_free>>;
using Config = std::unique_ptr<lfsr_config, Deleter<lfsr_config, lfsr_config_free>>;
using Report = std::unique_ptr<lfsr_report, Deleter<lfsr_report, lfsr_report_free>>;
using Psnr = std::unique_ptr<lfsr_psnr, Deleter<lfsr_psnr, lfsr_psnr_free>>;

struct StageError {
  std::string stage;
  std::string message;
};

void check(lfsr_status st, const char* stage) {
  if (st != LFSR_OK)
    throw StageError{stage, std::string(lfsr_status_string(st)) + ": " + lfsr_last_error()};
}

LightField load(const std::string& dir, const char* stage) {
  lfsr_lightfield* raw = nullptr;
  check(lfsr_lightfield_load(dir.c_str(), &raw), stage);
  return LightField(raw);
}

int run_degrade(const std::string& in, const std::string& out, int alpha) {
  auto lf = load(in, "load");
  lfsr_lightfield* raw = nullptr;
  check(lfsr_degrade(lf.get(), alpha, &raw), "degrade");
  LightField lo(raw);
  check(lfsr_lightfield_save(lo.get(), out.c_str()), "write");
  return 0;
}

int run_sr(const std::string& in, const std::string& out, const std::string& config_path,
           const std::string& variant, int threads) {
  lfsr_config* raw_cfg = nullptr;
  if (config_path.empty())
    check(lfsr_config_create(&raw_cfg), "config");
  else
    check(lfsr_config_load(config_path.c_str(), &raw_cfg), "config");
  Config cfg(raw_cfg);
  if (!variant.empty()) check(lfsr_config_set(cfg.get(), "variant", variant.c_str()), "config");
  if (threads > 0)
    check(lfsr_config_set(cfg.get(), "threads", std::to_string(threads).c_str()), "config");

  auto lo = load(in, "load");
  lfsr_lightfield* raw_hi = nullptr;
  lfsr_report* raw_report = nullptr;
  check(lfsr_super_resolve(lo.get(), cfg.get(), &raw_hi, &raw_report), "solve");
  LightField hi(raw_hi);
  Report report(raw_report);
  check(lfsr_lightfield_save(hi.get(), out.c_str()), "write");
  const auto report_path = (std::filesystem::path(out) / "solve_report.txt").string();
  check(lfsr_report_write(report.get(), report_path.c_str()), "write");

  int steps = 0, cg = 0;
  double residual = 0.0;
  lfsr_report_summary(report.get(), &steps, &cg, &residual);
  std::fprintf(stderr, "lfsr sr: %d PPA steps, %d CG iterations, final residual %.3e\n", steps,
               cg, residual);
  return 0;
}

int run_eval(const std::string& recon_dir, const std::string& gt_dir, int crop) {
  auto recon = load(recon_dir, "load");
  auto gt = load(gt_dir, "load");
  lfsr_psnr* raw = nullptr;
  check(lfsr_evaluate(recon.get(), gt.get(), crop, &raw), "eval");
  Psnr psnr(raw);
  std::size_t needed = 0;
  check(lfsr_psnr_csv(psnr.get(), nullptr, 0, &needed), "eval");
  std::string csv(needed, '\0');
  check(lfsr_psnr_csv(psnr.get(), csv.data(), csv.size(), &needed), "eval");
  csv.resize(needed - 1);
  std::cout << csv;
  return std::cout.good() ? 0 : 1;
}

int run_epi(const std::string& in, int s, int x, const std::string& out) {
  auto lf = load(in, "load");
  check(lfsr_epi_write(lf.get(), s, x, out.c_str()), "epi");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-regularized light field super-resolution"};
  app.require_subcommand(1);

  std::string in, out, config, variant, recon, gt;
  int alpha = 2, crop = 15, s = 1, x = 1, threads = 0;

  auto* degrade = app.add_subcommand("degrade", "Box-filter and subsample every view");
  degrade->add_option("--in", in, "Input light field directory")->required();
  degrade->add_option("--out", out, "Output directory")->required();
  degrade->add_option("--alpha", alpha, "Integer downsampling factor")->required();

  auto* sr = app.add_subcommand("sr", "Super-resolve a low-resolution light field");
  sr->add_option("--in", in, "Low-resolution light field directory")->required();
  sr->add_option("--out", out, "Output directory")->required();
  sr->add_option("--config", config, "key = value configuration file");
  sr->add_option("--variant", variant, "Warp construction: sq or dr")
      ->check(CLI::IsMember({"sq", "dr"}));
  sr->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* eval = app.add_subcommand("eval", "Per-view luma PSNR as CSV");
  eval->add_option("--recon", recon, "Reconstructed light field directory")->required();
  eval->add_option("--gt", gt, "Ground-truth light field directory")->required();
  eval->add_option("--crop", crop, "Border crop in pixels")->capture_default_str();

  auto* epi = app.add_subcommand("epi", "Write an epipolar plane image");
  epi->add_option("--in", in, "Light field directory")->required();
  epi->add_option("--s", s, "Angular row (1-based)")->required();
  epi->add_option("--x", x, "Spatial row (1-based)")->required();
  epi->add_option("--out", out, "Output PNG")->required();

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (*degrade) return run_degrade(in, out, alpha);
    if (*sr) return run_sr(in, out, config, variant, threads);
    if (*eval) return run_eval(recon, gt, crop);
    if (*epi) return run_epi(in, s, x, out);
  } catch (const StageError& e) {
    std::fprintf(stderr, "lfsr %s: [%s] %s\n", name.c_str(), e.stage.c_str(), e.message.c_str());
    return 1;
  }
  return 1;
}
