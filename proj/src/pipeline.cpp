#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace lfsr {

namespace {

std::vector<int> axis_origins(int n, int tile, int overlap) {
  const int len = std::min(tile, n);
  if (len == n) return {0};
  const int stride = len - overlap;
  std::vector<int> out;
  for (int o = 0; o + len < n; o += stride) out.push_back(o);
  if (out.empty() || out.back() != n - len) out.push_back(n - len);
  return out;
}

}  // namespace

TilingPlan plan_tiles(int lo_rows, int lo_cols, int tile_side, int overlap) {
  if (lo_rows < 1 || lo_cols < 1) throw ConfigError("view dimensions must be positive");
  if (tile_side < 1) throw ConfigError("tile_side must be positive");
  if (overlap < 0 || overlap >= tile_side)
    throw ConfigError("tile_overlap must lie in [0, tile_side)");
  TilingPlan plan{lo_rows, lo_cols, tile_side, overlap, axis_origins(lo_rows, tile_side, overlap),
                  axis_origins(lo_cols, tile_side, overlap), {}};
  const int tr = std::min(tile_side, lo_rows), tc = std::min(tile_side, lo_cols);
  for (int y0 : plan.col_origins)
    for (int x0 : plan.row_origins) plan.tiles.push_back({x0, y0, tr, tc});
  return plan;
}

LightField extract_tile(const LightField& lf, const Tile& tile) {
  if (tile.x0 < 0 || tile.y0 < 0 || tile.x0 + tile.rows > lf.rows() ||
      tile.y0 + tile.cols > lf.cols())
    throw DomainError("tile lies outside the light field");
  LightField out({lf.M(), tile.rows, tile.cols});
  for (int k = 0; k < static_cast<int>(lf.shape().num_views()); ++k)
    for (int y = 0; y < tile.cols; ++y)
      for (int x = 0; x < tile.rows; ++x) out.at(k, x, y) = lf.at(k, tile.x0 + x, tile.y0 + y);
  return out;
}

LightField merge_tiles(const std::vector<LightField>& tiles, const TilingPlan& plan, int alpha,
                       int M) {
  if (tiles.size() != plan.tiles.size())
    throw DomainError("expected " + std::to_string(plan.tiles.size()) + " tile results, got " +
                      std::to_string(tiles.size()));
  const LightFieldShape shape{M, plan.view_rows * alpha, plan.view_cols * alpha};
  LightField sum(shape, 0.0);
  std::vector<int> count(shape.view_size(), 0);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const Tile& t = plan.tiles[i];
    const auto& lf = tiles[i];
    if (lf.M() != M || lf.rows() != t.rows * alpha || lf.cols() != t.cols * alpha)
      throw DomainError("tile " + std::to_string(i) + " result has the wrong shape");
    for (int y = 0; y < lf.cols(); ++y)
      for (int x = 0; x < lf.rows(); ++x)
        ++count[static_cast<std::size_t>(t.y0 * alpha + y) * shape.rows + t.x0 * alpha + x];
    for (int k = 0; k < static_cast<int>(shape.num_views()); ++k)
      for (int y = 0; y < lf.cols(); ++y)
        for (int x = 0; x < lf.rows(); ++x)
          sum.at(k, t.x0 * alpha + x, t.y0 * alpha + y) += lf.at(k, x, y);
  }
  for (int k = 0; k < static_cast<int>(shape.num_views()); ++k) {
    auto view = sum.view_data(k);
    for (std::size_t i = 0; i < view.size(); ++i) {
      if (count[i] == 0) throw DomainError("tiles do not cover the whole view");
      view[i] /= count[i];
    }
  }
  return sum;
}

int default_tile_side(int alpha) {
  if (alpha == 2) return 100;
  if (alpha == 3) return 70;
  return static_cast<int>(std::ceil(200.0 / std::max(alpha, 1)));
}

void PipelineConfig::validate() const {
  if (alpha < 1) throw ConfigError("alpha must be a positive integer");
  solver.validate();
  graph.validate();
  if (tile_side < 1) throw ConfigError("tile_side must be positive");
  if (tile_overlap < 0 || tile_overlap >= tile_side)
    throw ConfigError("tile_overlap must lie in [0, tile_side)");
}

LightField super_resolve_tiled(const LightField& lo_luma, const PipelineConfig& cfg,
                               SolveReport* report) {
  cfg.validate();
  const TilingPlan plan = plan_tiles(lo_luma.rows(), lo_luma.cols(), cfg.tile_side,
                                     cfg.tile_overlap);
  std::vector<LightField> results;
  results.reserve(plan.tiles.size());
  SolveReport total;
  for (const Tile& tile : plan.tiles) {
    SolveReport tile_report;
    results.push_back(super_resolve(extract_tile(lo_luma, tile), cfg.alpha, cfg.solver, cfg.graph,
                                    cfg.variant, &tile_report));
    total.append(tile_report);
  }
  if (report) *report = std::move(total);
  return merge_tiles(results, plan, cfg.alpha, lo_luma.M());
}

ColorLightField super_resolve_color(const ColorLightField& lo, const PipelineConfig& cfg,
                                    SolveReport* report) {
  const LumaChromaLightField ycc = rgb_to_luma_chroma(lo);
  LumaChromaLightField hi{super_resolve_tiled(ycc.luma, cfg, report),
                          bilinear_upsample(ycc.cb, cfg.alpha),
                          bilinear_upsample(ycc.cr, cfg.alpha)};
  return luma_chroma_to_rgb(hi);
}

}  // namespace lfsr
