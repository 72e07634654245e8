#pragma once

#include <vector>

#include "color.hpp"
#include "graph.hpp"
#include "lightfield.hpp"
#include "solver.hpp"

namespace lfsr {

// Spatial tiling of the low-resolution views into sub-light-fields. All
// coordinates are 0-based low-resolution pixels.
struct Tile {
  int x0 = 0;
  int y0 = 0;
  int rows = 0;
  int cols = 0;
};

struct TilingPlan {
  int view_rows = 0;
  int view_cols = 0;
  int tile_side = 0;
  int overlap = 0;
  std::vector<int> row_origins;  // sorted
  std::vector<int> col_origins;  // sorted
  std::vector<Tile> tiles;       // row origins vary fastest
};

// Regular grid with stride tile_side - overlap, the last tile snapped to
// the far border. A tile side larger than the view yields one full tile.
// Throws ConfigError when overlap >= tile_side.
TilingPlan plan_tiles(int lo_rows, int lo_cols, int tile_side, int overlap);

// Same spatial crop of every view.
LightField extract_tile(const LightField& lf, const Tile& tile);

// Averages all tile estimates covering each high-resolution pixel. Throws
// DomainError when the tiles do not match the plan.
LightField merge_tiles(const std::vector<LightField>& tiles, const TilingPlan& plan, int alpha,
                       int M);

// Default sub-light-field side: 100 for alpha 2, 70 for alpha 3, otherwise
// the side whose high-resolution tile is about 200 pixels.
int default_tile_side(int alpha);

struct PipelineConfig {
  int alpha = 2;
  SolverConfig solver;
  GraphParams graph;
  WarpVariant variant = WarpVariant::SQ;
  int tile_side = 100;
  int tile_overlap = 0;

  void validate() const;
};

// Luma path: tile, super-resolve each tile, merge.
LightField super_resolve_tiled(const LightField& lo_luma, const PipelineConfig& cfg,
                               SolveReport* report = nullptr);

// Luma through super_resolve_tiled, chroma through bilinear upsampling.
ColorLightField super_resolve_color(const ColorLightField& lo, const PipelineConfig& cfg,
                                    SolveReport* report = nullptr);

}  // namespace lfsr
