#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "degrade.hpp"
#include "graph.hpp"
#include "lightfield.hpp"
#include "sparse.hpp"

namespace lfsr {

// Per-pixel integer disparity bracket delta of one view, with the true
// disparity assumed to lie in [delta, delta + 1].
struct DeltaField {
  int view = 0;  // 0-based
  int rows = 0;
  int cols = 0;
  std::vector<int> values;  // column-major

  int operator()(int x, int y) const {
    return values[static_cast<std::size_t>(y) * rows + x];
  }
};

// Warping matrix from a source view to an adjacent target view: row i
// synthesizes target pixel i from source pixels, so F * u_source ~ u_target.
struct Warp {
  int target = 0;
  int source = 0;
  SparseMatrix F;
};

struct WarpSet {
  LightFieldShape shape;
  std::vector<Warp> warps;
};

// Binary diagonal mask over the low-resolution pixels of the target view.
struct Mask {
  int target = 0;
  int source = 0;
  std::vector<std::uint8_t> keep;
};

// masks[i] belongs to warps[i] of the matching WarpSet.
struct MaskSet {
  std::vector<Mask> masks;
};

// Sum of the eight bracket similarities for a candidate delta. Terms that
// fall outside a view, or reference a missing neighbor view, contribute 0.
// Throws DomainError for delta outside [-W/2, W/2 - 1].
double score_delta(const LightField& lf, PixelRef pixel, int delta, const GraphParams& params);
double score_delta(const PatchComparator& patches, PixelRef pixel, int delta,
                   const GraphParams& params);

// Argmax of score_delta per pixel; ties prefer smaller |delta|, then the
// negative value.
// Row entries of an SQ warp for bracket weights w1, w2; equal split when both
// vanish.
std::array<double, 2> bracket_row_weights(double w1, double w2);

DeltaField estimate_delta(const LightField& lf, int view, const GraphParams& params);
DeltaField estimate_delta(const PatchComparator& patches, int view, const GraphParams& params);

// Plain-text dump: a "view k s t" header line per view, then one line of
// integers per pixel row.
void write_delta_fields(std::ostream& os, const LightFieldShape& shape,
                        const std::vector<DeltaField>& fields);

// Square-constraint warps: each target row mixes the two bracket pixels in
// the source view, weighted by patch similarity. Rows whose bracket leaves
// the source view are zero.
WarpSet build_warp_sq_rows(const LightField& estimate, const GraphParams& params,
                           int threads = 0);
std::pair<WarpSet, MaskSet> build_warp_sq(const LightField& estimate, const GraphParams& params,
                                          const BlurSampleOperator& sb, int threads = 0);

// Warps read off the symmetric graph: the (target, source) block of W with
// its rows normalized to sum to one. Zero rows stay zero.
WarpSet build_warp_dr(const GraphAdjacency& graph);

// A low-resolution target pixel is kept iff every high-resolution pixel of
// its alpha x alpha footprint has a nonzero warp row.
MaskSet masks_from_borders(const WarpSet& warps, const BlurSampleOperator& sb);

}  // namespace lfsr
