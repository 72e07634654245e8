#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "lightfield.hpp"
#include "sparse.hpp"

namespace lfsr {

struct GraphParams {
  int patch_side = 7;    // odd
  double sigma = 0.7229;  // similarity bandwidth on [0, 1] intensities
  int window = 13;       // odd, >= 3; disparity range [-window/2, window/2]

  int half_window() const { return window / 2; }
  // Throws ConfigError.
  void validate() const;
};

// A pixel of the light field: 0-based view index (linear index - 1) and
// 0-based spatial coordinates.
struct PixelRef {
  int view = 0;
  int x = 0;
  int y = 0;
};

// Offset of a neighbor view in the camera array: ds along s (rows), dt
// along t (columns).
struct ViewOffset {
  int ds = 0;
  int dt = 0;
  bool is_axis() const { return (ds == 0) != (dt == 0) && ds * ds + dt * dt == 1; }
  bool is_diagonal() const { return ds * ds == 1 && dt * dt == 1; }
};

// Left, right, top, bottom: the four axis neighbors.
inline constexpr ViewOffset kAxisNeighbors[4] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
inline constexpr ViewOffset kDiagonalNeighbors[4] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};

// Returns the 0-based index of the neighbor view, or -1 when it falls
// outside the camera array.
int neighbor_view(const LightFieldShape& shape, int view, ViewOffset offset);

// Squared Frobenius distance between two patch_side x patch_side patches,
// replicate-padded at the borders. Symmetric in its two pixel arguments.
double patch_sq_distance(const LightField& lf, PixelRef a, PixelRef b, int patch_side);

// Replicate-padded copy of a light field for repeated patch comparisons.
// distance() returns the same value as patch_sq_distance, bit for bit.
class PatchComparator {
 public:
  PatchComparator(const LightField& lf, int patch_side);
  double distance(PixelRef a, PixelRef b) const;
  const LightFieldShape& shape() const { return shape_; }

 private:
  LightFieldShape shape_;
  int radius_;
  int padded_rows_;
  int padded_cols_;
  std::vector<double> padded_;
};

// Patch similarity exp(-d^2 / sigma^2).
double similarity(double sq_distance, double sigma);

struct Candidate {
  std::int64_t target = 0;  // index into the vectorized light field
  double weight = 0.0;
};

// Similarity weights from `pixel` to every pixel of a search window in the
// neighbor view, centered at the co-located pixel and clipped at the view
// borders: 1 x W for horizontal neighbors, W x 1 for vertical ones and
// W x W for diagonal ones. Throws DomainError for a non-neighbor view.
std::vector<Candidate> edge_weights_to_view(const LightField& lf, PixelRef pixel,
                                            int neighbor, const GraphParams& params);
std::vector<Candidate> edge_weights_to_view(const PatchComparator& patches, PixelRef pixel,
                                            int neighbor, const GraphParams& params);

// Number of edges kept per (pixel, neighbor view): 2 on the axes, 4 on the
// diagonals.
int prune_cap(ViewOffset offset);

// Keeps the `cap` largest weights; ties go to the smaller target index.
// Output is sorted by decreasing weight.
std::vector<Candidate> prune_edges(std::vector<Candidate> candidates, int cap);

struct GraphAdjacency {
  LightFieldShape shape;
  SparseMatrix weights;
};

// Keeps edge (i, j) iff both (i, j) and (j, i) are present.
SparseMatrix symmetrize(const SparseMatrix& directed);

// Directed, pruned adjacency before symmetrization.
SparseMatrix build_directed_adjacency(const LightField& estimate, const GraphParams& params,
                                      int threads = 0);
GraphAdjacency build_adjacency(const LightField& estimate, const GraphParams& params,
                               int threads = 0);

// L = D - W. Throws DomainError for an asymmetric W.
SparseMatrix laplacian(const SparseMatrix& W);

// 1/2 sum_i sum_{j~i} W(i,j) (u(i) - u(j))^2, evaluated edge by edge.
double graph_variation(const SparseMatrix& W, const Eigen::VectorXd& u);

}  // namespace lfsr
