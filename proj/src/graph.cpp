#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace lfsr {

void GraphParams::validate() const {
  if (patch_side < 1 || patch_side % 2 == 0)
    throw ConfigError("patch_side must be odd and >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  if (window < 3 || window % 2 == 0) throw ConfigError("window must be odd and >= 3");
}

int neighbor_view(const LightFieldShape& shape, int view, ViewOffset offset) {
  const int s = view % shape.M + offset.ds;
  const int t = view / shape.M + offset.dt;
  if (s < 0 || s >= shape.M || t < 0 || t >= shape.M) return -1;
  return t * shape.M + s;
}

double patch_sq_distance(const LightField& lf, PixelRef a, PixelRef b, int patch_side) {
  const int r = patch_side / 2;
  auto clamp_x = [&](int x) { return std::clamp(x, 0, lf.rows() - 1); };
  auto clamp_y = [&](int y) { return std::clamp(y, 0, lf.cols() - 1); };
  double sum = 0.0;
  for (int q = -r; q <= r; ++q) {
    for (int p = -r; p <= r; ++p) {
      const double d = lf.at(a.view, clamp_x(a.x + p), clamp_y(a.y + q)) -
                       lf.at(b.view, clamp_x(b.x + p), clamp_y(b.y + q));
      sum += d * d;
    }
  }
  return sum;
}

PatchComparator::PatchComparator(const LightField& lf, int patch_side)
    : shape_(lf.shape()),
      radius_(patch_side / 2),
      padded_rows_(lf.rows() + 2 * radius_),
      padded_cols_(lf.cols() + 2 * radius_) {
  const std::size_t view_size = static_cast<std::size_t>(padded_rows_) * padded_cols_;
  padded_.resize(view_size * shape_.num_views());
  for (std::size_t k = 0; k < shape_.num_views(); ++k) {
    double* dst = padded_.data() + k * view_size;
    for (int y = 0; y < padded_cols_; ++y) {
      const int sy = std::clamp(y - radius_, 0, lf.cols() - 1);
      for (int x = 0; x < padded_rows_; ++x) {
        const int sx = std::clamp(x - radius_, 0, lf.rows() - 1);
        dst[static_cast<std::size_t>(y) * padded_rows_ + x] = lf.at(static_cast<int>(k), sx, sy);
      }
    }
  }
}

double PatchComparator::distance(PixelRef a, PixelRef b) const {
  const std::size_t view_size = static_cast<std::size_t>(padded_rows_) * padded_cols_;
  const int side = 2 * radius_ + 1;
  // Top-left corner of each patch in padded coordinates.
  const double* pa = padded_.data() + a.view * view_size +
                     static_cast<std::size_t>(a.y) * padded_rows_ + a.x;
  const double* pb = padded_.data() + b.view * view_size +
                     static_cast<std::size_t>(b.y) * padded_rows_ + b.x;
  double sum = 0.0;
  for (int q = 0; q < side; ++q) {
    const double* ca = pa + static_cast<std::size_t>(q) * padded_rows_;
    const double* cb = pb + static_cast<std::size_t>(q) * padded_rows_;
    for (int p = 0; p < side; ++p) {
      const double d = ca[p] - cb[p];
      sum += d * d;
    }
  }
  return sum;
}

double similarity(double sq_distance, double sigma) {
  return std::exp(-sq_distance / (sigma * sigma));
}

namespace {

ViewOffset offset_between(const LightFieldShape& shape, int from, int to) {
  return {to % shape.M - from % shape.M, to / shape.M - from / shape.M};
}

}  // namespace

std::vector<Candidate> edge_weights_to_view(const PatchComparator& patches, PixelRef pixel,
                                            int neighbor, const GraphParams& params) {
  const auto& shape = patches.shape();
  if (neighbor < 0 || neighbor >= static_cast<int>(shape.num_views()))
    throw DomainError("neighbor view index out of range");
  const ViewOffset off = offset_between(shape, pixel.view, neighbor);
  if (!off.is_axis() && !off.is_diagonal())
    throw DomainError("view " + std::to_string(neighbor + 1) +
                      " is not one of the eight neighbors of view " +
                      std::to_string(pixel.view + 1));
  const int h = params.half_window();
  // Horizontal neighbors (same s) search along y, vertical ones along x.
  const int hx = off.ds != 0 ? h : 0;
  const int hy = off.dt != 0 ? h : 0;
  const int x0 = std::max(0, pixel.x - hx), x1 = std::min(shape.rows - 1, pixel.x + hx);
  const int y0 = std::max(0, pixel.y - hy), y1 = std::min(shape.cols - 1, pixel.y + hy);

  std::vector<Candidate> out;
  out.reserve(static_cast<std::size_t>(x1 - x0 + 1) * (y1 - y0 + 1));
  const std::int64_t base = static_cast<std::int64_t>(neighbor) * shape.view_size();
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double d = patches.distance(pixel, {neighbor, x, y});
      out.push_back({base + static_cast<std::int64_t>(y) * shape.rows + x,
                     similarity(d, params.sigma)});
    }
  }
  return out;
}

std::vector<Candidate> edge_weights_to_view(const LightField& lf, PixelRef pixel, int neighbor,
                                            const GraphParams& params) {
  params.validate();
  return edge_weights_to_view(PatchComparator(lf, params.patch_side), pixel, neighbor, params);
}

int prune_cap(ViewOffset offset) { return offset.is_diagonal() ? 4 : 2; }

std::vector<Candidate> prune_edges(std::vector<Candidate> candidates, int cap) {
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.target < b.target;
  };
  const auto keep = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(cap));
  std::partial_sort(candidates.begin(), candidates.begin() + keep, candidates.end(), better);
  candidates.resize(keep);
  return candidates;
}

SparseMatrix symmetrize(const SparseMatrix& directed) {
  if (directed.rows() != directed.cols()) throw DomainError("adjacency must be square");
  const SparseMatrix transposed = directed.transpose();
  std::vector<Triplet> kept;
  kept.reserve(directed.nonZeros());
  for (Eigen::Index i = 0; i < directed.outerSize(); ++i) {
    SparseMatrix::InnerIterator a(directed, i);
    SparseMatrix::InnerIterator b(transposed, i);
    // Both rows are sorted by column: merge.
    while (a && b) {
      if (a.col() < b.col()) {
        ++a;
      } else if (b.col() < a.col()) {
        ++b;
      } else {
        if (a.value() != 0.0 && b.value() != 0.0 && a.col() != i)
          kept.emplace_back(static_cast<int>(i), static_cast<int>(a.col()),
                            std::min(a.value(), b.value()));
        ++a;
        ++b;
      }
    }
  }
  SparseMatrix W(directed.rows(), directed.cols());
  W.setFromTriplets(kept.begin(), kept.end());
  return W;
}

SparseMatrix build_directed_adjacency(const LightField& estimate, const GraphParams& params,
                                      int threads) {
  params.validate();
  const auto& shape = estimate.shape();
  const auto n = static_cast<Eigen::Index>(shape.size());
  const PatchComparator patches(estimate, params.patch_side);
  const int views = static_cast<int>(shape.num_views());

  std::vector<std::vector<Triplet>> per_view(views);
  parallel_for(views, threads, [&](std::size_t k) {
    const int view = static_cast<int>(k);
    auto& out = per_view[k];
    const auto base = static_cast<std::int64_t>(view) * shape.view_size();
    for (int y = 0; y < shape.cols; ++y) {
      for (int x = 0; x < shape.rows; ++x) {
        const auto row = base + static_cast<std::int64_t>(y) * shape.rows + x;
        auto add = [&](ViewOffset off) {
          const int nb = neighbor_view(shape, view, off);
          if (nb < 0) return;
          for (const auto& c :
               prune_edges(edge_weights_to_view(patches, {view, x, y}, nb, params),
                           prune_cap(off))) {
            if (c.weight > 0.0)
              out.emplace_back(static_cast<int>(row), static_cast<int>(c.target), c.weight);
          }
        };
        for (const auto off : kAxisNeighbors) add(off);
        for (const auto off : kDiagonalNeighbors) add(off);
      }
    }
  });

  std::vector<Triplet> all;
  for (auto& v : per_view) all.insert(all.end(), v.begin(), v.end());
  SparseMatrix directed(n, n);
  directed.setFromTriplets(all.begin(), all.end());
  return directed;
}

GraphAdjacency build_adjacency(const LightField& estimate, const GraphParams& params,
                               int threads) {
  return {estimate.shape(), symmetrize(build_directed_adjacency(estimate, params, threads))};
}

SparseMatrix laplacian(const SparseMatrix& W) {
  if (W.rows() != W.cols()) throw DomainError("adjacency must be square");
  const SparseMatrix Wt = W.transpose();
  const double scale = std::max(1.0, W.norm());
  if ((W - Wt).norm() > 1e-12 * scale)
    throw DomainError("Laplacian requires a symmetric adjacency matrix");
  std::vector<Triplet> entries;
  entries.reserve(W.nonZeros() + W.rows());
  for (Eigen::Index i = 0; i < W.outerSize(); ++i) {
    double degree = 0.0;
    for (SparseMatrix::InnerIterator it(W, i); it; ++it) {
      if (it.col() == i) continue;
      degree += it.value();
      entries.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), -it.value());
    }
    if (degree != 0.0) entries.emplace_back(static_cast<int>(i), static_cast<int>(i), degree);
  }
  SparseMatrix L(W.rows(), W.cols());
  L.setFromTriplets(entries.begin(), entries.end());
  return L;
}

double graph_variation(const SparseMatrix& W, const Eigen::VectorXd& u) {
  if (W.cols() != u.size()) throw DomainError("vector length does not match the graph");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < W.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(W, i); it; ++it) {
      const double d = u(i) - u(it.col());
      sum += it.value() * d * d;
    }
  }
  return 0.5 * sum;
}

}  // namespace lfsr
