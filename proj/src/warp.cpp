#include "warp.hpp"

#include <array>
#include <ostream>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace lfsr {

namespace {

// Weights at the eight bracket positions in fixed order: left pair, right
// pair, top pair, bottom pair. `w(neighbor, x, y)` returns the similarity
// to a pixel of a neighbor view or 0 when it lies outside.
template <typename WeightFn>
double sum_brackets(int x, int y, int delta, WeightFn&& w) {
  double s = 0.0;
  s += w(0, x, y + delta);
  s += w(0, x, y + delta + 1);
  s += w(1, x, y - delta - 1);
  s += w(1, x, y - delta);
  s += w(2, x + delta, y);
  s += w(2, x + delta + 1, y);
  s += w(3, x - delta - 1, y);
  s += w(3, x - delta, y);
  return s;
}

// The two source pixels bracketing the projection for axis neighbor `dir`
// (index into kAxisNeighbors).
std::array<std::array<int, 2>, 2> bracket(int dir, int x, int y, int delta) {
  switch (dir) {
    case 0: return {{{x, y + delta}, {x, y + delta + 1}}};
    case 1: return {{{x, y - delta - 1}, {x, y - delta}}};
    case 2: return {{{x + delta, y}, {x + delta + 1, y}}};
    default: return {{{x - delta - 1, y}, {x - delta, y}}};
  }
}

void check_delta(int delta, const GraphParams& params) {
  const int h = params.half_window();
  if (delta < -h || delta > h - 1)
    throw DomainError("delta " + std::to_string(delta) + " outside [" + std::to_string(-h) +
                      ", " + std::to_string(h - 1) + "]");
}

}  // namespace

std::array<double, 2> bracket_row_weights(double w1, double w2) {
  const double total = w1 + w2;
  if (!(total > 0.0)) return {0.5, 0.5};
  return {w1 / total, w2 / total};
}

double score_delta(const PatchComparator& patches, PixelRef pixel, int delta,
                   const GraphParams& params) {
  check_delta(delta, params);
  const auto& shape = patches.shape();
  std::array<int, 4> nb{};
  for (int d = 0; d < 4; ++d) nb[d] = neighbor_view(shape, pixel.view, kAxisNeighbors[d]);
  return sum_brackets(pixel.x, pixel.y, delta, [&](int dir, int x, int y) {
    if (nb[dir] < 0 || x < 0 || x >= shape.rows || y < 0 || y >= shape.cols) return 0.0;
    return similarity(patches.distance(pixel, {nb[dir], x, y}), params.sigma);
  });
}

double score_delta(const LightField& lf, PixelRef pixel, int delta, const GraphParams& params) {
  params.validate();
  return score_delta(PatchComparator(lf, params.patch_side), pixel, delta, params);
}

DeltaField estimate_delta(const PatchComparator& patches, int view, const GraphParams& params) {
  const auto& shape = patches.shape();
  const int h = params.half_window();
  std::array<int, 4> nb{};
  for (int d = 0; d < 4; ++d) nb[d] = neighbor_view(shape, view, kAxisNeighbors[d]);

  // Search order implements the tie rule: 0, -1, 1, -2, 2, ...
  std::vector<int> order{0};
  for (int m = 1; m <= h; ++m) {
    order.push_back(-m);
    if (m <= h - 1) order.push_back(m);
  }

  DeltaField field{view, shape.rows, shape.cols,
                   std::vector<int>(shape.view_size(), 0)};
  const int span = 2 * h + 1;
  // weights[dir][o + h] caches the similarity at window offset o.
  std::array<std::vector<double>, 4> weights;
  for (auto& w : weights) w.resize(span);

  for (int y = 0; y < shape.cols; ++y) {
    for (int x = 0; x < shape.rows; ++x) {
      const PixelRef p{view, x, y};
      for (int dir = 0; dir < 4; ++dir) {
        const bool along_y = kAxisNeighbors[dir].dt != 0;
        for (int o = -h; o <= h; ++o) {
          const int xx = along_y ? x : x + o;
          const int yy = along_y ? y + o : y;
          double w = 0.0;
          if (nb[dir] >= 0 && xx >= 0 && xx < shape.rows && yy >= 0 && yy < shape.cols)
            w = similarity(patches.distance(p, {nb[dir], xx, yy}), params.sigma);
          weights[dir][o + h] = w;
        }
      }
      auto lookup = [&](int dir, int xx, int yy) {
        const int o = kAxisNeighbors[dir].dt != 0 ? yy - y : xx - x;
        return weights[dir][o + h];
      };
      int best = 0;
      double best_score = -1.0;
      for (int delta : order) {
        const double s = sum_brackets(x, y, delta, lookup);
        if (s > best_score) {
          best_score = s;
          best = delta;
        }
      }
      field.values[static_cast<std::size_t>(y) * shape.rows + x] = best;
    }
  }
  return field;
}

DeltaField estimate_delta(const LightField& lf, int view, const GraphParams& params) {
  params.validate();
  if (view < 0 || view >= static_cast<int>(lf.shape().num_views()))
    throw DomainError("view index out of range");
  return estimate_delta(PatchComparator(lf, params.patch_side), view, params);
}

void write_delta_fields(std::ostream& os, const LightFieldShape& shape,
                        const std::vector<DeltaField>& fields) {
  for (const auto& f : fields) {
    const auto c = view_coord(f.view + 1, shape.M);
    os << "view " << f.view + 1 << ' ' << c.s << ' ' << c.t << '\n';
    for (int x = 0; x < f.rows; ++x) {
      for (int y = 0; y < f.cols; ++y) os << (y ? " " : "") << f(x, y);
      os << '\n';
    }
  }
}

WarpSet build_warp_sq_rows(const LightField& estimate, const GraphParams& params, int threads) {
  params.validate();
  const auto& shape = estimate.shape();
  const PatchComparator patches(estimate, params.patch_side);
  const int views = static_cast<int>(shape.num_views());
  const auto vs = static_cast<int>(shape.view_size());

  std::vector<std::vector<Warp>> per_view(views);
  parallel_for(views, threads, [&](std::size_t k) {
    const int view = static_cast<int>(k);
    const DeltaField delta = estimate_delta(patches, view, params);
    for (int dir = 0; dir < 4; ++dir) {
      const int src = neighbor_view(shape, view, kAxisNeighbors[dir]);
      if (src < 0) continue;
      std::vector<Triplet> entries;
      entries.reserve(2 * shape.view_size());
      for (int y = 0; y < shape.cols; ++y) {
        for (int x = 0; x < shape.rows; ++x) {
          const int row = y * shape.rows + x;
          const auto pair = bracket(dir, x, y, delta(x, y));
          bool inside = true;
          for (const auto& px : pair)
            inside = inside && px[0] >= 0 && px[0] < shape.rows && px[1] >= 0 &&
                     px[1] < shape.cols;
          if (!inside) continue;
          const PixelRef target{view, x, y};
          const double w1 = similarity(
              patches.distance(target, {src, pair[0][0], pair[0][1]}), params.sigma);
          const double w2 = similarity(
              patches.distance(target, {src, pair[1][0], pair[1][1]}), params.sigma);
          const auto ab = bracket_row_weights(w1, w2);
          entries.emplace_back(row, pair[0][1] * shape.rows + pair[0][0], ab[0]);
          entries.emplace_back(row, pair[1][1] * shape.rows + pair[1][0], ab[1]);
        }
      }
      Warp w{view, src, SparseMatrix(vs, vs)};
      w.F.setFromTriplets(entries.begin(), entries.end());
      per_view[k].push_back(std::move(w));
    }
  });

  WarpSet out{shape, {}};
  for (auto& v : per_view)
    for (auto& w : v) out.warps.push_back(std::move(w));
  return out;
}

std::pair<WarpSet, MaskSet> build_warp_sq(const LightField& estimate, const GraphParams& params,
                                          const BlurSampleOperator& sb, int threads) {
  WarpSet warps = build_warp_sq_rows(estimate, params, threads);
  MaskSet masks = masks_from_borders(warps, sb);
  return {std::move(warps), std::move(masks)};
}

WarpSet build_warp_dr(const GraphAdjacency& graph) {
  const auto& shape = graph.shape;
  const auto vs = static_cast<Eigen::Index>(shape.view_size());
  if (graph.weights.rows() != static_cast<Eigen::Index>(shape.size()))
    throw DomainError("graph size does not match its light field shape");
  WarpSet out{shape, {}};
  const int views = static_cast<int>(shape.num_views());
  for (int view = 0; view < views; ++view) {
    for (const auto off : kAxisNeighbors) {
      const int src = neighbor_view(shape, view, off);
      if (src < 0) continue;
      const Eigen::Index c0 = src * vs, c1 = c0 + vs;
      std::vector<Triplet> entries;
      for (Eigen::Index r = 0; r < vs; ++r) {
        const Eigen::Index row = view * vs + r;
        double total = 0.0;
        for (SparseMatrix::InnerIterator it(graph.weights, row); it; ++it)
          if (it.col() >= c0 && it.col() < c1) total += it.value();
        if (total <= 0.0) continue;
        for (SparseMatrix::InnerIterator it(graph.weights, row); it; ++it)
          if (it.col() >= c0 && it.col() < c1)
            entries.emplace_back(static_cast<int>(r), static_cast<int>(it.col() - c0),
                                 it.value() / total);
      }
      Warp w{view, src, SparseMatrix(vs, vs)};
      w.F.setFromTriplets(entries.begin(), entries.end());
      out.warps.push_back(std::move(w));
    }
  }
  return out;
}

MaskSet masks_from_borders(const WarpSet& warps, const BlurSampleOperator& sb) {
  if (sb.hi_rows() != warps.shape.rows || sb.hi_cols() != warps.shape.cols)
    throw DomainError("degradation operator does not match the warp shape");
  const int a = sb.alpha();
  MaskSet out;
  out.masks.reserve(warps.warps.size());
  for (const auto& w : warps.warps) {
    Mask m{w.target, w.source, std::vector<std::uint8_t>(sb.lo_size(), 1)};
    for (Eigen::Index row = 0; row < w.F.outerSize(); ++row) {
      double sum = 0.0;
      for (SparseMatrix::InnerIterator it(w.F, row); it; ++it) sum += it.value();
      if (sum != 0.0) continue;
      const int x = static_cast<int>(row % warps.shape.rows);
      const int y = static_cast<int>(row / warps.shape.rows);
      m.keep[static_cast<std::size_t>(y / a) * sb.lo_rows() + x / a] = 0;
    }
    out.masks.push_back(std::move(m));
  }
  return out;
}

}  // namespace lfsr
