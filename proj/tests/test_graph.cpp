#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "graph.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace lfsr;

namespace {

// Naive patch distance with edge replication, written from the definition.
double naive_distance(const LightField& lf, PixelRef a, PixelRef b, int side) {
  const int r = side / 2;
  auto px = [&](int v, int x, int y) {
    x = std::min(std::max(x, 0), lf.rows() - 1);
    y = std::min(std::max(y, 0), lf.cols() - 1);
    return lf.at(v, x, y);
  };
  double sum = 0.0;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j) {
      const double d = px(a.view, a.x + i, a.y + j) - px(b.view, b.x + i, b.y + j);
      sum += d * d;
    }
  return sum;
}

std::int64_t index_of(const LightFieldShape& s, int view, int x, int y) {
  return static_cast<std::int64_t>(view) * s.view_size() + static_cast<std::int64_t>(y) * s.rows + x;
}

SparseMatrix from_dense(const Eigen::MatrixXd& m) { return m.sparseView(); }

// Highest weight in row i among columns of view `v`; ties to the lower index.
std::int64_t best_in_view(const SparseMatrix& W, std::int64_t i, int v, const LightFieldShape& s) {
  std::int64_t best = -1;
  double bw = -1.0;
  for (SparseMatrix::InnerIterator it(W, i); it; ++it) {
    if (it.col() / static_cast<std::int64_t>(s.view_size()) != v) continue;
    if (it.value() > bw) {
      bw = it.value();
      best = it.col();
    }
  }
  return best;
}

}  // namespace

TEST_CASE("patch distance examples") {
  std::mt19937 rng(1);
  const LightField lf = oracle::random_lightfield({2, 12, 12}, rng);
  CHECK(patch_sq_distance(lf, {1, 5, 5}, {1, 5, 5}, 7) == 0.0);

  const double c = 0.3;
  LightField two({2, 10, 10}, 0.2);
  for (int k : {1, 2, 3})
    for (auto& v : two.view_data(k)) v = 0.2 + c;
  CHECK(patch_sq_distance(two, {0, 4, 4}, {1, 4, 4}, 7) == doctest::Approx(49 * c * c).epsilon(1e-12));
  CHECK(patch_sq_distance(two, {0, 0, 9}, {3, 9, 0}, 7) == doctest::Approx(49 * c * c).epsilon(1e-12));
}

TEST_CASE("patch distance matches the naive oracle, including borders") {
  std::mt19937 rng(2);
  const LightField lf = oracle::random_lightfield({2, 9, 11}, rng);
  const PatchComparator pc(lf, 5);
  std::uniform_int_distribution<int> v(0, 3), x(0, 8), y(0, 10);
  for (int i = 0; i < 500; ++i) {
    const PixelRef a{v(rng), x(rng), y(rng)}, b{v(rng), x(rng), y(rng)};
    const double ref = naive_distance(lf, a, b, 5);
    CHECK(patch_sq_distance(lf, a, b, 5) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(pc.distance(a, b) == patch_sq_distance(lf, a, b, 5));
    CHECK(pc.distance(a, b) == pc.distance(b, a));
  }
}

TEST_CASE("similarity is a Gaussian kernel") {
  CHECK(similarity(0.0, 0.7229) == 1.0);
  const double s = 0.7229;
  CHECK(similarity(s * s, s) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(similarity(s * s, s) == doctest::Approx(0.367879).epsilon(1e-6));
}

TEST_CASE("candidate windows") {
  std::mt19937 rng(3);
  const LightFieldShape shape{3, 30, 30};
  const LightField lf = oracle::random_lightfield(shape, rng);
  const GraphParams p;
  const int centre = linear_index({2, 2}, 3) - 1;
  const PixelRef px{centre, 15, 15};

  const auto left = edge_weights_to_view(lf, px, neighbor_view(shape, centre, {0, -1}), p);
  CHECK(left.size() == 13);
  for (const auto& c : left) {
    const auto off = c.target - index_of(shape, neighbor_view(shape, centre, {0, -1}), 15, 0);
    CHECK(off % 30 == 0);  // same row x, varying column
  }
  const auto top = edge_weights_to_view(lf, px, neighbor_view(shape, centre, {-1, 0}), p);
  CHECK(top.size() == 13);
  const auto diag = edge_weights_to_view(lf, px, neighbor_view(shape, centre, {1, 1}), p);
  CHECK(diag.size() == 169);

  const auto clipped = edge_weights_to_view(lf, {centre, 15, 2}, neighbor_view(shape, centre, {0, 1}), p);
  CHECK(clipped.size() == 9);

  // Weights agree with the kernel of the naive distance.
  for (const auto& c : left) {
    const int view = static_cast<int>(c.target / shape.view_size());
    const int rem = static_cast<int>(c.target % shape.view_size());
    const PixelRef b{view, rem % shape.rows, rem / shape.rows};
    CHECK(c.weight == doctest::Approx(std::exp(-naive_distance(lf, px, b, 7) / (p.sigma * p.sigma))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(edge_weights_to_view(lf, px, centre, p), DomainError);
  CHECK_THROWS_AS(edge_weights_to_view(lf, {0, 15, 15}, 8, p), DomainError);
}

TEST_CASE("pruning keeps the strongest edges") {
  std::vector<Candidate> c;
  for (int i = 0; i < 13; ++i) c.push_back({100 + i, 0.05 * ((i * 7) % 13)});
  const auto kept = prune_edges(c, prune_cap({0, 1}));
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].weight == doctest::Approx(0.6));
  CHECK(kept[1].weight == doctest::Approx(0.55));

  std::vector<Candidate> few{{3, 0.1}, {1, 0.9}};
  CHECK(prune_edges(few, 4).size() == 2);

  std::vector<Candidate> equal;
  for (int i = 9; i >= 0; --i) equal.push_back({i, 0.5});
  const auto ties = prune_edges(equal, prune_cap({1, 1}));
  REQUIRE(ties.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(ties[i].target == i);
  CHECK(prune_cap({1, 0}) == 2);
  CHECK(prune_cap({-1, 1}) == 4);
}

TEST_CASE("symmetrization keeps mutual edges") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 1) = 0.9;
  d(1, 0) = 0.9;
  d(1, 2) = 0.9;
  d(0, 2) = 0.4;
  d(2, 0) = 0.7;
  const Eigen::MatrixXd w = Eigen::MatrixXd(symmetrize(from_dense(d)));
  CHECK(w(0, 1) == 0.9);
  CHECK(w(1, 0) == 0.9);
  CHECK(w(1, 2) == 0.0);
  CHECK(w(2, 1) == 0.0);
  CHECK(w(0, 2) == 0.4);
  CHECK(w(2, 0) == 0.4);
  CHECK(symmetrize(SparseMatrix(5, 5)).nonZeros() == 0);
}

TEST_CASE("single view gives an empty graph") {
  std::mt19937 rng(4);
  const auto g = build_adjacency(oracle::random_lightfield({1, 8, 8}, rng), GraphParams{}, 1);
  CHECK(g.weights.rows() == 64);
  CHECK(g.weights.nonZeros() == 0);
}

TEST_CASE("directed edges respect the pruning caps") {
  std::mt19937 rng(5);
  const LightFieldShape shape{3, 12, 12};
  const SparseMatrix d = build_directed_adjacency(oracle::random_lightfield(shape, rng), GraphParams{}, 1);
  for (Eigen::Index i = 0; i < d.outerSize(); ++i) {
    const int view = static_cast<int>(i / shape.view_size());
    std::vector<int> per_view(shape.num_views(), 0);
    for (SparseMatrix::InnerIterator it(d, i); it; ++it) ++per_view[it.col() / shape.view_size()];
    int total = 0;
    for (int v = 0; v < 9; ++v) {
      total += per_view[v];
      if (per_view[v] == 0) continue;
      const auto a = view_coord(view + 1, 3), b = view_coord(v + 1, 3);
      const ViewOffset off{b.s - a.s, b.t - a.t};
      REQUIRE((off.is_axis() || off.is_diagonal()));
      CHECK(per_view[v] <= prune_cap(off));
    }
    CHECK(total <= 24);
  }
}

TEST_CASE("zero disparity connects co-located pixels") {
  const Image base = testing::random_texture(24, 24, 6);
  const LightField lf = testing::shifted_lightfield(base, 3, 24, 24, 0);
  const auto g = build_adjacency(lf, GraphParams{}, 1);
  const auto& s = lf.shape();
  for (int view = 0; view < 9; ++view)
    for (const auto off : kAxisNeighbors) {
      const int nb = neighbor_view(s, view, off);
      if (nb < 0) continue;
      for (int y = 6; y < 18; ++y)
        for (int x = 6; x < 18; ++x) {
          const auto i = index_of(s, view, x, y);
          const auto j = index_of(s, nb, x, y);
          CHECK(best_in_view(g.weights, i, nb, s) == j);
          CHECK(g.weights.coeff(i, j) == 1.0);
        }
    }
}

TEST_CASE("uniform disparity is recovered by the strongest left edge") {
  for (int d : {1, 2, -3}) {
    const int n = 28, margin = 8;
    const Image base = testing::random_texture(n + 3 * 2, n + 3 * 2, 7);
    const LightField lf = testing::shifted_lightfield(base, 3, n, n, d);
    const auto g = build_adjacency(lf, GraphParams{}, 1);
    const auto& s = lf.shape();
    const int view = linear_index({2, 2}, 3) - 1;
    const int left = neighbor_view(s, view, {0, -1});
    for (int y = margin; y < n - margin; ++y)
      for (int x = margin; x < n - margin; ++x)
        CHECK(best_in_view(g.weights, index_of(s, view, x, y), left, s) == index_of(s, left, x, y + d));
  }
}

TEST_CASE("Laplacian quadratic form") {
  Eigen::MatrixXd two = Eigen::MatrixXd::Zero(2, 2);
  two(0, 1) = two(1, 0) = 1.0;
  const SparseMatrix L2 = laplacian(from_dense(two));
  const Eigen::Vector2d u(0, 1);
  CHECK(u.dot(L2 * u) == doctest::Approx(1.0));

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(30, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = i + 1; j < 30; ++j)
      if (w(rng) < 0.3) m(i, j) = m(j, i) = w(rng);
  const SparseMatrix W = from_dense(m);
  const SparseMatrix L = laplacian(W);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd x = oracle::random_vector(30, rng, -1, 1);
    double half_sum = 0.0;
    for (int i = 0; i < 30; ++i)
      for (int j = 0; j < 30; ++j) half_sum += 0.5 * m(i, j) * (x(i) - x(j)) * (x(i) - x(j));
    CHECK(std::abs(x.dot(L * x) - half_sum) <= 1e-12 * std::max(1.0, half_sum));
    CHECK(graph_variation(W, x) == doctest::Approx(half_sum).epsilon(1e-12));
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(30, 0.7);
  CHECK(std::abs(ones.dot(L * ones)) < 1e-12);

  const Eigen::MatrixXd Ld(L);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Ld);
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);

  Eigen::MatrixXd asym = m;
  asym(0, 1) += 0.5;
  CHECK_THROWS_AS(laplacian(from_dense(asym)), DomainError);
}

TEST_CASE("graph build is independent of the thread count") {
  std::mt19937 rng(9);
  const LightField lf = oracle::random_lightfield({3, 16, 16}, rng);
  const auto a = build_adjacency(lf, GraphParams{}, 1);
  const auto b = build_adjacency(lf, GraphParams{}, 3);
  CHECK(Eigen::MatrixXd(a.weights - b.weights).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Eigen::MatrixXd(a.weights - SparseMatrix(a.weights.transpose())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph parameters are validated") {
  CHECK_THROWS_AS((GraphParams{6, 0.7, 13}.validate()), ConfigError);
  CHECK_THROWS_AS((GraphParams{7, 0.0, 13}.validate()), ConfigError);
  CHECK_THROWS_AS((GraphParams{7, 0.7, 12}.validate()), ConfigError);
  CHECK_NOTHROW(GraphParams{}.validate());
}
