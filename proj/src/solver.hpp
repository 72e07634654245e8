#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "degrade.hpp"
#include "graph.hpp"
#include "lightfield.hpp"
#include "sparse.hpp"
#include "warp.hpp"

namespace lfsr {

struct SolverConfig {
  double lambda2 = 0.2;
  double lambda3 = 0.0055;
  double beta = 1.0;
  int outer_iters = 2;  // graph/warp rebuilds
  int ppa_iters = 30;
  double ppa_tol = 1e-6;  // relative step norm
  double cg_tol = 1e-6;   // relative residual
  int cg_max_iters = 200;
  int threads = 0;  // 0 = hardware concurrency

  // Throws ConfigError.
  void validate() const;
};

enum class WarpVariant { SQ, DR };

// F(u) = 1/2 u'Pu + q'u + r with
//   P = 2 (A'A + l2 sum_k (H_k A F_k)'(H_k A F_k) + l3 L)
//   q = -2 (A' + l2 sum_k (H_k A F_k)' H_k) v
//   r = v'(I + l2 sum_k H_k'H_k) v
// where A applies the blur/sample operator to every view. P is applied
// matrix-free.
class QuadraticProblem {
 public:
  QuadraticProblem(Eigen::VectorXd v, LightFieldShape hi_shape, WarpSet warps, MaskSet masks,
                   SparseMatrix L, BlurSampleOperator sb, double lambda2, double lambda3,
                   int threads);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(shape_.size()); }
  const LightFieldShape& shape() const { return shape_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  void apply(const Eigen::VectorXd& u, Eigen::VectorXd& out) const;
  const Eigen::VectorXd& q() const { return q_; }
  double r() const { return r_; }

  double value(const Eigen::VectorXd& u) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const;

 private:
  Eigen::VectorXd v_;
  LightFieldShape shape_;
  WarpSet warps_;
  MaskSet masks_;
  SparseMatrix L_;
  BlurSampleOperator sb_;
  double lambda2_;
  double lambda3_;
  int threads_;
  std::vector<std::vector<std::size_t>> warps_by_source_;
  Eigen::VectorXd q_;
  double r_ = 0.0;
};

// v is the vectorized low-resolution light field. An empty L (0 x 0) stands
// for the zero matrix. Throws ConfigError on inconsistent shapes.
QuadraticProblem assemble(const VectorizedLightField& v, WarpSet warps, MaskSet masks,
                          SparseMatrix L, const BlurSampleOperator& sb, const SolverConfig& cfg);

struct ObjectiveTerms {
  double fidelity = 0.0;  // sum_k ||SB u_k - v_k||^2
  double warping = 0.0;   // sum over warps ||H (SB F u_src - v_tgt)||^2
  double graph = 0.0;     // u'Lu
  double total = 0.0;     // fidelity + l2 warping + l3 graph
};

ObjectiveTerms objective(const Eigen::VectorXd& u, const VectorizedLightField& v,
                         const WarpSet& warps, const MaskSet& masks, const SparseMatrix& L,
                         const BlurSampleOperator& sb, const SolverConfig& cfg);

using LinearOperator = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Conjugate gradient for a symmetric positive-definite operator. Stops when
// ||op(x) - b|| <= tol ||b|| or after max_iters. Throws NumericalError on
// non-finite values or a non-positive curvature p'Ap.
CgResult cg_solve(const LinearOperator& op, const Eigen::VectorXd& b, Eigen::VectorXd x0,
                  double tol, int max_iters);

struct PpaStep {
  int outer = 1;
  int iteration = 0;  // 0 is the starting point
  double objective = 0.0;
  int cg_iterations = 0;
  double cg_residual = 0.0;
  double step_norm = 0.0;  // relative
};

struct SolveReport {
  std::vector<PpaStep> steps;
  double final_residual = 0.0;
  double wall_seconds = 0.0;

  void append(const SolveReport& other);
  std::vector<int> cg_iteration_counts() const;
  // Whitespace-aligned table: outer, iter, objective, cg_iters, residual, step.
  std::string to_text() const;
};

struct PpaResult {
  Eigen::VectorXd u;
  SolveReport report;
};

// Proximal point iterations u <- argmin F(u) + ||u - u_prev||^2 / (2 beta),
// each solved by CG on (P + I/beta) u = u_prev/beta - q, warm-started at
// u_prev.
PpaResult ppa_minimize(const QuadraticProblem& problem, Eigen::VectorXd u0,
                       const SolverConfig& cfg, int outer_round = 1);

// Separable bilinear interpolation with pixel-center alignment and
// replicated borders.
Image bilinear_upsample(const Image& image, int alpha);
LightField bilinear_upsample(const LightField& lf, int alpha);

// Graph-regularized super-resolution of a single-channel light field.
LightField super_resolve(const LightField& lo, int alpha, const SolverConfig& cfg,
                         const GraphParams& params, WarpVariant variant,
                         SolveReport* report = nullptr);

}  // namespace lfsr
