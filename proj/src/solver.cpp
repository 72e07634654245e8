#include "solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "errors.hpp"
#include "parallel.hpp"

namespace lfsr {

void SolverConfig::validate() const {
  if (!(lambda2 >= 0.0) || !(lambda3 >= 0.0)) throw ConfigError("lambda2 and lambda3 must be >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
  if (outer_iters < 0 || ppa_iters < 1) throw ConfigError("iteration counts must be positive");
  if (!(ppa_tol > 0.0) || !(cg_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (cg_max_iters < 1) throw ConfigError("cg_max_iters must be positive");
}

namespace {

using Segment = Eigen::Map<const Eigen::VectorXd>;

Segment segment(const Eigen::VectorXd& x, int view, std::size_t size) {
  return Segment(x.data() + view * size, static_cast<Eigen::Index>(size));
}

// In-place application of a binary mask.
void mask_in_place(Eigen::VectorXd& lo, const std::vector<std::uint8_t>& keep) {
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (!keep[i]) lo(i) = 0.0;
}

}  // namespace

QuadraticProblem::QuadraticProblem(Eigen::VectorXd v, LightFieldShape hi_shape, WarpSet warps,
                                   MaskSet masks, SparseMatrix L, BlurSampleOperator sb,
                                   double lambda2, double lambda3, int threads)
    : v_(std::move(v)),
      shape_(hi_shape),
      warps_(std::move(warps)),
      masks_(std::move(masks)),
      L_(std::move(L)),
      sb_(sb),
      lambda2_(lambda2),
      lambda3_(lambda3),
      threads_(threads) {
  const auto views = shape_.num_views();
  if (sb_.hi_rows() != shape_.rows || sb_.hi_cols() != shape_.cols)
    throw ConfigError("degradation operator does not match the light field shape");
  if (static_cast<std::size_t>(v_.size()) != sb_.lo_size() * views)
    throw ConfigError("low-resolution vector has the wrong length");
  if (!(warps_.shape == shape_) && !warps_.warps.empty())
    throw ConfigError("warp set shape does not match the light field");
  if (warps_.warps.size() != masks_.masks.size())
    throw ConfigError("warp and mask sets differ in size");
  const auto vs = static_cast<Eigen::Index>(shape_.view_size());
  for (std::size_t i = 0; i < warps_.warps.size(); ++i) {
    const auto& w = warps_.warps[i];
    const auto& m = masks_.masks[i];
    if (w.F.rows() != vs || w.F.cols() != vs || w.target != m.target || w.source != m.source ||
        m.keep.size() != sb_.lo_size() || w.source < 0 || w.target < 0 ||
        static_cast<std::size_t>(w.source) >= views || static_cast<std::size_t>(w.target) >= views)
      throw ConfigError("warp " + std::to_string(i) + " is inconsistent with its mask or shape");
  }
  if (L_.size() != 0 && (L_.rows() != dim() || L_.cols() != dim()))
    throw ConfigError("Laplacian size does not match the light field");

  warps_by_source_.resize(views);
  for (std::size_t i = 0; i < warps_.warps.size(); ++i)
    warps_by_source_[warps_.warps[i].source].push_back(i);

  // q and r.
  const std::size_t lo = sb_.lo_size();
  q_ = sb_.apply_adjoint_all(v_, static_cast<int>(views));
  r_ = v_.squaredNorm();
  for (std::size_t k = 0; k < views; ++k) {
    Eigen::Map<Eigen::VectorXd> qk(q_.data() + k * shape_.view_size(), vs);
    for (const auto i : warps_by_source_[k]) {
      const auto& w = warps_.warps[i];
      Eigen::VectorXd hv = segment(v_, w.target, lo);
      mask_in_place(hv, masks_.masks[i].keep);
      qk += lambda2_ * (w.F.transpose() * sb_.apply_adjoint(hv));
    }
  }
  for (std::size_t i = 0; i < warps_.warps.size(); ++i) {
    Eigen::VectorXd hv = segment(v_, warps_.warps[i].target, lo);
    mask_in_place(hv, masks_.masks[i].keep);
    r_ += lambda2_ * hv.squaredNorm();
  }
  q_ *= -2.0;
}

void QuadraticProblem::apply(const Eigen::VectorXd& u, Eigen::VectorXd& out) const {
  if (u.size() != dim()) throw DomainError("vector length does not match the problem");
  const auto vs = shape_.view_size();
  const auto views = shape_.num_views();
  out.resize(dim());
  if (lambda3_ != 0.0 && L_.size() != 0) {
    out.noalias() = L_ * u;
    out *= lambda3_;
  } else {
    out.setZero();
  }
  parallel_for(views, threads_, [&](std::size_t k) {
    Eigen::Map<Eigen::VectorXd> ok(out.data() + k * vs, static_cast<Eigen::Index>(vs));
    const Eigen::VectorXd uk = segment(u, static_cast<int>(k), vs);
    ok += sb_.apply_adjoint(sb_.apply(uk));
    if (lambda2_ == 0.0) return;
    for (const auto i : warps_by_source_[k]) {
      const auto& w = warps_.warps[i];
      Eigen::VectorXd lo = sb_.apply(Eigen::VectorXd(w.F * uk));
      mask_in_place(lo, masks_.masks[i].keep);
      ok += lambda2_ * (w.F.transpose() * sb_.apply_adjoint(lo));
    }
  });
  out *= 2.0;
}

Eigen::VectorXd QuadraticProblem::apply(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out;
  apply(u, out);
  return out;
}

double QuadraticProblem::value(const Eigen::VectorXd& u) const {
  return 0.5 * u.dot(apply(u)) + q_.dot(u) + r_;
}

Eigen::VectorXd QuadraticProblem::gradient(const Eigen::VectorXd& u) const {
  return apply(u) + q_;
}

QuadraticProblem assemble(const VectorizedLightField& v, WarpSet warps, MaskSet masks,
                          SparseMatrix L, const BlurSampleOperator& sb, const SolverConfig& cfg) {
  cfg.validate();
  if (v.layout.rows != sb.lo_rows() || v.layout.cols != sb.lo_cols())
    throw ConfigError("low-resolution light field does not match the degradation operator");
  const LightFieldShape hi{v.layout.M, sb.hi_rows(), sb.hi_cols()};
  return QuadraticProblem(v.data, hi, std::move(warps), std::move(masks), std::move(L), sb,
                          cfg.lambda2, cfg.lambda3, cfg.threads);
}

ObjectiveTerms objective(const Eigen::VectorXd& u, const VectorizedLightField& v,
                         const WarpSet& warps, const MaskSet& masks, const SparseMatrix& L,
                         const BlurSampleOperator& sb, const SolverConfig& cfg) {
  const int views = v.layout.M * v.layout.M;
  const auto hs = sb.hi_size(), ls = sb.lo_size();
  if (static_cast<std::size_t>(u.size()) != hs * views ||
      static_cast<std::size_t>(v.data.size()) != ls * views)
    throw DomainError("objective: vector lengths do not match the degradation operator");
  if (warps.warps.size() != masks.masks.size())
    throw DomainError("objective: warp and mask sets differ in size");
  ObjectiveTerms t;
  for (int k = 0; k < views; ++k) {
    const Eigen::VectorXd uk = segment(u, k, hs);
    t.fidelity += (sb.apply(uk) - segment(v.data, k, ls)).squaredNorm();
  }
  for (std::size_t i = 0; i < warps.warps.size(); ++i) {
    const auto& w = warps.warps[i];
    const Eigen::VectorXd us = segment(u, w.source, hs);
    Eigen::VectorXd res = sb.apply(Eigen::VectorXd(w.F * us)) - segment(v.data, w.target, ls);
    mask_in_place(res, masks.masks[i].keep);
    t.warping += res.squaredNorm();
  }
  if (L.size() != 0) {
    if (L.rows() != u.size()) throw DomainError("objective: Laplacian size mismatch");
    t.graph = u.dot(L * u);
  }
  t.total = t.fidelity + cfg.lambda2 * t.warping + cfg.lambda3 * t.graph;
  return t;
}

CgResult cg_solve(const LinearOperator& op, const Eigen::VectorXd& b, Eigen::VectorXd x0,
                  double tol, int max_iters) {
  CgResult res;
  res.x = std::move(x0);
  if (res.x.size() != b.size()) throw DomainError("CG: initial guess has the wrong length");
  const double b_norm = b.norm();
  if (!std::isfinite(b_norm)) throw NumericalError("CG: right-hand side is not finite");

  Eigen::VectorXd Ap(b.size());
  op(res.x, Ap);
  Eigen::VectorXd r = b - Ap;
  double rr = r.squaredNorm();
  if (!std::isfinite(rr)) throw NumericalError("CG: initial residual is not finite");
  // b == 0 has the unique solution 0.
  if (b_norm == 0.0) {
    res.x.setZero();
    res.converged = true;
    return res;
  }
  const double target = tol * b_norm;
  res.relative_residual = std::sqrt(rr) / b_norm;
  if (std::sqrt(rr) <= target) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXd p = r;
  for (int it = 1; it <= max_iters; ++it) {
    op(p, Ap);
    const double pAp = p.dot(Ap);
    if (!std::isfinite(pAp) || pAp <= 0.0) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "CG breakdown at iteration %d: p'Ap = %g, residual = %g", it, pAp,
                    std::sqrt(rr) / b_norm);
      throw NumericalError(msg);
    }
    const double step = rr / pAp;
    res.x.noalias() += step * p;
    r.noalias() -= step * Ap;
    const double rr_new = r.squaredNorm();
    if (!std::isfinite(rr_new)) {
      throw NumericalError("CG: residual became non-finite at iteration " + std::to_string(it));
    }
    res.iterations = it;
    res.relative_residual = std::sqrt(rr_new) / b_norm;
    if (std::sqrt(rr_new) <= target) {
      res.converged = true;
      return res;
    }
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return res;
}

void SolveReport::append(const SolveReport& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  final_residual = other.final_residual;
  wall_seconds += other.wall_seconds;
}

std::vector<int> SolveReport::cg_iteration_counts() const {
  std::vector<int> out;
  for (const auto& s : steps)
    if (s.iteration > 0) out.push_back(s.cg_iterations);
  return out;
}

std::string SolveReport::to_text() const {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "# %5s %5s %22s %8s %12s %12s\n", "outer", "iter",
                "objective", "cg_iters", "residual", "step");
  os << line;
  for (const auto& s : steps) {
    std::snprintf(line, sizeof line, "  %5d %5d %22.15e %8d %12.4e %12.4e\n", s.outer,
                  s.iteration, s.objective, s.cg_iterations, s.cg_residual, s.step_norm);
    os << line;
  }
  std::snprintf(line, sizeof line, "# final_residual %.6e\n# wall_seconds %.3f\n", final_residual,
                wall_seconds);
  os << line;
  return os.str();
}

PpaResult ppa_minimize(const QuadraticProblem& problem, Eigen::VectorXd u0,
                       const SolverConfig& cfg, int outer_round) {
  cfg.validate();
  if (u0.size() != problem.dim()) throw DomainError("PPA: initial point has the wrong length");
  const auto start = std::chrono::steady_clock::now();
  const double inv_beta = 1.0 / cfg.beta;
  const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    problem.apply(x, y);
    y.noalias() += inv_beta * x;
  };

  PpaResult res;
  res.u = std::move(u0);
  res.report.steps.push_back({outer_round, 0, problem.value(res.u), 0, 0.0, 0.0});
  for (int i = 1; i <= cfg.ppa_iters; ++i) {
    const Eigen::VectorXd rhs = inv_beta * res.u - problem.q();
    CgResult cg;
    try {
      cg = cg_solve(op, rhs, res.u, cfg.cg_tol, cfg.cg_max_iters);
    } catch (const NumericalError& e) {
      throw NumericalError("PPA round " + std::to_string(outer_round) + " iteration " +
                           std::to_string(i) + ": " + e.what());
    }
    const double step = (cg.x - res.u).norm() / std::max(res.u.norm(), 1e-300);
    res.u = std::move(cg.x);
    res.report.steps.push_back(
        {outer_round, i, problem.value(res.u), cg.iterations, cg.relative_residual, step});
    res.report.final_residual = cg.relative_residual;
    if (step <= cfg.ppa_tol) break;
  }
  res.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

Image bilinear_upsample(const Image& image, int alpha) {
  if (alpha < 1) throw ConfigError("super-resolution factor must be a positive integer");
  if (alpha == 1) return image;
  const int rows = image.rows() * alpha, cols = image.cols() * alpha;
  struct Tap {
    int i0, i1;
    double f;
  };
  auto taps = [alpha](int n_lo, int n_hi) {
    std::vector<Tap> out(n_hi);
    for (int X = 0; X < n_hi; ++X) {
      const double src = std::clamp((X + 0.5) / alpha - 0.5, 0.0, double(n_lo - 1));
      const int i0 = static_cast<int>(std::floor(src));
      const int i1 = std::min(i0 + 1, n_lo - 1);
      out[X] = {i0, i1, src - i0};
    }
    return out;
  };
  const auto tx = taps(image.rows(), rows);
  const auto ty = taps(image.cols(), cols);
  Image out(rows, cols);
  for (int y = 0; y < cols; ++y) {
    const auto& b = ty[y];
    for (int x = 0; x < rows; ++x) {
      const auto& a = tx[x];
      const double top = (1.0 - b.f) * image(a.i0, b.i0) + b.f * image(a.i0, b.i1);
      const double bottom = (1.0 - b.f) * image(a.i1, b.i0) + b.f * image(a.i1, b.i1);
      out(x, y) = (1.0 - a.f) * top + a.f * bottom;
    }
  }
  return out;
}

LightField bilinear_upsample(const LightField& lf, int alpha) {
  if (alpha < 1) throw ConfigError("super-resolution factor must be a positive integer");
  LightField out({lf.M(), lf.rows() * alpha, lf.cols() * alpha});
  for (int k = 0; k < static_cast<int>(lf.shape().num_views()); ++k)
    out.set_view(k, bilinear_upsample(lf.view(k), alpha));
  return out;
}

LightField super_resolve(const LightField& lo, int alpha, const SolverConfig& cfg,
                         const GraphParams& params, WarpVariant variant, SolveReport* report) {
  cfg.validate();
  params.validate();
  const BlurSampleOperator sb(lo.rows() * alpha, lo.cols() * alpha, alpha);
  const LightFieldShape hi{lo.M(), sb.hi_rows(), sb.hi_cols()};
  const VectorizedLightField v = vectorize(lo);
  Eigen::VectorXd u = vectorize(bilinear_upsample(lo, alpha)).data;

  const bool need_warps = cfg.lambda2 != 0.0;
  const bool need_graph = cfg.lambda3 != 0.0 || (need_warps && variant == WarpVariant::DR);
  SolveReport total;
  for (int round = 1; round <= cfg.outer_iters; ++round) {
    // Graph and warps are built on the estimate clipped to valid intensities.
    LightField clamped(hi, std::vector<double>(u.begin(), u.end()));
    for (auto& px : clamped.data()) px = std::clamp(px, 0.0, 1.0);

    GraphAdjacency graph{hi, SparseMatrix(0, 0)};
    if (need_graph) graph = build_adjacency(clamped, params, cfg.threads);
    WarpSet warps{hi, {}};
    MaskSet masks;
    if (need_warps) {
      if (variant == WarpVariant::SQ) {
        std::tie(warps, masks) = build_warp_sq(clamped, params, sb, cfg.threads);
      } else {
        warps = build_warp_dr(graph);
        masks = masks_from_borders(warps, sb);
      }
    }
    SparseMatrix L = cfg.lambda3 != 0.0 ? laplacian(graph.weights) : SparseMatrix(0, 0);
    const QuadraticProblem problem =
        assemble(v, std::move(warps), std::move(masks), std::move(L), sb, cfg);
    auto result = ppa_minimize(problem, std::move(u), cfg, round);
    u = std::move(result.u);
    total.append(result.report);
  }
  if (report) *report = std::move(total);

  std::vector<double> out(u.begin(), u.end());
  for (auto& px : out) px = std::clamp(px, 0.0, 1.0);
  return LightField(hi, std::move(out));
}

}  // namespace lfsr
