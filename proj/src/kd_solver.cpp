// Copyright 2026 The gatedist developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gatedist/kd_solver.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "gatedist/rng.hpp"

namespace gatedist {

namespace {

// A polar input this small (relative to the gate's HS norm) carries no
// directional information; the run is abandoned for the next seed.
constexpr double kZeroInputTol = 1e-13;

struct SeedRun {
  Matrix u_a;
  Matrix u_b;
  double overlap = 0.0;
  int sweeps = 0;
  bool converged = false;
  bool degenerate = false;
  bool zero_collapse = false;
  std::vector<double> history;
};

SeedRun run_seed(const Matrix& m, Index d_a, Index d_b, Matrix u_b,
                 const KdOptions& opts) {
  SeedRun run;
  run.u_b = std::move(u_b);
  run.u_a = Matrix::Identity(d_a, d_a);
  const double scale = hs_norm(m);
  double prev = -1.0;
  for (int sweep = 0; sweep < opts.max_iter; ++sweep) {
    run.sweeps = sweep + 1;
    const Matrix ma = partial_trace(
        m * Eigen::kroneckerProduct(Matrix::Identity(d_a, d_a),
                                    run.u_b.adjoint())
                .eval(),
        d_a, d_b, Party::B);
    if (ma.norm() < kZeroInputTol * scale) {
      run.zero_collapse = true;
      return run;
    }
    const PolarProjection pa = polar_unitary(ma);
    run.degenerate |= pa.degenerate;
    run.u_a = pa.unitary;

    const Matrix mb = partial_trace(
        m * Eigen::kroneckerProduct(run.u_a.adjoint(),
                                    Matrix::Identity(d_b, d_b))
                .eval(),
        d_a, d_b, Party::A);
    if (mb.norm() < kZeroInputTol * scale) {
      run.zero_collapse = true;
      return run;
    }
    const PolarProjection pb = polar_unitary(mb);
    run.degenerate |= pb.degenerate;
    run.u_b = pb.unitary;

    // Each half-step maximizes the overlap given the other factor, so the
    // new overlap is the trace norm of the last polar input.
    run.overlap = trace_norm(mb);
    if (opts.keep_history) run.history.push_back(run.overlap);
    if (prev >= 0.0 && run.overlap - prev < opts.tol) {
      run.converged = true;
      break;
    }
    prev = run.overlap;
  }
  return run;
}

}  // namespace

KdResult kd_alternating_general(const Matrix& m, Index d_a, Index d_b,
                                const KdOptions& opts) {
  if (m.rows() != d_a * d_b || m.cols() != d_a * d_b) {
    throw ShapeError("kd_alternating: expected a (dA*dB) x (dA*dB) matrix");
  }
  if (opts.n_seeds < 1 || opts.tol <= 0.0) {
    throw DomainError("kd_alternating: need n_seeds >= 1 and tol > 0");
  }

  // The Schmidt decomposition powers both the bounds and the second seed.
  const SchmidtData schmidt = operator_schmidt_general(m, d_a, d_b);

  KdResult result;
  bool any_alive = false;
  for (int s = 0; s < opts.n_seeds; ++s) {
    Matrix seed_b;
    if (s == 0) {
      seed_b = Matrix::Identity(d_b, d_b);
    } else if (s == 1) {
      // Nearest unitary to the leading Schmidt factor: ascent from here
      // reaches at least the overlap behind the kd_upper bound, so the
      // final kd can never exceed it.
      seed_b = polar_unitary(schmidt.basis_b[0]).unitary;
    } else {
      seed_b = random_cue(d_b, derive_seed(opts.seed, static_cast<std::uint64_t>(s)));
    }
    SeedRun run = run_seed(m, d_a, d_b, std::move(seed_b), opts);
    result.seeds_tried = s + 1;
    if (run.zero_collapse && run.overlap <= 0.0) continue;
    any_alive = true;
    if (run.overlap > result.overlap) {
      result.overlap = run.overlap;
      result.u_a = std::move(run.u_a);
      result.u_b = std::move(run.u_b);
      result.iterations = run.sweeps;
      result.converged = run.converged;
      result.degenerate = run.degenerate;
      result.overlap_history = std::move(run.history);
    }
  }
  if (!any_alive) {
    throw DegenerateLandscapeError(
        "kd_alternating: every seed collapsed onto a zero polar input for this " +
        std::to_string(d_a) + "x" + std::to_string(d_b) + " gate");
  }

  // Absorb the global phase into uA: tr(U^dag(uA x uB)) real positive.
  const Complex z =
      hs_inner(m, Eigen::kroneckerProduct(result.u_a, result.u_b).eval());
  if (std::abs(z) > 0.0) result.u_a *= std::conj(z) / std::abs(z);

  const double dim = static_cast<double>(d_a) * static_cast<double>(d_b);
  result.kd = std::sqrt(std::max(0.0, 2.0 * dim - 2.0 * result.overlap));
  result.bounds.lambda1 = schmidt.lambdas(0);
  result.bounds.kd_star = std::sqrt(
      std::max(0.0, 2.0 * dim - 2.0 * dim * std::sqrt(result.bounds.lambda1)));
  result.bounds.trace_norm_m1a = trace_norm(schmidt.basis_a[0]);
  result.bounds.trace_norm_m1b = trace_norm(schmidt.basis_b[0]);
  const double upper_gap = 2.0 * dim - 2.0 * result.bounds.trace_norm_m1a *
                                           result.bounds.trace_norm_m1b;
  result.bounds.kd_upper =
      result.bounds.kd_star + std::sqrt(std::max(0.0, upper_gap));
  if (d_a == d_b) {
    const double kd_max = std::sqrt(2.0 * dim - 2.0 * static_cast<double>(d_a));
    result.conjecture_violation = result.kd > kd_max + 1e-6;
  }
  return result;
}

KdResult kd_alternating(const BipartiteGate& u, const KdOptions& opts) {
  return kd_alternating_general(u.matrix(), u.d(), u.d(), opts);
}

double kd_two_qubit(const BipartiteGate& u) {
  if (u.d() != 2) {
    throw DomainError("kd_two_qubit: requires d = 2");
  }
  const double lambda1 = operator_schmidt(u).lambdas(0);
  return std::sqrt(std::max(0.0, 8.0 - 8.0 * std::sqrt(lambda1)));
}

std::optional<double> kd_closed_form(const GateFamilySpec& spec) {
  const double d = static_cast<double>(spec.d);
  switch (spec.family) {
    case Family::Swap:
    case Family::SdDiagonal:
    case Family::DualRandom:
      return std::sqrt(2.0 * d * d - 2.0 * d);
    case Family::FracSwap: {
      const double c = std::cos(std::numbers::pi * spec.alpha / 2.0);
      const double s = std::sin(std::numbers::pi * spec.alpha / 2.0);
      return std::sqrt(2.0 * d * d -
                       2.0 * d * std::sqrt(d * d * c * c + s * s));
    }
    case Family::ChmDiagonal:
      return std::sqrt(2.0 * d * d - 2.0 * d * std::sqrt(d));
    case Family::Ucz:
      if (spec.d == 2) return 2.0 * std::sqrt(2.0 - std::sqrt(2.0));
      if (spec.d == 3) return std::sqrt(18.0 - 10.0 * std::sqrt(2.0));
      return 2.0;
    default:
      return std::nullopt;
  }
}

double block_diag_kd2_bound(const BipartiteGate& u, const Matrix& v) {
  const Index d = u.d();
  if (v.rows() != d || v.cols() != d) {
    throw ShapeError("block_diag_kd2_bound: probe must be d x d");
  }
  // Verify block-diagonal structure before reading the blocks off.
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      if (u.matrix().block(i * d, j * d, d, d).norm() > 1e-12) {
        throw DomainError("block_diag_kd2_bound: gate is not block diagonal");
      }
    }
  double sum = 0.0;
  for (Index i = 0; i < d; ++i) {
    sum += std::abs((u.matrix().block(i * d, i * d, d, d).adjoint() * v).trace());
  }
  return 2.0 * static_cast<double>(d * d) - 2.0 * sum;
}

}  // namespace gatedist
