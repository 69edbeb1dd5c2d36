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

#include "gatedist/ubb_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "gatedist/gates.hpp"
#include "gatedist/measures.hpp"
#include "gatedist/rng.hpp"

namespace gatedist {

namespace {

void push_ring(std::vector<Matrix>& ring, Matrix u, std::size_t window) {
  ring.push_back(std::move(u));
  if (ring.size() > window) ring.erase(ring.begin());
}

UbbTrace run_seed(const BipartiteGate& v, const Matrix& u0,
                  const UbbOptions& opts) {
  const Index d = v.d();
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  UbbTrace trace;
  trace.d = d;
  trace.u_final = u0;
  trace.history.reserve(static_cast<std::size_t>(opts.history_window));
  push_ring(trace.history, u0, static_cast<std::size_t>(opts.history_window));

  Matrix u = u0;
  double prev_residual = -1.0;
  int stagnant = 0;
  for (int step = 0; step < opts.max_iter; ++step) {
    trace.steps = step + 1;
    const Vector image = v.matrix() * vectorize(u);
    const Matrix w = devectorize(image, d, d);

    // rho_n^A of the (not yet projected) image state.
    const Matrix rho = (w * w.adjoint()) / static_cast<double>(d);
    trace.lin_entropy_seq.push_back(linear_entropy(rho));
    trace.renyi_half_seq.push_back(renyi_half(rho));

    const PolarProjection pv = polar_unitary(w);
    trace.degenerate |= pv.degenerate;
    const Matrix vn = pv.unitary;
    const double dist_even = (image - vectorize(vn)).norm();
    trace.d_seq.push_back(dist_even);

    trace.u_final = u;
    trace.v_final = vn;
    trace.final_residual = dist_even / sqrt_d;
    if (trace.final_residual <= opts.tol) {
      trace.converged = true;
      return trace;
    }
    if (prev_residual >= 0.0 && prev_residual - trace.final_residual < 1e-14) {
      if (++stagnant >= opts.stagnation_steps) return trace;
    } else {
      stagnant = 0;
    }
    prev_residual = trace.final_residual;

    const Vector preimage = v.matrix().adjoint() * vectorize(vn);
    const PolarProjection pu = polar_unitary(devectorize(preimage, d, d));
    trace.degenerate |= pu.degenerate;
    const Matrix un = pu.unitary;
    trace.d_seq.push_back((preimage - vectorize(un)).norm());

    u = un;
    push_ring(trace.history, u, static_cast<std::size_t>(opts.history_window));
  }
  return trace;
}

}  // namespace

MaxEntangledState UbbTrace::phi0() const {
  return MaxEntangledState::from_unitary(u_final);
}

MaxEntangledState UbbTrace::phi1() const {
  return MaxEntangledState::from_unitary(v_final);
}

UbbTrace ubb_iterate(const BipartiteGate& v, const Matrix& u0,
                     const UbbOptions& opts) {
  if (u0.rows() != v.d() || u0.cols() != v.d()) {
    throw ShapeError("ubb_iterate: seed must be d x d");
  }
  UbbTrace trace = run_seed(v, u0, opts);
  trace.seeds_tried = 1;
  return trace;
}

UbbTrace ubb_find(const BipartiteGate& v, const UbbOptions& opts) {
  if (opts.tol <= 0.0) {
    throw DomainError("ubb_find: tol must be positive");
  }
  UbbTrace best;
  best.final_residual = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.max_reseeds; ++r) {
    const Matrix u0 =
        random_cue(v.d(), derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    UbbTrace trace = run_seed(v, u0, opts);
    trace.seeds_tried = r + 1;
    if (trace.converged) return trace;
    if (trace.final_residual < best.final_residual) {
      best = std::move(trace);
      best.seeds_tried = r + 1;
    }
  }
  best.seeds_tried = opts.max_reseeds;
  throw UbbNonConvergence(
      "ubb_find: residual " + std::to_string(best.final_residual) +
          " above tolerance after " + std::to_string(opts.max_reseeds) +
          " seeds",
      std::move(best));
}

double ubb_distance(const BipartiteGate& v, const Matrix& u, const Matrix& w) {
  if (u.rows() != v.d() || u.cols() != v.d() || w.rows() != v.d() ||
      w.cols() != v.d()) {
    throw ShapeError("ubb_distance: u, w must be d x d");
  }
  return (v.matrix() * vectorize(u) - vectorize(w)).norm();
}

CycleReport detect_cycle(const UbbTrace& trace, int window, double tol) {
  CycleReport report;
  const auto n = static_cast<int>(trace.history.size());
  const int span = std::min(n, window);
  // Look for the smallest recurrence period ending at the newest iterate.
  for (int p = 1; p < span; ++p) {
    if (phase_distance(trace.history[static_cast<std::size_t>(n - 1)],
                       trace.history[static_cast<std::size_t>(n - 1 - p)]) <
        tol) {
      report.fixed_point = true;
      report.period = p;
      if (p > 1) {
        // Appendix-style collapse: intermediate states must coincide too.
        for (int q = 1; q < p; ++q) {
          if (phase_distance(trace.history[static_cast<std::size_t>(n - 1)],
                             trace.history[static_cast<std::size_t>(n - 1 - q)]) >=
              tol) {
            report.theory_violation = true;
            break;
          }
        }
      }
      return report;
    }
  }
  if (trace.converged) {
    // Residual <= tol means V|u> is already a maximally entangled state,
    // so the next iterate reproduces u: a fixed point even when the run
    // ended before the ring filled.
    report.fixed_point = true;
    report.period = 1;
  }
  return report;
}

void write_trace_csv(std::ostream& os, const UbbTrace& trace) {
  os << "step,d_n,linear_entropy,renyi_half\n";
  for (std::size_t n = 0; n < trace.lin_entropy_seq.size(); ++n) {
    const std::size_t even = 2 * n;
    const double dn =
        even < trace.d_seq.size() ? trace.d_seq[even] : trace.d_seq.back();
    os << n << "," << dn << "," << trace.lin_entropy_seq[n] << ","
       << trace.renyi_half_seq[n] << "\n";
  }
}

}  // namespace gatedist
