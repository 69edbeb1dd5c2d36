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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gatedist/linalg.hpp"

namespace gatedist {

struct UbbOptions {
  std::uint64_t seed = 0;
  double tol = 1e-10;       // on the unit-norm state residual
  int max_iter = 100000;    // full steps per seed
  int max_reseeds = 8;
  int history_window = 64;  // ring of retained u_n iterates
  // Abort a seed when the residual improves by < 1e-14 for this many
  // consecutive steps.
  int stagnation_steps = 100;
};

// Iteration record of the maximally-entangled-pair search
//   |v_n'> = V|u_n>, v_n = P[v_n'], |u_{n+1}'> = V^dag|v_n>, u_{n+1} = P[u_{n+1}'].
// d_seq holds the projective distances of every half-step in the
// <u|u> = d convention (d_0 >= d_1 >= d_2 ...); entropies are those of
// rho_n^A = tr_B(V|u_n><u_n|V^dag)/d, one entry per full step.
struct UbbTrace {
  Index d = 0;
  Matrix u_final;
  Matrix v_final;
  std::vector<double> d_seq;
  std::vector<double> lin_entropy_seq;
  std::vector<double> renyi_half_seq;
  bool converged = false;
  bool degenerate = false;  // a polar factor was non-unique mid-run
  int steps = 0;            // full steps of the final seed run
  int seeds_tried = 0;
  double final_residual = 0.0;  // unit-norm convention
  // Ring of the most recent u_n iterates (oldest first) for cycle scans.
  std::vector<Matrix> history;

  MaxEntangledState phi0() const;  // |Phi_0> = |u_n>/sqrt(d)
  MaxEntangledState phi1() const;  // |Phi_1> = |v_n>/sqrt(d)
};

struct UbbNonConvergence : ConvergenceError {
  UbbNonConvergence(const std::string& what, UbbTrace trace)
      : ConvergenceError(what, trace.final_residual), trace(std::move(trace)) {}
  UbbTrace trace;
};

// Find a maximally entangled pair with V|Phi_0> = |Phi_1>. Reseeds
// internally up to max_reseeds on stagnation or iteration exhaustion;
// throws UbbNonConvergence (best trace attached) when the budget is spent.
UbbTrace ubb_find(const BipartiteGate& v, const UbbOptions& opts = {});

// Single run of the map from an explicit seed unitary; never reseeds or
// throws on non-convergence (check trace.converged).
UbbTrace ubb_iterate(const BipartiteGate& v, const Matrix& u0,
                     const UbbOptions& opts = {});

// || V |u> - |w> ||_2 in the <u|u> = d vectorization convention.
double ubb_distance(const BipartiteGate& v, const Matrix& u, const Matrix& w);

// Recurrence scan over the trace's history ring, unitaries compared modulo
// global phase. Any period-p cycle of the map must be a fixed point; a
// recurrence whose intermediate states differ is reported as a theory
// violation (surfaced, not asserted).
struct CycleReport {
  bool fixed_point = false;
  int period = 0;
  bool theory_violation = false;
};

CycleReport detect_cycle(const UbbTrace& trace, int window = 64,
                         double tol = 1e-8);

// CSV export (columns step, d_n, linear_entropy, renyi_half) of the
// full-step subsequence.
void write_trace_csv(std::ostream& os, const UbbTrace& trace);

}  // namespace gatedist
