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
#include <optional>
#include <vector>

#include "gatedist/gates.hpp"
#include "gatedist/measures.hpp"

namespace gatedist {

struct KdOptions {
  // Seed schedule: identity, then the polar unitary of the leading Schmidt
  // factor (ties the result to the kd_upper bound), then CUE restarts.
  int n_seeds = 8;
  double tol = 1e-12;       // stop when the overlap increment falls below
  int max_iter = 10000;     // sweeps per seed
  std::uint64_t seed = 0;   // master seed for the CUE restarts
  bool keep_history = false;  // retain the best seed's overlap sequence
};

// Converged distance estimate. kd^2 = 2 dA dB - 2 overlap by construction;
// overlap = max_seeds |tr(U^dag (uA x uB))| at the final iterates. The global
// phase is fixed so tr(U^dag (uA x uB)) is real positive.
struct KdResult {
  double kd = 0.0;
  double overlap = 0.0;
  Matrix u_a;
  Matrix u_b;
  int iterations = 0;   // sweeps used by the winning seed
  int seeds_tried = 0;
  bool converged = false;
  bool degenerate = false;  // winning run met a degenerate polar factor
  // kd exceeded sqrt(2d^2-2d) + 1e-6, the conjectured global maximum.
  // Reported, never asserted: ensemble scans hunt for counterexamples.
  bool conjecture_violation = false;
  BoundsReport bounds;
  std::vector<double> overlap_history;  // only if opts.keep_history
};

// Alternating polar-projection maximization of |tr(U^dag (uA x uB))|:
//   uA <- P[tr_B(U (I x uB^dag))],  uB <- P[tr_A(U (uA^dag x I))],
// iterated until the overlap stalls, best result across seeds. The overlap
// is nondecreasing within a seed run. Throws DegenerateLandscapeError if
// every seed collapses onto a zero polar input.
KdResult kd_alternating(const BipartiteGate& u, const KdOptions& opts = {});
KdResult kd_alternating_general(const Matrix& m, Index d_a, Index d_b,
                                const KdOptions& opts = {});

// Exact two-qubit value sqrt(8 - 8 sqrt(lambda_1)); no iteration.
double kd_two_qubit(const BipartiteGate& u);

// Analytic K_D for the families where it is known; nullopt otherwise.
std::optional<double> kd_closed_form(const GateFamilySpec& spec);

// Certificate for block-diagonal U = sum_i |i><i| x u_i: for any probe
// unitary v, K_D^2(U) <= 2d^2 - 2 sum_i |tr(u_i^dag v)|. With v = u_1 this
// is <= 2d^2 - 2d.
double block_diag_kd2_bound(const BipartiteGate& u, const Matrix& v);

}  // namespace gatedist
