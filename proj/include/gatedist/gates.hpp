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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gatedist/linalg.hpp"

namespace gatedist {

// Nonlocal part of the two-qubit canonical decomposition,
// U = exp[i (c1 XX + c2 YY + c3 ZZ)]. The constructor accepts any reals;
// canonicalize_weyl folds parameters into pi/4 >= c1 >= c2 >= c3 >= 0 for
// scans.
struct CanonicalParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

CanonicalParams canonicalize_weyl(const CanonicalParams& p);

BipartiteGate canonical_two_qubit(const CanonicalParams& p);

// S|ij> = |ji>.
BipartiteGate swap_gate(Index d);

// S^alpha = cos(pi alpha/2) I + i sin(pi alpha/2) S, alpha in [0, 1].
BipartiteGate frac_swap(Index d, double alpha);

// Discrete Fourier transform, F(j,k) = exp(2 pi i jk/d)/sqrt(d); the
// stock complex Hadamard matrix.
Matrix fourier_matrix(Index d);

// Diagonal gate D = sum_jk e^{i phi_jk} |jk><jk| built from a complex
// Hadamard matrix H with H_jk = e^{i phi_jk}/sqrt(d). Rejects inputs whose
// entry moduli deviate from 1/sqrt(d) by more than chm_tol.
BipartiteGate chm_diagonal(const Matrix& hadamard, double chm_tol = 1e-8);

// Self-dual gate S * diag(e^{i phases}), phases.size() == d^2.
BipartiteGate sd_diagonal(Index d, const std::vector<double>& phases);

// I_{d^2} with the last diagonal entry flipped to -1 (CZ at d = 2).
BipartiteGate u_cz(Index d);

// Controlled family sum_i |i><i| x u_i; exactly d unitary d x d blocks.
BipartiteGate block_diagonal(const std::vector<Matrix>& blocks);

// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
// R-diagonal phase correction. Deterministic given seed.
Matrix random_cue(Index n, std::uint64_t seed);

// diag(e^{i theta}) with theta i.i.d. uniform on [0, 2pi).
Matrix random_diagonal(Index n, std::uint64_t seed);

// Dual-unitary gate from a CUE seed by alternating realign/polar
// projections until both U and U^R have unitarity deficit < tol.
BipartiteGate random_dual(Index d, std::uint64_t seed, int max_iter = 10000,
                          double tol = 1e-10);

// U_dual * exp(i eps H), H a seeded random Hermitian with ||H|| = 1.
// Unitary by construction for every eps.
BipartiteGate near_dual(const BipartiteGate& dual, double eps,
                        std::uint64_t seed);

enum class Family {
  Canonical2q,
  Swap,
  FracSwap,
  ChmDiagonal,
  SdDiagonal,
  BlockDiagonal,
  Ucz,
  CueRandom,
  DiagonalRandom,
  DualRandom,
  NearDual,
};

std::string family_name(Family family);
Family parse_family(const std::string& name);

// Declarative gate descriptor; the uniform handle for the CLI, closed-form
// lookup, and the JSON wire format
//   {"family": tag, "d": int, "params": {...}, "seed": int}.
struct GateFamilySpec {
  Family family = Family::CueRandom;
  Index d = 2;
  std::uint64_t seed = 0;
  CanonicalParams canonical;              // canonical2q
  double alpha = 1.0;                     // frac_swap
  double eps = 0.1;                       // near_dual
  std::optional<std::vector<double>> phases;  // sd_diagonal override

  std::string to_json_string(int indent = -1) const;
  static GateFamilySpec from_json_string(const std::string& text);
};

BipartiteGate build_gate(const GateFamilySpec& spec);

}  // namespace gatedist
