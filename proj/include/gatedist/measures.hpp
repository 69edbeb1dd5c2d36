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

#include <vector>

#include "gatedist/linalg.hpp"

namespace gatedist {

// Operator Schmidt decomposition U = sum_i sqrt(lambda_i) mA_i x mB_i with
// tr(m_i m_j^dag) = d delta_ij, lambda sorted descending, sum lambda = 1.
// Degenerate spectra (all dual gates) make the bases non-unique; the m_i
// are the SVD's choice and are not promised unitary.
struct SchmidtData {
  RealVector lambdas;
  std::vector<Matrix> basis_a;
  std::vector<Matrix> basis_b;

  // || U - sum_i sqrt(lambda_i) mA_i x mB_i ||.
  double reconstruction_error(const Matrix& u) const;
};

SchmidtData operator_schmidt(const BipartiteGate& u);
// Rectangular bipartition (dA x dB); normalizations tr(mA mA^dag) = dA,
// tr(mB mB^dag) = dB, lambda_i = s_i^2/(dA dB).
SchmidtData operator_schmidt_general(const Matrix& m, Index d_a, Index d_b);

// Lower/upper bounds
//   kd_star = sqrt(2d^2 - 2d^2 sqrt(lambda_1)) <= K_D(U)
//          <= kd_star + sqrt(2d^2 - 2 ||mA_1||_1 ||mB_1||_1) = kd_upper.
// The upper bound is reported for the SVD's basis choice and may exceed
// the tight value when lambda_1 is degenerate.
struct BoundsReport {
  double kd_star = 0.0;
  double kd_upper = 0.0;
  double lambda1 = 0.0;
  double trace_norm_m1a = 0.0;
  double trace_norm_m1b = 0.0;
};

BoundsReport kd_bounds(const BipartiteGate& u);
BoundsReport kd_bounds_general(const Matrix& m, Index d_a, Index d_b);

// E(U) = 1 - sum_i lambda_i^2.
double operator_entanglement(const BipartiteGate& u);
double operator_entanglement(const SchmidtData& schmidt);

// e_p(U) = (d/(d+1))^2 [E(U) + E(US) - E(S)]; equals the mean linear
// entropy generated on Haar product states.
double entangling_power(const BipartiteGate& u);

// g_t(U) = [E(U) - E(SU) + E(S)] / (2 E(S)); 0 on products, 1 on SWAP.
double gate_typicality(const BipartiteGate& u);

// 1 - tr(rho^2). rho must be Hermitian, PSD and unit trace within tol.
double linear_entropy(const Matrix& rho, double tol = 1e-8);

// Renyi entropy of order 1/2: 2 log tr sqrt(rho). Eigenvalues in
// [-1e-10, 0) are clamped to 0; worse negativity is a domain error.
double renyi_half(const Matrix& rho, double tol = 1e-8);

// K_D^2(U x I_{d'}) / K_D^2(U), computed with the alternating solver on
// the d x (d*d') bipartition. Expected to equal d'.
struct StabilityReport {
  double kd2_base = 0.0;
  double kd2_embedded = 0.0;
  double ratio = 0.0;
  bool exact_zero = false;  // both distances vanish (product gate)
};

StabilityReport stability_check(const BipartiteGate& u, Index d_prime,
                                int n_seeds = 8, double tol = 1e-12,
                                int max_iter = 10000);

}  // namespace gatedist
