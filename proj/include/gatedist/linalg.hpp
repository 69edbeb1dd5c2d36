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

#include "gatedist/types.hpp"

namespace gatedist {

// Index convention, fixed project-wide: a bipartite operator on
// H_A (dim dA) x H_B (dim dB) stores <i k| M |j l> at
// M(i*dB + k, j*dB + l) with i,j indexing A and k,l indexing B.
// Vectorization is row-major: |u>[i*cols + j] = u(i, j), so a unitary u
// vectorizes to |u> with <u|u> = d and |u>/sqrt(d) maximally entangled.

enum class Party { A, B };

// Realignment <ij|M^R|kl> = <ik|M|jl> of a (dA*dB) x (dA*dB) operator;
// the result is dA^2 x dB^2. Hilbert-Schmidt norm is preserved (index
// permutation only). The one-argument form requires a square bipartition
// (matrix side a perfect square) and is an involution.
Matrix realign(const Matrix& m);
Matrix realign(const Matrix& m, Index d_a, Index d_b);

Vector vectorize(const Matrix& u);
Matrix devectorize(const Vector& v);  // square, side sqrt(len)
Matrix devectorize(const Vector& v, Index rows, Index cols);

// Partial trace of a (dA*dB) x (dA*dB) operator over the named party.
// partial_trace(m, Party::B) is dA x dA, and tr(result) = tr(m).
Matrix partial_trace(const Matrix& m, Party party);
Matrix partial_trace(const Matrix& m, Index d_a, Index d_b, Party party);

// Reduced density matrices of a pure state |psi> in H_A x H_B without
// forming |psi><psi|.
Matrix reduced_density(const Vector& psi, Index d_a, Index d_b, Party party);

struct PolarProjection {
  Matrix unitary;
  double min_singular;
  // Smallest singular value below singular_tol: the closest unitary is
  // not unique and the returned factor is the SVD's choice.
  bool degenerate;
};

// Unitary factor of the polar decomposition A = W Sigma X^dag -> W X^dag,
// the Hilbert-Schmidt-closest unitary to A.
PolarProjection polar_unitary(const Matrix& a,
                              double singular_tol = kDefaultSingularTol);
Matrix nearest_unitary(const Matrix& a);

double trace_norm(const Matrix& a);             // sum of singular values
double hs_norm(const Matrix& a);                // sqrt(tr(A A^dag))
Complex hs_inner(const Matrix& a, const Matrix& b);  // tr(A^dag B)

// || U U^dag - I || in Hilbert-Schmidt norm.
double unitarity_deficit(const Matrix& u);

// Distance between unitaries modulo global phase:
// min_phi ||u - e^{i phi} w|| = sqrt(2d - 2|tr(u^dag w)|).
double phase_distance(const Matrix& u, const Matrix& w);

// A d^2 x d^2 unitary acting on two d-level systems. The constructor
// rejects wrong shapes, non-finite entries, and unitarity deficit above
// unitary_tol.
class BipartiteGate {
 public:
  BipartiteGate(Index d, Matrix matrix, double unitary_tol = kDefaultUnitaryTol);

  Index d() const { return d_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  Index d_;
  Matrix matrix_;
};

// Pure state of two d-level systems whose reduced density matrices are
// (meant to be) I_d/d. `unit_norm` distinguishes the state convention
// <psi|psi> = 1 from the vectorized-unitary convention <u|u> = d.
struct MaxEntangledState {
  Index d;
  Vector amplitudes;
  bool unit_norm;

  static MaxEntangledState from_unitary(const Matrix& u);

  // Amplitudes in the unit-norm convention regardless of how stored.
  Vector unit() const;

  // max over parties of || rho_party - I/d || (unit-norm convention).
  double max_entangled_deficit() const;
};

}  // namespace gatedist
