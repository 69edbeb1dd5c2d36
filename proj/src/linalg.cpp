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

#include "gatedist/linalg.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace gatedist {

namespace {

Index isqrt_exact(Index n, const char* what) {
  const auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) {
    throw ShapeError(std::string(what) + ": dimension " + std::to_string(n) +
                     " is not a perfect square");
  }
  return r;
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

Matrix realign(const Matrix& m, Index d_a, Index d_b) {
  if (m.rows() != d_a * d_b || m.cols() != d_a * d_b) {
    throw ShapeError("realign: expected square matrix of side dA*dB");
  }
  Matrix r(d_a * d_a, d_b * d_b);
  for (Index i = 0; i < d_a; ++i)
    for (Index j = 0; j < d_a; ++j)
      for (Index k = 0; k < d_b; ++k)
        for (Index l = 0; l < d_b; ++l)
          r(i * d_a + j, k * d_b + l) = m(i * d_b + k, j * d_b + l);
  return r;
}

Matrix realign(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("realign: matrix must be square");
  }
  const Index d = isqrt_exact(m.rows(), "realign");
  return realign(m, d, d);
}

Vector vectorize(const Matrix& u) {
  Vector v(u.size());
  for (Index i = 0; i < u.rows(); ++i)
    for (Index j = 0; j < u.cols(); ++j) v(i * u.cols() + j) = u(i, j);
  return v;
}

Matrix devectorize(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw ShapeError("devectorize: length does not match requested shape");
  }
  Matrix u(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) u(i, j) = v(i * cols + j);
  return u;
}

Matrix devectorize(const Vector& v) {
  const Index d = isqrt_exact(v.size(), "devectorize");
  return devectorize(v, d, d);
}

Matrix partial_trace(const Matrix& m, Index d_a, Index d_b, Party party) {
  if (m.rows() != d_a * d_b || m.cols() != d_a * d_b) {
    throw ShapeError("partial_trace: expected square matrix of side dA*dB");
  }
  if (party == Party::B) {
    Matrix out = Matrix::Zero(d_a, d_a);
    for (Index i = 0; i < d_a; ++i)
      for (Index j = 0; j < d_a; ++j)
        for (Index k = 0; k < d_b; ++k) out(i, j) += m(i * d_b + k, j * d_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(d_b, d_b);
  for (Index k = 0; k < d_b; ++k)
    for (Index l = 0; l < d_b; ++l)
      for (Index i = 0; i < d_a; ++i) out(k, l) += m(i * d_b + k, i * d_b + l);
  return out;
}

Matrix partial_trace(const Matrix& m, Party party) {
  if (m.rows() != m.cols()) {
    throw ShapeError("partial_trace: matrix must be square");
  }
  const Index d = isqrt_exact(m.rows(), "partial_trace");
  return partial_trace(m, d, d, party);
}

Matrix reduced_density(const Vector& psi, Index d_a, Index d_b, Party party) {
  const Matrix w = devectorize(psi, d_a, d_b);
  if (party == Party::A) return w * w.adjoint();
  return w.transpose() * w.conjugate();
}

PolarProjection polar_unitary(const Matrix& a, double singular_tol) {
  if (a.rows() != a.cols()) {
    throw ShapeError("polar_unitary: matrix must be square");
  }
  require_finite(a, "polar_unitary");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues().size() > 0
                          ? svd.singularValues()(svd.singularValues().size() - 1)
                          : 0.0;
  return {svd.matrixU() * svd.matrixV().adjoint(), smin, smin < singular_tol};
}

Matrix nearest_unitary(const Matrix& a) { return polar_unitary(a).unitary; }

double trace_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("hs_inner: shape mismatch");
  }
  return (a.adjoint() * b).trace();
}

double unitarity_deficit(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw ShapeError("unitarity_deficit: matrix must be square");
  }
  return (u * u.adjoint() - Matrix::Identity(u.rows(), u.rows())).norm();
}

double phase_distance(const Matrix& u, const Matrix& w) {
  if (u.rows() != w.rows() || u.cols() != w.cols() || u.rows() != u.cols()) {
    throw ShapeError("phase_distance: expected square matrices of equal size");
  }
  const Complex z = (u.adjoint() * w).trace();
  if (std::abs(z) == 0.0) {
    return std::sqrt(2.0 * static_cast<double>(u.rows()));
  }
  // Subtracting the phase-aligned copy avoids the cancellation that
  // sqrt(2d - 2|tr|) suffers for nearly identical inputs.
  return (u - (std::conj(z) / std::abs(z)) * w).norm();
}

BipartiteGate::BipartiteGate(Index d, Matrix matrix, double unitary_tol)
    : d_(d), matrix_(std::move(matrix)) {
  if (d_ < 2) {
    throw DomainError("BipartiteGate: local dimension must be >= 2");
  }
  if (matrix_.rows() != d_ * d_ || matrix_.cols() != d_ * d_) {
    throw ShapeError("BipartiteGate: matrix must be d^2 x d^2");
  }
  require_finite(matrix_, "BipartiteGate");
  const double deficit = unitarity_deficit(matrix_);
  if (deficit > unitary_tol) {
    throw DomainError("BipartiteGate: unitarity deficit " +
                      std::to_string(deficit) + " exceeds tolerance");
  }
}

MaxEntangledState MaxEntangledState::from_unitary(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw ShapeError("MaxEntangledState: matrix must be square");
  }
  const Index d = u.rows();
  Vector amps = vectorize(u) / std::sqrt(static_cast<double>(d));
  return {d, std::move(amps), true};
}

Vector MaxEntangledState::unit() const {
  if (unit_norm) return amplitudes;
  return amplitudes / std::sqrt(static_cast<double>(d));
}

double MaxEntangledState::max_entangled_deficit() const {
  const Vector psi = unit();
  const Matrix target = Matrix::Identity(d, d) / static_cast<double>(d);
  const double da = (reduced_density(psi, d, d, Party::A) - target).norm();
  const double db = (reduced_density(psi, d, d, Party::B) - target).norm();
  return std::max(da, db);
}

}  // namespace gatedist
