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

#include "gatedist/measures.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "gatedist/gates.hpp"
#include "gatedist/kd_solver.hpp"

namespace gatedist {

namespace {

constexpr double kEigClamp = 1e-10;

// Validated spectrum of a density matrix, negatives clamped to zero.
RealVector density_spectrum(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) {
    throw ShapeError("density matrix must be square");
  }
  if ((rho - rho.adjoint()).norm() > tol) {
    throw DomainError("density matrix is not Hermitian within tolerance");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol ||
      std::abs(rho.trace().imag()) > tol) {
    throw DomainError("density matrix trace deviates from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  RealVector p = es.eigenvalues();
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) < -kEigClamp) {
      throw DomainError("density matrix has negative eigenvalue " +
                        std::to_string(p(i)));
    }
    p(i) = std::max(p(i), 0.0);
  }
  return p;
}

}  // namespace

double SchmidtData::reconstruction_error(const Matrix& u) const {
  Matrix acc = Matrix::Zero(u.rows(), u.cols());
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    if (lambdas(static_cast<Index>(i)) <= 0.0) continue;
    acc += std::sqrt(lambdas(static_cast<Index>(i))) *
           Eigen::kroneckerProduct(basis_a[i], basis_b[i]).eval();
  }
  return (u - acc).norm();
}

SchmidtData operator_schmidt_general(const Matrix& m, Index d_a, Index d_b) {
  const Matrix r = realign(m, d_a, d_b);
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index n = svd.singularValues().size();
  SchmidtData out;
  out.lambdas.resize(n);
  out.basis_a.reserve(static_cast<std::size_t>(n));
  out.basis_b.reserve(static_cast<std::size_t>(n));
  const double scale = static_cast<double>(d_a) * static_cast<double>(d_b);
  for (Index i = 0; i < n; ++i) {
    const double s = svd.singularValues()(i);
    out.lambdas(i) = s * s / scale;
    out.basis_a.push_back(std::sqrt(static_cast<double>(d_a)) *
                          devectorize(svd.matrixU().col(i), d_a, d_a));
    out.basis_b.push_back(std::sqrt(static_cast<double>(d_b)) *
                          devectorize(svd.matrixV().col(i).conjugate(), d_b, d_b));
  }
  return out;
}

SchmidtData operator_schmidt(const BipartiteGate& u) {
  return operator_schmidt_general(u.matrix(), u.d(), u.d());
}

BoundsReport kd_bounds_general(const Matrix& m, Index d_a, Index d_b) {
  const SchmidtData sd = operator_schmidt_general(m, d_a, d_b);
  const double dim = static_cast<double>(d_a) * static_cast<double>(d_b);
  BoundsReport report;
  report.lambda1 = sd.lambdas(0);
  report.kd_star =
      std::sqrt(std::max(0.0, 2.0 * dim - 2.0 * dim * std::sqrt(report.lambda1)));
  report.trace_norm_m1a = trace_norm(sd.basis_a[0]);
  report.trace_norm_m1b = trace_norm(sd.basis_b[0]);
  const double gap =
      2.0 * dim - 2.0 * report.trace_norm_m1a * report.trace_norm_m1b;
  report.kd_upper = report.kd_star + std::sqrt(std::max(0.0, gap));
  return report;
}

BoundsReport kd_bounds(const BipartiteGate& u) {
  return kd_bounds_general(u.matrix(), u.d(), u.d());
}

double operator_entanglement(const SchmidtData& schmidt) {
  return 1.0 - schmidt.lambdas.squaredNorm();
}

double operator_entanglement(const BipartiteGate& u) {
  return operator_entanglement(operator_schmidt(u));
}

double entangling_power(const BipartiteGate& u) {
  const Index d = u.d();
  const Matrix s = swap_gate(d).matrix();
  const double e_u = operator_entanglement(u);
  const double e_us =
      operator_entanglement(operator_schmidt_general(u.matrix() * s, d, d));
  const double e_s = 1.0 - 1.0 / (static_cast<double>(d) * static_cast<double>(d));
  const double f = static_cast<double>(d) / (static_cast<double>(d) + 1.0);
  return f * f * (e_u + e_us - e_s);
}

double gate_typicality(const BipartiteGate& u) {
  const Index d = u.d();
  const Matrix s = swap_gate(d).matrix();
  const double e_u = operator_entanglement(u);
  const double e_su =
      operator_entanglement(operator_schmidt_general(s * u.matrix(), d, d));
  const double e_s = 1.0 - 1.0 / (static_cast<double>(d) * static_cast<double>(d));
  return (e_u - e_su + e_s) / (2.0 * e_s);
}

double linear_entropy(const Matrix& rho, double tol) {
  const RealVector p = density_spectrum(rho, tol);
  return 1.0 - p.squaredNorm();
}

double renyi_half(const Matrix& rho, double tol) {
  const RealVector p = density_spectrum(rho, tol);
  double tr_sqrt = 0.0;
  for (Index i = 0; i < p.size(); ++i) tr_sqrt += std::sqrt(p(i));
  return 2.0 * std::log(tr_sqrt);
}

StabilityReport stability_check(const BipartiteGate& u, Index d_prime,
                                int n_seeds, double tol, int max_iter) {
  if (d_prime < 2) {
    throw DomainError("stability_check: d' must be >= 2");
  }
  KdOptions opts;
  opts.n_seeds = n_seeds;
  opts.tol = tol;
  opts.max_iter = max_iter;

  const KdResult base = kd_alternating(u, opts);
  const Matrix embedded =
      Eigen::kroneckerProduct(u.matrix(), Matrix::Identity(d_prime, d_prime))
          .eval();
  // U x I attaches the ancilla to party B: row (i,k,a) = i*(d*d') + (k*d'+a).
  const KdResult emb =
      kd_alternating_general(embedded, u.d(), u.d() * d_prime, opts);

  StabilityReport report;
  report.kd2_base = base.kd * base.kd;
  report.kd2_embedded = emb.kd * emb.kd;
  if (report.kd2_base < 1e-12) {
    report.exact_zero = report.kd2_embedded < 1e-9;
    report.ratio = 0.0;
    return report;
  }
  report.ratio = report.kd2_embedded / report.kd2_base;
  return report;
}

}  // namespace gatedist
