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

#include "gatedist/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>
#include <nlohmann/json.hpp>

#include "gatedist/rng.hpp"

namespace gatedist {

using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix pauli(int k) {
  Matrix s(2, 2);
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Matrix ginibre(Index n, Rng& rng) {
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

// Unitary polar factor via Higham's scaled Newton iteration,
// X <- (mu X + (mu X)^-dag)/2. Quadratic near the fixed point, much
// cheaper than an SVD at d^2 x d^2; falls back to the SVD route if the
// iterate degenerates.
Matrix newton_polar(const Matrix& a) {
  const Index n = a.rows();
  Matrix x = a;
  for (int it = 0; it < 40; ++it) {
    const Eigen::PartialPivLU<Matrix> lu(x);
    const Matrix inv = lu.inverse();
    if (!inv.allFinite()) break;
    const double mu = std::sqrt(std::sqrt(inv.squaredNorm() / x.squaredNorm()));
    const Matrix next = 0.5 * (mu * x + (1.0 / mu) * inv.adjoint());
    const double delta = (next - x).norm();
    x = next;
    if (delta < 1e-13 * std::sqrt(static_cast<double>(n))) {
      if (unitarity_deficit(x) < 1e-12) return x;
      break;
    }
  }
  return polar_unitary(a).unitary;
}

}  // namespace

CanonicalParams canonicalize_weyl(const CanonicalParams& p) {
  // Fold each parameter into [0, pi/4] using the pi/2 periodicity and the
  // c -> pi/2 - c local equivalence, then sort descending.
  auto fold = [](double c) {
    c = std::fmod(c, kPi / 2.0);
    if (c < 0) c += kPi / 2.0;
    return std::min(c, kPi / 2.0 - c);
  };
  std::array<double, 3> v{fold(p.c1), fold(p.c2), fold(p.c3)};
  std::sort(v.begin(), v.end(), std::greater<double>());
  return {v[0], v[1], v[2]};
}

BipartiteGate canonical_two_qubit(const CanonicalParams& p) {
  const std::array<double, 3> c{p.c1, p.c2, p.c3};
  Matrix u = Matrix::Identity(4, 4);
  for (int k = 1; k <= 3; ++k) {
    const Matrix ss = Eigen::kroneckerProduct(pauli(k), pauli(k)).eval();
    // exp(i c s x s) = cos(c) I + i sin(c) s x s, since (s x s)^2 = I.
    u = u * (std::cos(c[k - 1]) * Matrix::Identity(4, 4) +
             Complex(0, std::sin(c[k - 1])) * ss);
  }
  return BipartiteGate(2, std::move(u));
}

BipartiteGate swap_gate(Index d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return BipartiteGate(d, std::move(s));
}

BipartiteGate frac_swap(Index d, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw DomainError("frac_swap: alpha must lie in [0, 1]");
  }
  const double c = std::cos(kPi * alpha / 2.0);
  const double s = std::sin(kPi * alpha / 2.0);
  Matrix m = c * Matrix::Identity(d * d, d * d) +
             Complex(0, s) * swap_gate(d).matrix();
  return BipartiteGate(d, std::move(m));
}

Matrix fourier_matrix(Index d) {
  Matrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) {
      const double phi = 2.0 * kPi * static_cast<double>(j * k) / static_cast<double>(d);
      f(j, k) = std::polar(norm, phi);
    }
  return f;
}

BipartiteGate chm_diagonal(const Matrix& hadamard, double chm_tol) {
  if (hadamard.rows() != hadamard.cols()) {
    throw ShapeError("chm_diagonal: Hadamard matrix must be square");
  }
  const Index d = hadamard.rows();
  const double want = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) {
      if (std::abs(std::abs(hadamard(j, k)) - want) > chm_tol) {
        throw DomainError("chm_diagonal: entry modulus deviates from 1/sqrt(d)");
      }
    }
  if (unitarity_deficit(hadamard) > 1e-8) {
    throw DomainError("chm_diagonal: matrix is not unitary");
  }
  Matrix m = Matrix::Zero(d * d, d * d);
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) {
      m(j * d + k, j * d + k) = hadamard(j, k) / std::abs(hadamard(j, k));
    }
  return BipartiteGate(d, std::move(m));
}

BipartiteGate sd_diagonal(Index d, const std::vector<double>& phases) {
  if (static_cast<Index>(phases.size()) != d * d) {
    throw ShapeError("sd_diagonal: need exactly d^2 phases");
  }
  Matrix m = swap_gate(d).matrix();
  for (Index c = 0; c < d * d; ++c) m.col(c) *= std::polar(1.0, phases[c]);
  return BipartiteGate(d, std::move(m));
}

BipartiteGate u_cz(Index d) {
  Matrix m = Matrix::Identity(d * d, d * d);
  m(d * d - 1, d * d - 1) = -1.0;
  return BipartiteGate(d, std::move(m));
}

BipartiteGate block_diagonal(const std::vector<Matrix>& blocks) {
  const Index d = static_cast<Index>(blocks.size());
  if (d < 2) {
    throw ShapeError("block_diagonal: need at least 2 blocks");
  }
  Matrix m = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    const Matrix& b = blocks[i];
    if (b.rows() != d || b.cols() != d) {
      throw ShapeError("block_diagonal: each block must be d x d");
    }
    if (unitarity_deficit(b) > kDefaultUnitaryTol) {
      throw DomainError("block_diagonal: block " + std::to_string(i) +
                        " is not unitary");
    }
    m.block(i * d, i * d, d, d) = b;
  }
  return BipartiteGate(d, std::move(m));
}

Matrix random_cue(Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase correction: without it the QR map is not Haar.
  for (Index j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Matrix random_diagonal(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = std::polar(1.0, rng.phase());
  return m;
}

BipartiteGate random_dual(Index d, std::uint64_t seed, int max_iter, double tol) {
  Matrix u = random_cue(d * d, seed);
  double deficit = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    u = newton_polar(realign(u, d, d));   // unitary in the dual direction
    u = newton_polar(realign(u, d, d));   // back to a proper unitary
    deficit = std::max(unitarity_deficit(u), unitarity_deficit(realign(u, d, d)));
    if (deficit < tol) {
      return BipartiteGate(d, std::move(u));
    }
  }
  throw ConvergenceError("random_dual: no convergence after " +
                             std::to_string(max_iter) + " iterations",
                         deficit);
}

BipartiteGate near_dual(const BipartiteGate& dual, double eps, std::uint64_t seed) {
  if (eps < 0.0) {
    throw DomainError("near_dual: eps must be positive");
  }
  const Index n = dual.d() * dual.d();
  Rng rng(seed);
  Matrix h = ginibre(n, rng);
  h = ((h + h.adjoint()) / 2.0).eval();
  h /= h.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(n);
  for (Index i = 0; i < n; ++i) {
    phases(i) = std::polar(1.0, eps * es.eigenvalues()(i));
  }
  Matrix m = dual.matrix() * es.eigenvectors() * phases.asDiagonal() *
             es.eigenvectors().adjoint();
  return BipartiteGate(dual.d(), std::move(m));
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Canonical2q: return "canonical2q";
    case Family::Swap: return "swap";
    case Family::FracSwap: return "frac_swap";
    case Family::ChmDiagonal: return "chm_diagonal";
    case Family::SdDiagonal: return "sd_diagonal";
    case Family::BlockDiagonal: return "block_diagonal";
    case Family::Ucz: return "u_cz";
    case Family::CueRandom: return "cue_random";
    case Family::DiagonalRandom: return "diagonal_random";
    case Family::DualRandom: return "dual_random";
    case Family::NearDual: return "near_dual";
  }
  throw DomainError("family_name: unknown family");
}

Family parse_family(const std::string& name) {
  static const std::vector<Family> all{
      Family::Canonical2q, Family::Swap,      Family::FracSwap,
      Family::ChmDiagonal, Family::SdDiagonal, Family::BlockDiagonal,
      Family::Ucz,         Family::CueRandom,  Family::DiagonalRandom,
      Family::DualRandom,  Family::NearDual};
  for (Family f : all) {
    if (family_name(f) == name) return f;
  }
  throw InputError("unknown gate family '" + name + "'");
}

std::string GateFamilySpec::to_json_string(int indent) const {
  json params = json::object();
  switch (family) {
    case Family::Canonical2q:
      params["c1"] = canonical.c1;
      params["c2"] = canonical.c2;
      params["c3"] = canonical.c3;
      break;
    case Family::FracSwap:
      params["alpha"] = alpha;
      break;
    case Family::NearDual:
      params["eps"] = eps;
      break;
    case Family::SdDiagonal:
      if (phases) params["phases"] = *phases;
      break;
    default:
      break;
  }
  json j{{"family", family_name(family)},
         {"d", d},
         {"params", params},
         {"seed", seed}};
  return j.dump(indent);
}

GateFamilySpec GateFamilySpec::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("gate spec: invalid JSON: ") + e.what());
  }
  GateFamilySpec spec;
  try {
    spec.family = parse_family(j.at("family").get<std::string>());
    spec.d = j.at("d").get<Index>();
    spec.seed = j.value("seed", std::uint64_t{0});
    const json params = j.value("params", json::object());
    spec.canonical = {params.value("c1", 0.0), params.value("c2", 0.0),
                      params.value("c3", 0.0)};
    spec.alpha = params.value("alpha", 1.0);
    spec.eps = params.value("eps", 0.1);
    if (params.contains("phases")) {
      spec.phases = params.at("phases").get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("gate spec: ") + e.what());
  }
  if (spec.d < 2) {
    throw InputError("gate spec: d must be >= 2");
  }
  return spec;
}

namespace {

// random_dual throws when a seed gate converges too slowly (caller may
// reseed); derive fresh seeds deterministically until one lands.
BipartiteGate dual_with_reseed(Index d, std::uint64_t seed, int attempts = 5) {
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t s =
        attempt == 0 ? seed : derive_seed(seed, 0xd7a1000 + static_cast<std::uint64_t>(attempt));
    try {
      return random_dual(d, s);
    } catch (const ConvergenceError&) {
      if (attempt + 1 >= attempts) throw;
    }
  }
}

}  // namespace

BipartiteGate build_gate(const GateFamilySpec& spec) {
  switch (spec.family) {
    case Family::Canonical2q:
      if (spec.d != 2) {
        throw DomainError("canonical2q requires d = 2");
      }
      return canonical_two_qubit(spec.canonical);
    case Family::Swap:
      return swap_gate(spec.d);
    case Family::FracSwap:
      return frac_swap(spec.d, spec.alpha);
    case Family::ChmDiagonal:
      return chm_diagonal(fourier_matrix(spec.d));
    case Family::SdDiagonal: {
      if (spec.phases) return sd_diagonal(spec.d, *spec.phases);
      Rng rng(spec.seed);
      std::vector<double> ph(static_cast<std::size_t>(spec.d * spec.d));
      for (auto& p : ph) p = rng.phase();
      return sd_diagonal(spec.d, ph);
    }
    case Family::BlockDiagonal: {
      std::vector<Matrix> blocks;
      blocks.reserve(static_cast<std::size_t>(spec.d));
      for (Index i = 0; i < spec.d; ++i) {
        blocks.push_back(random_cue(spec.d, derive_seed(spec.seed, static_cast<std::uint64_t>(i))));
      }
      return block_diagonal(blocks);
    }
    case Family::Ucz:
      return u_cz(spec.d);
    case Family::CueRandom:
      return BipartiteGate(spec.d, random_cue(spec.d * spec.d, spec.seed));
    case Family::DiagonalRandom:
      return BipartiteGate(spec.d, random_diagonal(spec.d * spec.d, spec.seed));
    case Family::DualRandom:
      return dual_with_reseed(spec.d, spec.seed);
    case Family::NearDual:
      return near_dual(dual_with_reseed(spec.d, spec.seed), spec.eps,
                       derive_seed(spec.seed, 0x6e64));
  }
  throw DomainError("build_gate: unknown family");
}

}  // namespace gatedist
