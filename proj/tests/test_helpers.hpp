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

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "gatedist/gates.hpp"
#include "gatedist/linalg.hpp"
#include "gatedist/rng.hpp"

namespace gatedist::testing {

// Dual gate with build_gate's deterministic reseeding; tests that need
// "a" dual gate use this, the raw random_dual error contract is covered
// separately.
inline BipartiteGate dual_gate(Index d, std::uint64_t seed) {
  GateFamilySpec s;
  s.family = Family::DualRandom;
  s.d = d;
  s.seed = seed;
  return build_gate(s);
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline Vector random_state(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// ---------------------------------------------------------------------
// Brute-force two-qubit K_D oracle: exhaustive maximization of
// |tr(U^dag (uA x uB))| over an SU(2) x SU(2) Euler-angle grid with local
// refinement. Written against the definition only; shares no code with
// the alternating solver it cross-checks.
// ---------------------------------------------------------------------

namespace detail {

struct Su2Angles {
  double theta, alpha, beta;
};

inline std::array<Complex, 4> su2_vec(const Su2Angles& g) {
  const Complex a = std::polar(std::cos(g.theta), g.alpha);
  const Complex b = std::polar(std::sin(g.theta), g.beta);
  // Row-major [[a, b], [-b*, a*]].
  return {a, b, -std::conj(b), std::conj(a)};
}

// overlap(uA, uB) = |vecA^T M vecB| with M[(ij),(kl)] = conj(U[(ik),(jl)]).
inline Eigen::Matrix4cd overlap_kernel(const Matrix& u) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m(i * 2 + j, k * 2 + l) = std::conj(u(i * 2 + k, j * 2 + l));
  return m;
}

inline double grid_overlap(const Eigen::Matrix4cd& m, const Su2Angles& ga,
                           const Su2Angles& gb) {
  const auto va = su2_vec(ga);
  const auto vb = su2_vec(gb);
  Complex acc = 0.0;
  for (int r = 0; r < 4; ++r) {
    Complex w = 0.0;
    for (int c = 0; c < 4; ++c) w += m(r, c) * vb[static_cast<std::size_t>(c)];
    acc += va[static_cast<std::size_t>(r)] * w;
  }
  return std::abs(acc);
}

}  // namespace detail

inline double brute_force_kd_2q(const Matrix& u) {
  using detail::Su2Angles;
  const Eigen::Matrix4cd m = detail::overlap_kernel(u);
  constexpr double kTau = 6.283185307179586;
  constexpr double kHalfPi = 1.5707963267948966;

  // Coarse pass over the full angle ranges, grid vectors precomputed.
  std::vector<Su2Angles> grid;
  std::vector<std::array<Complex, 4>> vecs;
  for (int t = 0; t < 7; ++t)
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        grid.push_back({kHalfPi * t / 6.0, kTau * a / 8.0, kTau * b / 8.0});
        vecs.push_back(detail::su2_vec(grid.back()));
      }
  std::vector<std::pair<double, std::pair<Su2Angles, Su2Angles>>> top;
  for (std::size_t ib = 0; ib < grid.size(); ++ib) {
    std::array<Complex, 4> w{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        w[static_cast<std::size_t>(r)] +=
            m(r, c) * vecs[ib][static_cast<std::size_t>(c)];
    for (std::size_t ia = 0; ia < grid.size(); ++ia) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < 4; ++r) acc += vecs[ia][r] * w[r];
      const double val = std::abs(acc);
      if (top.size() < 3) {
        top.push_back({val, {grid[ia], grid[ib]}});
        std::sort(top.begin(), top.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
      } else if (val > top.back().first) {
        top.back() = {val, {grid[ia], grid[ib]}};
        std::sort(top.begin(), top.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
      }
    }
  }

  // Local refinement around the best coarse candidates.
  double best = 0.0;
  for (auto& cand : top) {
    Su2Angles ga = cand.second.first;
    Su2Angles gb = cand.second.second;
    double wt = kHalfPi / 6.0;
    double wp = kTau / 8.0;
    double val = cand.first;
    for (int round = 0; round < 14; ++round) {
      for (int ta = -2; ta <= 2; ++ta)
        for (int aa = -2; aa <= 2; ++aa)
          for (int ba = -2; ba <= 2; ++ba)
            for (int tb = -2; tb <= 2; ++tb)
              for (int ab = -2; ab <= 2; ++ab)
                for (int bb = -2; bb <= 2; ++bb) {
                  const Su2Angles ca{ga.theta + wt * ta / 2.0,
                                     ga.alpha + wp * aa / 2.0,
                                     ga.beta + wp * ba / 2.0};
                  const Su2Angles cb{gb.theta + wt * tb / 2.0,
                                     gb.alpha + wp * ab / 2.0,
                                     gb.beta + wp * bb / 2.0};
                  const double v = detail::grid_overlap(m, ca, cb);
                  if (v > val) {
                    val = v;
                    ga = ca;
                    gb = cb;
                  }
                }
      wt /= 2.0;
      wp /= 2.0;
    }
    best = std::max(best, val);
  }
  return std::sqrt(std::max(0.0, 8.0 - 2.0 * best));
}

}  // namespace gatedist::testing
