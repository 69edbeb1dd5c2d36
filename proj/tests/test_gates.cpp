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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "gatedist/gates.hpp"
#include "gatedist/measures.hpp"
#include "test_helpers.hpp"

using namespace gatedist;
using testing::kron;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("canonical gate at the origin is the identity") {
  const BipartiteGate g = canonical_two_qubit({0, 0, 0});
  CHECK((g.matrix() - Matrix::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("canonical gates with c1 = c2 = pi/4 are dual") {
  for (double c3 : {0.0, 0.3, kPi / 4}) {
    const BipartiteGate g = canonical_two_qubit({kPi / 4, kPi / 4, c3});
    CHECK(unitarity_deficit(realign(g.matrix())) < 1e-10);
  }
}

TEST_CASE("canonical (pi/4, 0, 0) has CNOT-class Schmidt coefficients") {
  const SchmidtData sd = operator_schmidt(canonical_two_qubit({kPi / 4, 0, 0}));
  CHECK(sd.lambdas(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sd.lambdas(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sd.lambdas(2) < 1e-12);
  CHECK(sd.lambdas(3) < 1e-12);
}

TEST_CASE("canonical Schmidt bases are Pauli-proportional (unitary)") {
  // Generic parameters keep the spectrum nondegenerate.
  const SchmidtData sd = operator_schmidt(canonical_two_qubit({0.3, 0.2, 0.1}));
  for (int i = 0; i < 4; ++i) {
    if (sd.lambdas(i) < 1e-12) continue;
    CHECK(unitarity_deficit(sd.basis_a[static_cast<std::size_t>(i)]) < 1e-8);
    CHECK(unitarity_deficit(sd.basis_b[static_cast<std::size_t>(i)]) < 1e-8);
  }
}

TEST_CASE("weyl canonicalization lands in the chamber") {
  const CanonicalParams p = canonicalize_weyl({1.9, -0.4, 5.0});
  CHECK(p.c1 <= kPi / 4 + 1e-15);
  CHECK(p.c1 >= p.c2);
  CHECK(p.c2 >= p.c3);
  CHECK(p.c3 >= 0.0);
  const CanonicalParams fixed = canonicalize_weyl({0.2, 0.1, 0.05});
  CHECK(fixed.c1 == doctest::Approx(0.2));
  CHECK(fixed.c3 == doctest::Approx(0.05));
}

TEST_CASE("fractional swap endpoints and duality") {
  CHECK((frac_swap(2, 0.0).matrix() - Matrix::Identity(4, 4)).norm() < 1e-15);
  const Matrix s1 = frac_swap(3, 1.0).matrix();
  CHECK((s1 - Complex(0, 1) * swap_gate(3).matrix()).norm() < 1e-14);
  CHECK(unitarity_deficit(realign(s1)) < 1e-12);
  CHECK_THROWS_AS(frac_swap(2, 1.5), DomainError);
  CHECK_THROWS_AS(frac_swap(2, -0.1), DomainError);
}

TEST_CASE("fractional swap largest Schmidt coefficient at alpha = 1/2, d = 2") {
  // lambda_1 = (d^2 cos^2 + sin^2)/d^2 with cos^2 = sin^2 = 1/2: 2.5/4.
  const SchmidtData sd = operator_schmidt(frac_swap(2, 0.5));
  CHECK(sd.lambdas(0) == doctest::Approx(0.625).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) {
    CHECK(sd.lambdas(i) == doctest::Approx(0.125).epsilon(1e-10));
  }
}

TEST_CASE("CHM diagonal gates have flat rank-d Schmidt spectra") {
  const SchmidtData sd3 = operator_schmidt(chm_diagonal(fourier_matrix(3)));
  for (int i = 0; i < 3; ++i)
    CHECK(sd3.lambdas(i) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  for (int i = 3; i < 9; ++i) CHECK(sd3.lambdas(i) < 1e-12);

  const SchmidtData sd2 = operator_schmidt(chm_diagonal(fourier_matrix(2)));
  CHECK(sd2.lambdas(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sd2.lambdas(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sd2.lambdas(2) < 1e-12);
}

TEST_CASE("CHM realignment Gram matrix is d I_d oplus 0") {
  const Index d = 3;
  const Matrix r = realign(chm_diagonal(fourier_matrix(d)).matrix());
  const Matrix gram = r * r.adjoint();
  // Nonzero support lives on the |jj> subspace with weight d.
  for (Index a = 0; a < d * d; ++a)
    for (Index b = 0; b < d * d; ++b) {
      const bool diag_a = (a % d) == (a / d);
      const bool diag_b = (b % d) == (b / d);
      const Complex expect = (a == b && diag_a) ? Complex(3.0, 0) : Complex(0, 0);
      CHECK(std::abs(gram(a, b) - expect) < 1e-12);
      if (!diag_a || !diag_b) CHECK(std::abs(gram(a, b)) < 1e-12);
    }
}

TEST_CASE("chm_diagonal rejects non-CHM input") {
  CHECK_THROWS_AS(chm_diagonal(Matrix::Identity(3, 3)), DomainError);
}

TEST_CASE("sd_diagonal is self-dual and flat-spectrum") {
  CHECK((sd_diagonal(2, std::vector<double>(4, 0.0)).matrix() -
         swap_gate(2).matrix())
            .norm() < 1e-15);

  Rng rng(77);
  std::vector<double> phases(9);
  for (auto& p : phases) p = rng.phase();
  const Matrix sd = sd_diagonal(3, phases).matrix();
  CHECK((realign(sd) - sd).norm() == 0.0);  // entrywise self-duality

  std::vector<double> ph2(4);
  for (auto& p : ph2) p = rng.phase();
  const SchmidtData schmidt = operator_schmidt(sd_diagonal(2, ph2));
  for (int i = 0; i < 4; ++i)
    CHECK(schmidt.lambdas(i) == doctest::Approx(0.25).epsilon(1e-10));

  CHECK_THROWS_AS(sd_diagonal(2, std::vector<double>(3, 0.0)), ShapeError);
}

TEST_CASE("u_cz structure") {
  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  CHECK((u_cz(2).matrix() - cz).norm() == 0.0);
  CHECK(std::abs(u_cz(3).matrix().trace() - Complex(7.0, 0)) < 1e-15);
  CHECK(unitarity_deficit(u_cz(3).matrix()) < 1e-15);
}

TEST_CASE("block_diagonal with equal blocks is I x u") {
  const Matrix u = random_cue(3, 21);
  const BipartiteGate g = block_diagonal({u, u, u});
  CHECK((g.matrix() - kron(Matrix::Identity(3, 3), u)).norm() < 1e-14);
}

TEST_CASE("block_diagonal validates blocks") {
  const Matrix u = random_cue(2, 22);
  CHECK_THROWS_AS(block_diagonal({u, testing::random_matrix(2, 2, 23)}),
                  DomainError);
  CHECK_THROWS_AS(block_diagonal({u, random_cue(3, 24)}), ShapeError);
}

TEST_CASE("block diagonal gates are never dual") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<Matrix> blocks;
    for (Index i = 0; i < 3; ++i)
      blocks.push_back(random_cue(3, derive_seed(seed, static_cast<std::uint64_t>(i))));
    const BipartiteGate g = block_diagonal(blocks);
    CHECK(unitarity_deficit(realign(g.matrix())) > 1e-6);
  }
}

TEST_CASE("random_cue is deterministic and unitary") {
  const Matrix a = random_cue(9, 123);
  const Matrix b = random_cue(9, 123);
  CHECK((a - b).norm() == 0.0);
  CHECK(unitarity_deficit(a) < 1e-12);
  CHECK((a - random_cue(9, 124)).norm() > 1e-3);
}

TEST_CASE("random_cue matches the Haar moment E|tr U|^2 = 1") {
  const int n = 1000;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex t = random_cue(3, 5000 + static_cast<std::uint64_t>(k)).trace();
    acc += std::norm(t);
  }
  const double mean = acc / n;
  // Var(|tr U|^2) = 1 for CUE, so 3 standard errors is 3/sqrt(n).
  CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("random_diagonal is diagonal unitary and deterministic") {
  const Matrix d1 = random_diagonal(9, 42);
  CHECK((d1 - random_diagonal(9, 42)).norm() == 0.0);
  CHECK(unitarity_deficit(d1) < 1e-14);
  for (Index i = 0; i < 9; ++i)
    for (Index j = 0; j < 9; ++j)
      if (i != j) CHECK(std::abs(d1(i, j)) == 0.0);
}

TEST_CASE("random_dual converges to a dual gate with flat spectrum") {
  const BipartiteGate g2 = testing::dual_gate(2, 7);
  const SchmidtData sd = operator_schmidt(g2);
  for (int i = 0; i < 4; ++i)
    CHECK(sd.lambdas(i) == doctest::Approx(0.25).epsilon(1e-8));

  const BipartiteGate g3 = testing::dual_gate(3, 8);
  CHECK(unitarity_deficit(realign(g3.matrix())) < 1e-10);
}

TEST_CASE("random_dual reports non-convergence with the final deficit") {
  try {
    random_dual(3, 1, /*max_iter=*/3);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual > 0.0);
  }
}

TEST_CASE("near_dual stays close and eps = 0 is exact") {
  const BipartiteGate dual = testing::dual_gate(3, 9);
  const BipartiteGate same = near_dual(dual, 0.0, 10);
  CHECK((same.matrix() - dual.matrix()).norm() < 1e-14);
  const double eps = 0.1;
  const BipartiteGate close = near_dual(dual, eps, 10);
  CHECK((close.matrix() - dual.matrix()).norm() <= eps + 1e-12);
  CHECK(unitarity_deficit(close.matrix()) < 1e-12);
}

TEST_CASE("every family constructor output passes the unitarity gate") {
  std::vector<GateFamilySpec> specs;
  for (const char* name :
       {"swap", "frac_swap", "chm_diagonal", "sd_diagonal", "block_diagonal",
        "u_cz", "cue_random", "diagonal_random", "dual_random", "near_dual"}) {
    GateFamilySpec s;
    s.family = parse_family(name);
    s.d = 3;
    s.seed = 33;
    s.alpha = 0.4;
    s.eps = 0.15;
    specs.push_back(s);
  }
  GateFamilySpec canonical;
  canonical.family = Family::Canonical2q;
  canonical.d = 2;
  canonical.canonical = {0.5, 0.3, 0.1};
  specs.push_back(canonical);

  for (const auto& s : specs) {
    const BipartiteGate g = build_gate(s);  // ctor enforces unitarity
    CHECK(unitarity_deficit(g.matrix()) < 1e-10);
  }
}

TEST_CASE("gate family spec JSON round trip") {
  GateFamilySpec s;
  s.family = Family::FracSwap;
  s.d = 4;
  s.seed = 99;
  s.alpha = 0.25;
  const GateFamilySpec back = GateFamilySpec::from_json_string(s.to_json_string());
  CHECK(back.family == Family::FracSwap);
  CHECK(back.d == 4);
  CHECK(back.seed == 99);
  CHECK(back.alpha == doctest::Approx(0.25));
  CHECK((build_gate(back).matrix() - build_gate(s).matrix()).norm() == 0.0);

  CHECK_THROWS_AS(GateFamilySpec::from_json_string("{not json"), InputError);
  CHECK_THROWS_AS(GateFamilySpec::from_json_string("{\"family\":\"nope\",\"d\":2}"),
                  InputError);
}
