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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gatedist/ubb_solver.hpp"

#include "gatedist/gates.hpp"
#include "gatedist/measures.hpp"
#include "test_helpers.hpp"

using namespace gatedist;
using testing::kron;

TEST_CASE("local product gates converge immediately from any seed") {
  const BipartiteGate v(3, kron(random_cue(3, 1), random_cue(3, 2)));
  const UbbTrace t = ubb_iterate(v, Matrix::Identity(3, 3));
  CHECK(t.converged);
  CHECK(t.steps == 1);
  CHECK(t.final_residual < 1e-12);
}

TEST_CASE("diagonal gates map the standard Bell state onto a phase-decorated one") {
  const BipartiteGate v(3, random_diagonal(9, 3));
  const UbbTrace t = ubb_iterate(v, Matrix::Identity(3, 3));
  CHECK(t.converged);
  CHECK(t.steps == 1);
  // v_final is the devectorized image: a diagonal of phases.
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(t.v_final(i, j)) < 1e-14);
    }
}

TEST_CASE("SWAP fixes every maximally entangled state") {
  const Matrix u0 = random_cue(3, 4);
  const UbbTrace t = ubb_iterate(swap_gate(3), u0);
  CHECK(t.converged);
  CHECK(t.steps == 1);
  const CycleReport c = detect_cycle(t);
  CHECK(c.fixed_point);
  CHECK(c.period == 1);
  CHECK_FALSE(c.theory_violation);
}

TEST_CASE("random CUE gates converge to a maximally entangled pair") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const BipartiteGate v(3, random_cue(9, 100 + seed));
    UbbOptions opts;
    opts.seed = seed;
    const UbbTrace t = ubb_find(v, opts);
    CHECK(t.converged);
    CHECK(t.final_residual < 1e-10);

    // The claimed pair really is maximally entangled and connected by V.
    CHECK(t.phi0().max_entangled_deficit() < 1e-8);
    CHECK(t.phi1().max_entangled_deficit() < 1e-8);
    const double resid =
        (v.matrix() * t.phi0().unit() - t.phi1().unit()).norm();
    CHECK(resid < 1e-9);

    // Entropy of the image approaches the maximum 2/3.
    CHECK(t.lin_entropy_seq.back() == doctest::Approx(2.0 / 3).epsilon(1e-8));
  }
}

TEST_CASE("distance sequence is nonincreasing, Renyi-1/2 nondecreasing") {
  const BipartiteGate v(3, random_cue(9, 200));
  UbbOptions opts;
  opts.seed = 5;
  const UbbTrace t = ubb_find(v, opts);
  REQUIRE(t.d_seq.size() > 2);
  for (std::size_t i = 1; i < t.d_seq.size(); ++i) {
    CHECK(t.d_seq[i] <= t.d_seq[i - 1] + 1e-12);
  }
  for (std::size_t i = 1; i < t.renyi_half_seq.size(); ++i) {
    CHECK(t.renyi_half_seq[i] >= t.renyi_half_seq[i - 1] - 1e-12);
  }
}

TEST_CASE("ubb_distance reference values") {
  const BipartiteGate id(3, Matrix::Identity(9, 9));
  const Matrix u = random_cue(3, 6);
  CHECK(ubb_distance(id, u, u) < 1e-14);
  CHECK(ubb_distance(id, Matrix::Identity(3, 3),
                     (Complex(0, 1) * Matrix::Identity(3, 3)).eval()) ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));  // sqrt(2d), d = 3
  CHECK_THROWS_AS(ubb_distance(id, random_cue(2, 7), u), ShapeError);
}

TEST_CASE("cycle detection sees only fixed points on random gates") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteGate v(3, random_cue(9, 300 + seed));
    UbbOptions opts;
    opts.seed = seed;
    const UbbTrace t = ubb_find(v, opts);
    const CycleReport c = detect_cycle(t);
    CHECK(c.fixed_point);
    CHECK_FALSE(c.theory_violation);
  }
}

TEST_CASE("trace CSV export has the documented columns") {
  const BipartiteGate v(2, random_cue(4, 8));
  UbbOptions opts;
  opts.seed = 9;
  const UbbTrace t = ubb_find(v, opts);
  std::ostringstream os;
  write_trace_csv(os, t);
  const std::string text = os.str();
  CHECK(text.rfind("step,d_n,linear_entropy,renyi_half\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(t.lin_entropy_seq.size()) + 1);
}

TEST_CASE("a synthetic period-2 recurrence is surfaced as a theory violation") {
  // Hand-built history alternating between two genuinely different
  // unitaries; the detector must flag it rather than call it a fixed point.
  UbbTrace trace;
  trace.d = 3;
  trace.converged = false;
  const Matrix a = random_cue(3, 12);
  const Matrix b = random_cue(3, 13);
  for (int k = 0; k < 10; ++k) {
    trace.history.push_back(k % 2 == 0 ? a : b);
  }
  const CycleReport c = detect_cycle(trace);
  CHECK(c.fixed_point);
  CHECK(c.period == 2);
  CHECK(c.theory_violation);

  // A constant tail is a clean period-1 fixed point.
  UbbTrace fixed;
  fixed.d = 3;
  fixed.converged = false;
  for (int k = 0; k < 5; ++k) fixed.history.push_back(a);
  const CycleReport c1 = detect_cycle(fixed);
  CHECK(c1.fixed_point);
  CHECK(c1.period == 1);
  CHECK_FALSE(c1.theory_violation);
}

TEST_CASE("non-convergence carries the trace") {
  const BipartiteGate v(3, random_cue(9, 10));
  UbbOptions opts;
  opts.seed = 11;
  opts.max_iter = 2;  // far too few steps for a generic gate
  opts.max_reseeds = 2;
  opts.stagnation_steps = 1000;
  try {
    ubb_find(v, opts);
    FAIL("expected UbbNonConvergence");
  } catch (const UbbNonConvergence& e) {
    CHECK(e.trace.seeds_tried == 2);
    CHECK(e.trace.final_residual > 0.0);
    CHECK(e.residual == doctest::Approx(e.trace.final_residual));
  }
}
