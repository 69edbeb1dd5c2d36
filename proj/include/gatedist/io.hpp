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

#include <iosfwd>
#include <string>

#include "gatedist/linalg.hpp"

namespace gatedist {

// Matrix file format, shared project-wide:
//   {"d": int, "re": [[...]], "im": [[...]]}
// with row-major d^2 x d^2 arrays. Readers reject non-square, wrong-size,
// or non-finite data; read_gate additionally rejects non-unitary matrices
// (InputError carries the deficit).

void write_gate(std::ostream& os, const BipartiteGate& gate);
void write_gate_file(const std::string& path, const BipartiteGate& gate);

BipartiteGate read_gate(std::istream& is,
                        double unitary_tol = kDefaultUnitaryTol);
BipartiteGate read_gate_file(const std::string& path,
                             double unitary_tol = kDefaultUnitaryTol);

}  // namespace gatedist
