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

#include "gatedist/io.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace gatedist {

using json = nlohmann::json;

void write_gate(std::ostream& os, const BipartiteGate& gate) {
  const Index n = gate.d() * gate.d();
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < n; ++i) {
    json row_re = json::array();
    json row_im = json::array();
    for (Index j = 0; j < n; ++j) {
      row_re.push_back(gate.matrix()(i, j).real());
      row_im.push_back(gate.matrix()(i, j).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  json j{{"d", gate.d()}, {"re", std::move(re)}, {"im", std::move(im)}};
  os << j.dump() << "\n";
}

void write_gate_file(const std::string& path, const BipartiteGate& gate) {
  std::ofstream os(path);
  if (!os) {
    throw InputError("cannot open '" + path + "' for writing");
  }
  write_gate(os, gate);
}

BipartiteGate read_gate(std::istream& is, double unitary_tol) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw InputError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  Index d = 0;
  try {
    d = j.at("d").get<Index>();
  } catch (const json::exception&) {
    throw InputError("matrix file: missing integer field 'd'");
  }
  if (d < 2) {
    throw InputError("matrix file: d must be >= 2");
  }
  const Index n = d * d;
  const auto check_grid = [&](const json& g, const char* name) {
    if (!g.is_array() || static_cast<Index>(g.size()) != n) {
      throw InputError(std::string("matrix file: '") + name +
                       "' must be a d^2 x d^2 array");
    }
    for (const auto& row : g) {
      if (!row.is_array() || static_cast<Index>(row.size()) != n) {
        throw InputError(std::string("matrix file: '") + name +
                         "' must be a d^2 x d^2 array");
      }
    }
  };
  if (!j.contains("re") || !j.contains("im")) {
    throw InputError("matrix file: missing 're'/'im' fields");
  }
  check_grid(j["re"], "re");
  check_grid(j["im"], "im");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      double re, im;
      try {
        re = j["re"][i][k].get<double>();
        im = j["im"][i][k].get<double>();
      } catch (const json::exception&) {
        throw InputError("matrix file: non-numeric entry");
      }
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw InputError("matrix file: non-finite entry");
      }
      m(i, k) = Complex(re, im);
    }
  }
  const double deficit = unitarity_deficit(m);
  if (deficit > unitary_tol) {
    throw InputError("matrix file: unitarity deficit " +
                         std::to_string(deficit) + " exceeds tolerance",
                     deficit);
  }
  return BipartiteGate(d, std::move(m), unitary_tol);
}

BipartiteGate read_gate_file(const std::string& path, double unitary_tol) {
  std::ifstream is(path);
  if (!is) {
    throw InputError("cannot open '" + path + "' for reading");
  }
  return read_gate(is, unitary_tol);
}

}  // namespace gatedist
