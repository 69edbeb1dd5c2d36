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

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gatedist/gates.hpp"
#include "gatedist/io.hpp"
#include "gatedist/kd_solver.hpp"
#include "gatedist/measures.hpp"
#include "gatedist/parallel.hpp"
#include "gatedist/rng.hpp"
#include "gatedist/ubb_solver.hpp"

namespace {

using json = nlohmann::json;
using namespace gatedist;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConvergence = 3;

struct Config {
  Index d = 3;
  int samples = 1000;
  std::uint64_t seed = 0;
  int res = 17;
  double eps = 0.1;
  double tol = 0.0;  // 0 = module default
  int max_iter = 0;  // 0 = module default
  std::string out;
  bool reproducible = false;
  unsigned threads = 0;

  // gate selection (gen / analyze)
  std::string in_file;
  std::string spec_file;
  std::string family;
  double alpha = 1.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

// Shortest round-trip decimal formatting, so identical runs produce
// byte-identical CSVs.
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::ostream& open_out(const Config& cfg, std::ofstream& file) {
  if (cfg.out.empty() || cfg.out == "-") return std::cout;
  file.open(cfg.out);
  if (!file) throw InputError("cannot open '" + cfg.out + "' for writing");
  return file;
}

void write_run_header(std::ostream& os, const Config& cfg, const char* cmd) {
  if (cfg.reproducible) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));
  os << "# gatedist " << cmd << " seed=" << cfg.seed << " generated=" << stamp
     << "\n";
}

void load_config_file(const std::string& path, Config& cfg) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: invalid JSON: ") + e.what());
  }
  cfg.d = j.value("d", cfg.d);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.res = j.value("res", cfg.res);
  cfg.eps = j.value("eps", cfg.eps);
  cfg.tol = j.value("tol", cfg.tol);
  cfg.max_iter = j.value("max_iter", cfg.max_iter);
  cfg.out = j.value("out", cfg.out);
  cfg.reproducible = j.value("reproducible", cfg.reproducible);
  cfg.threads = j.value("threads", cfg.threads);
}

void validate_config(const Config& cfg) {
  if (cfg.d < 2) throw InputError("d must be >= 2");
  if (cfg.samples < 1) throw InputError("samples must be positive");
  if (cfg.res < 2) throw InputError("res must be >= 2");
  if (cfg.eps < 0) throw InputError("eps must be positive");
  if (cfg.tol < 0) throw InputError("tol must be positive");
  if (cfg.max_iter < 0) throw InputError("max-iter must be positive");
}

GateFamilySpec spec_from_config(const Config& cfg) {
  GateFamilySpec spec;
  if (!cfg.spec_file.empty()) {
    std::ifstream is(cfg.spec_file);
    if (!is) throw InputError("cannot open spec '" + cfg.spec_file + "'");
    std::stringstream buffer;
    buffer << is.rdbuf();
    return GateFamilySpec::from_json_string(buffer.str());
  }
  if (cfg.family.empty()) {
    throw InputError("need --in, --spec or --family to select a gate");
  }
  spec.family = parse_family(cfg.family);
  spec.d = cfg.d;
  spec.seed = cfg.seed;
  spec.alpha = cfg.alpha;
  spec.eps = cfg.eps;
  spec.canonical = {cfg.c1, cfg.c2, cfg.c3};
  return spec;
}

KdOptions kd_options(const Config& cfg) {
  KdOptions opts;
  opts.seed = derive_seed(cfg.seed, 0x6b64);
  if (cfg.tol > 0) opts.tol = cfg.tol;
  if (cfg.max_iter > 0) opts.max_iter = cfg.max_iter;
  return opts;
}

int cmd_gen(const Config& cfg) {
  const GateFamilySpec spec = spec_from_config(cfg);
  const BipartiteGate gate = build_gate(spec);
  if (cfg.out.empty()) {
    write_gate(std::cout, gate);
  } else {
    write_gate_file(cfg.out, gate);
  }
  return kExitOk;
}

int cmd_analyze(const Config& cfg) {
  std::optional<GateFamilySpec> spec;
  std::optional<BipartiteGate> gate;
  if (!cfg.in_file.empty()) {
    gate = read_gate_file(cfg.in_file);
  } else {
    spec = spec_from_config(cfg);
    gate = build_gate(*spec);
  }

  const SchmidtData schmidt = operator_schmidt(*gate);
  const KdResult kd = kd_alternating(*gate, kd_options(cfg));

  UbbOptions ubb_opts;
  ubb_opts.seed = derive_seed(cfg.seed, 0x0bb);
  if (cfg.tol > 0) ubb_opts.tol = cfg.tol;
  if (cfg.max_iter > 0) ubb_opts.max_iter = cfg.max_iter;
  const UbbTrace ubb = ubb_find(*gate, ubb_opts);

  json report;
  report["d"] = gate->d();
  if (spec) report["family"] = family_name(spec->family);
  report["schmidt"] = std::vector<double>(
      schmidt.lambdas.data(), schmidt.lambdas.data() + schmidt.lambdas.size());
  report["lambda1"] = kd.bounds.lambda1;
  report["kd_star"] = kd.bounds.kd_star;
  report["kd_upper"] = kd.bounds.kd_upper;
  report["kd"] = kd.kd;
  report["overlap"] = kd.overlap;
  report["iterations"] = kd.iterations;
  report["seeds_tried"] = kd.seeds_tried;
  report["converged"] = kd.converged;
  report["conjecture_violation"] = kd.conjecture_violation;
  report["duality_deficit"] = unitarity_deficit(realign(gate->matrix()));
  report["operator_entanglement"] = operator_entanglement(schmidt);
  report["entangling_power"] = entangling_power(*gate);
  report["gate_typicality"] = gate_typicality(*gate);
  if (gate->d() == 2) report["kd_two_qubit"] = kd_two_qubit(*gate);
  if (spec) {
    const auto closed = kd_closed_form(*spec);
    report["closed_form"] = closed ? json(*closed) : json(nullptr);
  }
  report["ubb"] = {{"residual", ubb.final_residual},
                   {"steps", ubb.steps},
                   {"seeds_tried", ubb.seeds_tried},
                   {"converged", ubb.converged}};

  std::ofstream file;
  std::ostream& os = open_out(cfg, file);
  os << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_scan2q(const Config& cfg) {
  const double step = std::numbers::pi / 4 / (cfg.res - 1);
  std::ofstream file;
  std::ostream& os = open_out(cfg, file);
  write_run_header(os, cfg, "scan2q");
  os << "c1,c2,c3,e_p,g_t,kd\n";
  // Weyl chamber enumeration: pi/4 >= c1 >= c2 >= c3 >= 0.
  for (int i = 0; i < cfg.res; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k <= j; ++k) {
        const CanonicalParams p{i * step, j * step, k * step};
        const BipartiteGate g = canonical_two_qubit(p);
        os << fmt(p.c1) << "," << fmt(p.c2) << "," << fmt(p.c3) << ","
           << fmt(entangling_power(g)) << "," << fmt(gate_typicality(g)) << ","
           << fmt(kd_two_qubit(g)) << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_ensemble(const Config& cfg) {
  struct Row {
    std::string family;
    int sample = 0;
    std::uint64_t seed = 0;
    double eps = 0.0;
    double kd_star2 = 0.0;
    double kd2 = 0.0;
    double kd_upper2 = 0.0;
    bool converged = false;
    std::string status = "ok";
  };
  const std::vector<std::string> families{"diagonal_random", "cue_random",
                                          "near_dual"};
  std::vector<Row> rows(families.size() * static_cast<std::size_t>(cfg.samples));

  parallel_for(
      rows.size(),
      [&](std::size_t idx) {
        const std::size_t f = idx / static_cast<std::size_t>(cfg.samples);
        const int sample = static_cast<int>(idx % static_cast<std::size_t>(cfg.samples));
        Row& row = rows[idx];
        row.family = families[f];
        row.sample = sample;
        row.seed = derive_seed(derive_seed(cfg.seed, f), static_cast<std::uint64_t>(sample));
        GateFamilySpec spec;
        spec.family = parse_family(row.family);
        spec.d = cfg.d;
        spec.seed = row.seed;
        spec.eps = cfg.eps;
        row.eps = spec.family == Family::NearDual ? cfg.eps : 0.0;
        try {
          const BipartiteGate gate = build_gate(spec);
          KdOptions opts = kd_options(cfg);
          opts.seed = derive_seed(row.seed, 0x6b64);
          const KdResult r = kd_alternating(gate, opts);
          row.kd_star2 = r.bounds.kd_star * r.bounds.kd_star;
          row.kd2 = r.kd * r.kd;
          row.kd_upper2 = r.bounds.kd_upper * r.bounds.kd_upper;
          row.converged = r.converged;
        } catch (const std::exception& e) {
          std::string what = e.what();
          for (auto& c : what)
            if (c == ',' || c == '\n') c = ';';
          row.status = what;
        }
      },
      cfg.threads);

  std::ofstream file;
  std::ostream& os = open_out(cfg, file);
  write_run_header(os, cfg, "ensemble");
  os << "family,sample,seed,eps,kd_star2,kd2,kd_upper2,converged,status\n";
  for (const Row& row : rows) {
    os << row.family << "," << row.sample << "," << row.seed << ","
       << fmt(row.eps) << "," << fmt(row.kd_star2) << "," << fmt(row.kd2)
       << "," << fmt(row.kd_upper2) << "," << (row.converged ? 1 : 0) << ","
       << row.status << "\n";
  }
  return kExitOk;
}

int cmd_ubb_demo(const Config& cfg) {
  struct Run {
    UbbTrace trace;
    bool exhausted = false;
  };
  std::vector<Run> runs(static_cast<std::size_t>(cfg.samples));
  parallel_for(
      runs.size(),
      [&](std::size_t idx) {
        const BipartiteGate v(
            cfg.d, random_cue(cfg.d * cfg.d, derive_seed(cfg.seed, idx)));
        UbbOptions opts;
        opts.seed = derive_seed(cfg.seed, 0x0bb0000 + idx);
        if (cfg.tol > 0) opts.tol = cfg.tol;
        if (cfg.max_iter > 0) opts.max_iter = cfg.max_iter;
        try {
          runs[idx].trace = ubb_find(v, opts);
        } catch (UbbNonConvergence& e) {
          runs[idx].trace = std::move(e.trace);
          runs[idx].exhausted = true;
        }
      },
      cfg.threads);

  const double max_entropy = 1.0 - 1.0 / static_cast<double>(cfg.d);
  std::ofstream file;
  std::ostream& os = open_out(cfg, file);
  write_run_header(os, cfg, "ubb-demo");
  os << "sample,step,d_n,linear_entropy,renyi_half,delta,seeds_tried,converged\n";
  bool any_exhausted = false;
  for (std::size_t idx = 0; idx < runs.size(); ++idx) {
    const UbbTrace& t = runs[idx].trace;
    any_exhausted |= runs[idx].exhausted;
    for (std::size_t n = 0; n < t.lin_entropy_seq.size(); ++n) {
      const std::size_t even = 2 * n;
      const double dn = even < t.d_seq.size() ? t.d_seq[even] : t.d_seq.back();
      os << idx << "," << n << "," << fmt(dn) << ","
         << fmt(t.lin_entropy_seq[n]) << "," << fmt(t.renyi_half_seq[n]) << ","
         << fmt(max_entropy - t.lin_entropy_seq[n]) << "," << t.seeds_tried
         << "," << (t.converged ? 1 : 0) << "\n";
    }
  }
  return any_exhausted ? kExitConvergence : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance to the nearest local product gate, operator Schmidt "
               "measures, and maximally entangled pair search for bipartite "
               "unitaries"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_file;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON experiment config file");
    sub->add_option("--d", cfg.d, "local dimension");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--max-iter", cfg.max_iter, "iteration budget override");
    sub->add_option("--out,-o", cfg.out, "output path (default stdout)");
    sub->add_flag("--reproducible", cfg.reproducible,
                  "suppress the timestamp header");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  };
  const auto add_gate_selection = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_file, "GateFamilySpec JSON file");
    sub->add_option("--family", cfg.family, "gate family tag");
    sub->add_option("--alpha", cfg.alpha, "frac_swap exponent");
    sub->add_option("--eps", cfg.eps, "near-dual perturbation size");
    sub->add_option("--c1", cfg.c1, "canonical parameter c1");
    sub->add_option("--c2", cfg.c2, "canonical parameter c2");
    sub->add_option("--c3", cfg.c3, "canonical parameter c3");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a gate matrix file");
  add_common(gen);
  add_gate_selection(gen);

  CLI::App* analyze =
      app.add_subcommand("analyze", "full single-gate report (JSON)");
  add_common(analyze);
  add_gate_selection(analyze);
  analyze->add_option("--in", cfg.in_file, "matrix file to analyze");

  CLI::App* scan = app.add_subcommand(
      "scan2q", "two-qubit Weyl chamber scan (CSV: c1,c2,c3,e_p,g_t,kd)");
  add_common(scan);
  scan->add_option("--res", cfg.res, "grid resolution per axis");

  CLI::App* ensemble = app.add_subcommand(
      "ensemble",
      "kd vs kd_star over diagonal/CUE/near-dual ensembles (CSV)");
  add_common(ensemble);
  ensemble->add_option("--samples", cfg.samples, "samples per family");
  ensemble->add_option("--eps", cfg.eps, "near-dual perturbation size");

  CLI::App* ubb = app.add_subcommand(
      "ubb-demo", "maximally entangled pair search over a CUE sample (CSV)");
  add_common(ubb);
  ubb->add_option("--samples", cfg.samples, "number of gates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_file.empty()) {
      Config from_file;
      load_config_file(config_file, from_file);
      // Flags given on the command line override the file.
      const Config flags = cfg;
      cfg = from_file;
      const CLI::App* sub = app.get_subcommands().front();
      const auto used = [&](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
      };
      if (used("--d")) cfg.d = flags.d;
      if (used("--seed")) cfg.seed = flags.seed;
      if (used("--tol")) cfg.tol = flags.tol;
      if (used("--max-iter")) cfg.max_iter = flags.max_iter;
      if (used("--out")) cfg.out = flags.out;
      if (used("--reproducible")) cfg.reproducible = flags.reproducible;
      if (used("--threads")) cfg.threads = flags.threads;
      if (used("--samples")) cfg.samples = flags.samples;
      if (used("--res")) cfg.res = flags.res;
      if (used("--eps")) cfg.eps = flags.eps;
      cfg.in_file = flags.in_file;
      cfg.spec_file = flags.spec_file;
      cfg.family = flags.family;
      cfg.alpha = flags.alpha;
      cfg.c1 = flags.c1;
      cfg.c2 = flags.c2;
      cfg.c3 = flags.c3;
    }
    validate_config(cfg);

    if (app.got_subcommand("gen")) return cmd_gen(cfg);
    if (app.got_subcommand("analyze")) return cmd_analyze(cfg);
    if (app.got_subcommand("scan2q")) return cmd_scan2q(cfg);
    if (app.got_subcommand("ensemble")) return cmd_ensemble(cfg);
    if (app.got_subcommand("ubb-demo")) return cmd_ubb_demo(cfg);
    return kExitInput;
  } catch (const UbbNonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
