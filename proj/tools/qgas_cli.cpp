// Copyright 2026 The qgas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qgas command-line front end.
//
// Exit codes: 0 success, 1 input or configuration error, 2 a valid result
// whose search ran out of oracle budget.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgas/qgas.hpp"

namespace {

using qgas::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnconverged = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GasFlags {
  std::uint64_t seed = 0;
  unsigned m_bits = 0;
  unsigned real_bits = qgas::kDefaultRealPrecisionBits;
  double lambda = 8.0 / 7.0;
  std::uint64_t budget = qgas::kDefaultOracleBudget;
  std::string strategy = "random";
  std::string backend = "statevector";
  std::string approx;
};

void add_gas_flags(CLI::App* cmd, GasFlags& f) {
  cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--m-bits", f.m_bits, "Cost register width (0 = automatic)")->capture_default_str();
  cmd->add_option("--real-bits", f.real_bits, "Register width for real coefficients")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "Schedule growth factor in (1, 4/3)")->capture_default_str();
  cmd->add_option("--budget", f.budget, "Oracle query budget")->capture_default_str();
  cmd->add_option("--strategy", f.strategy, "random | quantile:<q> | classical | combined[:<q>]")
      ->capture_default_str();
  cmd->add_option("--backend", f.backend, "statevector | subspace")->capture_default_str();
  cmd->add_option("--approx", f.approx, "Approximate solution, x_0 first, for classical strategies");
}

qgas::Assignment parse_assignment(const std::string& text) {
  qgas::Assignment a;
  for (char c : text) {
    if (c != '0' && c != '1') throw InputError("approximate solution may only contain 0 and 1");
    a.push_back(c == '1');
  }
  return a;
}

qgas::GasConfig gas_config(const GasFlags& f) {
  qgas::GasConfig c;
  c.rng_seed = f.seed;
  c.m = f.m_bits;
  c.real_precision_bits = f.real_bits;
  c.lambda = f.lambda;
  c.max_oracle_queries = f.budget;
  c.initial_threshold_strategy = qgas::ThresholdStrategy::parse(f.strategy);
  c.backend = qgas::parse_backend(f.backend);
  if (!f.approx.empty()) c.approximate_solution = parse_assignment(f.approx);
  c.validate();
  return c;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("write to '" + path + "' failed");
}

std::string fixed(double v, int digits = 5) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  std::string s = os.str();
  if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s[0] == '-' ? 1 : 0);
  return s;
}

std::string general(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void emit(const std::string& out_path, const Json& report) {
  if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
}

void print_trace_summary(const qgas::GasTrace& t) {
  std::cout << "best_assignment: " << qgas::assignment_string(t.best_assignment) << '\n'
            << "best_cost: " << general(t.best_cost) << '\n'
            << "total_oracle_queries: " << t.total_oracle_queries << '\n'
            << "rounds: " << t.rounds.size() << '\n'
            << "converged: " << (t.converged ? "true" : "false") << '\n';
}

int trace_exit(const qgas::GasTrace& t) { return t.converged ? kExitOk : kExitUnconverged; }

// ------------------------------------------------------------------ solve

struct SolveFlags {
  GasFlags gas;
  std::string poly;
  std::string out;
};

int cmd_solve(const SolveFlags& f) {
  auto in = open_input(f.poly);
  const qgas::BinaryPolynomial poly = qgas::parse_polynomial(in);
  const qgas::GasConfig cfg = gas_config(f.gas);
  const qgas::GasTrace trace = qgas::run_gas(poly, cfg);
  std::cout << "command: solve\nseed: " << cfg.rng_seed << "\nconfig: " << qgas::to_json(cfg).dump() << '\n';
  print_trace_summary(trace);
  Json report;
  report["command"] = "solve";
  report["poly"] = f.poly;
  report["trace"] = qgas::to_json(trace);
  emit(f.out, report);
  return trace_exit(trace);
}

// -------------------------------------------------------- mimo-experiment

struct ExperimentFlags {
  GasFlags gas;
  unsigned n = 8;
  std::string modulation = "qpsk";
  unsigned rx = 0;
  double snr_db = 10.0;
  unsigned trials = 200;
  std::vector<std::string> strategies{"random", "classical", "combined"};
  bool no_classical = false;
  unsigned threads = 1;
  std::string out = "mimo";
};

int cmd_mimo_experiment(const ExperimentFlags& f) {
  qgas::ExperimentConfig cfg;
  cfg.n_bits = f.n;
  cfg.modulation = qgas::parse_modulation(f.modulation);
  cfg.num_rx = f.rx;
  cfg.snr_db = f.snr_db;
  cfg.trials = f.trials;
  cfg.strategies.clear();
  for (const auto& s : f.strategies) cfg.strategies.push_back(qgas::ThresholdStrategy::parse(s));
  cfg.include_classical = !f.no_classical;
  cfg.seed = f.gas.seed;
  cfg.gas.m = f.gas.m_bits;
  cfg.gas.real_precision_bits = f.gas.real_bits;
  cfg.gas.lambda = f.gas.lambda;
  cfg.gas.max_oracle_queries = f.gas.budget;
  cfg.gas.backend = qgas::parse_backend(f.gas.backend);
  cfg.threads = f.threads;
  cfg.validate();

  const qgas::ExperimentResult result = qgas::run_query_experiment(cfg);
  std::ostringstream records, cdf;
  qgas::write_records_csv(records, result);
  qgas::write_cdf_csv(cdf, result);
  const Json summary = qgas::experiment_summary_json(result);
  write_file(f.out + ".csv", records.str());
  write_file(f.out + "_cdf.csv", cdf.str());
  write_file(f.out + ".json", summary.dump(2) + "\n");

  std::cout << "command: mimo-experiment\nseed: " << cfg.seed << '\n';
  for (const auto& name : result.strategy_names()) {
    std::cout << name << ": mean_queries_to_optimum " << general(result.mean_queries(name)) << '\n';
  }
  std::cout << "wrote " << f.out << ".csv " << f.out << "_cdf.csv " << f.out << ".json\n";
  for (const auto& r : result.records) {
    if (!r.converged) return kExitUnconverged;
  }
  return kExitOk;
}

// --------------------------------------------------------------- coloring

struct ColoringFlags {
  GasFlags gas;
  std::string graph;
  unsigned colors = 2;
  std::string out;
};

int cmd_coloring(const ColoringFlags& f) {
  auto in = open_input(f.graph);
  const qgas::ColoringInstance g = qgas::read_graph(in, f.colors);
  const qgas::BinaryPolynomial poly = qgas::coloring_polynomial(g);
  const qgas::GasConfig cfg = gas_config(f.gas);
  const qgas::GasTrace trace = qgas::run_gas(poly, cfg);
  const auto colors = qgas::decode_coloring(g, trace.best_assignment);
  const unsigned conflicts = qgas::coloring_conflicts(g, colors);

  std::cout << "command: coloring\nseed: " << cfg.rng_seed << "\nconfig: " << qgas::to_json(cfg).dump() << '\n';
  print_trace_summary(trace);
  std::cout << "colors:";
  for (unsigned c : colors) std::cout << ' ' << c;
  std::cout << "\nconflicts: " << conflicts << '\n';
  Json report;
  report["command"] = "coloring";
  report["graph"] = f.graph;
  report["colors"] = f.colors;
  report["vertex_colors"] = colors;
  report["conflicts"] = conflicts;
  report["trace"] = qgas::to_json(trace);
  emit(f.out, report);
  return trace_exit(trace);
}

// --------------------------------------------------------------- codebook

qgas::Codebook load_codebook(const std::string& path, bool mub, std::vector<std::string>& warnings) {
  if (mub == !path.empty()) throw InputError("give exactly one of --codebook and --mub");
  if (mub) return qgas::mub_codebook();
  auto in = open_input(path);
  try {
    return qgas::read_codebook(in, &warnings);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct CodebookFlags {
  GasFlags gas;
  std::string codebook;
  bool mub = false;
  unsigned select = 2;
  double exponent = qgas::kDefaultPowerMeanExponent;
  std::string out;
};

int cmd_codebook(const CodebookFlags& f) {
  std::vector<std::string> warnings;
  const qgas::Codebook cb = load_codebook(f.codebook, f.mub, warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const qgas::MaxMinProblem prob = qgas::maxmin_codebook_polynomial(cb, f.select, f.exponent);
  const qgas::GasConfig cfg = gas_config(f.gas);
  const qgas::GasTrace trace = qgas::solve_maxmin(prob, cfg);
  std::vector<unsigned> selected;
  for (unsigned i = 0; i < prob.candidates(); ++i) {
    if (trace.best_assignment[i]) selected.push_back(i);
  }
  const double min_d = qgas::min_selected_distance(prob, trace.best_assignment);

  std::cout << "command: codebook\nseed: " << cfg.rng_seed << "\nconfig: " << qgas::to_json(trace.config).dump()
            << '\n';
  print_trace_summary(trace);
  std::cout << "selected:";
  for (unsigned i : selected) std::cout << ' ' << i;
  std::cout << "\nmin_chordal_distance: " << fixed(min_d) << '\n';
  Json report;
  report["command"] = "codebook";
  report["codebook"] = f.mub ? Json("mub") : Json(f.codebook);
  report["select"] = f.select;
  report["exponent"] = f.exponent;
  report["selected"] = selected;
  report["min_chordal_distance"] = min_d;
  report["trace"] = qgas::to_json(trace);
  emit(f.out, report);
  return trace_exit(trace);
}

// -------------------------------------------------------- grassmann-check

struct CheckFlags {
  std::string codebook;
  bool mub = false;
  std::string out;
};

int cmd_grassmann_check(const CheckFlags& f) {
  std::vector<std::string> warnings;
  const qgas::Codebook cb = load_codebook(f.codebook, f.mub, warnings);
  for (const auto& [a, b] : qgas::duplicate_points(cb)) {
    warnings.push_back("points " + std::to_string(a) + " and " + std::to_string(b) + " are the same line");
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  const auto table = qgas::fidelity_table(cb);
  const double min_d = qgas::min_chordal_distance(cb);
  std::cout << "command: grassmann-check\npoints: " << cb.size() << "\ndimension: " << cb.dimension()
            << "\nfidelity_table:\n";
  for (const auto& row : table) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "  ") << fixed(row[j]);
    std::cout << '\n';
  }
  std::cout << "min_chordal_distance: " << fixed(min_d) << '\n';
  Json bloch = Json::array();
  if (cb.dimension() == 2) {
    std::cout << "bloch:\n";
    for (const auto& p : cb.points()) {
      const auto b = qgas::bloch_coordinates(p);
      std::cout << "  " << fixed(b[0]) << ' ' << fixed(b[1]) << ' ' << fixed(b[2]) << '\n';
      bloch.push_back(b);
    }
  }
  Json report;
  report["command"] = "grassmann-check";
  report["codebook"] = f.mub ? Json("mub") : Json(f.codebook);
  report["fidelity_table"] = table;
  report["min_chordal_distance"] = min_d;
  report["bloch"] = bloch;
  report["warnings"] = warnings;
  emit(f.out, report);
  return kExitOk;
}

// --------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string circuit;
  std::uint64_t seed = 0;
  unsigned shots = 0;
  std::string out;
};

int cmd_simulate(const SimulateFlags& f) {
  auto in = open_input(f.circuit);
  const qgas::Circuit c = qgas::read_circuit(in);
  qgas::StateVector state(c.num_qubits());
  qgas::apply_circuit(state, c);
  const auto probs = qgas::probabilities(state);

  std::cout << "command: simulate\nseed: " << f.seed << "\nqubits: " << c.num_qubits() << "\ngates: " << c.size()
            << "\nprobabilities:\n";
  Json pj = Json::object();
  for (qgas::BasisIndex i = 0; i < probs.size(); ++i) {
    if (probs[i] < 1e-12) continue;
    const std::string bits = qgas::to_bitstring(i, c.num_qubits());
    std::cout << "  " << bits << ' ' << fixed(probs[i], 6) << '\n';
    pj[bits] = probs[i];
  }
  std::map<std::string, unsigned> counts;
  if (f.shots > 0) {
    std::mt19937_64 rng(f.seed);
    for (unsigned s = 0; s < f.shots; ++s) {
      const auto i = qgas::sample_index(std::span<const double>(probs), rng);
      ++counts[qgas::to_bitstring(i, c.num_qubits())];
    }
    std::cout << "counts:\n";
    for (const auto& [bits, n] : counts) std::cout << "  " << bits << ' ' << n << '\n';
  }
  Json report;
  report["command"] = "simulate";
  report["circuit"] = f.circuit;
  report["seed"] = f.seed;
  report["shots"] = f.shots;
  report["probabilities"] = pj;
  report["counts"] = counts;
  emit(f.out, report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover adaptive search toolkit"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "Minimize a polynomial with Grover adaptive search");
  s->add_option("--poly", solve.poly, "Polynomial file")->required();
  s->add_option("--out", solve.out, "Write the trace JSON here");
  add_gas_flags(s, solve.gas);

  ExperimentFlags exp;
  exp.gas.backend = "subspace";
  exp.gas.real_bits = 10;
  exp.gas.seed = 1;
  auto* e = app.add_subcommand("mimo-experiment", "Query-count experiment on random MIMO detection");
  e->add_option("--n", exp.n, "Transmitted bits")->capture_default_str();
  e->add_option("--mod", exp.modulation, "bpsk | qpsk")->capture_default_str();
  e->add_option("--rx", exp.rx, "Receive antennas (0 = as many as transmit)")->capture_default_str();
  e->add_option("--snr-db", exp.snr_db, "Signal-to-noise ratio in dB")->capture_default_str();
  e->add_option("--trials", exp.trials, "Number of trials")->capture_default_str();
  e->add_option("--strategy", exp.strategies, "GAS threshold strategies")->capture_default_str();
  e->add_flag("--no-classical", exp.no_classical, "Skip the exhaustive classical baseline");
  e->add_option("--threads", exp.threads, "Worker threads")->capture_default_str();
  e->add_option("--out", exp.out, "Output prefix for .csv, _cdf.csv and .json")->capture_default_str();
  e->add_option("--seed", exp.gas.seed, "Base seed")->capture_default_str();
  e->add_option("--m-bits", exp.gas.m_bits, "Cost register width (0 = automatic)")->capture_default_str();
  e->add_option("--real-bits", exp.gas.real_bits, "Register width for real coefficients")->capture_default_str();
  e->add_option("--lambda", exp.gas.lambda, "Schedule growth factor")->capture_default_str();
  e->add_option("--budget", exp.gas.budget, "Oracle query budget per run")->capture_default_str();
  e->add_option("--backend", exp.gas.backend, "statevector | subspace")->capture_default_str();

  ColoringFlags col;
  auto* c = app.add_subcommand("coloring", "Graph coloring as a polynomial minimization");
  c->add_option("--graph", col.graph, "Graph file")->required();
  c->add_option("--colors", col.colors, "Number of colors (power of two)")->capture_default_str();
  c->add_option("--out", col.out, "Write the report JSON here");
  add_gas_flags(c, col.gas);

  CodebookFlags cbf;
  auto* b = app.add_subcommand("codebook", "Max-min codebook selection over weight-k subsets");
  b->add_option("--codebook", cbf.codebook, "Candidate codebook file");
  b->add_flag("--mub", cbf.mub, "Use the built-in six-point codebook");
  b->add_option("--select", cbf.select, "Points to select")->capture_default_str();
  b->add_option("--exponent", cbf.exponent, "Power-mean exponent (negative)")->capture_default_str();
  b->add_option("--out", cbf.out, "Write the report JSON here");
  add_gas_flags(b, cbf.gas);

  CheckFlags chk;
  auto* g = app.add_subcommand("grassmann-check", "Fidelities, chordal distances and Bloch coordinates");
  g->add_option("--codebook", chk.codebook, "Codebook file");
  g->add_flag("--mub", chk.mub, "Use the built-in six-point codebook");
  g->add_option("--out", chk.out, "Write the report JSON here");

  SimulateFlags sim;
  auto* v = app.add_subcommand("simulate", "Run a circuit file on the statevector simulator");
  v->add_option("--circuit", sim.circuit, "Circuit file")->required();
  v->add_option("--shots", sim.shots, "Seeded measurement shots")->capture_default_str();
  v->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  v->add_option("--out", sim.out, "Write the report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (e->parsed()) return cmd_mimo_experiment(exp);
    if (c->parsed()) return cmd_coloring(col);
    if (b->parsed()) return cmd_codebook(cbf);
    if (g->parsed()) return cmd_grassmann_check(chk);
    if (v->parsed()) return cmd_simulate(sim);
  } catch (const std::exception& ex) {
    std::cout.flush();
    std::cerr << "error: " << ex.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
