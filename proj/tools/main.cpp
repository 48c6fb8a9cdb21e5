// Copyright 2026 The ecrkit authors
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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ecrkit/circuit.hpp"
#include "ecrkit/pulse.hpp"
#include "ecrkit/transpile.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);  // flushes negative zero
  return buf;
}

ecrkit::CouplingMap coupling_from_spec(const std::string& spec) {
  const std::string prefix = "linear:";
  if (spec.rfind(prefix, 0) != 0)
    throw InputError("unsupported coupling '" + spec + "' (expected linear:N)");
  const int n = std::stoi(spec.substr(prefix.size()));
  if (n < 1 || n > ecrkit::kMaxQubits) throw InputError("bad coupling width in '" + spec + "'");
  return ecrkit::CouplingMap::linear(n);
}

ecrkit::CouplingMap coupling_from_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_input(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("coupling file: ") + e.what());
  }
  if (!j.contains("n_qubits") || !j.contains("edges"))
    throw InputError("coupling file: expected fields n_qubits and edges");
  ecrkit::CouplingMap m;
  m.n_qubits = j.at("n_qubits").get<int>();
  for (const auto& edge : j.at("edges")) {
    if (!edge.is_array() || edge.size() != 2)
      throw InputError("coupling file: each edge must be a pair");
    m.add_edge(edge[0].get<int>(), edge[1].get<int>());
  }
  return m;
}

int run_emit(const std::string& target, const std::string& out_path) {
  const ecrkit::Circuit c = ecrkit::catalog_circuit(target);
  write_output(out_path, ecrkit::emit(c));
  return kExitOk;
}

int run_transpile(const std::string& file, const std::string& basis_name,
                  const std::string& coupling_spec, const std::string& coupling_file,
                  const std::string& out_path) {
  ecrkit::Circuit c = ecrkit::parse(read_input(file));
  ecrkit::BasisSpec basis;
  basis.two_qubit_gate = basis_name;
  const ecrkit::Circuit rewritten = ecrkit::rewrite_to_basis(c, basis);

  if (!coupling_spec.empty() || !coupling_file.empty()) {
    const ecrkit::CouplingMap map = !coupling_file.empty()
                                        ? coupling_from_file(coupling_file)
                                        : coupling_from_spec(coupling_spec);
    const auto violations = ecrkit::validate_connectivity(rewritten, map);
    if (!violations.empty()) {
      for (const auto& v : violations)
        std::cerr << "connectivity violation: instruction " << v.instruction_index
                  << " touches (" << v.q0 << "," << v.q1 << ")\n";
      return kExitFail;
    }
  }
  write_output(out_path, ecrkit::emit(rewritten));
  return kExitOk;
}

int run_verify(const std::string& file, const std::string& against, double tol) {
  const ecrkit::CMat u = ecrkit::unitary_of(ecrkit::parse(read_input(file)));
  ecrkit::CMat v;
  if (against == "ccx" || against == "ccz")
    v = ecrkit::gate_matrix(against);
  else
    v = ecrkit::unitary_of(ecrkit::parse(read_input(against)));
  if (u.rows() != v.rows()) {
    std::cout << "FAIL dimension mismatch (" << u.rows() << " vs " << v.rows() << ")\n";
    return kExitFail;
  }
  const double overlap = ecrkit::phase_insensitive_overlap(u, v);
  const bool pass = overlap >= 1.0 - tol;
  std::cout << (pass ? "PASS" : "FAIL") << " |tr(U†V)|/dim = " << fmt_g(overlap) << "\n";
  return pass ? kExitOk : kExitFail;
}

int run_stats(const std::string& file) {
  const ecrkit::Circuit c = ecrkit::parse(read_input(file));
  std::cout << "qubits        " << c.n_qubits << "\n";
  std::cout << "instructions  " << c.instructions.size() << "\n";
  std::cout << "depth         " << ecrkit::depth(c) << "\n";
  std::cout << "two_qubit     " << ecrkit::two_qubit_count(c) << "\n";
  for (const auto& [name, count] : ecrkit::gate_counts(c))
    std::cout << "count." << name << std::string(name.size() < 8 ? 8 - name.size() : 1, ' ')
              << count << "\n";
  return kExitOk;
}

int run_pulse(const std::string& coeffs_file, double time, bool calibrate,
              double t_max, bool as_json) {
  const ecrkit::PauliCoeffs coeffs =
      ecrkit::pauli_coeffs_from_json(read_input(coeffs_file));
  const ecrkit::GateErrorReport report = ecrkit::gate_error_report(coeffs, time);
  ecrkit::CalibrationResult cal;
  if (calibrate) cal = ecrkit::calibrate_time(coeffs, t_max);

  if (as_json) {
    nlohmann::json j = ecrkit::report_to_json(report);
    if (calibrate) j["calibration"] = {{"t_star", cal.t_star}, {"fidelity", cal.fidelity}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << ecrkit::render_report_text(report);
    if (calibrate) {
      std::cout << "t_star        " << fmt_g(cal.t_star) << "\n";
      std::cout << "fidelity_at_t " << fmt_g(cal.fidelity) << "\n";
    }
  }
  return kExitOk;
}

int run_invariants(const std::string& file, const std::string& gate) {
  ecrkit::CMat u;
  if (!gate.empty()) {
    const ecrkit::GateDef& g = ecrkit::gate_or_throw(gate);
    if (g.arity != 2) throw InputError("invariants: gate '" + gate + "' is not 2-qubit");
    u = ecrkit::matrix_of(g, {});
  } else {
    const ecrkit::Circuit c = ecrkit::parse(read_input(file));
    if (c.n_qubits != 2) throw InputError("invariants: circuit must have exactly 2 qubits");
    u = ecrkit::unitary_of(c);
  }
  const ecrkit::MakhlinInvariants inv = ecrkit::makhlin_invariants(u);
  std::cout << "g1  " << fmt_g(inv.g1.real()) << (inv.g1.imag() < 0 ? "" : "+")
            << fmt_g(inv.g1.imag()) << "i\n";
  std::cout << "g2  " << fmt_g(inv.g2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuit toolkit for the {ecr, rz, sx} native basis"};
  app.require_subcommand(1);

  auto* emit_cmd = app.add_subcommand("emit", "Write a catalog circuit");
  std::string emit_target, emit_out;
  emit_cmd->add_option("--target", emit_target, "Catalog circuit name")
      ->required()
      ->check(CLI::IsMember(ecrkit::catalog_names()));
  emit_cmd->add_option("--out", emit_out, "Output file (default stdout)");

  auto* trans_cmd = app.add_subcommand("transpile", "Rewrite a circuit into a native basis");
  std::string trans_file, trans_basis = "ecr", trans_coupling, trans_coupling_file, trans_out;
  trans_cmd->add_option("file", trans_file, "Input circuit (.qc, - for stdin)")->required();
  trans_cmd->add_option("--basis", trans_basis, "Entangling gate (ecr or cx)")
      ->check(CLI::IsMember(std::vector<std::string>{"ecr", "cx"}));
  trans_cmd->add_option("--coupling", trans_coupling, "Coupling map family, e.g. linear:3");
  trans_cmd->add_option("--coupling-file", trans_coupling_file, "Coupling map JSON file");
  trans_cmd->add_option("--out", trans_out, "Output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check equivalence up to global phase");
  std::string verify_file, verify_against;
  double verify_tol = 1e-10;
  verify_cmd->add_option("file", verify_file, "Input circuit")->required();
  verify_cmd->add_option("--against", verify_against, "ccx, ccz, or a circuit file")->required();
  verify_cmd->add_option("--tol", verify_tol, "Equivalence tolerance");

  auto* stats_cmd = app.add_subcommand("stats", "Print depth and gate counts");
  std::string stats_file = "-";
  stats_cmd->add_option("file", stats_file, "Input circuit (default stdin)");

  auto* pulse_cmd = app.add_subcommand("pulse", "Echoed cross-resonance error report");
  std::string pulse_coeffs;
  double pulse_time = 0, pulse_tmax = 0;
  bool pulse_json = false;
  pulse_cmd->add_option("--coeffs", pulse_coeffs, "Pauli coefficient JSON file")->required();
  pulse_cmd->add_option("--time", pulse_time, "Gate duration")->required();
  auto* cal_opt = pulse_cmd->add_option("--calibrate", pulse_tmax, "Scan (0, T_MAX] for the best duration");
  pulse_cmd->add_flag("--json", pulse_json, "Emit JSON instead of text");

  auto* inv_cmd = app.add_subcommand("invariants", "Print Makhlin invariants");
  std::string inv_file, inv_gate;
  inv_cmd->add_option("file", inv_file, "Two-qubit circuit file");
  inv_cmd->add_option("--gate", inv_gate, "Registry gate name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "usage error; run with --help for details\n";
    return kExitUsage;
  }

  try {
    if (emit_cmd->parsed()) return run_emit(emit_target, emit_out);
    if (trans_cmd->parsed())
      return run_transpile(trans_file, trans_basis, trans_coupling, trans_coupling_file,
                           trans_out);
    if (verify_cmd->parsed()) return run_verify(verify_file, verify_against, verify_tol);
    if (stats_cmd->parsed()) return run_stats(stats_file);
    if (pulse_cmd->parsed())
      return run_pulse(pulse_coeffs, pulse_time, cal_opt->count() > 0, pulse_tmax,
                       pulse_json);
    if (inv_cmd->parsed()) {
      if (inv_file.empty() == inv_gate.empty()) {
        std::cerr << "invariants: pass exactly one of FILE or --gate\n";
        return kExitUsage;
      }
      return run_invariants(inv_file, inv_gate);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ecrkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
