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

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>

namespace {

const std::string kCli = ECRKIT_CLI_PATH;
const std::string kRepoDir = ECRKIT_REPO_DIR;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  const std::string out_path = "cli_test_stdout.txt";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2> cli_test_stderr.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.stdout_text = slurp(out_path);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("cli emit and stats agree on the nine-ecr circuit", "[cli]") {
  const RunResult emitted = run("emit --target toffoli-ecr9 --out cli_test_ecr9.qc");
  REQUIRE(emitted.exit_code == 0);
  const RunResult stats = run("stats cli_test_ecr9.qc");
  REQUIRE(stats.exit_code == 0);
  CHECK(stats.stdout_text.find("count.ecr     9") != std::string::npos);
  CHECK(stats.stdout_text.find("two_qubit     9") != std::string::npos);
}

TEST_CASE("cli verify exit codes match the outcome", "[cli]") {
  const std::string ccz = kRepoDir + "/circuits/ccz_linear8.qc";
  const std::string nc = kRepoDir + "/circuits/toffoli_6cnot_nc.qc";

  const RunResult pass = run("verify " + ccz + " --against ccz");
  CHECK(pass.exit_code == 0);
  CHECK(pass.stdout_text.rfind("PASS", 0) == 0);

  const RunResult fail = run("verify " + nc + " --against ccz");
  CHECK(fail.exit_code == 1);
  CHECK(fail.stdout_text.rfind("FAIL", 0) == 0);

  const RunResult pass2 = run("verify " + nc + " --against ccx");
  CHECK(pass2.exit_code == 0);

  // Circuit-vs-circuit comparison.
  const RunResult pair = run("verify " + nc + " --against " + kRepoDir +
                             "/circuits/toffoli_6cnot_ibm.qc");
  CHECK(pair.exit_code == 0);
}

TEST_CASE("cli transpile rewrites into the ecr basis", "[cli]") {
  const RunResult r = run("transpile " + kRepoDir +
                          "/circuits/ccz_linear8.qc --basis ecr --coupling linear:3 "
                          "--out cli_test_ccz_ecr.qc");
  REQUIRE(r.exit_code == 0);
  const RunResult check = run("verify cli_test_ccz_ecr.qc --against ccz");
  CHECK(check.exit_code == 0);
  const RunResult stats = run("stats cli_test_ccz_ecr.qc");
  CHECK(stats.stdout_text.find("count.ecr     8") != std::string::npos);

  // The 6-CNOT form needs the 0-2 edge, so a line rejects it.
  const RunResult bad = run("transpile " + kRepoDir +
                            "/circuits/toffoli_6cnot_nc.qc --basis ecr --coupling linear:3");
  CHECK(bad.exit_code == 1);

  // A coupling file with the extra edge accepts the same circuit.
  write_file("cli_test_triangle.json",
             R"({"n_qubits": 3, "edges": [[0,1],[1,2],[0,2]]})");
  const RunResult tri = run("transpile " + kRepoDir +
                            "/circuits/toffoli_6cnot_nc.qc --basis ecr "
                            "--coupling-file cli_test_triangle.json --out cli_test_nc_ecr.qc");
  CHECK(tri.exit_code == 0);
  CHECK(run("verify cli_test_nc_ecr.qc --against ccx").exit_code == 0);
}

TEST_CASE("cli stats reads a pipe from emit", "[cli]") {
  const std::string cmd = kCli + " emit --target toffoli-ecr9 | " + kCli +
                          " stats > cli_test_pipe.txt 2>/dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string text = slurp("cli_test_pipe.txt");
  CHECK(text.find("count.ecr     9") != std::string::npos);
}

TEST_CASE("cli usage and input errors are distinguished", "[cli]") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("emit --target no-such-circuit").exit_code == 2);
  CHECK(run("verify").exit_code == 2);
  CHECK(run("verify missing_file.qc --against ccx").exit_code == 3);

  write_file("cli_test_bad.qc", "qubits 2\nwat 0\n");
  CHECK(run("verify cli_test_bad.qc --against ccx").exit_code == 3);
  CHECK(run("stats cli_test_bad.qc").exit_code == 3);
}

TEST_CASE("cli pulse prints text and json reports", "[cli]") {
  write_file("cli_test_coeffs.json",
             R"({"l_ix": 0.0, "l_zi": 0.0, "l_iz": 0.0, "l_zz": 0.0, "l_zx": 2.0})");
  const RunResult text = run("pulse --coeffs cli_test_coeffs.json --time 0.3926990816987241");
  REQUIRE(text.exit_code == 0);
  CHECK(text.stdout_text.find("fidelity_zx90 1") != std::string::npos);

  const RunResult json = run(
      "pulse --coeffs cli_test_coeffs.json --time 0.3926990816987241 "
      "--calibrate 1.5707963267948966 --json");
  REQUIRE(json.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(json.stdout_text);
  CHECK(std::abs(j.at("fidelity_zx90").get<double>() - 1.0) <= 1e-10);
  CHECK(std::abs(j.at("calibration").at("t_star").get<double>() - M_PI / 8) <= 1e-5);

  write_file("cli_test_bad_coeffs.json", R"({"l_ix": 0.0})");
  CHECK(run("pulse --coeffs cli_test_bad_coeffs.json --time 0.1").exit_code == 3);
}

TEST_CASE("cli invariants identifies ecr as cnot-equivalent", "[cli]") {
  const RunResult ecr = run("invariants --gate ecr");
  REQUIRE(ecr.exit_code == 0);
  const RunResult cx = run("invariants --gate cx");
  REQUIRE(cx.exit_code == 0);
  CHECK(ecr.stdout_text == cx.stdout_text);

  write_file("cli_test_bell.qc", "qubits 2\nh 0\ncx 0 1\n");
  CHECK(run("invariants cli_test_bell.qc").exit_code == 0);
  CHECK(run("invariants").exit_code == 2);
  CHECK(run("invariants cli_test_bell.qc --gate ecr").exit_code == 2);
}
