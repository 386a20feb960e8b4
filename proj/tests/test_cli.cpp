// Copyright 2026 The rmtq authors
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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rmtq/cli.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / ("rmtq_cli_out_" + std::to_string(++counter));
  const auto err = dir / ("rmtq_cli_err_" + std::to_string(counter));
  const std::string cmd = std::string(RMTQ_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s)
    if (ch == '\n') ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("wg emits the exact rational") {
  const RunResult r = run_cli("wg --n 5 --cycle-type 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("-1/120") != std::string::npos);
  CHECK(r.out.find("wg_exact") != std::string::npos);  // header row
}

TEST_CASE("sample runs are byte-identical for a fixed seed") {
  const std::string args = "sample --ensemble induced --d 3 --s 4 --trials 2 --seed 1";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(!first.out.empty());
  // 2 trials x 9 entries + header
  CHECK(count_lines(first.out) == 19);
}

TEST_CASE("missing seed is a usage error with exit code 2") {
  const RunResult r = run_cli("sample --ensemble induced --d 3 --s 4");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--seed") != std::string::npos);
}

TEST_CASE("unknown commands and flags are usage errors") {
  CHECK(run_cli("frobnicate --x 1").exit_code == 2);
  CHECK(run_cli("wg --n 5 --cycle-type 2 --bogus 7").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("guard violations exit with code 1 and a one-line diagnostic") {
  // n < p puts the Weingarten table in the unsupported pseudo-inverse regime
  const RunResult r = run_cli("wg --n 2 --cycle-type 3");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(count_lines(r.err) == 1);
}

TEST_CASE("threshold emits the 9-column curve schema") {
  const RunResult r = run_cli(
      "threshold --criterion ppt --regime balanced --n 4 --k 4 --c 1,8 "
      "--trials 4 --seed 11 --threads 2");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "criterion,regime,n,k,c,s,trials,pass_fraction,seed");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == 8);
  }
  CHECK(rows == 2);
}

TEST_CASE("json-lines records round trip and replay bitwise") {
  const std::string args =
      "criteria --criterion ppt --n 2 --k 2 --s 8 --trials 2 --seed 5 "
      "--format jsonl";
  const RunResult first = run_cli(args);
  CHECK(first.exit_code == 0);

  std::istringstream lines(first.out);
  std::string line;
  std::string echoed_config;
  int records = 0;
  while (std::getline(lines, line)) {
    ++records;
    const auto record = nlohmann::ordered_json::parse(line);  // round trip
    CHECK(record.contains("config"));
    CHECK(record.contains("version"));
    CHECK(record.contains("seed"));
    CHECK(record.contains("margin"));
    CHECK(record.contains("wall_time_ms"));
    CHECK(nlohmann::ordered_json::parse(record.dump()) == record);
    echoed_config = record["config"].get<std::string>();
  }
  CHECK(records == 2);

  // re-executing the echoed config reproduces every field except wall time
  const RunResult replay = run_cli(echoed_config);
  CHECK(replay.exit_code == 0);
  std::istringstream a(first.out), b(replay.out);
  std::string la, lb;
  while (std::getline(a, la) && std::getline(b, lb)) {
    auto ja = nlohmann::ordered_json::parse(la);
    auto jb = nlohmann::ordered_json::parse(lb);
    ja.erase("wall_time_ms");
    jb.erase("wall_time_ms");
    CHECK(ja == jb);
  }
}

TEST_CASE("csv output goes to --out files verbatim") {
  const auto path = std::filesystem::temp_directory_path() / "rmtq_cli_file.csv";
  const std::string args = "wick --dim 1 --indices 1,1,1,1 --out " + path.string();
  CHECK(run_cli(args).exit_code == 0);
  const std::string content = slurp(path);
  CHECK(content.find("indices,order,value") == 0);
  CHECK(content.find("3") != std::string::npos);  // E[x^4] = 3
  std::filesystem::remove(path);
}

TEST_CASE("empty trial lists still emit the CSV header") {
  const RunResult r = run_cli(
      "sample --ensemble induced --d 2 --s 2 --trials 0 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "trial,row,col,re,im\n");
}

TEST_CASE("list names every registered command") {
  const RunResult r = run_cli("list");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("threshold") != std::string::npos);
  CHECK(r.out.find("wg") != std::string::npos);
  // every catalog entry is a live subcommand with working --help
  for (const auto& [name, description] : rmtq::command_catalog()) {
    CHECK(r.out.find(name + " - ") != std::string::npos);
    if (name == "list") continue;
    const RunResult help = run_cli(name + " --help");
    CHECK(help.exit_code == 0);
    CHECK(!help.out.empty());
  }
}

TEST_CASE("channel export and bell output work end to end") {
  const auto path = std::filesystem::temp_directory_path() / "rmtq_cli_chan.bin";
  const RunResult exp = run_cli("channel --n 2 --k 2 --d 3 --seed 9 --export " +
                                path.string());
  CHECK(exp.exit_code == 0);
  const RunResult bell =
      run_cli("channel --import " + path.string() + " --bell-output");
  CHECK(bell.exit_code == 0);
  CHECK(count_lines(bell.out) == 5);  // header + k^2 = 4 eigenvalues
  std::filesystem::remove(path);

  const RunResult moe = run_cli(
      "channel --n 4 --k 2 --d 4 --seed 9 --moe 1 --restarts 2 --iterations 10");
  CHECK(moe.exit_code == 0);
  CHECK(moe.out.find("moe_upper_bound") != std::string::npos);
}

}  // TEST_SUITE
