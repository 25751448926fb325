// Copyright 2026 The avgent Authors
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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "avgent/cli.hpp"
#include "avgent/error.hpp"

using namespace avgent;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("grid and list parsing") {
  const auto g = cli::parse_grid("0:1:101");
  CHECK(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[50] == doctest::Approx(0.5));
  CHECK(cli::parse_grid("0.3:0.3:1") == std::vector<double>{0.3});
  CHECK_THROWS_AS(cli::parse_grid("1:0:5"), ArgumentError);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), ArgumentError);
  CHECK_THROWS_AS(cli::parse_grid("0:1"), ArgumentError);
  CHECK(cli::split_list("2,3,,4") == std::vector<std::string>{"2", "3", "4"});
}

TEST_CASE("qtable reports the maximum and its location") {
  const Run r = run({"qtable", "--family", "depolarizing", "--lambda", "0.9", "-r", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("q_max 11.71352") != std::string::npos);
  CHECK(r.out.find("(1 2 3 4)") != std::string::npos);
  const Run low = run({"qtable", "--family", "depolarizing", "--lambda", "0.2", "-r", "3"});
  CHECK(low.out.find("q_max 2\n") != std::string::npos);
  CHECK(low.out.find("argmax ()\n") != std::string::npos);
  CHECK(low.out.find("unique true") != std::string::npos);
}

TEST_CASE("qtable from a spec file writes JSON") {
  const std::string spec = "cli_test_channel.json";
  const std::string out = "cli_test_qtable.json";
  {
    std::ofstream f(spec);
    f << R"({"kraus":[[[0.8,0],[0,0.6]],[[0,0.6],[0,0]],[[0,0],[0,0.53851648071345]]]})";
  }
  // Column norms: 0.64 = 0.64, 0.36 + 0.36 + 0.29 = 1.01 -> not trace preserving.
  const Run bad = run({"qtable", "--spec", spec, "-r", "2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("trace preservation") != std::string::npos);
  {
    std::ofstream f(spec);
    f << R"({"kraus":[[[1,0],[0,0.6]],[[0,0.8],[0,0]]]})";
  }
  const Run ok = run({"qtable", "--spec", spec, "-r", "2", "-o", out});
  CHECK(ok.code == 0);
  std::ifstream in(out);
  const nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["entries"].size() == 2);
  CHECK(j["entries"].contains("()"));
  CHECK(j["entries"].contains("(1 2)"));
  CHECK(j["N"].get<int>() >= 1);
  std::remove(spec.c_str());
  std::remove(out.c_str());
}

TEST_CASE("beta-reg prints the value and the plain-limit flag") {
  const Run r = run({"beta-reg", "--family", "depolarizing", "--lambda", "0.8", "-r", "2"});
  CHECK(r.code == 0);
  std::ostringstream expected;
  expected.precision(12);
  expected << "beta_reg " << 2 - std::log2(2.92);
  CHECK(r.out.find(expected.str()) != std::string::npos);
  CHECK(r.out.find("limit_is_plain true") != std::string::npos);
  const Run j = run({"beta-reg", "--family", "two_rail", "--lambda", "0.5", "--kappa", "0.1",
                     "-r", "3", "-n", "4", "--format", "json"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["beta_reg"].get<double>() > 0.0);
  CHECK(doc["moment"].get<double>() > 0.0);
}

TEST_CASE("scan writes the documented CSV") {
  const Run r = run({"scan", "--family", "depolarizing", "-r", "2,inf", "--grid", "0:1:101"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1 + 2 * 101);
  CHECK(rows[0] == std::vector<std::string>{"lambda", "r", "q_id", "q_full_cycle", "q_max",
                                            "beta_reg", "s_bar_estimate", "in_validity_range"});
  for (std::size_t k = 1; k <= 101; ++k) {
    const double lambda = std::stod(rows[k][0]);
    const double beta = std::stod(rows[k][5]);
    const double expected = lambda <= 1 / std::sqrt(3.0) ? 1.0 : 2 - std::log2(1 + 3 * lambda * lambda);
    CHECK(beta == doctest::Approx(expected).epsilon(1e-11));
    CHECK(rows[k][1] == "2");
    CHECK(rows[k][6].empty());
  }
  CHECK(rows[102][1] == "inf");
  CHECK(std::stod(rows[202][5]) == doctest::Approx(0.0).epsilon(1e-12));
  const Run mc = run({"scan", "--family", "depolarizing", "-r", "2", "--grid", "0.5:0.5:1",
                      "-n", "2", "--samples", "200", "--seed", "1"});
  CHECK(!csv_rows(mc.out)[1][6].empty());
  CHECK(run({"scan", "--family", "bloch", "-r", "2"}).code == 2);
}

TEST_CASE("validity-table reproduces the published values") {
  const Run r = run({"validity-table", "-r", "2,3,4,10,100"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"r", "c_r", "d_r"});
  const double expected[5][2] = {{0.577, 0.732}, {0.5, 0.835}, {0.458, 0.878}, {0.381, 0.953}, {0.338, 0.995}};
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(std::stod(rows[k + 1][1]) - expected[k][0]) <= 0.001);
    CHECK(std::abs(std::stod(rows[k + 1][2]) - expected[k][1]) <= 0.001);
  }
  CHECK(csv_rows(run({"validity-table"}).out).size() == 6);
}

TEST_CASE("mc emits estimates with an exact comparison") {
  const std::vector<std::string> args{"mc", "--family", "depolarizing", "--lambda", "0.5", "-n", "2",
                                      "-r", "2", "--samples", "20000", "--seed", "7"};
  const Run r = run(args);
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["estimates"].size() == 3);
  const auto& m = doc["estimates"][0];
  CHECK(m["quantity"] == "raw_moment");
  CHECK(m["seed"] == 7);
  CHECK(m["fingerprint"].get<std::string>().size() == 16);
  CHECK(std::abs(m["mean"].get<double>() - doc["comparison"]["exact_moment"].get<double>()) <=
        4 * m["stderr"].get<double>());
  CHECK(run(args).out == r.out);
  const Run frac = run({"mc", "--family", "depolarizing", "--lambda", "0.5", "-r", "1.5",
                        "--samples", "100", "--quantity", "entropy"});
  const auto fdoc = nlohmann::json::parse(frac.out);
  CHECK(fdoc["estimates"].size() == 1);
  CHECK_FALSE(fdoc.contains("comparison"));
}

TEST_CASE("sequence and concentration subcommands") {
  const Run s = run({"sequence", "--family", "depolarizing", "--lambda", "0.2", "-r", "2",
                     "--n-max", "4", "--seed", "1"});
  CHECK(s.code == 0);
  CHECK(csv_rows(s.out).size() == 5);
  CHECK(s.out.find("limit_proved") != std::string::npos);
  const Run c = run({"concentration", "--family", "depolarizing", "--lambda", "0.9", "-r", "2", "-n", "4"});
  CHECK(c.code == 0);
  CHECK(csv_rows(c.out).size() == 5);
}

TEST_CASE("exit codes for bad input and resource limits") {
  CHECK(run({}).code == 2);
  CHECK(run({"qtable", "--family", "depolarizing", "--lambda", "1.5", "-r", "2"}).code == 2);
  CHECK(run({"qtable", "--family", "depolarizing", "-r", "2"}).code == 2);
  CHECK(run({"qtable", "--lambda", "0.5", "-r", "2"}).code == 2);
  CHECK(run({"qtable", "--family", "depolarizing", "--lambda", "0.5", "-r", "x"}).code == 2);
  CHECK(run({"qtable", "--family", "depolarizing", "--lambda", "0.5", "-r", "9"}).code == 3);
  CHECK(run({"mc", "--family", "depolarizing", "--lambda", "0.5", "-n", "13"}).code == 3);
  CHECK(run({"qtable", "--spec", "/nonexistent.json", "-r", "2"}).code == 2);
  CHECK(run({"validity-table", "-r", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
