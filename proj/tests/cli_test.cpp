// Copyright 2026 The rankone Authors. All Rights Reserved.
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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rankone/cli.hpp"
#include "rankone/rankone.hpp"
#include "support.hpp"

namespace rankone {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::fixture_path;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("rankone_cli_" + std::to_string(std::random_device{}()) + "_" +
             std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

TEST(CliAnalyze, Table3Both) {
  auto r = run_cli({"analyze", fixture_path("table3.slices"), "--field", "both"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(contains(r.out, "condition (A): true"));
  EXPECT_TRUE(contains(r.out, "unknowns: 7, rank: 7, dof: 0"));
  EXPECT_TRUE(contains(r.out, "real count: 1\n"));
  EXPECT_TRUE(contains(r.out, "complex count: 3\n"));
  EXPECT_TRUE(contains(r.out, "elementary divisors: 1 1 1 1 1 1 3"));
}

TEST(CliAnalyze, Table4Json) {
  auto r = run_cli({"analyze", fixture_path("table4.slices"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["real"]["count"], 0);
  EXPECT_EQ(j["real"]["status"], "no_solution_sign");
  EXPECT_EQ(j["complex"]["count"], 2);
  EXPECT_EQ(j["pattern"]["condition_a"], true);
  EXPECT_TRUE(j["fit"].is_null());
  for (const char* key : {"pattern", "real", "complex", "fit", "provenance"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j.size(), 5u);
}

TEST(CliAnalyze, FieldSelection) {
  auto real = json::parse(run_cli({"analyze", fixture_path("table1.slices"), "--json", "--field", "real"}).out);
  EXPECT_EQ(real["real"]["count"], 1);
  EXPECT_TRUE(real["complex"].is_null());
  auto complex = json::parse(run_cli({"analyze", fixture_path("table1.slices"), "--json", "--field", "complex"}).out);
  EXPECT_TRUE(complex["real"].is_null());
  EXPECT_EQ(complex["complex"]["count"], 1);
}

TEST(CliAnalyze, DegenerateCountsAreInfinite) {
  TempDir dir;
  auto path = dir.write("dof.slices", "1 * * | * * *\n* * * | * * *\n");
  auto r = run_cli({"analyze", path, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["pattern"]["condition_a"], false);
  EXPECT_EQ(j["pattern"]["dof"], 4);
  EXPECT_EQ(j["real"]["count"], "infinite");
  EXPECT_EQ(j["complex"]["count"], "infinite");
}

TEST(CliAnalyze, ByteIdenticalReports) {
  for (const char* name : {"table1.slices", "table3.slices", "table4.json", "table5.slices"}) {
    auto a = run_cli({"analyze", fixture_path(name), "--json"});
    auto b = run_cli({"analyze", fixture_path(name), "--json"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << name;
    // Key-sorted: re-dumping the parsed document reproduces it.
    EXPECT_EQ(json::parse(a.out).dump(2) + "\n", a.out) << name;
  }
  auto f1 = run_cli({"fit", fixture_path("table5.slices"), "--json"});
  auto f2 = run_cli({"fit", fixture_path("table5.slices"), "--json"});
  EXPECT_EQ(f1.out, f2.out);
}

TEST(CliAnalyze, ParseErrors) {
  auto empty = run_cli({"analyze", fixture_path("empty.slices")});
  EXPECT_EQ(empty.code, cli::kExitParse);
  EXPECT_TRUE(contains(empty.err, "EmptyPattern"));

  TempDir dir;
  auto bad = run_cli({"analyze", dir.write("bad.slices", "1 1 | 1 1\n1 abc | 1 1\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(contains(bad.err, "line 2"));
  EXPECT_TRUE(contains(bad.err, "(2,2,1)"));
  EXPECT_TRUE(contains(bad.err, "abc"));

  auto ragged = run_cli({"analyze", dir.write("rag.slices", "1 1 | 1 1\n1 1 | 1\n")});
  EXPECT_EQ(ragged.code, 2);
  EXPECT_TRUE(contains(ragged.err, "RaggedRows"));

  auto zero = run_cli({"analyze", dir.write("zero.json",
                                            R"({"dims":[2,2],"entries":[{"index":[1,3],"mag":"1","phase_turns":"0"}]})")});
  EXPECT_EQ(zero.code, 2);
  EXPECT_TRUE(contains(zero.err, "IndexOutOfRange"));
  EXPECT_TRUE(contains(zero.err, "(1,3)"));

  EXPECT_EQ(run_cli({"analyze", dir.file("missing.slices")}).code, 2);
  EXPECT_EQ(run_cli({"analyze"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"analyze", fixture_path("table1.slices"), "--field", "quaternion"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(CliSolve, Table1AllOnes) {
  auto r = run_cli({"solve", fixture_path("table1.slices")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "solutions: 1\n"));
  EXPECT_TRUE(contains(r.out, "  a = (1, 1, 1)\n  b = (1, 1, 1)\n  c = (1, 1, 1)\n"));
}

TEST(CliSolve, Table2Real) {
  auto r = run_cli({"solve", fixture_path("table2.slices"), "--field", "real"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "field: real\nsolutions: 2\n"
            "solution 1:\n  a = (1, 1, 1)\n  b = (1, 1, 1)\n  c = (1, 1, 1)\n"
            "solution 2:\n  a = (1, 1, -1)\n  b = (1, 1, -1)\n  c = (1, 1, -1)\n");
}

TEST(CliSolve, NoSolution) {
  auto r = run_cli({"solve", fixture_path("table4.slices"), "--field", "real"});
  EXPECT_EQ(r.code, cli::kExitNoSolution);
  EXPECT_TRUE(contains(r.err, "no real rank-one completion"));
  EXPECT_TRUE(contains(r.err, "sign"));

  TempDir dir;
  auto mag = run_cli({"solve", dir.write("mag.slices", "1 2\n3 7\n"), "--field", "real"});
  EXPECT_EQ(mag.code, 3);
  EXPECT_TRUE(contains(mag.err, "magnitude"));

  auto phase = run_cli({"solve", dir.write("phase.slices", "1 1\n1 1@1/3\n")});
  EXPECT_EQ(phase.code, 3);
  EXPECT_TRUE(contains(phase.err, "no complex rank-one completion"));
  EXPECT_TRUE(contains(phase.err, "phase"));
}

TEST(CliSolve, ComplexNotationAndLimit) {
  auto r = run_cli({"solve", fixture_path("table3.slices"), "--limit", "1", "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "solutions: 3\n"));
  EXPECT_FALSE(contains(r.out, "solution 2:"));
  EXPECT_TRUE(contains(r.out, "(2 more not shown)"));
  EXPECT_TRUE(contains(r.out, "|a| = (1, |Q(1,1,1)|^(-1)"));

  auto all = run_cli({"solve", fixture_path("table3.slices")});
  EXPECT_TRUE(contains(all.out, "e^{2πi·1/3}"));
  EXPECT_TRUE(contains(all.out, "e^{2πi·2/3}"));
  EXPECT_TRUE(contains(all.out, "solution 3:"));
  EXPECT_TRUE(contains(all.out, "turns = ("));
}

TEST(CliFit, Table5Full) {
  auto r = run_cli({"fit", fixture_path("table5.slices"), "--full"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "objective: "));
  const double table6[3][9] = {
      {1.0052, 1.0135, 1.0501, 0.8976, 0.9050, 0.9377, 0.9925, 1.0007, 1.0368},
      {0.9448, 0.9526, 0.9869, 0.8436, 0.8506, 0.8813, 0.9328, 0.9405, 0.9745},
      {0.9934, 1.0016, 1.0378, 0.8871, 0.8944, 0.9267, 0.9809, 0.9889, 1.0247},
  };
  auto pos = r.out.find("full tensor:\n");
  ASSERT_NE(pos, std::string::npos);
  std::istringstream grid(r.out.substr(pos + 13));
  for (const auto& row : table6) {
    std::string line;
    ASSERT_TRUE(std::getline(grid, line));
    std::istringstream cells(line);
    std::string tok;
    std::size_t c = 0;
    while (cells >> tok) {
      if (tok == "|") continue;
      ASSERT_LT(c, 9u);
      EXPECT_NEAR(std::stod(tok), row[c], 2e-3) << line;
      ++c;
    }
    EXPECT_EQ(c, 9u);
  }
}

TEST(CliFit, ExactDataAndPreconditions) {
  auto exact = json::parse(run_cli({"fit", fixture_path("table1.slices"), "--json"}).out);
  EXPECT_LE(exact["fit"]["objective"].get<double>(), 1e-20);

  TempDir dir;
  auto dof = run_cli({"fit", dir.write("dof.slices", "1 * * | * * *\n* * * | * * *\n")});
  EXPECT_EQ(dof.code, cli::kExitFitPrecondition);
  EXPECT_TRUE(contains(dof.err, "dof 4"));
  EXPECT_EQ(run_cli({"fit", fixture_path("table4.slices")}).code, 4);
}

TEST(CliGenerate, Table5Noisy) {
  TempDir dir;
  auto out = dir.file("noisy.json");
  auto r = run_cli({"generate", "--dims", "3,3,3", "--ones", "--pattern", "table5", "--amp", "0.2", "--seed", "7",
                    "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "true factors:"));
  auto t = read_tensor(out);
  EXPECT_EQ(t.mode(), ValueMode::Float);
  EXPECT_EQ(t.pattern(), testing::load_fixture("table5.slices").pattern());
  auto expected = generate_noisy(RankOneFactors::ones(std::vector<std::size_t>{3, 3, 3}), t.pattern(),
                                 NoiseSpec{0.2, 7});
  for (std::size_t e = 0; e < t.m(); ++e) EXPECT_EQ(t.magnitude(e), expected.magnitude(e));

  auto again = run_cli({"generate", "--dims", "3,3,3", "--ones", "--pattern", "table5", "--amp", "0.2", "--seed", "7"});
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(json::parse(again.out), json::parse(testing::read_file(out)));
}

TEST(CliGenerate, ExactAndInvalid) {
  auto exact = run_cli({"generate", "--dims", "2,3", "--factors", "1,2;1/2,3,5", "--pattern", "full", "--amp", "0"});
  ASSERT_EQ(exact.code, 0) << exact.err;
  auto j = json::parse(exact.out);
  EXPECT_EQ(j["entries"].size(), 6u);
  EXPECT_EQ(j["entries"][5]["mag"], "10");
  EXPECT_EQ(j["entries"][3]["mag"], "1");

  auto big = run_cli({"generate", "--dims", "3,3,3", "--ones", "--pattern", "table5", "--amp", "1.5"});
  EXPECT_EQ(big.code, 2);
  EXPECT_TRUE(contains(big.err, "InvalidSpec"));
  EXPECT_EQ(run_cli({"generate", "--dims", "3,3", "--ones", "--pattern", "table5"}).code, 2);
}

TEST(CliGenerate, RoundTripsThroughSolve) {
  TempDir dir;
  auto out = dir.file("planted.json");
  auto r = run_cli({"generate", "--dims", "3,3,3", "--factors", "1,2@1/3,3;1,1/2,5@1/2;7,1,2",
                    "--count", "12", "--seed", "3", "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto t = read_tensor(out);
  EXPECT_EQ(t.m(), 12u);
  EXPECT_EQ(t.mode(), ValueMode::Exact);
  auto s = run_cli({"solve", out});
  EXPECT_EQ(s.code, 0) << s.err;
}

TEST(CliOracle, Tables) {
  auto t3 = run_cli({"oracle", fixture_path("table3.slices")});
  EXPECT_EQ(t3.code, 0) << t3.err;
  EXPECT_TRUE(contains(t3.out, "MATCH: 3 complex solutions"));
  auto t1 = run_cli({"oracle", fixture_path("table1.slices")});
  EXPECT_EQ(t1.code, 0);
  EXPECT_TRUE(contains(t1.out, "MATCH: 1 solution"));
  auto t4 = run_cli({"oracle", fixture_path("table4.slices")});
  EXPECT_EQ(t4.code, 0) << t4.err;
  EXPECT_FALSE(contains(t4.out, "MISMATCH"));
}

TEST(CliOracle, CapExceeded) {
  std::string text;
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 6; ++k) text += (k ? " | 1" : "1");
    text += "\n";
  }
  TempDir dir;
  auto path = dir.write("big.slices", text);
  ASSERT_EQ(read_tensor(path).m(), 30u);
  auto r = run_cli({"oracle", path});
  EXPECT_EQ(r.code, cli::kExitCap);
  EXPECT_TRUE(contains(r.err, "CapExceeded"));
}

}  // namespace
}  // namespace rankone
