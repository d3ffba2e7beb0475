#include <gtest/gtest.h>

#include <json.hpp>

#include "cli_support.hpp"
#include "colormatch/colormatch.hpp"

using cmtest::run_cli;
using cmtest::ScratchDir;
using cmtest::slurp;
using cmtest::spit;
using nlohmann::json;

namespace {

const char* kGap = "2 2\n1 1 1\n1 2 2\n2 1 2\n2 2 1\n";
const char* kSwap = "2 2\n1 1 1\n1 2 2\n2 1 2\n2 2 2\n";

}  // namespace

TEST(Cli, GenIsDeterministicAndParses) {
  ScratchDir dir("cm_cli_gen");
  const auto a = run_cli("gen --n 40 --q 3 --seed 5");
  const auto b = run_cli("gen --n 40 --q 3 --seed 5");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto g = colormatch::deserialize(a.out);
  EXPECT_EQ(g.n(), 40);
  EXPECT_EQ(g.q(), 3);
  EXPECT_EQ(g, colormatch::generate(40, colormatch::edge_probability(40, colormatch::default_omega(40)),
                                    colormatch::ColorLaw::uniform(3), 5));
  EXPECT_EQ(run_cli("gen --n 40 --q 3 --seed 5 --out " + dir.file("g.txt")).exit_code, 0);
  EXPECT_EQ(slurp(dir.file("g.txt")), a.out);
  EXPECT_NE(run_cli("gen --n 40 --q 3 --seed 6").out, a.out);
}

TEST(Cli, ExitCodes) {
  ScratchDir dir("cm_cli_exit");
  EXPECT_EQ(run_cli("gen --n 2 --omega 5").exit_code, 3);
  EXPECT_EQ(run_cli("gen --n 20 --p 1.5").exit_code, 3);
  EXPECT_EQ(run_cli("gen --n 10 --alpha 0.5,0.6").exit_code, 2);
  EXPECT_EQ(run_cli("gen --bogus").exit_code, 2);
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("mcp --graph " + dir.file("missing.txt")).exit_code, 2);
  spit(dir.file("bad.txt"), "2 2\n1 1 3\n");
  EXPECT_EQ(run_cli("match --graph " + dir.file("bad.txt")).exit_code, 2);
  EXPECT_EQ(run_cli("check-fullcube --n 500 --alpha 0.001,0.999 --trials 1").exit_code, 3);
  EXPECT_EQ(run_cli("demo-theorem --n 100 --target 100,0 --trials 1").exit_code, 2);
  EXPECT_EQ(run_cli("gen --n 10 --format xml").exit_code, 2);
}

TEST(Cli, MatchAndValidate) {
  ScratchDir dir("cm_cli_match");
  spit(dir.file("g.txt"), kSwap);
  const auto r = run_cli("match --graph " + dir.file("g.txt") + " --matching-out " + dir.file("m.txt"));
  ASSERT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["size"], 2);
  EXPECT_EQ(j["perfect"], true);
  EXPECT_EQ(run_cli("match --graph " + dir.file("g.txt") + " --validate " + dir.file("m.txt")).exit_code, 0);
  spit(dir.file("bad_m.txt"), "1 1\n2 1\n");
  EXPECT_EQ(run_cli("match --graph " + dir.file("g.txt") + " --validate " + dir.file("bad_m.txt")).exit_code, 2);
  spit(dir.file("g2.txt"), "2 1\n1 1 1\n2 2 1\n");
  spit(dir.file("cross.txt"), "1 2\n2 1\n");
  const auto bad = run_cli("match --graph " + dir.file("g2.txt") + " --validate " + dir.file("cross.txt"));
  EXPECT_EQ(bad.exit_code, 4);
  EXPECT_EQ(json::parse(bad.out)["valid"], false);
  const auto csv = run_cli("match --graph " + dir.file("g.txt") + " --format csv");
  EXPECT_EQ(csv.out, "n,size,perfect,profile\n2,2,true,1;1\n");
}

TEST(Cli, McpOnGapInstance) {
  ScratchDir dir("cm_cli_mcp");
  spit(dir.file("gap.txt"), kGap);
  for (const char* method : {"dp", "brute"}) {
    const auto r = run_cli(std::string("mcp --method ") + method + " --graph " + dir.file("gap.txt") +
                           " --contains 1,1");
    ASSERT_EQ(r.exit_code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["profiles"], json::parse("[[0,2],[2,0]]"));
    EXPECT_EQ(j["contains"]["member"], false);
  }
  const json hit = json::parse(run_cli("mcp --graph " + dir.file("gap.txt") + " --contains 2,0").out);
  EXPECT_EQ(hit["contains"]["witness"], json::parse("[[1,1],[2,2]]"));
  const json gen = json::parse(run_cli("mcp --n 6 --q 2 --p 0.7 --seed 3").out);
  EXPECT_EQ(gen["seed"], 3);
  EXPECT_EQ(run_cli("mcp --n 11 --q 2 --p 0.5 --method brute").exit_code, 2);
}

TEST(Cli, RecolorSuccessAndStructuredFailure) {
  ScratchDir dir("cm_cli_recolor");
  spit(dir.file("swap.txt"), kSwap);
  spit(dir.file("gap.txt"), kGap);
  spit(dir.file("diag.txt"), "1 1\n2 2\n");
  const auto ok = run_cli("recolor --graph " + dir.file("swap.txt") + " --matching " + dir.file("diag.txt") +
                          " --target 0,2");
  ASSERT_EQ(ok.exit_code, 0);
  const json j = json::parse(ok.out);
  EXPECT_EQ(j["success"], true);
  EXPECT_EQ(j["step_count"], 1);
  EXPECT_EQ(j["trajectory"], json::parse("[[1,1],[0,2]]"));
  const auto fail = run_cli("recolor --graph " + dir.file("gap.txt") + " --matching " + dir.file("diag.txt") +
                            " --target 0,2");
  EXPECT_EQ(fail.exit_code, 4);
  const json f = json::parse(fail.out);
  EXPECT_EQ(f["success"], false);
  EXPECT_EQ(f["failure"]["reached"], json::parse("[2,0]"));
  EXPECT_EQ(run_cli("recolor --graph " + dir.file("gap.txt") + " --target 1,2").exit_code, 2);
}

TEST(Cli, TraceAndAudit) {
  ScratchDir dir("cm_cli_trace");
  const std::string g = dir.file("g.txt");
  ASSERT_EQ(run_cli("gen --n 300 --q 2 --seed 4 --out " + g).exit_code, 0);
  const auto graph = colormatch::deserialize(slurp(g));
  const auto m = colormatch::maximum_matching(graph);
  ASSERT_TRUE(colormatch::is_perfect(graph, m));
  int a0 = -1;
  for (int a = 0; a < graph.n() && a0 < 0; ++a) {
    if (*graph.color_of(a, m.mate_of_a(a)) == 1) a0 = a + 1;
  }
  const auto t = run_cli("trace --graph " + g + " --src 1 --dst 2 --beta 0.3 --a0 " + std::to_string(a0));
  ASSERT_EQ(t.exit_code, 0);
  const json tj = json::parse(t.out);
  EXPECT_EQ(tj["forward"]["start"], a0);
  EXPECT_TRUE(tj["constants"].contains("k0"));
  const auto a = run_cli("audit --graph " + g + " --condition a --color 1 --trials 50 --seed 2");
  ASSERT_EQ(a.exit_code, 0);
  const json aj = json::parse(a.out);
  EXPECT_EQ(aj["condition"], "a");
  EXPECT_EQ(aj["evaluated"], 50);
  EXPECT_EQ(run_cli("audit --graph " + g + " --condition z").exit_code, 2);
  EXPECT_EQ(run_cli("audit --graph " + g + " --condition a --trials 0").exit_code, 2);
}

TEST(Cli, ExperimentsAndSweepMirror) {
  ScratchDir dir("cm_cli_exp");
  const auto demo = run_cli("demo-theorem --n 200 --target 100,100 --trials 3 --seed 1");
  ASSERT_EQ(demo.exit_code, 0);
  EXPECT_EQ(json::parse(demo.out)["trials"], 3);
  const auto demo_csv = run_cli("demo-theorem --n 200 --target 100,100 --trials 3 --seed 1 --format csv");
  EXPECT_EQ(demo_csv.out.rfind("n,omega,p,beta,target,trials,pm_freq,success_given_pm,mean_steps\n", 0), 0u);
  const auto iso = run_cli("check-isolated --n 300 --trials 5 --format csv");
  EXPECT_EQ(iso.out.rfind("n,omega,trials,isolated_count,frequency\n", 0), 0u);
  const json cube = json::parse(run_cli("check-fullcube --n 200 --trials 3").out);
  EXPECT_EQ(cube["mono_pm_freq"].size(), 2u);

  const std::string base = dir.file("sweep.csv");
  ASSERT_EQ(run_cli("sweep --n 60,80 --density 1.0,w:lnln --targets balanced,beta-corner --trials 2 --format csv "
                    "--out " + base).exit_code,
            0);
  const std::string csv = slurp(base);
  const json mirror = json::parse(slurp(base + ".json"));
  EXPECT_EQ(csv.rfind("# colormatch-sweep-v1\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + 8);
  EXPECT_EQ(mirror["rows"].size(), 8u);
  EXPECT_EQ(mirror["schema"], "colormatch-sweep-v1");
}
