#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "support.hpp"

using namespace testing_support;

namespace {

struct Run {
  int code;
  std::string out;
};

// stdout only; stderr is discarded.
Run cli(const std::string& args) {
  std::string cmd = std::string(WEAKIRV_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(WEAKIRV_DATA_DIR) + "/" + name; }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("weakirv_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, TallySpoiler) {
  auto r = cli("tally --rule approval-irv " + data("spoiler.wvp"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "winners: a\n")) << r.out;
  EXPECT_EQ(r.out.rfind("# config: ", 0), 0u);
  EXPECT_TRUE(has(cli("tally --rule split-irv " + data("spoiler.wvp")).out, "winners: b\n"));
}

TEST(Cli, TraceNeedsTiebreak) {
  EXPECT_EQ(cli("tally --rule split-irv --trace " + data("spoiler.wvp")).code, 2);
  auto r = cli("tally --rule split-irv --trace --tiebreak lexicographic " + data("spoiler.wvp"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "a=5/6")) << r.out;
  EXPECT_TRUE(has(r.out, "trace winner: b"));
}

TEST(Cli, StvSpoiler) {
  auto r = cli("stv --rule approval-stv -k 1 --quota droop " + data("spoiler.wvp"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "elected: b (round 1, no eliminations)")) << r.out;
}

TEST(Cli, CloneCheckViolationExitsZero) {
  auto r = cli("check --axiom clones --rule split-irv --clones \"c,c'\" --keep c " + data("clones.wvp"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "verdict: violation")) << r.out;
  EXPECT_TRUE(has(r.out, "winners after collapse: a"));
  auto pass = cli("check --axiom clones --rule approval-irv --clones \"c,c'\" --keep c " + data("clones.wvp"));
  EXPECT_TRUE(has(pass.out, "verdict: pass"));
}

TEST(Cli, CohesiveAndPscChecks) {
  auto r = cli("check --axiom cohesive-majorities --rule split-irv " + data("cohesive.wvp"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "verdict: violation")) << r.out;
  auto g = cli("check --axiom gpsc --rule approval-stv -k 2 " + data("cohesive.wvp"));
  EXPECT_EQ(g.code, 0);
  EXPECT_TRUE(has(g.out, "verdict: pass")) << g.out;
}

TEST(Cli, JsonOutputParses) {
  auto r = cli("stv --rule split-stv -k 2 --quota hare --json " + data("cohesive.wvp"));
  ASSERT_EQ(r.code, 0);
  auto j = weakirv::Json::parse(r.out);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_EQ(j["config"]["seats"], "2");
  EXPECT_EQ(j["committee"].size(), 2u);
  EXPECT_TRUE(j["money_conserved"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("tally --rule nope " + data("spoiler.wvp")).code, 2);
  EXPECT_EQ(cli("tally --rule approval-irv /nonexistent/file.wvp").code, 1);
  auto bad = temp_file("bad.wvp", "candidates: a,b\n1: a > a\n");
  EXPECT_EQ(cli("tally --rule approval-irv " + bad).code, 1);
  EXPECT_EQ(cli("stv --rule approval-stv -k 9 " + data("spoiler.wvp")).code, 1);
}

TEST(Cli, ConvertRoundTrip) {
  auto pref = cli("convert --to preflib " + data("condorcet.wvp"));
  ASSERT_EQ(pref.code, 0);
  auto path = temp_file("condorcet.toi", pref.out);
  auto back = cli("convert --from preflib --to native " + path);
  ASSERT_EQ(back.code, 0);
  auto original = weakirv::canonicalize(fixture("condorcet.wvp"));
  EXPECT_EQ(weakirv::parse_profile(back.out, weakirv::ProfileFormat::Native), original);
}

TEST(Cli, ConvertClassifiesMarks) {
  auto path = temp_file("marks.csv", "ballot_id,candidate,rank\nb1,a,1\nb1,b,1\nb1,c,2\nb2,a,1\nb2,a,2\n");
  auto r = cli("convert --from marks --to classify --roster a,b,c,d " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "weak-order")) << r.out;
  EXPECT_TRUE(has(r.out, "duplicate-candidate-ranks"));
}

TEST(Cli, SearchAndSimulateAreReproducible) {
  const std::string search = "search --rule split-irv --axiom clones --attempts 3000 --seed 5 ";
  auto a = cli(search + "--workers 1");
  auto b = cli(search + "--workers 3");
  EXPECT_EQ(a.code, 0);
  auto body = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
  EXPECT_EQ(body(a.out), body(b.out));
  EXPECT_EQ(a.out, cli(search + "--workers 1").out);

  const std::string sim = "simulate -n 30 -m 5 --samples 4 --weakener coin-flip -p 0.5 --seed 3 ";
  auto s1 = cli(sim + "--workers 1");
  auto s2 = cli(sim + "--workers 2");
  ASSERT_EQ(s1.code, 0);
  EXPECT_EQ(body(s1.out), body(s2.out));
  EXPECT_EQ(s1.out, cli(sim + "--workers 1").out);
}
