#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "modal/model_io.hpp"
#include "modal/parser.hpp"
#include "modal/proof.hpp"

using namespace modal;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(MODALCTL_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p) != nullptr) out += buf.data();
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string json_line(const std::string& out) {
  const auto a = out.find("{\"worlds\"");
  return out.substr(a, out.find('\n', a) - a);
}

}  // namespace

TEST(Cli, ParseRoundTrip) {
  const CliRun r = run("parse --phi '<>p0 & []c1'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "<>p0 & []c1");
}

TEST(Cli, DecideExitCodesFollowTheVerdict) {
  EXPECT_EQ(run("decide --phi '!(p0 & !p0)'").code, 0);
  EXPECT_EQ(run("decide --sigma 4 --phi '[]p0 -> [][]p0'").code, 0);
  EXPECT_EQ(run("decide --phi '[]p0 -> [][]p0'").code, 1);
  EXPECT_EQ(run("decide --sigma 5 --phi '<>p0 -> []<>p0'").code, 0);
  EXPECT_EQ(run("decide --mode sat --phi 'p0 & !p0'").code, 1);
  EXPECT_EQ(run("decide --phi 'p0 ->'").code, 2);
  EXPECT_EQ(run("decide").code, 2);
}

TEST(Cli, EmittedCountermodelReverifies) {
  const CliRun r = run("decide --phi '[]([]p0 -> p0) -> []p0' --emit json");
  ASSERT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verdict: invalid"), std::string::npos);
  const LoadedModel m = model_from_json(json_line(r.out));
  const std::size_t at = r.out.find("\"world\":");
  const World w = static_cast<World>(std::stoul(r.out.substr(at + 8)));
  EXPECT_FALSE(eval_recursive(m.frame, m.val, w, parse("[]([]p0 -> p0) -> []p0")));
}

TEST(Cli, ModelDotHasReflexiveEdges) {
  const CliRun r = run("model --phi p0 --sigma T --emit dot");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  for (int w = 0; w < 4; ++w) EXPECT_NE(r.out.find(std::to_string(w) + " -> " + std::to_string(w) + ";"), std::string::npos);
}

TEST(Cli, CanonicalCapMessage) {
  const CliRun r = run("canonical --h 2 --n 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("2^64·4"), std::string::npos);
  EXPECT_EQ(run("canonical --h 1 --n 0 --count").out, "8\n");
}

TEST(Cli, TranslateAndConditions) {
  EXPECT_EQ(run("translate --phi '[]p0'").out, "forall y_0 (r(x, y_0) -> P0(y_0))\n");
  EXPECT_EQ(run("translate --sigma T --conditions").out, "T: forall x r(x, x)\n");
}

TEST(Cli, ProveCheckNecessitation) {
  ProofDocument doc;
  doc.proof.add(parse("p0 -> p1 -> p0"), Justification::base_axiom(Axiom::PL1));
  doc.proof.add(parse("[](p0 -> p1 -> p0)"), Justification::necessitation(0));
  const auto path = std::filesystem::temp_directory_path() / "modalctl_nec_proof.json";
  std::ofstream(path) << proof_to_json(doc);
  EXPECT_EQ(run("prove-check --proof " + path.string()).code, 0);
  doc.proof.lines[1].formula = parse("[](p0 -> p0)");
  std::ofstream(path) << proof_to_json(doc);
  EXPECT_EQ(run("prove-check --proof " + path.string()).code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, OracleAndSeed) {
  EXPECT_EQ(run("oracle --phi '[]p0 -> p0' --sigma T").code, 0);
  EXPECT_EQ(run("oracle --phi '[]p0 -> p0' --sigma 5").code, 1);
  EXPECT_EQ(run("parse --random 5 --seed 3").out, run("--seed 3 parse --random 5").out);
  EXPECT_NE(run("parse --random 5 --seed 3").out, run("parse --random 5 --seed 4").out);
}
