#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

std::string model(const std::string& name) { return std::string(XLOGIC_MODELS) + "/" + name; }

// stdout and stderr are merged so error text can be asserted on too
Run run(const std::string& args) {
  std::string cmd = std::string(XLOGIC_BINARY) + " " + args + " 2>&1";
  Run r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("xlogic_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, LaraSufficientReasons) {
  auto r = run("explain --model " + model("disease_tree.json") + " --instance " + model("instances/lara.json") +
               " --kind sr");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "decision: yes")) << r.out;
  EXPECT_TRUE(contains(r.out, "Db=y ∧ W=over")) << r.out;
  EXPECT_TRUE(contains(r.out, "Db=y ∧ BT=A")) << r.out;
}

TEST(Cli, LaraGeneralNecessaryReasons) {
  auto r = run("explain --model " + model("disease_tree.json") + " --instance " + model("instances/lara.json") +
               " --kind gnr");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "GNR (3)")) << r.out;
  EXPECT_TRUE(contains(r.out, "W∈{over,under} ∨ BT∈{A,B}")) << r.out;
}

TEST(Cli, InlineInstance) {
  auto r = run("explain --model " + model("disease_tree.json") +
               " --instance '{\"Db\":\"n\",\"W\":\"normal\",\"BT\":\"O\"}' --kind sr");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "decision: no")) << r.out;
}

TEST(Cli, NumericGeneralReasonPhrase) {
  auto r = run("explain --model " + model("age_bmi.json") + " --instance " + model("instances/age_bmi.json") +
               " --kind gr");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "(Age ≥ 40 AND BMI ≥ 25) OR (Age ≥ 18 AND BMI ≥ 27)")) << r.out;
}

TEST(Cli, MachineFormatIsJson) {
  auto r = run("explain --model " + model("disease_tree.json") + " --instance " + model("instances/lara.json") +
               " --kind sr,nr --format machine");
  ASSERT_EQ(r.code, 0) << r.out;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["decision"], "yes");
  EXPECT_EQ(doc["instance"]["BT"], "A");
  ASSERT_EQ(doc["results"].size(), 2u);
  EXPECT_EQ(doc["results"][0]["items"].size(), 2u);
}

TEST(Cli, CompileEmitsFormulaDocument) {
  auto r = run("compile --model " + model("xyz_graph.json") + " --class c1 --method dnf");
  ASSERT_EQ(r.code, 0) << r.out;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["format"], "xlogic-formula");
  EXPECT_EQ(doc["class"], "c1");
  EXPECT_FALSE(doc["nodes"].empty());
}

TEST(Cli, CompiledGraphReloads) {
  auto out = (std::filesystem::temp_directory_path() / "xlogic_cli_nb_graph.json").string();
  auto r = run("compile --model " + model("naive_bayes.json") + " --method graph --out " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  auto v = run("verify --model " + out);
  EXPECT_EQ(v.code, 0) << v.out;
}

TEST(Cli, VerifyPassesOnSamples) {
  for (const char* f : {"disease_tree.json", "xyz_graph.json", "age_bmi.json", "naive_bayes.json", "linear.json",
                        "forest.json", "step_network.json"}) {
    auto r = run(std::string("verify --model ") + model(f));
    EXPECT_EQ(r.code, 0) << f << "\n" << r.out;
  }
}

TEST(Cli, TamperedModelFailsVerification) {
  auto r = run("verify --model " + model("disease_tampered.json"));
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST(Cli, MissingFeatureIsInputError) {
  auto r = run("explain --model " + model("disease_tree.json") + " --instance " +
               model("instances/lara_missing_bt.json") + " --kind sr");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_TRUE(contains(r.out, "BT")) << r.out;
}

TEST(Cli, UnknownStateIsInputError) {
  auto r = run("explain --model " + model("disease_tree.json") +
               " --instance '{\"Db\":\"maybe\",\"W\":\"over\",\"BT\":\"A\"}' --kind sr");
  EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, BudgetExceededIsCapacityError) {
  auto r = run("verify --model " + model("disease_tree.json") + " --budget 1");
  EXPECT_EQ(r.code, 4) << r.out;
}

TEST(Cli, InvalidModelIsIntegrityError) {
  auto doc = nlohmann::json::parse(std::ifstream(model("xyz_graph.json")));
  // two edges of the root now claim the same states
  auto& edges = doc["model"]["nodes"][0]["edges"];
  edges[1]["states"] = edges[0]["states"];
  auto path = temp_file("bad_graph.json", doc.dump());
  auto r = run("verify --model " + path);
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, MalformedJsonIsInputError) {
  auto path = temp_file("malformed.json", "{ not json");
  auto r = run("verify --model " + path);
  EXPECT_EQ(r.code, 2) << r.out;
}
