#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace comdyn::cli {
namespace {

struct Run {
  int code;
  std::vector<nlohmann::json> lines;
  std::string raw;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  const int code = run_command(args, out);
  Run r{code, {}, out.str()};
  std::istringstream in(r.raw);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '{') r.lines.push_back(nlohmann::json::parse(line));
  }
  return r;
}

TEST(Cli, CommuteExample) {
  const auto r = run({"commute", "--field", "Q", "--f", "(x^2,y^2)", "--g", "(x,x*y)"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.raw, "{\"commutes\":true}\n");
}

TEST(Cli, OrbitEscape) {
  const auto r = run({"orbit", "--field", "Q", "--f", "(x^2,y^2)", "--p", "0,2", "--height-bound", "0"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.lines.at(0)["status"], "EscapedHeightBound");
  EXPECT_EQ(r.lines.at(0)["escaped_at"], nlohmann::json({"0", "4"}));
}

TEST(Cli, CommutantCatalogMatchesGrid) {
  for (const char* d : {"1", "2"}) {
    const auto cat = run({"commutant", "--field", "Q", "--f", "(x^2,y^2)", "--d", d, "--catalog", "bounded:0"});
    const auto grid = run({"commutant", "--field", "Q", "--f", "(x^2,y^2)", "--d", d, "--method", "grid:1"});
    ASSERT_EQ(cat.code, kOk);
    ASSERT_EQ(grid.code, kOk);
    EXPECT_EQ(cat.lines.at(0)["maps"], grid.lines.at(0)["maps"]) << d;
  }
}

TEST(Cli, CatalogFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "comdyn_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "cat.jsonl").string();
  const auto written = run({"catalog", "--f", "(x^2,y^2)", "--catalog", "bounded:0", "--out", path});
  ASSERT_EQ(written.code, kOk);
  EXPECT_EQ(written.lines.size(), 2U);
  const auto direct = run({"commutant", "--f", "(x^2,y^2)", "--d", "2"});
  const auto from_file = run({"commutant", "--f", "(x^2,y^2)", "--d", "2", "--catalog", "@" + path});
  ASSERT_EQ(from_file.code, kOk) << from_file.raw;
  EXPECT_EQ(direct.lines.at(0)["maps"], from_file.lines.at(0)["maps"]);

  const std::string map_path = (dir / "f.txt").string();
  std::ofstream(map_path) << "# squaring\n\n(x^2, y^2)\n";
  const auto via_file = run({"commute", "--f", "@" + map_path, "--g", "(y, x)"});
  EXPECT_EQ(via_file.raw, "{\"commutes\":true}\n");
}

TEST(Cli, FrameAndInterp) {
  const auto dir = std::filesystem::temp_directory_path() / "comdyn_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "frame.json").string();
  const auto frame = run({"frame", "--points", "0;1;2;3", "--d", "2", "--out", path});
  ASSERT_EQ(frame.code, kOk);
  EXPECT_EQ(frame.lines.at(0)["N"], 3);
  const auto interp = run({"interp", "--frame", "@" + path, "--g", "(x^2 - 1)"});
  ASSERT_EQ(interp.code, kOk) << interp.raw;
  EXPECT_EQ(interp.lines.at(0)["map"], "(x^2 - 1)");
  const auto short_stream = run({"frame", "--points", "0;1", "--d", "2"});
  EXPECT_EQ(short_stream.code, kDomainError);
  EXPECT_EQ(short_stream.lines.at(0)["error"]["code"], "StreamExhausted");
  EXPECT_EQ(short_stream.lines.at(0)["error"]["rank"], 2);
  EXPECT_EQ(short_stream.lines.at(0)["error"]["needed"], 3);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"verify-invariance", "--f", "(x^2,y^2)", "--g", "(x,x*y)"}).lines.at(0)["surjective"], false);
  EXPECT_EQ(run({"ideal", "--f", "(x^2)", "--d", "1"}).lines.at(0)["count"], 3);
  const auto aut = run({"aut", "--f", "(x^2,y^2)"});
  EXPECT_EQ(aut.lines.at(0)["aut"], nlohmann::json({"(x, y)", "(y, x)"}));
  const auto mult = run({"multiplier", "--field", "Qzeta:7", "--f", "(y^2,x^2)", "--p", "zeta,zeta^2"});
  EXPECT_EQ(mult.lines.at(0)["period"], 6);
  EXPECT_EQ(run({"morphism-check", "--f", "[x^2, y^2]"}).lines.at(0)["verdict"], "Morphism");
}

TEST(Cli, ExampleTableHasNoFailures) {
  const auto r = run({"paper-examples"});
  EXPECT_EQ(r.code, kOk);
  const auto& summary = r.lines.back()["summary"];
  EXPECT_EQ(summary["fail"], 0);
  EXPECT_GT(summary["pass"], 10);
  const auto table = run({"paper-examples", "--table"});
  EXPECT_NE(table.raw.find("discrepancy"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kUsageError);
  EXPECT_EQ(run({"nonsense"}).code, kUsageError);
  EXPECT_EQ(run({"commute", "--bogus"}).code, kUsageError);
  EXPECT_EQ(run({"commutant", "--f", "(x)"}).code, kUsageError);
  EXPECT_EQ(run({"commutant", "--f", "(x)", "--d", "1", "--method", "magic"}).code, kUsageError);
  EXPECT_EQ(run({"commute", "--help"}).code, kOk);
}

// Every malformed input produces one structured error object.
TEST(Cli, FuzzCorpusGivesStructuredErrors) {
  const std::vector<std::vector<std::string>> corpus = {
      {"commute", "--f", "(x^2", "--g", "(x)"},
      {"commute", "--f", "(x^2, y^2)", "--g", "(x)"},
      {"commute", "--f", "[x^2, y]", "--g", "[x, y]"},
      {"commute", "--f", "(x, y)", "--g", "[x, y, z]"},
      {"commute", "--field", "Qzeta:4", "--f", "(x)", "--g", "(x)"},
      {"commute", "--f", "(zeta*x)", "--g", "(x)"},
      {"orbit", "--f", "(x^2)", "--p", "1,2"},
      {"orbit", "--f", "(x^2)", "--p", "1/0"},
      {"orbit", "--f", "(x^2)", "--p", "2", "--height-bound", "nan?"},
      {"orbit", "--f", "(x^2)"},
      {"catalog", "--f", "(x+1)", "--catalog", "monomial:5"},
      {"catalog", "--f", "(x^2, y^2)", "--catalog", "bounded:H:100000"},
      {"catalog", "--f", "(x^2)", "--catalog", "bounded:-2"},
      {"commutant", "--f", "(x^2,y^2)", "--d", "3"},
      {"commutant", "--f", "(x^2,y^2)", "--d", "2", "--catalog", "@/nonexistent/file"},
      {"commutant", "--f", "(x^2,y^2)", "--d", "2", "--method", "grid:zz"},
      {"commutant", "--f", "(x^2,y^2)", "--d", "2", "--method", "grid:1", "--support", "x+y;y"},
      {"commutant", "--f", "(x^2,y^2)", "--d", "4", "--method", "grid:3", "--cap", "1000"},
      {"multiplier", "--f", "(x^2)", "--p", "2"},
      {"multiplier", "--f", "(x^2)", "--p", "1", "--g", "(x+1)"},
      {"morphism-check", "--f", "(x^2)"},
      {"morphism-check", "--f", "[x^2, y^2, z^2]", "--primes", "4"},
      {"interp", "--points", "0;1", "--d", "1"},
      {"interp", "--points", "0;0", "--d", "1", "--images", "1;1"},
      {"frame", "--frame", "@/nonexistent.json"},
      {"ideal", "--f", "(x^2,y^2,z^2,x*y)", "--d", "9"},
      {"aut", "--f", "[x^2, y^2]", "--method", "catalog"},
      {"verify-invariance", "--f", "(x^2,y^2)", "--g", "(x, x+y)"},
  };
  for (const auto& args : corpus) {
    const auto r = run(args);
    ASSERT_NE(r.code, kOk) << args[0] << " " << r.raw;
    ASSERT_EQ(r.lines.size(), 1U) << r.raw;
    ASSERT_TRUE(r.lines[0].contains("error")) << r.raw;
    ASSERT_TRUE(r.lines[0]["error"]["code"].is_string());
    ASSERT_TRUE(r.lines[0]["error"]["message"].is_string());
  }
}

// Random byte soup in the map argument never crashes.
TEST(Cli, RandomMapTextFuzz) {
  const std::string alphabet = "xyz0123456789+-*/^()[], zeta";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const long len = testing::uniform(0, 20);
    for (long i = 0; i < len; ++i) text += alphabet[static_cast<std::size_t>(testing::uniform(0, alphabet.size() - 1))];
    const auto r = run({"commute", "--f", text, "--g", "(x)"});
    ASSERT_EQ(r.lines.size(), 1U) << text << " -> " << r.raw;
    if (r.code != kOk) ASSERT_TRUE(r.lines[0].contains("error"));
  }
}

}  // namespace
}  // namespace comdyn::cli
