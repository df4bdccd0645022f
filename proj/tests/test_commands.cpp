#include "shiftlab/commands.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace shiftlab;
using nlohmann::json;

namespace {

std::string fixture_path(const std::string& name) { return std::string(SHIFTLAB_FIXTURE_DIR) + "/" + name + ".json"; }

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(SHIFTLAB_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

CommandOptions word(const std::string& w, const std::string& method = "closed") {
  CommandOptions o;
  o.word = w;
  o.method = method;
  return o;
}

}  // namespace

TEST(Document, Shape) {
  const CommandOutcome out = run_command("perron", fixture_path("golden-mean"), {});
  EXPECT_EQ(out.exit_code, 0);
  const json& d = out.document;
  for (const char* k : {"command", "system", "results", "diagnostics", "provenance"}) EXPECT_TRUE(d.contains(k)) << k;
  EXPECT_EQ(d["command"]["name"], "perron");
  EXPECT_EQ(d["system"]["kind"], "sft");
  EXPECT_EQ(d["system"]["name"], "golden-mean");
  EXPECT_NEAR(d["results"]["lambda"].get<double>(), (1 + std::sqrt(5.0)) / 2, 1e-12);
  const std::string text = render(d);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find(SHIFTLAB_FIXTURE_DIR), std::string::npos);
}

TEST(Measure, MethodsAgree) {
  for (const char* m : {"closed", "limit", "periodic"}) {
    const CommandOutcome out = run_command("measure", fixture_path("example-3.4"), word("1", m));
    EXPECT_NEAR(out.document["results"]["value"].get<double>(), 0.5, 1e-6) << m;
  }
  // Shift averages are Cesaro means and converge like 1 / window.
  const CommandOutcome shift = run_command("measure", fixture_path("example-3.4"), word("1", "shift"));
  EXPECT_NEAR(shift.document["results"]["value"].get<double>(), 0.5, 1e-3);
  for (const char* m : {"closed", "limit", "periodic", "edge"}) {
    const CommandOutcome out = run_command("measure", fixture_path("even-shift"), word("a,b", m));
    EXPECT_NEAR(out.document["results"]["value"].get<double>(), 0.1708203932499369, 1e-6) << m;
  }
}

TEST(Measure, ForbiddenSystemUsesCover) {
  const CommandOutcome out = run_command("measure", fixture_path("golden-mean-forbidden"), word("1"));
  EXPECT_NEAR(out.document["results"]["value"].get<double>(), (5 + std::sqrt(5.0)) / 10, 1e-9);
}

TEST(Measure, ContextFreeClosedAndLimit) {
  const double closed = run_command("measure", "builtin:context-free", word("a,b,c")).document["results"]["value"];
  const double limit = run_command("measure", "builtin:context-free", word("a,b,c", "limit")).document["results"]["value"];
  EXPECT_NEAR(closed, limit, 1e-6);
  EXPECT_GT(closed, 0.0);
}

TEST(Census, Values) {
  CommandOptions o;
  o.n = 10;
  const json r = run_command("census", fixture_path("golden-mean"), o).document["results"];
  EXPECT_EQ(r["words"][9], "144");
  EXPECT_EQ(r["periodic"][9], "123");
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ParseError("x")), 2);
  EXPECT_EQ(exit_code_for(ValidationError("x")), 3);
  EXPECT_EQ(exit_code_for(ReducibleMatrix("x")), 3);
  EXPECT_EQ(exit_code_for(NotRightResolving("x")), 3);
  EXPECT_EQ(exit_code_for(OracleLimitExceeded("x")), 3);
  EXPECT_EQ(exit_code_for(NotConverged("x")), 4);
  EXPECT_EQ(exit_code_for(NoNaturalMeasure("x")), 4);
  EXPECT_EQ(exit_code_for(NotPositiveRecurrent("x")), 4);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
}

TEST(ExitCodes, Commands) {
  EXPECT_THROW(run_command("measure", fixture_path("remark-3.6"), word("0")), NoNaturalMeasure);
  EXPECT_NEAR(run_command("measure", fixture_path("remark-3.6"), word("0", "shift")).document["results"]["value"].get<double>(),
              0.5, 1e-3);
  EXPECT_THROW(run_command("measure", "builtin:random-walk-z", word("0", "limit")), NotPositiveRecurrent);
  EXPECT_THROW(run_command("classify", fixture_path("remark-3.6"), {}), ReducibleMatrix);
  EXPECT_THROW(run_command("bogus", fixture_path("full-2"), {}), InvalidArgument);
  CommandOptions shortrun;
  shortrun.length = 10;
  EXPECT_THROW(run_command("sample", fixture_path("full-2"), shortrun), InvalidArgument);
}

TEST(Verify, MismatchExitsFive) {
  // A wrong fact makes verify report a mismatch.
  const auto dir = std::filesystem::temp_directory_path() / "shiftlab_test_commands";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "wrong.json").string();
  std::ofstream(path) << R"({"type":"sft","matrix":[[1,1],[1,1]],
    "facts":[{"key":"lambda","value":3.0,"tolerance":1e-9,"source":"trivial","oracle":""}]})";
  const CommandOutcome out = run_command("verify", path, {});
  EXPECT_EQ(out.exit_code, 5);
  EXPECT_EQ(out.document["results"]["facts_failed"], 1);
  std::filesystem::remove_all(dir);
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  CommandOptions o = word("1");
  o.length = 20000;
  o.seed = 11;
  for (const char* cmd : {"perron", "measure", "census", "entropy", "sample"})
    EXPECT_EQ(render(run_command(cmd, fixture_path("golden-mean"), o).document),
              render(run_command(cmd, fixture_path("golden-mean"), o).document))
        << cmd;
}

TEST(Builtins, ExportedFileMatches) {
  const auto dir = std::filesystem::temp_directory_path() / "shiftlab_test_export";
  std::filesystem::create_directories(dir);
  for (const std::string& name : builtin_names()) {
    const auto path = (dir / (name + ".json")).string();
    std::ofstream(path) << dump_system(export_builtin(name));
    for (const char* cmd : {"perron", "entropy"}) {
      json a = run_command(cmd, "builtin:" + name, {}).document;
      json b = run_command(cmd, path, {}).document;
      EXPECT_EQ(a["results"], b["results"]) << name << " " << cmd;
      EXPECT_EQ(a["system"]["digest"], b["system"]["digest"]) << name;
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("perron " + fixture_path("golden-mean")).code, 0);
  EXPECT_EQ(cli("perron").code, 2);
  EXPECT_EQ(cli("nonsense").code, 2);
  EXPECT_EQ(cli("perron builtin:nope").code, 3);
  EXPECT_EQ(cli("measure " + fixture_path("remark-3.6") + " --word 0").code, 4);
  EXPECT_EQ(cli("measure builtin:random-walk-z --word 0 --method limit").code, 4);

  const auto dir = std::filesystem::temp_directory_path() / "shiftlab_test_cli";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "broken.json") << "{\"type\": \"sft\", \"matrix\": [[1,";
  std::ofstream(dir / "invalid.json") << R"({"type":"sft","matrix":[[1,1]]})";
  EXPECT_EQ(cli("perron " + (dir / "broken.json").string()).code, 2);
  EXPECT_EQ(cli("perron " + (dir / "invalid.json").string()).code, 3);
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputIsDocument) {
  const CliRun a = cli("census " + fixture_path("even-shift") + " --n 5");
  const CliRun b = cli("census " + fixture_path("even-shift") + " --n 5");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const json d = json::parse(a.out);
  EXPECT_EQ(d["results"]["words"][4], "20");
  EXPECT_EQ(a.out, render(d));
}

TEST(Cli, Export) {
  const CliRun r = cli("export random-walk-z");
  ASSERT_EQ(r.code, 0);
  const json d = json::parse(r.out);
  EXPECT_EQ(d["type"], "countable-stencil");
  EXPECT_EQ(cli("export nope").code, 3);
}
