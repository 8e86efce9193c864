#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "imdplan/trace_io.hpp"

using namespace imdplan;
using namespace imdplan::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const char* env = std::getenv("IMDPLAN_TEST_TMP");
  const fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "imdplan_tests";
  const auto dir = root / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const Table& table(const CommandOutput& out, const std::string& name) {
  for (const auto& t : out.tables) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("missing table " + name);
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  throw std::runtime_error("missing column " + name);
}

}  // namespace

TEST(Commands, EnumerateListsTheCollisionProduct) {
  const auto out = run_command("enumerate", RunConfig{});
  const auto& t = table(out, "enumerate");
  const auto csv = render_csv(t);
  EXPECT_NE(csv.find("\n1,-1,1,7.5573"), std::string::npos);
  EXPECT_EQ(t.columns.front(), "n_p");
}

TEST(Commands, UnknownCommandThrows) {
  EXPECT_THROW(run_command("frobnicate", RunConfig{}), std::invalid_argument);
  EXPECT_EQ(command_names().size(), 9u);
}

TEST(Commands, CheckReportsBothSpurs) {
  const auto out = run_command("check", RunConfig{});
  EXPECT_EQ(out.results["collisions"], 2);
}

TEST(Commands, CsvValuesParseBackExactly) {
  RunConfig cfg;
  cfg.mc.samples = 200;
  const auto out = run_command("mc", cfg);
  const auto& t = table(out, "mc");
  const auto csv = render_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,delta_min_hz,p_coll,stderr");
  std::size_t r = 0;
  while (std::getline(in, line)) {
    const auto f = io::split_csv_line(line);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(io::parse_double(f[2]), std::get<double>(t.rows[r][2]));
    ++r;
  }
  EXPECT_EQ(r, t.rows.size());
}

TEST(Commands, JsonLinesWritesNullForNaN) {
  Table t;
  t.name = "x";
  t.columns = {"a", "b"};
  t.add({std::nan(""), 3LL});
  EXPECT_EQ(render_json_lines(t), "{\"a\":null,\"b\":3}\n");
  EXPECT_EQ(render_csv(t), "a,b\nnan,3\n");
}

TEST(Commands, SeededOutputsAreByteIdentical) {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.mc.samples = 200;
  cfg.readout.shots = 200;
  for (const char* cmd : {"mc", "plan", "readout"}) {
    const auto a = run_command(cmd, cfg);
    const auto b = run_command(cmd, cfg);
    ASSERT_EQ(a.tables.size(), b.tables.size());
    for (std::size_t i = 0; i < a.tables.size(); ++i) {
      EXPECT_EQ(render_csv(a.tables[i]), render_csv(b.tables[i])) << cmd;
    }
    EXPECT_EQ(a.results.dump(), b.results.dump()) << cmd;
  }
}

TEST(Commands, WriteOutputsProducesReportAndTables) {
  const auto dir = scratch_dir("commands_write");
  RunConfig cfg;
  const auto out = run_command("bands", cfg);
  const auto report = make_report("bands", cfg, out, 0.0);
  EXPECT_EQ(report["tool"], "imdplan");
  EXPECT_EQ(report["config"], to_json(cfg));
  const auto files = write_outputs(dir, "bands", out, report, Format::json_lines, 50.0);
  EXPECT_TRUE(fs::exists(dir / "bands_report.json"));
  for (const auto& t : out.tables) EXPECT_TRUE(fs::exists(dir / (t.name + ".jsonl")));
  EXPECT_EQ(files.size(), out.tables.size() + 1);
}

TEST(Commands, AnalyzeOnNoiselessShotsReportsZeroNoise) {
  const auto dir = scratch_dir("commands_analyze");
  oracle::TraceConfig tc;
  tc.samples = 1800;
  const Frequency f = tc.bin_frequency(100);
  RunConfig cfg;
  TraceSetSpec set;
  set.label = "ref";
  set.freq_ghz = f.ghz();
  set.applied_dbm = -126.0;
  const std::vector<Tone> tones{Tone(f, PowerDbm{-126.0 + 20.0})};
  for (int i = 0; i < 3; ++i) {
    const auto path = dir / ("shot" + std::to_string(i) + ".csv");
    io::write_trace(path, oracle::synthesize_trace(tones, tc));
    set.traces.push_back(path.string());
  }
  cfg.analyze.sets.push_back(set);
  const auto out = run_command("analyze", cfg);
  const auto& t = table(out, "analyze");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(std::get<double>(t.rows[0][column(t, "noise_w")]), 0.0);
  EXPECT_NEAR(std::get<double>(t.rows[0][column(t, "gain_db")]), 20.0, 1e-6);
}
