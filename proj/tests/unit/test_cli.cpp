#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pcfcert_cli/cli.hpp"

using Json = nlohmann::ordered_json;
namespace cli = pcfcert::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pcfcert");
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Json strip_timings(Json j) {
  j.erase("timings");
  return j;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(cell);
      cell.clear();
    } else if (ch == '\n') {
      row.push_back(cell);
      rows.push_back(row);
      row.clear();
      cell.clear();
    } else {
      cell += ch;
    }
  }
  return rows;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (!j.is_null()) {
    out.emplace_back(prefix, j.dump());
  }
}

}  // namespace

TEST(Cli, ExitCodes) {
  auto r = run({"idf", "find", "--d", "27", "--k", "3"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "NONE");

  r = run({"pcf", "transversality", "--d", "3", "--k", "1", "--n", "1", "--m", "1", "--emax", "2"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "PASS");

  EXPECT_EQ(run({"idf", "find", "--d", "27"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"idf", "find", "--d", "27", "--k", "3", "--bogus", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"idf", "find", "--d", "27", "--k", "3", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"idf", "find", "--d", "27", "--k", "20"}).code, cli::kExitUsage);

  // Past the monomial budget.
  r = run({"pcf", "locus", "--d", "3", "--k", "1", "--n", "4", "--m", "1", "--budget", "10"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());

  // No IDF prime.
  EXPECT_EQ(run({"pcf", "integrality", "--d", "27", "--k", "3", "--n", "1", "--m", "1"}).code, cli::kExitUsage);

  r = run({"valdyn", "certificate", "--d", "5", "--k", "1", "--r", "0", "--e", "1", "--valpha", "4", "--vbeta", "-1"});
  EXPECT_EQ(r.code, cli::kExitFail);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "INCONCLUSIVE");
}

TEST(Cli, ReportShape) {
  const auto r = run({"belyi", "coeffs", "--d", "3", "--k", "1"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], cli::kSchemaVersion);
  EXPECT_EQ(j["tool_version"], cli::kToolVersion);
  EXPECT_EQ(j["command"], "belyi coeffs");
  for (const auto& [k, v] : j["inputs"].items()) EXPECT_TRUE(v.is_string()) << k;
  EXPECT_TRUE(j.contains("timings"));
}

TEST(Cli, MordellCsvHasSixRows) {
  const auto r = run({"idf", "mordell", "--xmax", "100", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"X", "Y", "B", "C", "d"}));
  EXPECT_EQ(rows[6], (std::vector<std::string>{"61", "389", "3", "2", "453965"}));
}

TEST(Cli, ReplayReproducesReport) {
  const std::vector<std::vector<std::string>> commands{
      {"belyi", "coeffs", "--d", "7", "--k", "2"},
      {"belyi", "ncrit", "--d", "4", "--profile", "1,1"},
      {"idf", "find", "--d", "8", "--k", "2"},
      {"idf", "scan", "--k", "3", "--dmax", "500", "--jobs", "3"},
      {"idf", "mordell", "--xmax", "50"},
      {"idf", "conjecture", "--n", "51", "--k", "3"},
      {"valdyn", "orbit", "--d", "5", "--k", "1", "--r", "0", "--e", "1", "--valpha", "-1", "--vbeta", "-1"},
      {"valdyn", "classify", "--d", "5", "--k", "1", "--r", "0", "--e", "1", "--valpha", "2", "--vbeta", "-1"},
      {"valdyn", "certificate", "--d", "5", "--k", "1", "--r", "0", "--e", "1", "--valpha", "10", "--vbeta", "-1"},
      {"pcf", "locus", "--d", "3", "--k", "1", "--n", "2", "--m", "1"},
      {"pcf", "integrality", "--d", "3", "--k", "1", "--n", "2", "--m", "1"},
      {"pcf", "transversality", "--d", "3", "--k", "1", "--n", "2", "--m", "1", "--emax", "2"},
      {"pcf", "counterexamples"},
  };
  const auto dir = std::filesystem::temp_directory_path() / "pcfcert_cli_replay";
  std::filesystem::create_directories(dir);
  int i = 0;
  for (const auto& args : commands) {
    const auto first = run(args);
    ASSERT_EQ(first.code, 0) << args[0] << " " << args[1] << ": " << first.err;
    const auto path = dir / ("report" + std::to_string(i++) + ".json");
    std::ofstream(path) << first.out;
    const auto again = run({"replay", "--report", path.string()});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(strip_timings(Json::parse(first.out)).dump(2), strip_timings(Json::parse(again.out)).dump(2))
        << args[0] << " " << args[1];
  }
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReplayRejectsBadReports) {
  EXPECT_EQ(run({"replay", "--report", "/nonexistent/report.json"}).code, cli::kExitUsage);
  const auto path = std::filesystem::temp_directory_path() / "pcfcert_bad_report.json";
  std::ofstream(path) << R"({"schema_version": 1, "command": "idf find"})";
  EXPECT_EQ(run({"replay", "--report", path.string()}).code, cli::kExitUsage);
  std::ofstream(path) << "not json";
  EXPECT_EQ(run({"replay", "--report", path.string()}).code, cli::kExitUsage);
  std::filesystem::remove(path);
}

TEST(Cli, CsvAndJsonCarryTheSameData) {
  const std::vector<std::vector<std::string>> kv_commands{
      {"belyi", "coeffs", "--d", "6", "--k", "2"},
      {"idf", "find", "--d", "27", "--k", "3"},
      {"valdyn", "orbit", "--d", "5", "--k", "1", "--r", "0", "--e", "1", "--valpha", "-1", "--vbeta", "0"},
      {"pcf", "integrality", "--d", "3", "--k", "1", "--n", "1", "--m", "2"},
      {"pcf", "transversality", "--d", "4", "--k", "1", "--n", "1", "--m", "1"},
  };
  for (auto args : kv_commands) {
    const auto j = run(args);
    args.insert(args.end(), {"--format", "csv"});
    const auto c = run(args);
    ASSERT_EQ(j.code, c.code);
    Json doc = strip_timings(Json::parse(j.out));
    doc["inputs"]["format"] = "csv";
    std::vector<std::pair<std::string, std::string>> want;
    flatten(doc, "", want);
    const auto rows = parse_csv(c.out);
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows[0], (std::vector<std::string>{"key", "value"}));
    std::vector<std::pair<std::string, std::string>> got;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      ASSERT_EQ(rows[i].size(), 2u);
      got.emplace_back(rows[i][0], rows[i][1]);
    }
    EXPECT_EQ(got, want) << args[0] << " " << args[1];
  }

  for (std::vector<std::string> args :
       {std::vector<std::string>{"idf", "scan", "--k", "2", "--dmax", "80", "--rows", "all"},
        std::vector<std::string>{"idf", "mordell", "--xmax", "70"}}) {
    const Json doc = Json::parse(run(args).out);
    args.insert(args.end(), {"--format", "csv"});
    const auto rows = parse_csv(run(args).out);
    const auto& table = doc["result"]["rows"];
    ASSERT_EQ(rows.size(), table.size() + 1);
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::size_t col = 0;
      for (const auto& [k, v] : table[i].items()) {
        EXPECT_EQ(rows[0][col], k);
        EXPECT_EQ(rows[i + 1][col], v.get<std::string>());
        ++col;
      }
    }
  }
}

TEST(Cli, ScanIsDeterministicAcrossJobCounts) {
  const auto one = run({"idf", "scan", "--k", "5", "--dmax", "3000", "--rows", "all", "--jobs", "1"});
  const auto four = run({"idf", "scan", "--k", "5", "--dmax", "3000", "--rows", "all", "--jobs", "4"});
  Json a = strip_timings(Json::parse(one.out));
  Json b = strip_timings(Json::parse(four.out));
  a["inputs"].erase("jobs");
  b["inputs"].erase("jobs");
  EXPECT_EQ(a, b);
}
