// End-to-end checks of the polar_cli binary: subcommand output formats,
// deterministic CSV, and the exit-code contract (0 success, 2 usage errors).

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exitCode = -1;
  std::string out;
};

// Runs the CLI with stderr dropped; returns exit code and captured stdout.
RunResult runCli(const std::string& args) {
  const std::string cmd = std::string(POLARKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli pattern emits generation-order positions") {
  const RunResult r = runCli("pattern --mode shorten --N 8 --P 3");
  REQUIRE(r.exitCode == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("mode") == "shorten");
  CHECK(doc.at("pattern") == nlohmann::json({6, 4, 8}));

  const RunResult p = runCli("pattern --mode puncture --N 8 --P 3");
  REQUIRE(p.exitCode == 0);
  CHECK(nlohmann::json::parse(p.out).at("pattern") == nlohmann::json({1, 5, 3}));
}

TEST_CASE("cli construct reports quality vector and rate-matching spec") {
  const RunResult r =
      runCli("construct --N 256 --channel bec:0.5 --mode puncture --M 186");
  REQUIRE(r.exitCode == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("N") == 256);
  CHECK(doc.at("M") == 186);
  CHECK(doc.at("P") == 70);
  CHECK(doc.at("metric") == "bhattacharyya");
  REQUIRE(doc.at("values").size() == 256);
  REQUIRE(doc.at("pattern").size() == 70);
  // Punctured bit channels are useless under the reordered construction:
  // their quality saturates at the worst value.
  CHECK(doc.at("values")[0].get<double>() == 1.0);
  for (const auto& v : doc.at("values")) {
    CHECK(v.get<double>() >= 0.0);
    CHECK(v.get<double>() <= 1.0);
  }

  const RunResult k = runCli(
      "construct --N 64 --channel bsc:0.1 --mode shorten --M 48 --rate 0.5 --mu 32");
  REQUIRE(k.exitCode == 0);
  const auto kdoc = nlohmann::json::parse(k.out);
  CHECK(kdoc.at("K") == 24);
  CHECK(kdoc.at("metric") == "errorProb");
  CHECK(kdoc.at("mu") == 32);
  REQUIRE(kdoc.at("infoSet").size() == 24);
  // The shortened source tail {N-P+1..N} never enters the information set.
  for (const auto& i : kdoc.at("infoSet")) CHECK(i.get<int>() <= 48);
}

TEST_CASE("cli simulate writes byte-identical CSV for a fixed seed") {
  const std::string base =
      "simulate --N 16 --K 8 --channel bec --sweep 0.2,0.4 --mu 16 "
      "--max-frames 200 --max-errors 1000 --seed 11";
  const RunResult a = runCli(base + " --out " POLARKIT_TEST_DIR "/tmp_cli_a.csv");
  const RunResult b = runCli(base + " --out " POLARKIT_TEST_DIR "/tmp_cli_b.csv");
  REQUIRE(a.exitCode == 0);
  REQUIRE(b.exitCode == 0);
  const std::string csvA = slurp(POLARKIT_TEST_DIR "/tmp_cli_a.csv");
  const std::string csvB = slurp(POLARKIT_TEST_DIR "/tmp_cli_b.csv");
  CHECK(csvA == csvB);
  REQUIRE(csvA.rfind("param,frames,errors,fer,ci_low,ci_high\n", 0) == 0);

  // Rows are param,frames,errors,fer,ci_low,ci_high; the noiseless-ish first
  // point and the harsher second point both report the requested frame cap.
  std::istringstream rows(csvA);
  std::string line;
  std::getline(rows, line);  // header
  int dataRows = 0;
  while (std::getline(rows, line)) {
    ++dataRows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(dataRows == 2);
  std::remove(POLARKIT_TEST_DIR "/tmp_cli_a.csv");
  std::remove(POLARKIT_TEST_DIR "/tmp_cli_b.csv");
}

TEST_CASE("cli folded-sim reports cycle counts and checks the encoder") {
  const RunResult r =
      runCli("folded-sim --N 16 --L 4 --pruned --C 4 --frames 25 --seed 3");
  REQUIRE(r.exitCode == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("latencyCycles") == 3);
  CHECK(doc.at("cyclesPerFrame") == 3);
  CHECK(doc.at("registerCount") == 14);
  CHECK(doc.at("xorGateCount") == 16);
  CHECK(doc.at("skippedInputBlocks") == 1);
  CHECK(doc.at("allMatchReference") == true);
  CHECK(doc.at("firstFrameBlockStamps") == nlohmann::json({3, 4, 5, 5}));

  const RunResult t = runCli(
      "folded-sim --N 16 --L 4 --frames 1 --trace " POLARKIT_TEST_DIR
      "/tmp_cli_trace.csv");
  REQUIRE(t.exitCode == 0);
  const std::string trace = slurp(POLARKIT_TEST_DIR "/tmp_cli_trace.csv");
  CHECK(trace.rfind("cycle,stage,registers\n", 0) == 0);
  CHECK(trace.find(",S4,") != std::string::npos);
  CHECK(trace.find(",S2,") != std::string::npos);
  std::remove(POLARKIT_TEST_DIR "/tmp_cli_trace.csv");
}

TEST_CASE("cli usage and configuration errors exit with status 2") {
  CHECK(runCli("").exitCode == 2);                     // missing subcommand
  CHECK(runCli("bogus").exitCode == 2);                // unknown subcommand
  CHECK(runCli("pattern --mode shorten --N 8").exitCode == 2);  // missing --P
  CHECK(runCli("pattern --mode none --N 8 --P 3").exitCode == 2);
  CHECK(runCli("construct --N 12 --channel bec:0.5").exitCode == 2);
  CHECK(runCli("construct --N 8 --channel bec").exitCode == 2);  // no design param
  CHECK(runCli("simulate --N 16 --K 8 --channel bec:0.2 --sweep 0.2").exitCode == 2);
  CHECK(runCli("simulate --N 16 --channel bec --sweep 0.2").exitCode == 2);  // no K
  CHECK(runCli("simulate --N 16 --K 8 --rate 0.5 --channel bec --sweep 0.2").exitCode ==
        2);
  CHECK(runCli("folded-sim --N 16 --L 3").exitCode == 2);
  CHECK(runCli("--help").exitCode == 0);
}
