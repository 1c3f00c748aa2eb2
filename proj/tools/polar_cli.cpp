// Command-line front end for code construction, rate-matching patterns,
// Monte-Carlo FER sweeps, and folded-encoder timing reports.
//
// Exit codes: 0 on success, 2 on usage or configuration errors.
// `simulate` writes deterministic CSV (seeded runs reproduce bytes) to
// --out/stdout and run metadata (including wall times) to stderr.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <polarkit/code_builder.hpp>
#include <polarkit/codec.hpp>
#include <polarkit/fer.hpp>
#include <polarkit/folded_sim.hpp>

namespace {

using nlohmann::json;
using namespace polarkit;

struct ChannelSpec {
  std::string kind;
  bool hasParam = false;
  double param = 0.0;
};

ChannelSpec parseChannelSpec(const std::string& text) {
  ChannelSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind != "bec" && spec.kind != "bsc" && spec.kind != "awgn")
    throw std::invalid_argument("channel must be bec, bsc, or awgn (got '" + text + "')");
  if (colon != std::string::npos) {
    spec.hasParam = true;
    std::size_t used = 0;
    spec.param = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1)
      throw std::invalid_argument("malformed channel parameter in '" + text + "'");
  }
  return spec;
}

CodeMode parseMode(const std::string& text) {
  if (text == "none") return CodeMode::None;
  if (text == "puncture") return CodeMode::Puncture;
  if (text == "shorten") return CodeMode::Shorten;
  throw std::invalid_argument("mode must be none, puncture, or shorten");
}

Ordering parseOrdering(const std::string& text) {
  if (text == "reordered") return Ordering::Reordered;
  if (text == "original") return Ordering::Original;
  throw std::invalid_argument("ordering must be reordered or original");
}

std::vector<double> parseSweep(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("malformed sweep list");
    std::size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("malformed sweep value '" + item + "'");
  }
  if (values.empty()) throw std::invalid_argument("empty sweep list");
  return values;
}

void writeText(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------- construct
struct ConstructArgs {
  int N = 0;
  std::string channel;
  std::string mode = "none";
  int M = -1;
  int K = -1;
  double rate = -1.0;
  std::string ordering = "reordered";
  int mu = 256;
  int awgnLevels = 2048;
  std::string out;
};

int runConstruct(const ConstructArgs& a) {
  const ChannelSpec chan = parseChannelSpec(a.channel);
  if (!chan.hasParam)
    throw std::invalid_argument("construct needs a design parameter, e.g. --channel bec:0.5");
  const CodeMode mode = parseMode(a.mode);
  const int M = a.M >= 0 ? a.M : a.N;
  int K = 0;
  if (a.K >= 0 && a.rate >= 0)
    throw std::invalid_argument("give either --K or --rate, not both");
  if (a.K >= 0) K = a.K;
  if (a.rate >= 0) K = static_cast<int>(std::lround(a.rate * M));

  BmsChannel w;
  if (chan.kind == "bec")
    w = makeChannel(ChannelKind::Bec, chan.param);
  else if (chan.kind == "bsc")
    w = makeChannel(ChannelKind::Bsc, chan.param);
  else
    w = makeAwgnQuantized(chan.param, a.awgnLevels);

  const BuiltCode built =
      assembleCode(w, a.N, M, K, mode, parseOrdering(a.ordering), a.mu);

  json out;
  out["schema"] = 1;
  out["N"] = built.spec.N;
  out["M"] = built.spec.M;
  out["P"] = built.spec.P;
  out["K"] = built.spec.K;
  out["mode"] = codeModeName(built.spec.mode);
  out["ordering"] = a.ordering;
  out["channel"] = a.channel;
  out["metric"] = built.quality.metric == QualityMetric::Bhattacharyya
                      ? "bhattacharyya"
                      : "errorProb";
  out["mu"] = built.quality.mu;
  out["approxCalls"] = built.quality.approxCalls;
  out["values"] = built.quality.values;
  out["pattern"] = built.spec.pattern;
  out["infoSet"] = built.spec.infoSet;
  writeText(a.out, out.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------ pattern
struct PatternArgs {
  int N = 0;
  int P = 0;
  std::string mode;
};

int runPattern(const PatternArgs& a) {
  const CodeMode mode = parseMode(a.mode);
  json out;
  out["schema"] = 1;
  out["N"] = a.N;
  out["P"] = a.P;
  out["mode"] = codeModeName(mode);
  out["pattern"] = makePattern(mode, a.N, a.P);
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------------- simulate
struct SimulateArgs {
  int N = 0;
  int M = -1;
  int K = -1;
  double rate = -1.0;
  std::string mode = "none";
  std::string ordering = "reordered";
  int mu = 256;
  int awgnLevels = 2048;
  std::string channel;
  std::string sweep;
  std::uint64_t seed = 1;
  long long maxFrames = 100000;
  long long maxErrors = 100;
  std::string out;
};

int runSimulate(const SimulateArgs& a) {
  const ChannelSpec chan = parseChannelSpec(a.channel);
  if (chan.hasParam)
    throw std::invalid_argument(
        "simulate takes the channel kind only; sweep parameters go in --sweep");

  ExperimentConfig config;
  config.channelKind = chan.kind == "bec"   ? TransmissionChannel::Kind::Bec
                       : chan.kind == "bsc" ? TransmissionChannel::Kind::Bsc
                                            : TransmissionChannel::Kind::Awgn;
  config.sweep = parseSweep(a.sweep);
  config.N = a.N;
  config.M = a.M >= 0 ? a.M : a.N;
  if (a.K >= 0 && a.rate >= 0)
    throw std::invalid_argument("give either --K or --rate, not both");
  if (a.K >= 0) config.K = a.K;
  if (a.rate >= 0) config.K = static_cast<int>(std::lround(a.rate * config.M));
  if (a.K < 0 && a.rate < 0)
    throw std::invalid_argument("simulate needs --K or --rate");
  config.mode = parseMode(a.mode);
  config.ordering = parseOrdering(a.ordering);
  config.mu = a.mu;
  config.awgnQuantLevels = a.awgnLevels;
  config.maxFrames = a.maxFrames;
  config.maxErrors = a.maxErrors;
  config.seed = a.seed;

  const FerResult result = runFer(config);

  std::string csv = "param,frames,errors,fer,ci_low,ci_high\n";
  char line[256];
  for (const auto& p : result.points) {
    std::snprintf(line, sizeof(line), "%.10g,%lld,%lld,%.8e,%.8e,%.8e\n", p.param,
                  p.frames, p.errors, p.fer, p.ciLow, p.ciHigh);
    csv += line;
  }
  writeText(a.out, csv);

  json meta;
  meta["schema"] = 1;
  meta["channel"] = chan.kind;
  meta["N"] = config.N;
  meta["M"] = config.M;
  meta["K"] = config.K;
  meta["mode"] = codeModeName(config.mode);
  meta["ordering"] = a.ordering;
  meta["mu"] = config.mu;
  meta["seed"] = config.seed;
  meta["maxFrames"] = config.maxFrames;
  meta["maxErrors"] = config.maxErrors;
  meta["notes"] = result.notes;
  if (!result.infoSetAtMidpoint.empty())
    meta["infoSetAtMidpoint"] = result.infoSetAtMidpoint;
  json wall = json::array();
  for (const auto& p : result.points) wall.push_back(p.wallTimeSeconds);
  meta["wallTimeSeconds"] = wall;
  std::cerr << meta.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------- folded-sim
struct FoldedArgs {
  int N = 0;
  int L = 0;
  bool pruned = false;
  int C = 0;
  long long frames = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string trace;
};

int runFoldedSim(const FoldedArgs& a) {
  const FoldedSchedule schedule = buildSchedule(a.N, a.L, a.pruned, a.C);

  json out;
  out["schema"] = 1;
  out["N"] = schedule.N;
  out["L"] = schedule.L;
  out["pruned"] = schedule.pruned;
  out["C"] = schedule.C;
  out["skippedInputBlocks"] = schedule.skippedInputBlocks;
  out["latencyCycles"] = schedule.latencyCycles;
  out["cyclesPerFrame"] = schedule.cyclesPerFrame;
  out["throughputBitsPerCycle"] =
      static_cast<double>(schedule.N) / schedule.cyclesPerFrame;
  out["xorGateCount"] = schedule.xorGateCount;
  out["registerCount"] = schedule.registerCount;

  if (a.frames > 0) {
    std::mt19937_64 rng(a.seed);
    std::vector<std::vector<std::uint8_t>> frames(a.frames);
    for (auto& u : frames) {
      u.assign(a.N, 0);
      for (int i = schedule.C; i < a.N; ++i)
        u[i] = static_cast<std::uint8_t>(rng() & 1u);
    }
    std::vector<TraceRow> traceRows;
    auto sim = simulate(schedule, frames, a.trace.empty() ? nullptr : &traceRows);
    bool allMatch = true;
    for (std::size_t f = 0; f < frames.size(); ++f)
      allMatch = allMatch && (sim.outputs[f] == encode(frames[f]));
    out["framesSimulated"] = a.frames;
    out["allMatchReference"] = allMatch;
    out["firstFrameBlockStamps"] = sim.blockStamps.front();

    if (!a.trace.empty()) {
      std::string csv = "cycle,stage,registers\n";
      for (const auto& row : traceRows)
        csv += std::to_string(row.cycle) + "," + row.stage + "," + row.registers + "\n";
      writeText(a.trace, csv);
    }
  }

  writeText(a.out, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polarkit: polar-code construction, rate matching, SC-decoded FER sweeps,"
      " and folded-encoder timing"};
  app.require_subcommand(1);

  ConstructArgs construct;
  auto* cmdConstruct = app.add_subcommand(
      "construct", "Build a code and emit bit-channel quality + info set as JSON");
  cmdConstruct->add_option("--N", construct.N, "Mother code length (power of two)")
      ->required();
  cmdConstruct->add_option("--channel", construct.channel,
                           "Design channel, kind:param (bec:0.5, bsc:0.1, awgn:EsN0dB)")
      ->required();
  cmdConstruct->add_option("--mode", construct.mode, "none|puncture|shorten");
  cmdConstruct->add_option("--M", construct.M, "Transmitted length (default N)");
  cmdConstruct->add_option("--K", construct.K, "Information bits (optional)");
  cmdConstruct->add_option("--rate", construct.rate, "Code rate K/M (optional)");
  cmdConstruct->add_option("--ordering", construct.ordering, "reordered|original");
  cmdConstruct->add_option("--mu", construct.mu, "Output-alphabet budget");
  cmdConstruct->add_option("--awgn-levels", construct.awgnLevels,
                           "AWGN quantizer alphabet size");
  cmdConstruct->add_option("--out", construct.out, "Output file (default stdout)");

  PatternArgs pattern;
  auto* cmdPattern =
      app.add_subcommand("pattern", "Emit puncturing/shortening positions as JSON");
  cmdPattern->add_option("--N", pattern.N, "Mother code length")->required();
  cmdPattern->add_option("--P", pattern.P, "Removed positions")->required();
  cmdPattern->add_option("--mode", pattern.mode, "puncture|shorten")->required();

  SimulateArgs simulateArgs;
  auto* cmdSimulate = app.add_subcommand(
      "simulate", "Monte-Carlo FER sweep; CSV to --out/stdout, metadata to stderr");
  cmdSimulate->add_option("--N", simulateArgs.N, "Mother code length")->required();
  cmdSimulate->add_option("--M", simulateArgs.M, "Transmitted length (default N)");
  cmdSimulate->add_option("--K", simulateArgs.K, "Information bits");
  cmdSimulate->add_option("--rate", simulateArgs.rate, "Code rate K/M");
  cmdSimulate->add_option("--mode", simulateArgs.mode, "none|puncture|shorten");
  cmdSimulate->add_option("--ordering", simulateArgs.ordering, "reordered|original");
  cmdSimulate->add_option("--mu", simulateArgs.mu, "Output-alphabet budget");
  cmdSimulate->add_option("--awgn-levels", simulateArgs.awgnLevels,
                          "AWGN quantizer alphabet size");
  cmdSimulate->add_option("--channel", simulateArgs.channel, "bec|bsc|awgn")
      ->required();
  cmdSimulate
      ->add_option("--sweep", simulateArgs.sweep,
                   "Comma-separated parameters (erasure/crossover prob or Eb/N0 dB)")
      ->required();
  cmdSimulate->add_option("--seed", simulateArgs.seed, "RNG seed");
  cmdSimulate->add_option("--max-frames", simulateArgs.maxFrames, "Frame cap per point");
  cmdSimulate->add_option("--max-errors", simulateArgs.maxErrors, "Error cap per point");
  cmdSimulate->add_option("--out", simulateArgs.out, "CSV file (default stdout)");

  FoldedArgs folded;
  auto* cmdFolded = app.add_subcommand(
      "folded-sim", "Folded-encoder cycle report as JSON; optional simulation+trace");
  cmdFolded->add_option("--N", folded.N, "Frame length (power of two)")->required();
  cmdFolded->add_option("--L", folded.L, "Parallelism (power of two)")->required();
  cmdFolded->add_flag("--pruned", folded.pruned, "Prune leading frozen zeros");
  cmdFolded->add_option("--C", folded.C, "Leading frozen count (with --pruned)");
  cmdFolded->add_option("--frames", folded.frames,
                        "Random frames to simulate and check against the encoder");
  cmdFolded->add_option("--seed", folded.seed, "RNG seed for random frames");
  cmdFolded->add_option("--out", folded.out, "Report file (default stdout)");
  cmdFolded->add_option("--trace", folded.trace,
                        "Per-cycle register trace CSV (first frame)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmdConstruct->parsed()) return runConstruct(construct);
    if (cmdPattern->parsed()) return runPattern(pattern);
    if (cmdSimulate->parsed()) return runSimulate(simulateArgs);
    if (cmdFolded->parsed()) return runFoldedSim(folded);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
