#pragma once

// Cycle-accurate behavioral simulator of the L-parallel folded polar
// encoder and its pruned variant.
//
// The machine streams a frame as N/L blocks of L bits (natural source
// order, u_1..u_L first).  Butterfly stages whose pair distance is >= L
// are realized as commutator stages: each lane owns a FIFO of
// delaysPerLane = distance/L blocks and alternates between a fill phase
// (output = popped front, i.e. the pass-through half of the previous
// group) and a combine phase (output = popped front XOR current input).
// Stages with distance < L pair lanes inside a block and are
// combinational.  Stages are ordered largest distance first; the stage
// order is immaterial to the computed function because the butterfly
// layers commute.
//
// The machine emits y = u * F^{(x)n} in natural block order; the
// documented output reordering x[j] = y[bitrev(j)] turns that into
// encode(u).  Total pipeline offset is sum(delaysPerLane) = N/L - 1
// cycles, so the first output block appears N/L cycles (inclusive)
// after the first input block.
//
// Pruned operation with C leading frozen zeros skips the first
// floor(C/L) input blocks (their register effect is pre-loaded zeros),
// shortening the frame period to ceil((N-C)/L) cycles, and coalesces
// the last 1 + floor(C/L) output blocks into the final output cycle via
// a widened capture register (modeled, not traced).  Output-block j of
// frame f is stamped at cycle f*T + (T-1) + min(j, T-1) + 1 with
// T = cyclesPerFrame, counting the frame's first real input as cycle
// f*T + 1.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bit_reversal.hpp"

namespace polarkit {

struct FoldedStage {
  enum class Kind { Commutator, XpArray };
  Kind kind;
  int span;           // butterfly pair distance in bit positions
  int units;          // parallel 2-lane modules at this stage (always L/2)
  int delaysPerLane;  // FIFO depth in blocks (0 for combinational stages)
  std::string name;
};

struct FoldedSchedule {
  int N = 0;
  int L = 0;
  bool pruned = false;
  int C = 0;                  // leading frozen zeros assumed by pruning
  int skippedInputBlocks = 0; // floor(C/L), all-zero blocks never fed
  int latencyCycles = 0;      // first-in to first-out, inclusive
  int cyclesPerFrame = 0;     // steady-state frame period
  int registerCount = 0;      // 1-bit delay slots (+2 capture regs pruned)
  long long xorGateCount = 0; // arithmetic units + pruning mux equivalents
  std::vector<FoldedStage> stages;
};

struct CycleReport {
  int latencyCycles = 0;
  int cyclesPerFrame = 0;
  double throughputBitsPerCycle = 0.0;
  long long xorGateCount = 0;
  int registerCount = 0;
};

struct TraceRow {
  long long cycle = 0;  // <= 0 rows are pipeline preload steps
  std::string stage;
  std::string registers;  // FIFO contents front-to-back, one char per bit
};

struct FoldedSimulation {
  std::vector<std::vector<std::uint8_t>> outputs;  // == encode(frame)
  std::vector<std::vector<long long>> blockStamps; // [frame][block] cycle
  CycleReport report;
};

// Number of consecutive frozen source positions at the start of u.
inline int leadingFrozenCount(const std::vector<int>& infoSet, int N) {
  if (N < 1) throw std::invalid_argument("leadingFrozenCount: N must be positive");
  int lowest = N + 1;
  for (int i : infoSet) {
    if (i < 1 || i > N)
      throw std::invalid_argument("leadingFrozenCount: index out of range");
    lowest = std::min(lowest, i);
  }
  return lowest - 1;  // empty info set -> N
}

inline FoldedSchedule buildSchedule(int N, int L, bool pruned, int C = 0) {
  const int n = log2Exact(N);
  const int lBits = log2Exact(L);
  if (L < 2) throw std::invalid_argument("buildSchedule: parallelism must be >= 2");
  if (L > N) throw std::invalid_argument("buildSchedule: parallelism exceeds frame length");
  if (pruned) {
    if (C < 0) throw std::invalid_argument("buildSchedule: negative leading-zero count");
    if (C >= N) throw std::invalid_argument("buildSchedule: leading-zero count must be below N");
  } else if (C != 0) {
    throw std::invalid_argument("buildSchedule: leading-zero count requires pruning");
  }

  FoldedSchedule s;
  s.N = N;
  s.L = L;
  s.pruned = pruned;
  s.C = pruned ? C : 0;
  s.skippedInputBlocks = pruned ? C / L : 0;

  // Cross-block stages, largest distance first: distance L*2^{i-1} for
  // i = log2(N/L) down to 1 (commutator S_{2^i}, K/2 delays per lane).
  for (int i = n - lBits; i >= 1; --i) {
    FoldedStage st;
    st.kind = FoldedStage::Kind::Commutator;
    st.delaysPerLane = 1 << (i - 1);
    st.span = L * st.delaysPerLane;
    st.units = L / 2;
    st.name = "S" + std::to_string(1 << i);
    s.stages.push_back(st);
  }
  // In-block stages, distance L/2 down to 1 (XP arrays behind their
  // routing permutations, which are wires in a behavioral model).
  for (int d = L / 2; d >= 1; d /= 2) {
    FoldedStage st;
    st.kind = FoldedStage::Kind::XpArray;
    st.span = d;
    st.units = L / 2;
    st.delaysPerLane = 0;
    st.name = "XP" + std::to_string(d);
    s.stages.push_back(st);
  }

  const int blocksPerFrame = N / L;
  s.cyclesPerFrame =
      pruned ? (N - C + L - 1) / L : blocksPerFrame;  // ceil((N-C)/L)
  s.latencyCycles = s.cyclesPerFrame;
  int delaySlots = 0;
  for (const auto& st : s.stages) delaySlots += L * st.delaysPerLane;
  s.registerCount = delaySlots + (pruned ? 2 : 0);
  s.xorGateCount = static_cast<long long>(L / 2) * n +
                   (pruned ? static_cast<long long>(L / 2) * C : 0);
  return s;
}

namespace detail {

// One commutator stage: per-lane block FIFO with a fill/combine phase of
// period 2*depth.  Every step pops the front block and pushes the input;
// combine-phase steps XOR the input into the popped block.
struct CommutatorState {
  int depth = 0;
  int startOffset = 0;  // machine cycles before this stage sees data
  std::vector<std::uint8_t> ring;  // depth blocks of L bits

  void reset(int L) { ring.assign(static_cast<std::size_t>(depth) * L, 0); }

  void step(std::vector<std::uint8_t>& block, long long machineCycle) {
    const long long t = machineCycle - startOffset;
    const int L = static_cast<int>(block.size());
    if (t < 0) {
      std::fill(block.begin(), block.end(), 0);
      return;
    }
    const bool combine = ((t / depth) & 1) != 0;
    std::uint8_t* slot = ring.data() + (t % depth) * L;
    for (int l = 0; l < L; ++l) {
      const std::uint8_t popped = slot[l];
      slot[l] = block[l];
      block[l] = combine ? static_cast<std::uint8_t>(popped ^ block[l]) : popped;
    }
  }
};

}  // namespace detail

inline FoldedSimulation simulate(const FoldedSchedule& schedule,
                                 const std::vector<std::vector<std::uint8_t>>& frames,
                                 std::vector<TraceRow>* trace = nullptr) {
  const int N = schedule.N, L = schedule.L;
  const int blocks = N / L;
  const int skip = schedule.skippedInputBlocks;
  const int T = schedule.cyclesPerFrame;
  const int n = log2Exact(N);

  for (const auto& u : frames) {
    if (static_cast<int>(u.size()) != N)
      throw std::invalid_argument("simulate: frame length differs from N");
    for (std::uint8_t b : u)
      if (b > 1) throw std::invalid_argument("simulate: bits must be 0 or 1");
    if (schedule.pruned)
      for (int i = 0; i < schedule.C; ++i)
        if (u[i] != 0)
          throw std::invalid_argument(
              "simulate: pruned schedule requires the first C source bits to be zero");
  }

  std::vector<detail::CommutatorState> cross;
  int offset = 0;
  for (const auto& st : schedule.stages) {
    if (st.kind != FoldedStage::Kind::Commutator) continue;
    detail::CommutatorState cs;
    cs.depth = st.delaysPerLane;
    cs.startOffset = offset;
    offset += cs.depth;
    cross.push_back(cs);
  }
  const int pipelineOffset = offset;  // = N/L - 1 for L < N

  FoldedSimulation sim;
  sim.outputs.reserve(frames.size());
  sim.blockStamps.reserve(frames.size());

  std::vector<std::uint8_t> block(L), yFrame(N);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const auto& u = frames[f];
    for (auto& cs : cross) cs.reset(L);

    // Machine steps: `skip` preloaded zero blocks, `blocks - skip` real
    // input blocks, then zero-fed drain until every output block of this
    // frame has emerged.
    const long long steps = blocks + pipelineOffset;
    for (long long vc = 0; vc < steps; ++vc) {
      if (vc < skip || vc >= blocks)
        std::fill(block.begin(), block.end(), 0);
      else
        std::copy(u.begin() + vc * L, u.begin() + (vc + 1) * L, block.begin());

      for (auto& cs : cross) cs.step(block, vc);
      // In-block combinational butterfly layers.
      for (int d = L / 2; d >= 1; d /= 2)
        for (int l = 0; l < L; ++l)
          if ((l & (2 * d - 1)) < d) block[l] ^= block[l + d];

      const long long j = vc - pipelineOffset;
      if (j >= 0) std::copy(block.begin(), block.end(), yFrame.begin() + j * L);

      if (trace && f == 0) {
        for (const auto& cs : cross) {
          TraceRow row;
          row.cycle = vc - skip + 1;
          row.stage = "S" + std::to_string(2 * cs.depth);
          row.registers.reserve(cs.ring.size());
          for (std::uint8_t b : cs.ring) row.registers.push_back(b ? '1' : '0');
          trace->push_back(std::move(row));
        }
      }
    }

    // Documented output reordering: x[j] = y[bitrev(j)].
    std::vector<std::uint8_t> x(N);
    for (int j = 1; j <= N; ++j) x[j - 1] = yFrame[bitReverse(j, n) - 1];
    sim.outputs.push_back(std::move(x));

    std::vector<long long> stamps(blocks);
    const long long base = static_cast<long long>(f) * T + 1;
    for (int j = 0; j < blocks; ++j)
      stamps[j] = base + (T - 1) + std::min<long long>(j, T - 1);
    sim.blockStamps.push_back(std::move(stamps));
  }

  sim.report.latencyCycles = schedule.latencyCycles;
  sim.report.cyclesPerFrame = schedule.cyclesPerFrame;
  sim.report.throughputBitsPerCycle = static_cast<double>(N) / T;
  sim.report.xorGateCount = schedule.xorGateCount;
  sim.report.registerCount = schedule.registerCount;
  return sim;
}

}  // namespace polarkit
