#pragma once

// Rate matching: quasi-uniform puncturing (QUP) and its reversal-based
// shortening counterpart (RQUP), the heterogeneous underlying-channel
// vector, and the CodeSpec bundle tying N, M, K, mode, pattern and infoSet
// together.  All indices 1-based.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bit_reversal.hpp"
#include "bms_channel.hpp"

namespace polarkit {

enum class CodeMode { None, Puncture, Shorten };

inline const char* codeModeName(CodeMode mode) {
  switch (mode) {
    case CodeMode::None: return "none";
    case CodeMode::Puncture: return "puncture";
    case CodeMode::Shorten: return "shorten";
  }
  return "?";
}

// Coded-bit positions removed from transmission: bit-reversed prefix
// {1..P} when puncturing, bit-reversed suffix {N-P+1..N} when shortening.
// Emitted in generation order.
inline std::vector<int> makePattern(CodeMode mode, int N, int P) {
  const int n = log2Exact(N);
  if (P < 0 || P >= N) throw std::invalid_argument("makePattern: need 0 <= P < N");
  std::vector<int> pattern;
  pattern.reserve(P);
  if (mode == CodeMode::Puncture) {
    for (int i = 1; i <= P; ++i) pattern.push_back(bitReverse(i, n));
  } else if (mode == CodeMode::Shorten) {
    for (int i = N - P + 1; i <= N; ++i) pattern.push_back(bitReverse(i, n));
  } else if (P != 0) {
    throw std::invalid_argument("makePattern: mode none cannot drop positions");
  }
  return pattern;
}

struct CodeSpec {
  int N = 0;  // mother code length (power of two)
  int M = 0;  // transmitted length, N - P
  int P = 0;  // removed coded bits
  int K = 0;  // information bits
  CodeMode mode = CodeMode::None;
  std::vector<int> pattern;  // P coded-bit positions, 1-based
  std::vector<int> infoSet;  // K source indices, ascending, 1-based
  // Frozen source bits always carry value zero.
};

inline void validateCodeSpec(const CodeSpec& spec) {
  const int n = log2Exact(spec.N);
  (void)n;
  if (spec.M != spec.N - spec.P || spec.M < 1)
    throw std::invalid_argument("CodeSpec: M must equal N - P");
  if (spec.K < 0 || spec.K > spec.M)
    throw std::invalid_argument("CodeSpec: need 0 <= K <= M");
  if (static_cast<int>(spec.pattern.size()) != spec.P)
    throw std::invalid_argument("CodeSpec: pattern size differs from P");
  if (static_cast<int>(spec.infoSet.size()) != spec.K)
    throw std::invalid_argument("CodeSpec: infoSet size differs from K");
  auto inRange = [&](const std::vector<int>& v) {
    std::vector<char> seen(spec.N + 1, 0);
    for (int i : v) {
      if (i < 1 || i > spec.N || seen[i]) return false;
      seen[i] = 1;
    }
    return true;
  };
  if (!inRange(spec.pattern) || !inRange(spec.infoSet))
    throw std::invalid_argument("CodeSpec: indices out of range or repeated");
  if (spec.mode == CodeMode::None && spec.P != 0)
    throw std::invalid_argument("CodeSpec: mode none requires P = 0");
}

// Length-N channel vector for construction: copies of W, with the pattern
// positions replaced by the zero-capacity (puncture) or perfect (shorten)
// channel.
inline std::vector<BmsChannel> underlyingVector(const BmsChannel& w,
                                                const CodeSpec& spec) {
  validateCodeSpec(spec);
  std::vector<BmsChannel> channels(spec.N, w);
  if (spec.mode == CodeMode::None) return channels;
  const BmsChannel replacement = makeChannel(
      spec.mode == CodeMode::Puncture ? ChannelKind::Punctured : ChannelKind::Shortened);
  for (int p : spec.pattern) channels[p - 1] = replacement;
  return channels;
}

}  // namespace polarkit
