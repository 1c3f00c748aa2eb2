#pragma once

// End-to-end code assembly: rate-matching pattern, bit-channel construction
// over the matching underlying vector, and information-set selection.
//
// Ordering policy:
//   * Reordered — construct on the heterogeneous vector (pattern positions
//     carry the zero-capacity/perfect channel), so the selection reacts to
//     rate matching.
//   * Original — construct on N identical copies of the design channel, as
//     if no positions were removed.
//
// Shortening under the reordered policy freezes the source tail {N-P+1..N}:
// the removed coded positions are bit-reversals of that tail, and with those
// source bits pinned to zero every removed coded bit is identically zero,
// which is what lets the decoder treat them as perfectly known.  The codec
// tests assert this transmit-free property frame by frame.
//
// The original policy is deliberately the unaware baseline: it ranks and
// selects exactly as the mode-free code would, so its shortened codes may
// hand data to tail positions whose coded images are then dropped while the
// receiver still assumes they were zero.  That mis-design is the point of
// the ordering comparison in the FER harness — it is what "not reordering"
// costs — so selection here must not quietly repair it.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bms_channel.hpp"
#include "construction.hpp"
#include "rate_matching.hpp"

namespace polarkit {

enum class Ordering { Reordered, Original };

inline const char* orderingName(Ordering o) {
  return o == Ordering::Reordered ? "reordered" : "original";
}

struct BuiltCode {
  CodeSpec spec;
  BitChannelQuality quality;  // bit-channel order, metric as constructed
};

// True when the channel lies in the erasure family (at most one pair, and
// that pair noiseless-vs-erased), so the exact Z recursion applies.
inline bool erasureFamily(const BmsChannel& w) {
  if (w.pairs.size() > 1) return false;
  return w.pairs.empty() || w.pairs[0].p1 == 0.0;
}

inline BuiltCode assembleCode(const BmsChannel& designChannel, int N, int M,
                              int K, CodeMode mode, Ordering ordering, int mu) {
  const int n = log2Exact(N);
  CodeSpec spec;
  spec.N = N;
  spec.M = M;
  spec.P = N - M;
  spec.K = 0;  // selection fills the information set below
  spec.mode = mode;
  spec.pattern = makePattern(mode, N, spec.P);
  if (K < 0 || K > M) throw std::invalid_argument("assembleCode: need 0 <= K <= M");

  std::vector<BmsChannel> channels =
      ordering == Ordering::Reordered
          ? underlyingVector(designChannel, spec)
          : std::vector<BmsChannel>(N, designChannel);

  BitChannelQuality quality;
  bool becPath = true;
  for (const BmsChannel& w : channels) becPath = becPath && erasureFamily(w);
  if (becPath) {
    std::vector<double> z(N);
    for (int p = 0; p < N; ++p) z[p] = channelStats(channels[p]).bhattacharyya;
    quality = constructBecZ(std::move(z));
  } else {
    quality = constructModifiedTalVardy(std::move(channels), mu);
  }

  // Shortening structurally freezes the source tail — but only the
  // rate-matching-aware policy knows to do so.
  std::vector<char> forced(N + 1, 0);
  if (mode == CodeMode::Shorten && ordering == Ordering::Reordered)
    for (int i = N - spec.P + 1; i <= N; ++i) forced[i] = 1;

  std::vector<int> ranked(N);
  for (int i = 0; i < N; ++i) ranked[i] = i + 1;
  std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    return quality.values[a - 1] < quality.values[b - 1];
  });
  for (int i : ranked) {
    if (static_cast<int>(spec.infoSet.size()) == K) break;
    if (!forced[i]) spec.infoSet.push_back(i);
  }
  std::sort(spec.infoSet.begin(), spec.infoSet.end());
  spec.K = K;
  validateCodeSpec(spec);
  (void)n;
  return {std::move(spec), std::move(quality)};
}

}  // namespace polarkit
