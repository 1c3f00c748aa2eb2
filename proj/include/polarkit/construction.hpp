#pragma once

// Bit-channel quality construction for N = 2^n independent (not necessarily
// identical) BMS channels.
//
// Two paths:
//   * constructBecZ — exact Bhattacharyya recursion, valid when every
//     underlying channel is an erasure channel (including the punctured
//     Z = 1 and shortened Z = 0 extremes).
//   * constructModifiedTalVardy — one level-by-level pass over the butterfly
//     schedule, transforming channel pairs in place and degrading-merging
//     every intermediate back to at most mu symbols.
//
// The in-place schedule leaves position p holding the bit channel with the
// bit-reversed index; both constructors undo that permutation and return
// values in bit-channel order (index i describes the channel seen by source
// bit u_i).  This mapping is pinned by the enumeration oracle in the tests,
// not assumed.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bit_reversal.hpp"
#include "bms_channel.hpp"
#include "degrading_merge.hpp"

namespace polarkit {

enum class QualityMetric { Bhattacharyya, ErrorProb };

struct BitChannelQuality {
  std::vector<double> values;  // entry i-1 describes bit channel i, in [0,1]
  QualityMetric metric = QualityMetric::Bhattacharyya;
  int mu = 0;                  // merge budget used, 0 when exact
  long long approxCalls = 0;   // degrading-merge invocations in the main loop
};

// Positions paired by the j-th Z-shape of level i (1-based everywhere):
// p_z = ceil(j / 2^{i-1}); k1 = (p_z - 1) 2^i + j - (p_z - 1) 2^{i-1};
// k2 = k1 + 2^{i-1}.
inline std::pair<int, int> tran(int i, int j, int N) {
  const int n = log2Exact(N);
  if (i < 1 || i > n) throw std::invalid_argument("tran: level out of range");
  if (j < 1 || j > N / 2) throw std::invalid_argument("tran: z-shape out of range");
  const int half = 1 << (i - 1);
  const int pz = (j + half - 1) / half;
  const int k1 = (pz - 1) * (1 << i) + j - (pz - 1) * half;
  return {k1, k1 + half};
}

// One polarization step on a (possibly heterogeneous) channel pair.
// W0 sees output (y1, y2); W1 sees (y1, y2, u1).  Both come back in
// canonical conjugate-pair form.
inline std::pair<BmsChannel, BmsChannel> transformPair(const BmsChannel& wu,
                                                       const BmsChannel& wb) {
  const std::vector<SymbolPair> a = wu.enumerateSymbols();
  const std::vector<SymbolPair> b = wb.enumerateSymbols();
  std::vector<SymbolPair> w0, w1;
  w0.reserve(a.size() * b.size());
  w1.reserve(2 * a.size() * b.size());
  for (const SymbolPair& sa : a) {
    for (const SymbolPair& sb : b) {
      w0.push_back({0.5 * (sa.p0 * sb.p0 + sa.p1 * sb.p1),
                    0.5 * (sa.p1 * sb.p0 + sa.p0 * sb.p1)});
      w1.push_back({0.5 * sa.p0 * sb.p0, 0.5 * sa.p1 * sb.p1});  // u1 = 0
      w1.push_back({0.5 * sa.p1 * sb.p0, 0.5 * sa.p0 * sb.p1});  // u1 = 1
    }
  }
  return {channelFromSymbols(std::move(w0)), channelFromSymbols(std::move(w1))};
}

namespace detail {

// Undo the in-place schedule's implicit permutation: bit channel i ended up
// at storage position bitReverse(i).
inline std::vector<double> toBitChannelOrder(const std::vector<double>& inplace) {
  const int n = log2Exact(static_cast<int>(inplace.size()));
  std::vector<double> out(inplace.size());
  for (int i = 1; i <= static_cast<int>(inplace.size()); ++i)
    out[i - 1] = inplace[bitReverse(i, n) - 1];
  return out;
}

}  // namespace detail

// Exact erasure-channel recursion: Z0 = z1 + z2 - z1 z2, Z1 = z1 z2 over the
// in-place butterfly schedule.
inline BitChannelQuality constructBecZ(std::vector<double> z) {
  const int N = static_cast<int>(z.size());
  const int n = log2Exact(N);
  for (double v : z)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("constructBecZ: Z outside [0,1]");
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= N / 2; ++j) {
      const auto [k1, k2] = tran(i, j, N);
      const double z1 = z[k1 - 1], z2 = z[k2 - 1];
      z[k1 - 1] = z1 + z2 - z1 * z2;
      z[k2 - 1] = z1 * z2;
    }
  }
  BitChannelQuality q;
  q.values = detail::toBitChannelOrder(z);
  q.metric = QualityMetric::Bhattacharyya;
  return q;
}

// Heterogeneous construction with bounded intermediate alphabets.  Exactly
// two degrading merges per Z-shape: approxCalls = N log2 N.  The underlying
// channels are reduced to the budget once up front (not counted; the loop
// invariant is that every stored channel fits in mu symbols).
inline BitChannelQuality constructModifiedTalVardy(std::vector<BmsChannel> channels,
                                                   int mu) {
  const int N = static_cast<int>(channels.size());
  const int n = log2Exact(N);
  if (mu < 2) throw std::invalid_argument("constructModifiedTalVardy: mu < 2");
  for (BmsChannel& w : channels) w = degradingMerge(w, mu);

  BitChannelQuality q;
  q.metric = QualityMetric::ErrorProb;
  q.mu = mu;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= N / 2; ++j) {
      const auto [k1, k2] = tran(i, j, N);
      auto [w0, w1] = transformPair(channels[k1 - 1], channels[k2 - 1]);
      channels[k1 - 1] = degradingMerge(w0, mu);
      channels[k2 - 1] = degradingMerge(w1, mu);
      q.approxCalls += 2;
    }
  }
  std::vector<double> pe(N);
  for (int p = 0; p < N; ++p) pe[p] = channelStats(channels[p]).errorProb;
  q.values = detail::toBitChannelOrder(pe);
  return q;
}

// Indices of the K most reliable bit channels (smallest quality value;
// ties go to the lower index), returned in ascending order.
inline std::vector<int> selectInfoSet(const BitChannelQuality& quality, int K) {
  const int N = static_cast<int>(quality.values.size());
  if (K < 0 || K > N) throw std::invalid_argument("selectInfoSet: K out of range");
  std::vector<int> idx(N);
  std::iota(idx.begin(), idx.end(), 1);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return quality.values[a - 1] < quality.values[b - 1];
  });
  idx.resize(K);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace polarkit
