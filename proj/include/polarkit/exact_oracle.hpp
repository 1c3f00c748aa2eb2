#pragma once

// Brute-force bit-channel computation by joint-output enumeration.
//
// For each source index i, the bit channel maps u_i to (y_1..y_N, u_1..u_{i-1})
// with the later source bits marginalized uniformly:
//   W^(i)(y, prefix | b) = 2^{-(N-1)} * sum over suffixes of
//                          prod_p W_p(y_p | x_p),   x = u * G,
// where the generator applies the bit-reversal permutation followed by the
// n-fold Kronecker power of the standard 2x2 kernel.  Exact up to double
// rounding; exponential in N, so inputs are size-guarded.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bms_channel.hpp"
#include "construction.hpp"

namespace polarkit {

inline BitChannelQuality exactOracle(const std::vector<BmsChannel>& channels,
                                     std::vector<ChannelStats>* statsOut = nullptr) {
  const int N = static_cast<int>(channels.size());
  const int n = log2Exact(N);

  std::vector<std::vector<SymbolPair>> alphabet(N);
  double joint = 1.0;
  for (int p = 0; p < N; ++p) {
    alphabet[p] = channels[p].enumerateSymbols();
    joint *= static_cast<double>(alphabet[p].size());
  }
  if (joint * static_cast<double>(1 << N) > 4e6)
    throw std::invalid_argument("exactOracle: enumeration bound exceeded");
  const std::size_t jointSize = static_cast<std::size_t>(joint);

  // Row t of the generator (1-based source index) as a coded-position mask.
  std::vector<unsigned> rowMask(N);
  for (int t = 1; t <= N; ++t) {
    const unsigned r = static_cast<unsigned>(bitReverse(t, n) - 1);
    unsigned mask = 0;
    for (unsigned c = 0; c < static_cast<unsigned>(N); ++c)
      if ((c & r) == c) mask |= 1u << c;
    rowMask[t - 1] = mask;
  }

  const double scale = std::ldexp(1.0, -(N - 1));
  BitChannelQuality q;
  q.metric = QualityMetric::ErrorProb;
  if (statsOut) statsOut->clear();

  std::vector<SymbolPair> rows;
  for (int i = 1; i <= N; ++i) {
    rows.assign((static_cast<std::size_t>(1) << (i - 1)) * jointSize, {0.0, 0.0});
    for (unsigned u = 0; u < (1u << N); ++u) {
      // u's bit for source index t is (u >> (N - t)) & 1, so u_1 is the MSB.
      unsigned xMask = 0;
      for (int t = 1; t <= N; ++t)
        if ((u >> (N - t)) & 1u) xMask ^= rowMask[t - 1];
      const unsigned prefix = u >> (N - i + 1);
      const bool b = (u >> (N - i)) & 1u;
      SymbolPair* base = rows.data() + static_cast<std::size_t>(prefix) * jointSize;

      // Depth-first product over coded positions; flat output index grows in
      // mixed radix along the way.
      auto descend = [&](auto&& self, int p, std::size_t flat, double prod) -> void {
        if (p == N) {
          (b ? base[flat].p1 : base[flat].p0) += scale * prod;
          return;
        }
        const bool xp = (xMask >> p) & 1u;
        const auto& symbols = alphabet[p];
        for (std::size_t d = 0; d < symbols.size(); ++d) {
          const double w = xp ? symbols[d].p1 : symbols[d].p0;
          if (w != 0.0) self(self, p + 1, flat * symbols.size() + d, prod * w);
        }
      };
      descend(descend, 0, 0, 1.0);
    }
    const BmsChannel wch = channelFromSymbols(rows);
    const ChannelStats s = channelStats(wch);
    q.values.push_back(s.errorProb);
    if (statsOut) statsOut->push_back(s);
  }
  return q;
}

}  // namespace polarkit
