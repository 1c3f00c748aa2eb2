#pragma once

// Bit-reversal permutation on 1-based indices.

#include <stdexcept>

namespace polarkit {

// Reverse the n-bit binary expansion of i-1 and return the 1-based result.
inline int bitReverse(int i, int nBits) {
  if (nBits < 0 || nBits > 30)
    throw std::invalid_argument("bitReverse: unsupported bit width");
  const int n = 1 << nBits;
  if (i < 1 || i > n) throw std::invalid_argument("bitReverse: index out of range");
  int v = i - 1, r = 0;
  for (int b = 0; b < nBits; ++b) {
    r = (r << 1) | (v & 1);
    v >>= 1;
  }
  return r + 1;
}

// log2 for exact powers of two; rejects everything else.
inline int log2Exact(int n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("log2Exact: not a power of two");
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  return bits;
}

}  // namespace polarkit
