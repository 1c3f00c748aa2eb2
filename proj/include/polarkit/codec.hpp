#pragma once

// Non-systematic polar encoder and successive-cancellation decoder.
//
// Encoder: x = u * B * F^{(x)n} — bit-reversal permutation followed by the
// in-place XOR butterfly.
//
// Decoder: LLR-domain SC with the exact check-node rule (no min-sum
// approximation).  Certainty is represented by saturating arithmetic at
// +/-LLRMAX instead of IEEE infinities.  Adjacent positions pair at the
// outermost stage, matching the encoder's butterfly; source decisions come
// out in natural u order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bit_reversal.hpp"
#include "rate_matching.hpp"

namespace polarkit {

constexpr double LLRMAX = 300.0;  // exp-overflow-safe stand-in for infinity

inline std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& u) {
  const int N = static_cast<int>(u.size());
  const int n = log2Exact(N);
  for (std::uint8_t bit : u)
    if (bit > 1) throw std::invalid_argument("encode: bits must be 0 or 1");
  std::vector<std::uint8_t> x(N);
  for (int j = 1; j <= N; ++j) x[j - 1] = u[bitReverse(j, n) - 1];
  for (int s = 0; s < n; ++s) {
    const int span = 1 << s;
    for (int block = 0; block < N; block += 2 * span)
      for (int k = block; k < block + span; ++k) x[k] ^= x[k + span];
  }
  return x;
}

// Transmission-side channel summary used to turn received symbols into LLRs
// (and, in the harness, to sample them).  param: erasure probability for
// bec, crossover probability for bsc, noise variance sigma^2 for awgn
// (BPSK, 0 -> +1, 1 -> -1).
struct TransmissionChannel {
  enum class Kind { Bec, Bsc, Awgn };
  Kind kind = Kind::Bec;
  double param = 0.0;

  // BEC symbols: 0.0, 1.0, or 0.5 (erasure).  BSC symbols: 0.0 or 1.0.
  // AWGN symbols: any real observation.
  double llrOf(double symbol) const {
    switch (kind) {
      case Kind::Bec:
        if (symbol == 0.0) return LLRMAX;
        if (symbol == 1.0) return -LLRMAX;
        if (symbol == 0.5) return 0.0;
        throw std::invalid_argument("llrOf: bec symbol must be 0, 1, or 0.5");
      case Kind::Bsc: {
        if (symbol != 0.0 && symbol != 1.0)
          throw std::invalid_argument("llrOf: bsc symbol must be 0 or 1");
        const double magnitude =
            std::min(LLRMAX, std::log((1.0 - param) / param));
        return symbol == 0.0 ? magnitude : -magnitude;
      }
      case Kind::Awgn: {
        const double v = 2.0 * symbol / param;
        return std::clamp(v, -LLRMAX, LLRMAX);
      }
    }
    throw std::invalid_argument("llrOf: unknown channel kind");
  }
};

// Length-N decoder input from the M received symbols: punctured positions
// know nothing (LLR 0), shortened positions are certainly zero (+LLRMAX),
// and the m-th received symbol feeds the m-th surviving coded position in
// ascending position order.
inline std::vector<double> initLlrs(const std::vector<double>& received,
                                    const TransmissionChannel& channel,
                                    const CodeSpec& spec) {
  validateCodeSpec(spec);
  if (static_cast<int>(received.size()) != spec.M)
    throw std::invalid_argument("initLlrs: received length differs from M");
  std::vector<char> removed(spec.N + 1, 0);
  for (int p : spec.pattern) removed[p] = 1;
  std::vector<double> llr(spec.N);
  std::size_t m = 0;
  for (int p = 1; p <= spec.N; ++p) {
    if (removed[p])
      llr[p - 1] = spec.mode == CodeMode::Puncture ? 0.0 : LLRMAX;
    else
      llr[p - 1] = channel.llrOf(received[m++]);
  }
  return llr;
}

namespace detail {

// Exact check-node combination in the LLR domain:
// f(a,b) = sign(a)sign(b) min(|a|,|b|) + log1p(e^{-(M+m)}) - log1p(e^{-(M-m)}),
// with corrections skipped once the exponent cannot move a double.
inline double checkNode(double a, double b) {
  const double aa = std::abs(a), ab = std::abs(b);
  const double m = std::min(aa, ab), M = std::max(aa, ab);
  double g = m;  // f(|a|,|b|), always >= 0; f is odd in each argument
  if (M + m <= 40.0) g += std::log1p(std::exp(-(M + m)));
  if (M - m <= 40.0) g -= std::log1p(std::exp(-(M - m)));
  return ((a < 0) != (b < 0)) ? -g : g;
}

inline double variableNode(double a, double b, std::uint8_t c) {
  const double v = b + (c ? -a : a);
  return std::clamp(v, -LLRMAX, LLRMAX);
}

}  // namespace detail

// Reusable SC decoder workspace for one code length.
class ScDecoder {
 public:
  explicit ScDecoder(int N) : N_(N), n_(log2Exact(N)) {
    alpha_.assign(static_cast<std::size_t>(n_ + 1) * N_, 0.0);
    beta_.assign(static_cast<std::size_t>(n_ + 1) * N_, 0);
    decisions_.assign(N_, 0);
  }

  // frozenMask[i-1] nonzero freezes source bit i to zero.
  const std::vector<std::uint8_t>& decode(const std::vector<double>& llr,
                                          const std::vector<char>& frozenMask) {
    if (static_cast<int>(llr.size()) != N_ ||
        static_cast<int>(frozenMask.size()) != N_)
      throw std::invalid_argument("ScDecoder: length mismatch");
    std::copy(llr.begin(), llr.end(), alpha_.begin());
    frozen_ = frozenMask.data();
    walk(0, 0, N_);
    return decisions_;
  }

 private:
  double* alphaRow(int level) { return alpha_.data() + static_cast<std::size_t>(level) * N_; }
  std::uint8_t* betaRow(int level) { return beta_.data() + static_cast<std::size_t>(level) * N_; }

  void walk(int level, int start, int len) {
    double* a = alphaRow(level);
    std::uint8_t* c = betaRow(level);
    if (len == 1) {
      const std::uint8_t bit =
          frozen_[start] ? 0 : static_cast<std::uint8_t>(a[start] < 0.0);
      decisions_[start] = bit;  // ties (exactly 0) decode to 0
      c[start] = bit;
      return;
    }
    const int half = len / 2;
    double* aNext = alphaRow(level + 1);
    std::uint8_t* cNext = betaRow(level + 1);
    for (int t = 0; t < half; ++t)
      aNext[start + t] = detail::checkNode(a[start + 2 * t], a[start + 2 * t + 1]);
    walk(level + 1, start, half);
    for (int t = 0; t < half; ++t)
      aNext[start + half + t] = detail::variableNode(
          a[start + 2 * t], a[start + 2 * t + 1], cNext[start + t]);
    walk(level + 1, start + half, half);
    for (int t = 0; t < half; ++t) {
      c[start + 2 * t] = cNext[start + t] ^ cNext[start + half + t];
      c[start + 2 * t + 1] = cNext[start + half + t];
    }
  }

  int N_, n_;
  std::vector<double> alpha_;
  std::vector<std::uint8_t> beta_;
  std::vector<std::uint8_t> decisions_;
  const char* frozen_ = nullptr;
};

// One-shot convenience wrapper taking the frozen set as 1-based indices.
inline std::vector<std::uint8_t> scDecode(const std::vector<double>& llr,
                                          const std::vector<int>& frozen) {
  const int N = static_cast<int>(llr.size());
  log2Exact(N);
  std::vector<char> mask(N, 0);
  for (int i : frozen) {
    if (i < 1 || i > N) throw std::invalid_argument("scDecode: frozen index out of range");
    mask[i - 1] = 1;
  }
  ScDecoder dec(N);
  return dec.decode(llr, mask);
}

}  // namespace polarkit
