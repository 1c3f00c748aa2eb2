#pragma once

// Finite-alphabet binary-input memoryless symmetric (BMS) channels.
//
// A BMS channel's output alphabet splits into conjugate pairs {y, y~} with
// W(y|0) = W(y~|1), plus at most one self-conjugate symbol e with
// W(e|0) = W(e|1).  We store one representative per pair as (p0, p1) =
// (W(y|0), W(y|1)) with p0 >= p1, sorted by likelihood ratio p0/p1
// descending (p1 = 0 sorts first, ratio treated as +inf), and the
// self-conjugate symbol as a single probability `selfConjugate`.
//
// Mass convention: sum over pairs of (p0 + p1) plus selfConjugate equals 1,
// because under input 0 the pair {y, y~} carries probability p0 + p1.
//
// Canonicalization consolidates symbols with exactly equal likelihood
// ratios, which is lossless: equal-ratio outputs are interchangeable for
// any downstream decision or transform.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarkit {

struct SymbolPair {
  double p0 = 0.0;
  double p1 = 0.0;
};

struct BmsChannel {
  std::vector<SymbolPair> pairs;  // canonical: p0 >= p1, LR descending
  double selfConjugate = 0.0;     // W(e|0) = W(e|1) for the LR-1 symbol, or 0

  // Alphabet size counting both members of every pair and the
  // self-conjugate symbol if present.
  std::size_t symbolCount() const {
    return 2 * pairs.size() + (selfConjugate > 0.0 ? 1 : 0);
  }

  // Full output alphabet as (W(y|0), W(y|1)) rows: both members of each
  // conjugate pair, then the self-conjugate symbol if present.
  std::vector<SymbolPair> enumerateSymbols() const {
    std::vector<SymbolPair> out;
    out.reserve(symbolCount());
    for (const SymbolPair& pr : pairs) {
      out.push_back({pr.p0, pr.p1});
      out.push_back({pr.p1, pr.p0});
    }
    if (selfConjugate > 0.0) out.push_back({selfConjugate, selfConjugate});
    return out;
  }
};

struct ChannelStats {
  double capacity = 0.0;       // I, bits per use, in [0, 1]
  double bhattacharyya = 0.0;  // Z, in [0, 1]
  double errorProb = 0.0;      // Pe = sum_y min(W(y|0), W(y|1)) / 2, in [0, 1/2]
};

namespace detail {

// Exact equal-likelihood-ratio test (cross product form). Conservative:
// only bit-exact equality consolidates, which is all the lossless claim
// needs; near-equal ratios simply stay separate symbols.
inline bool lrEqual(const SymbolPair& a, const SymbolPair& b) {
  if (a.p1 == 0.0 || b.p1 == 0.0) return a.p1 == b.p1;
  return a.p0 * b.p1 == b.p0 * a.p1;
}

// Shared canonicalizer. `halve` selects the interpretation of the input
// rows: false = each row is one conjugate pair (mass p0 + p1), true = each
// row is one output symbol of a conjugate-closed enumeration, so every
// non-self-conjugate class is counted twice and its sum must be halved.
inline BmsChannel assembleCanonical(std::vector<SymbolPair> rows,
                                    double selfConjugate, bool halve) {
  for (SymbolPair& r : rows) {
    if (r.p0 < 0.0 || r.p1 < 0.0)
      throw std::invalid_argument("BmsChannel: negative probability");
    if (r.p0 < r.p1) std::swap(r.p0, r.p1);
  }
  if (selfConjugate < 0.0)
    throw std::invalid_argument("BmsChannel: negative probability");
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const SymbolPair& r) { return r.p0 == 0.0; }),
             rows.end());
  // Sort by likelihood ratio descending. The division key gives a total
  // order (cross-product comparisons are not reliably transitive in
  // floating point); exact-ratio grouping below is unaffected.
  std::sort(rows.begin(), rows.end(), [](const SymbolPair& a, const SymbolPair& b) {
    const double ka = a.p1 == 0.0 ? std::numeric_limits<double>::infinity() : a.p0 / a.p1;
    const double kb = b.p1 == 0.0 ? std::numeric_limits<double>::infinity() : b.p0 / b.p1;
    if (ka != kb) return ka > kb;
    return a.p0 > b.p0;  // deterministic order within a key class
  });

  BmsChannel w;
  w.selfConjugate = selfConjugate;
  for (std::size_t i = 0; i < rows.size();) {
    SymbolPair acc = rows[i];
    std::size_t j = i + 1;
    for (; j < rows.size() && lrEqual(rows[i], rows[j]); ++j) {
      acc.p0 += rows[j].p0;
      acc.p1 += rows[j].p1;
    }
    if (acc.p0 == acc.p1) {
      // Likelihood ratio 1: fold into the self-conjugate bucket. As a pair
      // the class carries mass p0 + p1; as an enumeration it carries the
      // plain w0-sum, so no halving applies in either case once expressed
      // as the single erasure probability.
      w.selfConjugate += halve ? acc.p0 : acc.p0 + acc.p1;
    } else {
      if (halve) {
        acc.p0 *= 0.5;
        acc.p1 *= 0.5;
      }
      w.pairs.push_back(acc);
    }
    i = j;
  }

  double mass = w.selfConjugate;
  for (const SymbolPair& pr : w.pairs) mass += pr.p0 + pr.p1;
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("BmsChannel: probability mass " +
                                std::to_string(mass) + " drifts beyond 1e-9");
  const double scale = 1.0 / mass;
  for (SymbolPair& pr : w.pairs) {
    pr.p0 *= scale;
    pr.p1 *= scale;
  }
  w.selfConjugate *= scale;
  return w;
}

}  // namespace detail

// Build a channel from conjugate-pair rows (one row per pair) plus an
// optional self-conjugate mass. Canonicalizes and validates normalization.
inline BmsChannel channelFromPairs(std::vector<SymbolPair> pairs,
                                   double selfConjugate = 0.0) {
  return detail::assembleCanonical(std::move(pairs), selfConjugate, false);
}

// Build a channel from a full conjugate-closed symbol enumeration: one row
// (W(y|0), W(y|1)) per output symbol, both pair members present.
inline BmsChannel channelFromSymbols(std::vector<SymbolPair> symbols) {
  return detail::assembleCanonical(std::move(symbols), 0.0, true);
}

enum class ChannelKind { Bec, Bsc, Punctured, Shortened };

inline const char* channelKindName(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Bec: return "bec";
    case ChannelKind::Bsc: return "bsc";
    case ChannelKind::Punctured: return "punctured";
    case ChannelKind::Shortened: return "shortened";
  }
  return "?";
}

// bec: erasure probability param. bsc: crossover probability param (<= 1/2).
// punctured: the useless channel (single erasure symbol, I = 0).
// shortened: the perfect channel (noiseless, I = 1). param ignored for both.
inline BmsChannel makeChannel(ChannelKind kind, double param = 0.0) {
  switch (kind) {
    case ChannelKind::Bec:
      if (!(param >= 0.0 && param <= 1.0))
        throw std::invalid_argument("bec: erasure probability outside [0,1]");
      if (param == 1.0) return channelFromPairs({}, 1.0);
      return channelFromPairs({{1.0 - param, 0.0}}, param);
    case ChannelKind::Bsc:
      if (!(param >= 0.0 && param <= 0.5))
        throw std::invalid_argument("bsc: crossover outside [0,1/2]");
      return channelFromPairs({{1.0 - param, param}}, 0.0);
    case ChannelKind::Punctured:
      return channelFromPairs({}, 1.0);
    case ChannelKind::Shortened:
      return channelFromPairs({{1.0, 0.0}}, 0.0);
  }
  throw std::invalid_argument("makeChannel: unknown kind");
}

inline ChannelStats channelStats(const BmsChannel& w) {
  ChannelStats s;
  for (const SymbolPair& pr : w.pairs) {
    const double sum = pr.p0 + pr.p1;
    if (pr.p0 > 0.0) s.capacity += pr.p0 * std::log2(2.0 * pr.p0 / sum);
    if (pr.p1 > 0.0) s.capacity += pr.p1 * std::log2(2.0 * pr.p1 / sum);
    s.bhattacharyya += 2.0 * std::sqrt(pr.p0 * pr.p1);
    s.errorProb += std::min(pr.p0, pr.p1);
  }
  s.bhattacharyya += w.selfConjugate;
  s.errorProb += 0.5 * w.selfConjugate;
  return s;
}

// Binary-input AWGN with BPSK (0 -> +1, 1 -> -1) at the given Es/N0,
// degraded to a finite alphabet: the |y| axis is split into
// alphabetSize/2 bins of equal probability mass under input 0, and each
// bin's positive/negative halves form one conjugate pair with transition
// probabilities from Gaussian CDF differences.
inline BmsChannel makeAwgnQuantized(double esN0Db, int alphabetSize) {
  if (alphabetSize < 2 || alphabetSize % 2 != 0)
    throw std::invalid_argument("makeAwgnQuantized: alphabetSize must be even and >= 2");
  const double esN0 = std::pow(10.0, esN0Db / 10.0);
  const double sigma2 = 1.0 / (2.0 * esN0);
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("makeAwgnQuantized: noise variance must be positive");
  const double sigma = std::sqrt(sigma2);

  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  // G(t) = P(|Y| <= t | X = +1), increasing from 0 to 1.
  auto massBelow = [&](double t) {
    return phi((t - 1.0) / sigma) - phi(-(t + 1.0) / sigma);
  };

  const int nu = alphabetSize / 2;
  std::vector<double> edges(static_cast<std::size_t>(nu) + 1);
  edges[0] = 0.0;
  double hi = 1.0 + 60.0 * sigma;
  while (massBelow(hi) < 1.0 - 0.5 / nu) hi *= 2.0;
  for (int i = 1; i < nu; ++i) {
    const double target = static_cast<double>(i) / nu;
    double lo = edges[i - 1], up = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + up);
      (massBelow(mid) < target ? lo : up) = mid;
    }
    edges[i] = 0.5 * (lo + up);
  }
  edges[nu] = std::numeric_limits<double>::infinity();

  std::vector<SymbolPair> pairs;
  pairs.reserve(nu);
  for (int i = 0; i < nu; ++i) {
    const double tl = edges[i], tr = edges[i + 1];
    // Positive half of the bin under input 0 (mean +1), negative half.
    const double p0 = (std::isinf(tr) ? 1.0 : phi((tr - 1.0) / sigma)) -
                      phi((tl - 1.0) / sigma);
    const double p1 = phi((-tl - 1.0) / sigma) -
                      (std::isinf(tr) ? 0.0 : phi((-tr - 1.0) / sigma));
    pairs.push_back({p0, p1});
  }
  return channelFromPairs(std::move(pairs), 0.0);
}

}  // namespace polarkit
