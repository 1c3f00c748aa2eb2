// Encoder / LLR-initialization / SC-decoder tests.
//
// The check-node and variable-node rules are validated against
// probability-domain posteriors computed directly from channel transition
// probabilities, and the encoder against its algebraic properties
// (involution, linearity) plus hand-worked vectors.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <polarkit/code_builder.hpp>
#include <polarkit/codec.hpp>

using namespace polarkit;

namespace {

std::vector<std::uint8_t> bits(std::initializer_list<int> v) {
  std::vector<std::uint8_t> out;
  for (int b : v) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

std::vector<std::uint8_t> randomWord(int N, std::mt19937_64& rng) {
  std::vector<std::uint8_t> u(N);
  for (auto& b : u) b = static_cast<std::uint8_t>(rng() & 1u);
  return u;
}

// Hard-decision certainty LLRs for a noiselessly observed codeword.
std::vector<double> certaintyLlrs(const std::vector<std::uint8_t>& x) {
  std::vector<double> llr(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) llr[i] = x[i] ? -LLRMAX : LLRMAX;
  return llr;
}

}  // namespace

TEST_CASE("encode matches hand-worked vectors") {
  CHECK(encode(bits({0, 0, 0, 0})) == bits({0, 0, 0, 0}));
  CHECK(encode(bits({0, 0, 0, 0, 0, 0, 0, 0})) == bits({0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(encode(bits({0, 0, 0, 1})) == bits({1, 1, 1, 1}));
  CHECK(encode(bits({1, 0, 0, 0})) == bits({1, 0, 0, 0}));
  // Source bit 2 carries weight over coded positions {1,3} after reordering:
  // reversal sends it to natural position 3, whose butterfly row is {1,3}.
  CHECK(encode(bits({0, 1, 0, 0})) == bits({1, 0, 1, 0}));
  CHECK(encode(bits({0, 0, 1, 0})) == bits({1, 1, 0, 0}));
}

TEST_CASE("encode rejects bad input") {
  CHECK_THROWS_AS(encode(bits({0, 1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(encode(bits({})), std::invalid_argument);
  CHECK_THROWS_AS(encode(bits({0, 2})), std::invalid_argument);
}

TEST_CASE("encode is a linear involution") {
  std::mt19937_64 rng(0x5eedc0dec0deULL);
  for (int N : {2, 8, 32, 256}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto u = randomWord(N, rng);
      auto v = randomWord(N, rng);
      auto x = encode(u);
      CHECK(encode(x) == u);  // (B F)^2 = I over GF(2)
      std::vector<std::uint8_t> uv(N), xySum(N);
      auto y = encode(v);
      for (int i = 0; i < N; ++i) {
        uv[i] = u[i] ^ v[i];
        xySum[i] = x[i] ^ y[i];
      }
      CHECK(encode(uv) == xySum);
    }
  }
}

TEST_CASE("check node equals the exact two-observation posterior") {
  // For two independent looks with LLRs (a, b), the posterior LLR of their
  // XOR is log of a ratio of products of symbol likelihoods.  Compare the
  // saturating implementation against that direct probability computation.
  const double p = 0.2;
  auto symbolLlr = [&](int y) { return y == 0 ? std::log((1 - p) / p) : -std::log((1 - p) / p); };
  auto trans = [&](int y, int xbit) { return y == xbit ? 1 - p : p; };
  for (int y1 = 0; y1 < 2; ++y1)
    for (int y2 = 0; y2 < 2; ++y2) {
      const double num = trans(y1, 0) * trans(y2, 0) + trans(y1, 1) * trans(y2, 1);
      const double den = trans(y1, 0) * trans(y2, 1) + trans(y1, 1) * trans(y2, 0);
      const double want = std::log(num / den);
      CHECK(detail::checkNode(symbolLlr(y1), symbolLlr(y2)) == Catch::Approx(want).margin(1e-12));
    }
}

TEST_CASE("check node matches the tanh-product identity") {
  // f(a,b) = 2 atanh(tanh(a/2) tanh(b/2)) for moderate magnitudes.
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mag(0.01, 15.0);
  for (int trial = 0; trial < 500; ++trial) {
    double a = mag(rng) * (rng() & 1 ? 1 : -1);
    double b = mag(rng) * (rng() & 1 ? 1 : -1);
    const double want = 2.0 * std::atanh(std::tanh(a / 2) * std::tanh(b / 2));
    CHECK(detail::checkNode(a, b) == Catch::Approx(want).margin(1e-10));
  }
  CHECK(detail::checkNode(4.0, 4.0) == Catch::Approx(3.3072).margin(5e-5));
  // Large magnitudes: correction terms are skipped, result keeps the
  // sign-min structure.
  CHECK(detail::checkNode(LLRMAX, LLRMAX) == Catch::Approx(LLRMAX - std::log1p(1.0)).margin(1e-12));
  CHECK(detail::checkNode(-LLRMAX, LLRMAX) == Catch::Approx(-(LLRMAX - std::log1p(1.0))).margin(1e-12));
  CHECK(detail::checkNode(0.0, 5.0) == 0.0);
}

TEST_CASE("variable node equals the exact conditioned posterior") {
  const double p = 0.15;
  auto trans = [&](int y, int xbit) { return y == xbit ? 1 - p : p; };
  const double l = std::log((1 - p) / p);
  for (int y1 = 0; y1 < 2; ++y1)
    for (int y2 = 0; y2 < 2; ++y2)
      for (int c = 0; c < 2; ++c) {
        // First look saw x1 = u2 xor c, second saw x2 = u2.
        const double num = trans(y1, c ^ 0) * trans(y2, 0);
        const double den = trans(y1, c ^ 1) * trans(y2, 1);
        const double want = std::log(num / den);
        const double a = y1 == 0 ? l : -l;
        const double b = y2 == 0 ? l : -l;
        CHECK(detail::variableNode(a, b, static_cast<std::uint8_t>(c)) ==
              Catch::Approx(want).margin(1e-12));
      }
  // Saturating addition pins certainty at the rails.
  CHECK(detail::variableNode(LLRMAX, LLRMAX, 0) == LLRMAX);
  CHECK(detail::variableNode(LLRMAX, -LLRMAX, 0) == 0.0);
  CHECK(detail::variableNode(LLRMAX, LLRMAX, 1) == 0.0);
}

TEST_CASE("llr initialization per channel kind") {
  TransmissionChannel bec{TransmissionChannel::Kind::Bec, 0.3};
  CHECK(bec.llrOf(0.0) == LLRMAX);
  CHECK(bec.llrOf(1.0) == -LLRMAX);
  CHECK(bec.llrOf(0.5) == 0.0);
  CHECK_THROWS_AS(bec.llrOf(0.3), std::invalid_argument);

  TransmissionChannel bsc{TransmissionChannel::Kind::Bsc, 0.1};
  CHECK(bsc.llrOf(0.0) == Catch::Approx(std::log(9.0)).margin(1e-12));
  CHECK(bsc.llrOf(0.0) == Catch::Approx(2.1972245773362196).margin(1e-12));
  CHECK(bsc.llrOf(1.0) == Catch::Approx(-std::log(9.0)).margin(1e-12));
  CHECK_THROWS_AS(bsc.llrOf(0.5), std::invalid_argument);

  TransmissionChannel awgn{TransmissionChannel::Kind::Awgn, 0.5};
  CHECK(awgn.llrOf(1.3) == Catch::Approx(5.2).margin(1e-12));
  CHECK(awgn.llrOf(-0.25) == Catch::Approx(-1.0).margin(1e-12));
  CHECK(awgn.llrOf(1e6) == LLRMAX);
  CHECK(awgn.llrOf(-1e6) == -LLRMAX);
}

TEST_CASE("llr initialization maps survivors and removed positions") {
  // N=8, P=3.  Puncture removes {1,5,3}; shorten removes {6,4,8}.
  TransmissionChannel bsc{TransmissionChannel::Kind::Bsc, 0.1};
  const double l = std::log(9.0);

  CodeSpec punct;
  punct.N = 8; punct.M = 5; punct.P = 3; punct.K = 0;
  punct.mode = CodeMode::Puncture;
  punct.pattern = makePattern(CodeMode::Puncture, 8, 3);
  auto llr = initLlrs({0, 1, 0, 0, 1}, bsc, punct);
  // Surviving positions ascending: 2,4,6,7,8.
  REQUIRE(llr.size() == 8);
  CHECK(llr[0] == 0.0);
  CHECK(llr[2] == 0.0);
  CHECK(llr[4] == 0.0);
  CHECK(llr[1] == Catch::Approx(l));
  CHECK(llr[3] == Catch::Approx(-l));
  CHECK(llr[5] == Catch::Approx(l));
  CHECK(llr[6] == Catch::Approx(l));
  CHECK(llr[7] == Catch::Approx(-l));

  CodeSpec shortSpec;
  shortSpec.N = 8; shortSpec.M = 5; shortSpec.P = 3; shortSpec.K = 0;
  shortSpec.mode = CodeMode::Shorten;
  shortSpec.pattern = makePattern(CodeMode::Shorten, 8, 3);
  auto llrS = initLlrs({1, 1, 0, 0, 1}, bsc, shortSpec);
  // Surviving positions ascending: 1,2,3,5,7.  Removed {4,6,8} are certain.
  CHECK(llrS[3] == LLRMAX);
  CHECK(llrS[5] == LLRMAX);
  CHECK(llrS[7] == LLRMAX);
  CHECK(llrS[0] == Catch::Approx(-l));
  CHECK(llrS[1] == Catch::Approx(-l));
  CHECK(llrS[2] == Catch::Approx(l));
  CHECK(llrS[4] == Catch::Approx(l));
  CHECK(llrS[6] == Catch::Approx(-l));

  CHECK_THROWS_AS(initLlrs({0, 1}, bsc, punct), std::invalid_argument);
}

TEST_CASE("sc decoder hand cases at N=2") {
  // Frozen bit 1: certainty on both looks decodes the zero word.
  auto u = scDecode({4.0, 4.0}, {1});
  CHECK(u == bits({0, 0}));
  // Conflicting looks: check node goes negative but bit 1 is frozen to 0;
  // the conditioned combination then cancels exactly and the tie rule
  // decodes bit 2 as 0.
  auto v = scDecode({-4.0, 4.0}, {1});
  CHECK(v == bits({0, 0}));
  // Same looks with bit 1 unfrozen: the decision flips to 1, and the
  // conditioned combination becomes 4 - (-4) = 8, still decoding bit 2 to 0.
  auto w = scDecode({-4.0, 4.0}, {});
  CHECK(w == bits({1, 0}));
}

TEST_CASE("sc decoder decodes certainty input to the all-zero word") {
  std::mt19937_64 rng(11);
  for (int N : {2, 16, 128}) {
    std::vector<double> llr(N, LLRMAX);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> frozen;
      for (int i = 1; i <= N; ++i)
        if (rng() & 1) frozen.push_back(i);
      auto u = scDecode(llr, frozen);
      CHECK(u == std::vector<std::uint8_t>(N, 0));
    }
  }
}

TEST_CASE("sc decoder rejects bad input") {
  CHECK_THROWS_AS(scDecode({1.0, 2.0, 3.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(scDecode({1.0, 2.0}, {3}), std::invalid_argument);
  CHECK_THROWS_AS(scDecode({1.0, 2.0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(ScDecoder(12), std::invalid_argument);
}

TEST_CASE("noiseless roundtrip recovers every frame") {
  const int N = 256, K = 128;
  auto w = makeChannel(ChannelKind::Bec, 0.5);
  auto built = assembleCode(w, N, N, K, CodeMode::None, Ordering::Reordered, 64);
  std::vector<char> frozenMask(N, 1);
  for (int i : built.spec.infoSet) frozenMask[i - 1] = 0;

  ScDecoder dec(N);
  std::mt19937_64 rng(0xabcdef12ULL);
  int exact = 0;
  for (int frame = 0; frame < 1000; ++frame) {
    std::vector<std::uint8_t> u(N, 0);
    for (int i : built.spec.infoSet) u[i - 1] = static_cast<std::uint8_t>(rng() & 1u);
    auto x = encode(u);
    const auto& got = dec.decode(certaintyLlrs(x), frozenMask);
    exact += (got == u);
  }
  CHECK(exact == 1000);
}

TEST_CASE("shortening keeps removed coded positions at zero") {
  const int N = 64, M = 48, K = 24;
  auto w = makeChannel(ChannelKind::Bsc, 0.05);
  auto built = assembleCode(w, N, M, K, CodeMode::Shorten, Ordering::Reordered, 32);
  std::vector<char> frozenMask(N, 1);
  for (int i : built.spec.infoSet) frozenMask[i - 1] = 0;

  std::vector<char> removed(N + 1, 0);
  for (int p : built.spec.pattern) removed[p] = 1;

  ScDecoder dec(N);
  std::mt19937_64 rng(0x5e77ULL);
  for (int frame = 0; frame < 1000; ++frame) {
    std::vector<std::uint8_t> u(N, 0);
    for (int i : built.spec.infoSet) u[i - 1] = static_cast<std::uint8_t>(rng() & 1u);
    auto x = encode(u);
    for (int p = 1; p <= N; ++p)
      if (removed[p]) REQUIRE(x[p - 1] == 0);

    // Decode from only the surviving positions, observed noiselessly.
    std::vector<double> received;
    for (int p = 1; p <= N; ++p)
      if (!removed[p]) received.push_back(static_cast<double>(x[p - 1]));
    TransmissionChannel chan{TransmissionChannel::Kind::Bec, 0.0};
    const auto& got = dec.decode(initLlrs(received, chan, built.spec), frozenMask);
    REQUIRE(got == u);
  }
}

TEST_CASE("sc corrects single errors on a small strong code") {
  // (8,4) code designed for bsc(0.1): exhaustively run every message with
  // every single coded-bit flip.
  const int N = 8, K = 4;
  auto w = makeChannel(ChannelKind::Bsc, 0.1);
  auto built = assembleCode(w, N, N, K, CodeMode::None, Ordering::Reordered, 64);
  std::vector<char> frozenMask(N, 1);
  for (int i : built.spec.infoSet) frozenMask[i - 1] = 0;

  TransmissionChannel chan{TransmissionChannel::Kind::Bsc, 0.1};
  ScDecoder dec(N);
  int corrected = 0;
  for (int msg = 0; msg < (1 << K); ++msg) {
    std::vector<std::uint8_t> u(N, 0);
    for (int b = 0; b < K; ++b)
      u[built.spec.infoSet[b] - 1] = static_cast<std::uint8_t>((msg >> b) & 1);
    auto x = encode(u);
    for (int flip = 0; flip < N; ++flip) {
      std::vector<double> received(N);
      for (int i = 0; i < N; ++i) received[i] = static_cast<double>(x[i] ^ (i == flip));
      std::vector<double> llr(N);
      for (int i = 0; i < N; ++i) llr[i] = chan.llrOf(received[i]);
      corrected += (dec.decode(llr, frozenMask) == u);
    }
  }
  CHECK(corrected == (1 << K) * N);
}
