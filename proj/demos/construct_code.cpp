// Builds a rate-matched polar code and prints the pieces a caller would use:
// the removal pattern, the per-bit-channel quality values, the selected
// information set, and the leading frozen run a pruned encoder can skip.

#include <cstdio>

#include <polarkit/code_builder.hpp>
#include <polarkit/folded_sim.hpp>

using namespace polarkit;

int main() {
  const int N = 256, M = 186, K = 93;
  const BmsChannel design = makeChannel(ChannelKind::Bec, 0.5);
  const BuiltCode code =
      assembleCode(design, N, M, K, CodeMode::Puncture, Ordering::Reordered, 256);

  std::printf("(%d, %d) %s code, K = %d, rate %.3f over the transmitted bits\n",
              code.spec.N, code.spec.M, codeModeName(code.spec.mode), code.spec.K,
              static_cast<double>(code.spec.K) / code.spec.M);
  std::printf("quality metric: %s (exact erasure recursion when available)\n",
              code.quality.metric == QualityMetric::Bhattacharyya ? "Z" : "Pe");

  std::printf("first removed coded positions:");
  for (int i = 0; i < 8; ++i) std::printf(" %d", code.spec.pattern[i]);
  std::printf(" ... (%zu total)\n", code.spec.pattern.size());

  std::printf("best eight information positions:");
  for (int i = 0; i < 8; ++i)
    std::printf(" %d", code.spec.infoSet[code.spec.K - 8 + i]);
  std::printf("\n");

  const int c = leadingFrozenCount(code.spec.infoSet, N);
  std::printf("leading frozen run: %d source bits (a pruned encoder skips "
              "%d input cycles at L = 32)\n",
              c, c / 32);
  return 0;
}
