#pragma once

// Alphabet reduction by degrading merge.
//
// Greedy adjacent merging in likelihood-ratio order: repeatedly replace the
// adjacent entry pair whose fusion costs the least capacity with the fused
// entry, until at most `mu` output symbols remain.  Fusing output symbols is
// a post-processing (forgetting) step, so every merge yields a channel
// degraded with respect to its input: capacity never rises, Bhattacharyya
// parameter and error probability never fall.
//
// The self-conjugate (erasure) symbol participates as a ratio-1 entry at the
// end of the sorted list; it re-emerges as `selfConjugate` if untouched.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "bms_channel.hpp"

namespace polarkit {

namespace detail {

// Capacity contribution of one conjugate pair (0*log(0) = 0).
inline double pairCapacity(double p0, double p1) {
  const double sum = p0 + p1;
  if (sum <= 0.0) return 0.0;
  double c = 0.0;
  if (p0 > 0.0) c += p0 * std::log2(2.0 * p0 / sum);
  if (p1 > 0.0) c += p1 * std::log2(2.0 * p1 / sum);
  return c;
}

}  // namespace detail

inline BmsChannel degradingMerge(const BmsChannel& w, int mu) {
  if (mu < 2) throw std::invalid_argument("degradingMerge: mu must be >= 2");
  if (w.symbolCount() <= static_cast<std::size_t>(mu)) return w;

  struct Node {
    double p0, p1;
    double capacity;   // cached contribution
    int prev, next;    // doubly linked list over live nodes, -1 at the ends
    std::uint64_t version = 0;
    bool alive = true;
    bool erasure = false;  // still the self-conjugate symbol (counts as 1)
  };
  std::vector<Node> nodes;
  nodes.reserve(w.pairs.size() + 1);
  for (const SymbolPair& pr : w.pairs)
    nodes.push_back({pr.p0, pr.p1, detail::pairCapacity(pr.p0, pr.p1), 0, 0});
  if (w.selfConjugate > 0.0) {
    const double half = 0.5 * w.selfConjugate;
    nodes.push_back({half, half, 0.0, 0, 0});
    nodes.back().erasure = true;
  }
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    nodes[i].prev = i - 1;
    nodes[i].next = (i + 1 < n) ? i + 1 : -1;
  }

  struct Candidate {
    double deltaI;
    int left, right;
    std::uint64_t vLeft, vRight;
    bool operator>(const Candidate& o) const {
      if (deltaI != o.deltaI) return deltaI > o.deltaI;
      return left > o.left;  // ties: merge the smaller index first
    }
  };
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>> heap;
  auto push = [&](int left) {
    const int right = nodes[left].next;
    if (left < 0 || right < 0) return;
    const double merged =
        detail::pairCapacity(nodes[left].p0 + nodes[right].p0,
                             nodes[left].p1 + nodes[right].p1);
    heap.push({nodes[left].capacity + nodes[right].capacity - merged, left,
               right, nodes[left].version, nodes[right].version});
  };
  for (int i = 0; i + 1 < n; ++i) push(i);

  auto symbolsOf = [&](const Node& node) { return node.erasure ? 1 : 2; };
  std::size_t live = 0;
  for (const Node& node : nodes) live += symbolsOf(node);

  while (live > static_cast<std::size_t>(mu)) {
    if (heap.empty())
      throw std::logic_error("degradingMerge: ran out of merge candidates");
    const Candidate c = heap.top();
    heap.pop();
    Node& a = nodes[c.left];
    if (!a.alive || a.version != c.vLeft) continue;
    if (a.next != c.right) continue;
    Node& b = nodes[c.right];
    if (!b.alive || b.version != c.vRight) continue;

    live -= symbolsOf(a) + symbolsOf(b);
    a.p0 += b.p0;
    a.p1 += b.p1;
    a.capacity = detail::pairCapacity(a.p0, a.p1);
    a.erasure = a.erasure && b.erasure;  // only ratio-1 fusion stays one symbol
    if (a.p0 != a.p1) a.erasure = false;
    live += a.erasure ? 1 : 2;
    ++a.version;
    b.alive = false;
    a.next = b.next;
    if (b.next >= 0) nodes[b.next].prev = c.left;
    push(a.prev);
    push(c.left);
  }

  std::vector<SymbolPair> pairs;
  double selfConjugate = 0.0;
  // Node 0 is always alive (merges fold the right node into the left one).
  for (int i = 0; i >= 0; i = nodes[i].next) {
    const Node& node = nodes[i];
    if (node.erasure)
      selfConjugate += node.p0 + node.p1;
    else
      pairs.push_back({node.p0, node.p1});
  }
  return channelFromPairs(std::move(pairs), selfConjugate);
}

}  // namespace polarkit
