#include <queue>

#include "adjnet/aspl.hpp"
#include "adjnet/error.hpp"

namespace adjnet {

// Reference kernel for tests and benchmarks: one thread, a fresh distance
// vector and std::queue per source.
AsplEstimate aspl_exact_serial(const Graph& g, ComponentPolicy policy) {
  // Component selection is shared with the parallel path; the BFS is not.
  const CsrGraph csr = measurable_component(g, policy);
  const std::size_t n = csr.node_count();

  std::uint64_t total = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<std::uint32_t> frontier;
    dist[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const auto v = frontier.front();
      frontier.pop();
      for (auto e = csr.offsets[v]; e < csr.offsets[v + 1]; ++e) {
        const auto w = csr.targets[e];
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
      }
    }
    for (int d : dist) total += static_cast<std::uint64_t>(d);
  }

  AsplEstimate out;
  out.nodes = n;
  out.sources = n;
  out.mean = static_cast<double>(total) /
             (static_cast<double>(n) * static_cast<double>(n - 1));
  return out;
}

}  // namespace adjnet
