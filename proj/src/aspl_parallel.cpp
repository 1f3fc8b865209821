#include <cmath>
#include <numeric>
#include <random>

#include "adjnet/aspl.hpp"
#include "adjnet/error.hpp"

namespace adjnet {
namespace {

// Per-thread BFS scratch. A slot's distance is valid only while its stamp
// equals the current epoch, so nothing is cleared between sources.
struct BfsScratch {
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> dist;
  std::vector<std::uint32_t> queue;
  std::uint32_t epoch = 0;

  void prepare(std::size_t n) {
    if (stamp.size() < n) {
      stamp.assign(n, 0);
      dist.resize(n);
      queue.resize(n);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
  }
};

BfsScratch& scratch() {
  thread_local BfsScratch s;
  return s;
}

}  // namespace

CsrGraph measurable_component(const Graph& g, ComponentPolicy policy) {
  const std::size_t n = g.node_count();
  if (n < 2) throw InvalidArgument("ASPL needs N >= 2, got N=" + std::to_string(n));

  // Label components; keep the largest (lowest label on ties).
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<std::size_t> sizes;
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (label[root] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(sizes.size());
    sizes.push_back(0);
    label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      ++sizes[id];
      for (NodeId w : g.neighbors(v)) {
        if (label[w] == UINT32_MAX) {
          label[w] = id;
          stack.push_back(w);
        }
      }
    }
  }

  CsrGraph csr;
  if (sizes.size() == 1) {
    csr.offsets.resize(n + 1);
    csr.offsets[0] = 0;
    for (NodeId v = 0; v < n; ++v) {
      csr.offsets[v + 1] = csr.offsets[v] + static_cast<std::uint32_t>(g.degree(v));
    }
    csr.targets.reserve(csr.offsets[n]);
    for (NodeId v = 0; v < n; ++v) {
      for (NodeId w : g.neighbors(v)) csr.targets.push_back(w);
    }
    return csr;
  }

  if (policy == ComponentPolicy::Strict) {
    throw InvalidArgument("graph is disconnected (" + std::to_string(sizes.size()) +
                          " components) under strict component policy");
  }
  const auto keep = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[keep] < 2) {
    throw InvalidArgument("largest connected component has fewer than 2 nodes");
  }
  std::vector<std::uint32_t> relabel(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] == keep) relabel[v] = next++;
  }
  csr.offsets.reserve(next + 1);
  csr.offsets.push_back(0);
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] != keep) continue;
    for (NodeId w : g.neighbors(v)) csr.targets.push_back(relabel[w]);
    csr.offsets.push_back(static_cast<std::uint32_t>(csr.targets.size()));
  }
  return csr;
}

namespace {

// Leaves the distances of the reached nodes in the thread's scratch.
std::uint64_t run_bfs(const CsrGraph& csr, std::uint32_t source) {
  auto& s = scratch();
  s.prepare(csr.node_count());
  const std::uint32_t epoch = s.epoch;
  std::uint32_t* stamp = s.stamp.data();
  std::uint32_t* dist = s.dist.data();
  std::uint32_t* queue = s.queue.data();
  const std::uint32_t* off = csr.offsets.data();
  const std::uint32_t* tgt = csr.targets.data();

  std::size_t head = 0;
  std::size_t tail = 0;
  queue[tail++] = source;
  stamp[source] = epoch;
  dist[source] = 0;
  std::uint64_t total = 0;
  while (head < tail) {
    const std::uint32_t v = queue[head++];
    const std::uint32_t next = dist[v] + 1;
    for (std::uint32_t e = off[v]; e < off[v + 1]; ++e) {
      const std::uint32_t w = tgt[e];
      if (stamp[w] != epoch) {
        stamp[w] = epoch;
        dist[w] = next;
        total += next;
        queue[tail++] = w;
      }
    }
  }
  return total;
}

}  // namespace

std::uint64_t bfs_distance_sum(const CsrGraph& csr, std::uint32_t source) {
  return run_bfs(csr, source);
}

std::vector<std::uint32_t> bfs_distances(const CsrGraph& csr, std::uint32_t source) {
  run_bfs(csr, source);
  const auto& s = scratch();
  std::vector<std::uint32_t> out(csr.node_count(), UINT32_MAX);
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (s.stamp[v] == s.epoch) out[v] = s.dist[v];
  }
  return out;
}

AsplEstimate aspl_exact(const Graph& g, ComponentPolicy policy) {
  const CsrGraph csr = measurable_component(g, policy);
  const auto n = static_cast<std::int64_t>(csr.node_count());
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 0; s < n; ++s) {
    rows[static_cast<std::size_t>(s)] = bfs_distance_sum(csr, static_cast<std::uint32_t>(s));
  }

  // Integer row sums make the reduction exact and order-free.
  const std::uint64_t total = std::accumulate(rows.begin(), rows.end(), std::uint64_t{0});
  AsplEstimate out;
  out.nodes = static_cast<std::size_t>(n);
  out.sources = out.nodes;
  out.mean = static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
  out.std_error = 0.0;
  out.exact = true;
  return out;
}

AsplEstimate aspl_sampled(const Graph& g, std::size_t sources, std::uint64_t seed,
                          ComponentPolicy policy) {
  if (sources == 0) throw InvalidArgument("sampled ASPL needs sources >= 1");
  const CsrGraph csr = measurable_component(g, policy);
  const std::size_t n = csr.node_count();
  if (sources >= n) return aspl_exact(g, policy);

  // Partial Fisher-Yates: the first `sources` slots are a uniform sample.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  for (std::size_t i = 0; i < sources; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }

  const auto count = static_cast<std::int64_t>(sources);
  std::vector<std::uint64_t> rows(sources);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    rows[idx] = bfs_distance_sum(csr, order[idx]);
  }

  const double denom = static_cast<double>(n - 1);
  double sum = 0.0;
  for (auto row : rows) sum += static_cast<double>(row) / denom;
  const double mean = sum / static_cast<double>(sources);
  double ss = 0.0;
  for (auto row : rows) {
    const double d = static_cast<double>(row) / denom - mean;
    ss += d * d;
  }

  AsplEstimate out;
  out.mean = mean;
  out.std_error = sources > 1 ? std::sqrt(ss / static_cast<double>(sources - 1)) /
                                    std::sqrt(static_cast<double>(sources))
                              : 0.0;
  out.nodes = n;
  out.sources = sources;
  out.exact = false;
  return out;
}

}  // namespace adjnet
