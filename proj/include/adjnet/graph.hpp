#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

namespace adjnet {

using NodeId = std::uint32_t;
using Rng = std::mt19937_64;

/// Growing undirected simple graph.
///
/// Edges live in a flat endpoint list where edge e occupies slots 2e and 2e+1,
/// so node i appears there exactly k_i times and a uniform slot is a
/// degree-proportional node. A hash index maps each edge to its slot for
/// O(1) membership tests and removal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t nodes) : adjacency_(nodes) {}

  /// Path graph 0-1-...-(n0-1).
  static Graph chain(std::size_t n0);

  NodeId add_node();
  /// False (no-op) when the edge already exists.
  bool add_edge(NodeId i, NodeId j);
  bool has_edge(NodeId i, NodeId j) const;
  /// Removes edge (i, j); false when absent.
  bool remove_edge(NodeId i, NodeId j);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return endpoints_.size() / 2; }
  std::size_t degree(NodeId i) const { return adjacency_[i].size(); }
  std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
  std::span<const NodeId> endpoints() const { return endpoints_; }
  std::pair<NodeId, NodeId> edge(std::size_t e) const {
    return {endpoints_[2 * e], endpoints_[2 * e + 1]};
  }

  /// Edges as (i, j) with i < j, sorted.
  std::vector<std::pair<NodeId, NodeId>> sorted_edges() const;

  void reserve_edges(std::size_t edges);

  // Set equality of nodes and edges; storage order is ignored.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  static std::uint64_t key(NodeId i, NodeId j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }
  void check_pair(NodeId i, NodeId j) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<NodeId> endpoints_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> edge_slot_;
};

/// Draws a node with probability k_i / 2E. Requires E >= 1.
NodeId sample_preferential(const Graph& g, Rng& rng);

/// Node weights k_i^xi over the current degrees, with a prefix-sum table.
///
/// xi = 1 is the linear kernel, xi = 0 is uniform over non-isolated nodes.
/// The table is a snapshot: call rebuild() after the graph changes.
class PreferentialSampler {
 public:
  explicit PreferentialSampler(double xi = 1.0) : xi_(xi) {}

  void set_exponent(double xi) { xi_ = xi; }
  double exponent() const { return xi_; }

  void rebuild(const Graph& g);
  /// Throws PreconditionViolation when every degree is zero.
  NodeId draw(Rng& rng) const;
  /// Probability the snapshot assigns to node i.
  double probability(NodeId i) const;
  double total_weight() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  double xi_;
  std::vector<double> cumulative_;
};

/// Pair (i, j), i != j, not yet adjacent, drawn with probability proportional
/// to k_i k_j by rejection. nullopt after `max_draws` rejected draws.
std::optional<std::pair<NodeId, NodeId>> sample_edge_pair(const Graph& g, Rng& rng,
                                                          std::size_t max_draws = 10'000);

struct DegreeFit {
  double gamma = 0.0;
  std::size_t kmin = 0;
  std::size_t tail_nodes = 0;
  double log_likelihood = 0.0;
  bool poor_fit = false;  // estimate pinned at the search bound
};

/// Discrete maximum-likelihood power-law exponent over degrees k >= kmin.
/// Throws InsufficientData with fewer than `min_tail` tail nodes.
DegreeFit degree_exponent(const Graph& g, std::size_t kmin, std::size_t min_tail = 100);
DegreeFit degree_exponent(std::span<const std::size_t> degrees, std::size_t kmin,
                          std::size_t min_tail = 100);

/// "i j" lines, i < j, sorted.
void write_edge_list(std::ostream& os, const Graph& g);

/// True when every node is reachable from node 0 (vacuously for N <= 1).
bool is_connected(const Graph& g);

}  // namespace adjnet
