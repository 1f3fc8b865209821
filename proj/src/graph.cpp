#include "adjnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include "adjnet/error.hpp"

namespace adjnet {

Graph Graph::chain(std::size_t n0) {
  if (n0 == 0) throw InvalidArgument("chain seed needs n0 >= 1");
  Graph g(n0);
  for (std::size_t i = 1; i < n0; ++i) {
    g.add_edge(static_cast<NodeId>(i - 1), static_cast<NodeId>(i));
  }
  return g;
}

NodeId Graph::add_node() {
  adjacency_.emplace_back();
  return static_cast<NodeId>(adjacency_.size() - 1);
}

void Graph::check_pair(NodeId i, NodeId j) const {
  if (i == j) throw InvalidArgument("self-loop on node " + std::to_string(i));
  if (i >= node_count() || j >= node_count()) {
    throw InvalidArgument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                          ") references a node >= N=" + std::to_string(node_count()));
  }
}

bool Graph::add_edge(NodeId i, NodeId j) {
  check_pair(i, j);
  auto [it, inserted] =
      edge_slot_.try_emplace(key(i, j), static_cast<std::uint32_t>(edge_count()));
  if (!inserted) return false;
  adjacency_[i].push_back(j);
  adjacency_[j].push_back(i);
  endpoints_.push_back(i);
  endpoints_.push_back(j);
  return true;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  if (i == j) return false;
  return edge_slot_.contains(key(i, j));
}

bool Graph::remove_edge(NodeId i, NodeId j) {
  check_pair(i, j);
  auto it = edge_slot_.find(key(i, j));
  if (it == edge_slot_.end()) return false;
  const std::uint32_t slot = it->second;
  edge_slot_.erase(it);

  const std::uint32_t last = static_cast<std::uint32_t>(edge_count() - 1);
  if (slot != last) {
    const NodeId a = endpoints_[2 * last];
    const NodeId b = endpoints_[2 * last + 1];
    endpoints_[2 * slot] = a;
    endpoints_[2 * slot + 1] = b;
    edge_slot_[key(a, b)] = slot;
  }
  endpoints_.resize(endpoints_.size() - 2);

  auto erase_from = [](std::vector<NodeId>& list, NodeId v) {
    auto pos = std::find(list.begin(), list.end(), v);
    *pos = list.back();
    list.pop_back();
  };
  erase_from(adjacency_[i], j);
  erase_from(adjacency_[j], i);
  return true;
}

std::vector<std::pair<NodeId, NodeId>> Graph::sorted_edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto [a, b] = edge(e);
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Graph::reserve_edges(std::size_t edges) {
  endpoints_.reserve(2 * edges);
  edge_slot_.reserve(edges);
}

bool operator==(const Graph& a, const Graph& b) {
  return a.node_count() == b.node_count() && a.sorted_edges() == b.sorted_edges();
}

NodeId sample_preferential(const Graph& g, Rng& rng) {
  if (g.edge_count() == 0) {
    throw PreconditionViolation("preferential draw on a graph without edges");
  }
  std::uniform_int_distribution<std::size_t> slot(0, g.endpoints().size() - 1);
  return g.endpoints()[slot(rng)];
}

void PreferentialSampler::rebuild(const Graph& g) {
  cumulative_.resize(g.node_count());
  std::size_t kmax = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) kmax = std::max(kmax, g.degree(i));
  // Weights are scaled by kmax^-xi so large exponents cannot overflow.
  const double log_kmax = kmax > 0 ? std::log(static_cast<double>(kmax)) : 0.0;
  double running = 0.0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto k = g.degree(i);
    if (k > 0) {
      running += std::exp(xi_ * (std::log(static_cast<double>(k)) - log_kmax));
    }
    cumulative_[i] = running;
  }
}

NodeId PreferentialSampler::draw(Rng& rng) const {
  if (total_weight() <= 0.0) {
    throw PreconditionViolation("preferential draw with all degrees zero");
  }
  std::uniform_real_distribution<double> u(0.0, total_weight());
  const double x = u(rng);
  // First entry strictly above x always has positive weight.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  if (it == cumulative_.end()) {
    it = std::lower_bound(cumulative_.begin(), cumulative_.end(), total_weight());
  }
  return static_cast<NodeId>(it - cumulative_.begin());
}

double PreferentialSampler::probability(NodeId i) const {
  const double prev = i == 0 ? 0.0 : cumulative_[i - 1];
  return (cumulative_[i] - prev) / total_weight();
}

std::optional<std::pair<NodeId, NodeId>> sample_edge_pair(const Graph& g, Rng& rng,
                                                          std::size_t max_draws) {
  if (g.edge_count() == 0) {
    throw PreconditionViolation("edge-pair draw on a graph without edges");
  }
  for (std::size_t attempt = 0; attempt < max_draws; ++attempt) {
    const NodeId i = sample_preferential(g, rng);
    const NodeId j = sample_preferential(g, rng);
    if (i != j && !g.has_edge(i, j)) return std::pair{i, j};
  }
  return std::nullopt;
}

namespace {

double hurwitz_zeta(double s, double q) {
  gsl_sf_result r;
  if (gsl_sf_hzeta_e(s, q, &r) != GSL_SUCCESS) {
    return std::numeric_limits<double>::infinity();
  }
  return r.val;
}

}  // namespace

DegreeFit degree_exponent(std::span<const std::size_t> degrees, std::size_t kmin,
                          std::size_t min_tail) {
  if (kmin == 0) throw InvalidArgument("kmin must be >= 1");
  static const auto previous_handler = gsl_set_error_handler_off();
  (void)previous_handler;

  std::size_t n = 0;
  double sum_log = 0.0;
  for (auto k : degrees) {
    if (k >= kmin) {
      ++n;
      sum_log += std::log(static_cast<double>(k));
    }
  }
  if (n < min_tail) {
    throw InsufficientData("degree tail has " + std::to_string(n) + " nodes with k >= " +
                           std::to_string(kmin) + ", need " + std::to_string(min_tail));
  }

  constexpr double kLower = 1.01;
  constexpr double kUpper = 20.0;
  const double q = static_cast<double>(kmin);
  auto neg_log_likelihood = [&](double gamma) {
    return static_cast<double>(n) * std::log(hurwitz_zeta(gamma, q)) + gamma * sum_log;
  };
  const auto [gamma, nll] =
      boost::math::tools::brent_find_minima(neg_log_likelihood, kLower, kUpper, 40);

  DegreeFit fit;
  fit.gamma = gamma;
  fit.kmin = kmin;
  fit.tail_nodes = n;
  fit.log_likelihood = -nll;
  fit.poor_fit = gamma > kUpper - 1e-3 || gamma < kLower + 1e-3;
  return fit;
}

DegreeFit degree_exponent(const Graph& g, std::size_t kmin, std::size_t min_tail) {
  std::vector<std::size_t> degrees(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) degrees[i] = g.degree(i);
  return degree_exponent(degrees, kmin, min_tail);
}

void write_edge_list(std::ostream& os, const Graph& g) {
  for (auto [i, j] : g.sorted_edges()) os << i << ' ' << j << '\n';
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace adjnet
