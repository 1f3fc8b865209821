#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adjnet/events.hpp"
#include "adjnet/graph.hpp"

namespace adjnet {

enum class ComponentPolicy {
  LargestComponent,  // measure the largest connected component
  Strict,            // disconnected input is an error
};

struct AsplEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t nodes = 0;    // nodes actually measured (component size)
  std::size_t sources = 0;  // BFS roots used
  bool exact = true;
};

/// Compressed adjacency of a frozen graph, optionally restricted to its
/// largest connected component (with nodes relabeled densely).
struct CsrGraph {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> targets;
  std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

/// Throws InvalidArgument when the measured component has fewer than two
/// nodes, or (Strict) when `g` is disconnected.
CsrGraph measurable_component(const Graph& g, ComponentPolicy policy);

/// Sum of BFS distances from `source` to every other node, computed with the
/// parallel kernel's scratch layout. Used by both exact and sampled paths.
std::uint64_t bfs_distance_sum(const CsrGraph& csr, std::uint32_t source);
/// Distance from `source` to every node (UINT32_MAX when unreachable).
std::vector<std::uint32_t> bfs_distances(const CsrGraph& csr, std::uint32_t source);

/// Mean over ordered pairs of d(i, j). All-source BFS, OpenMP-parallel over
/// sources; the result is independent of thread count.
AsplEstimate aspl_exact(const Graph& g, ComponentPolicy policy = ComponentPolicy::LargestComponent);

/// Single-threaded reference: fresh queue and distance vector per source.
AsplEstimate aspl_exact_serial(const Graph& g,
                               ComponentPolicy policy = ComponentPolicy::LargestComponent);

/// BFS from `sources` distinct uniformly drawn roots. The estimate is the mean
/// of per-root mean distances; stderr is their sample std / sqrt(sources).
/// `sources >= N` defers to aspl_exact.
AsplEstimate aspl_sampled(const Graph& g, std::size_t sources, std::uint64_t seed,
                          ComponentPolicy policy = ComponentPolicy::LargestComponent);

struct AsplPolicy {
  std::size_t exact_threshold = 2000;
  std::size_t sampled_sources = 512;
  std::uint64_t seed = 0;
  ComponentPolicy components = ComponentPolicy::LargestComponent;

  /// Exact up to the threshold, sampled above it.
  AsplEstimate measure(const Graph& g) const;
  std::string describe() const;
};

struct CurvePoint {
  std::size_t n = 0;
  double l = 0.0;
  double std_error = 0.0;
  std::size_t realizations = 1;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct AsplCurve {
  std::vector<CurvePoint> points;
  std::string mode;

  std::optional<CurvePoint> at(std::size_t n) const;
  bool empty() const { return points.empty(); }
};

/// Every N in [2, 100], then ratio 1.05 steps (each rounded up, always at
/// least +1) below max_n, and max_n itself as the last point.
std::vector<std::size_t> default_schedule(std::size_t max_n);

/// Parses "default" or a comma-separated list of strictly increasing sizes.
std::vector<std::size_t> parse_schedule(const std::string& spec, std::size_t max_n);

/// Measures ASPL at scheduled node counts while a graph grows.
///
/// The point for N is taken on the last state that has exactly N nodes: just
/// before the event that adds node N+1, or at finish().
class CurveTracker {
 public:
  CurveTracker(std::vector<std::size_t> schedule, AsplPolicy policy);

  void observe(const GrowthEvent& ev, const Graph& before);
  void finish(const Graph& g);

  EventSink sink() {
    return [this](const GrowthEvent& ev, const Graph& g) { observe(ev, g); };
  }

  const AsplCurve& curve() const { return curve_; }
  AsplCurve take() { return std::move(curve_); }

 private:
  void maybe_measure(const Graph& g);

  std::vector<std::size_t> schedule_;
  std::size_t next_ = 0;
  AsplPolicy policy_;
  AsplCurve curve_;
};

/// Replays `events` onto `start`, measuring along the way.
AsplCurve track_growth(std::span<const GrowthEvent> events, std::vector<std::size_t> schedule,
                       const AsplPolicy& policy = {}, Graph start = {});

/// Pointwise mean over the curves that carry each N; stderr is the sample
/// standard deviation over sqrt(count).
AsplCurve average_curves(std::span<const AsplCurve> curves);

/// "N,L,stderr,realizations" with six decimals.
void write_curve_csv(std::ostream& os, const AsplCurve& curve);
AsplCurve read_curve_csv(std::istream& is);

}  // namespace adjnet
