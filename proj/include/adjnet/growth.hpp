#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adjnet/events.hpp"
#include "adjnet/graph.hpp"

namespace adjnet {

/// Accelerated growth: each step adds one node with m preferential edges and
/// c(t) = c0 t^alpha preferential edges among existing nodes. Optional
/// rewiring moves r(t) = r0 t^rho edge endpoints per step.
struct DmParams {
  std::size_t m = 2;
  double c0 = 0.0;
  double alpha = 1.0;
  std::size_t n0 = 7;
  double rewire_r0 = 0.0;
  double rewire_rho = 0.0;
  // Upper tolerance on alpha above 1 (the complete graph becomes an attractor).
  double alpha_epsilon = 0.1;

  std::size_t e0() const { return n0 - 1; }
  double intra_rate(double t) const;
  double rewire_rate(double t) const;
  void validate() const;
};

// Hub amplification xi(t) = c1 t^-eta for the preference kernel k^xi.
struct NonlinearPreference {
  double c1 = 12.0;
  double eta = 0.25;
  double exponent(double t) const;
};

struct ShParams {
  double p0 = 1.0;
  double mu = 0.075;
  std::optional<NonlinearPreference> nonlinear;
  std::size_t n0 = 1;

  double node_probability(double t) const;
  void validate() const;
};

struct HybridParams {
  DmParams dm;
  double p0 = 1.0;
  double mu = 0.075;

  double chain_probability(double t) const;
  void validate() const;
};

struct GrowthDiagnostics {
  std::size_t intra_attempted = 0;
  std::size_t intra_skipped = 0;
  std::size_t rewire_attempted = 0;
  std::size_t rewire_skipped = 0;
  std::size_t sh_edge_redraws = 0;    // rejected doubled/self targets
  std::size_t sh_edge_fallbacks = 0;  // exact conditional draws after the cap
  std::size_t sh_edge_skipped = 0;    // latest node already adjacent to all
};

/// A stochastic growth process owning its graph. Events go to the sink just
/// before they are applied. Deterministic given the seed.
class GrowthModel {
 public:
  virtual ~GrowthModel() = default;

  /// Emits the seed graph as node-added events. Must precede step().
  void start(const EventSink& sink);
  /// One growth step at time t = time() + 1.
  virtual void step(const EventSink& sink) = 0;

  const Graph& graph() const { return graph_; }
  const GrowthDiagnostics& diagnostics() const { return diag_; }
  std::size_t time() const { return t_; }

 protected:
  GrowthModel(std::uint64_t seed, std::size_t seed_chain);
  void emit(const GrowthEvent& ev, const EventSink& sink);

  Graph graph_;
  Rng rng_;
  GrowthDiagnostics diag_;
  std::size_t t_ = 0;
  std::size_t seed_chain_;
  bool started_ = false;
};

class DmModel : public GrowthModel {
 public:
  DmModel(DmParams params, std::uint64_t seed);
  void step(const EventSink& sink) override;

  // Shared with the hybrid model's accelerated regime.
  static void accelerated_step(const DmParams& p, double t, Graph& g, Rng& rng,
                               GrowthDiagnostics& diag, std::optional<NodeId> forced,
                               const std::function<void(const GrowthEvent&)>& emit);

 private:
  DmParams params_;
};

class ShModel : public GrowthModel {
 public:
  ShModel(ShParams params, std::uint64_t seed);
  void step(const EventSink& sink) override;
  NodeId latest() const { return latest_; }

 private:
  std::optional<NodeId> draw_target(double t);

  ShParams params_;
  NodeId latest_ = 0;
  PreferentialSampler sampler_;
};

class HybridModel : public GrowthModel {
 public:
  HybridModel(HybridParams params, std::uint64_t seed);
  void step(const EventSink& sink) override;

 private:
  HybridParams params_;
  Rng regime_rng_;
  NodeId last_added_ = 0;
  bool previous_was_chain_ = false;
};

enum class ModelKind { Dm, Sh, ShNonlinear, Hybrid };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Stops once `steps` steps ran or the graph grew past `max_nodes` nodes.
struct GrowthLimits {
  std::size_t steps = std::numeric_limits<std::size_t>::max();
  std::size_t max_nodes = std::numeric_limits<std::size_t>::max();
};

/// start() + step() loop.
void run_growth(GrowthModel& model, const GrowthLimits& limits, const EventSink& sink);

/// Materialized event streams (seed events included).
std::vector<GrowthEvent> dm_grow(const DmParams& params, std::size_t steps, std::uint64_t seed);
std::vector<GrowthEvent> sh_grow(const ShParams& params, std::size_t steps, std::uint64_t seed);
std::vector<GrowthEvent> hybrid_grow(const HybridParams& params, std::size_t steps,
                                     std::uint64_t seed);

/// Expected edge count after t steps: sum over steps of (m + c(s)) plus e0.
double dm_expected_edges(const DmParams& params, std::size_t steps);

}  // namespace adjnet
