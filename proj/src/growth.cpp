#include "adjnet/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adjnet/error.hpp"

namespace adjnet {
namespace {

constexpr std::size_t kPairDraws = 10'000;
constexpr std::size_t kTargetDraws = 1'000;

// Splits a continuous per-step count into floor(x) plus one Bernoulli(frac(x)).
std::size_t discretize(double x, Rng& rng) {
  const double whole = std::floor(x);
  const double frac = x - whole;
  auto count = static_cast<std::size_t>(whole);
  if (frac > 0.0) {
    std::bernoulli_distribution extra(frac);
    if (extra(rng)) ++count;
  }
  return count;
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

struct GrowthHalted {};

}  // namespace

double DmParams::intra_rate(double t) const { return c0 * std::pow(t, alpha); }

double DmParams::rewire_rate(double t) const {
  return rewire_r0 > 0.0 ? rewire_r0 * std::pow(t, rewire_rho) : 0.0;
}

void DmParams::validate() const {
  if (m < 1) throw InvalidArgument("DM: m must be >= 1");
  if (!(c0 >= 0.0)) throw InvalidArgument("DM: c0 must be >= 0");
  if (!(alpha > 0.0) || alpha > 1.0 + alpha_epsilon) {
    throw InvalidArgument("DM: alpha must satisfy 0 < alpha <= 1 + epsilon (epsilon=" +
                          std::to_string(alpha_epsilon) + ")");
  }
  if (n0 < std::max<std::size_t>(m, 2)) throw InvalidArgument("DM: n0 must be >= max(m, 2)");
  if (!(rewire_r0 >= 0.0)) throw InvalidArgument("DM: rewire r0 must be >= 0");
  if (!std::isfinite(rewire_rho)) throw InvalidArgument("DM: rewire rho must be finite");
}

double NonlinearPreference::exponent(double t) const { return c1 * std::pow(t, -eta); }

double ShParams::node_probability(double t) const { return clamp01(p0 * std::pow(t, -mu)); }

void ShParams::validate() const {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw InvalidArgument("SH: p0 must satisfy 0 < p0 <= 1");
  if (!(mu > 0.0)) throw InvalidArgument("SH: mu must be > 0");
  if (n0 < 1) throw InvalidArgument("SH: n0 must be >= 1");
  if (nonlinear) {
    if (!(nonlinear->c1 > 0.0)) throw InvalidArgument("SH: c1 must be > 0");
    if (!(nonlinear->eta > 0.0)) throw InvalidArgument("SH: eta must be > 0");
  }
}

double HybridParams::chain_probability(double t) const { return clamp01(p0 * std::pow(t, -mu)); }

void HybridParams::validate() const {
  dm.validate();
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw InvalidArgument("hybrid: p0 must satisfy 0 <= p0 <= 1");
  if (!(mu > 0.0)) throw InvalidArgument("hybrid: mu must be > 0");
}

GrowthModel::GrowthModel(std::uint64_t seed, std::size_t seed_chain)
    : rng_(seed), seed_chain_(seed_chain) {}

void GrowthModel::emit(const GrowthEvent& ev, const EventSink& sink) {
  if (sink) sink(ev, graph_);
  apply_event(graph_, ev);
}

void GrowthModel::start(const EventSink& sink) {
  if (started_) throw std::logic_error("growth model already started");
  started_ = true;
  for (std::size_t i = 0; i < seed_chain_; ++i) {
    NodeAdded ev;
    if (i > 0) ev.attachments.push_back(static_cast<NodeId>(i - 1));
    emit(ev, sink);
  }
}

DmModel::DmModel(DmParams params, std::uint64_t seed)
    : GrowthModel(seed, params.n0), params_(params) {
  params_.validate();
}

void DmModel::accelerated_step(const DmParams& p, double t, Graph& g, Rng& rng,
                               GrowthDiagnostics& diag, std::optional<NodeId> forced,
                               const std::function<void(const GrowthEvent&)>& emit) {
  NodeAdded node;
  node.attachments.reserve(p.m);
  if (forced) node.attachments.push_back(*forced);
  // Distinct targets: rejection from the endpoint list.
  while (node.attachments.size() < p.m) {
    const NodeId v = sample_preferential(g, rng);
    if (std::find(node.attachments.begin(), node.attachments.end(), v) ==
        node.attachments.end()) {
      node.attachments.push_back(v);
    }
  }
  emit(node);

  const std::size_t intra = discretize(p.intra_rate(t), rng);
  for (std::size_t k = 0; k < intra; ++k) {
    ++diag.intra_attempted;
    if (auto pair = sample_edge_pair(g, rng, kPairDraws)) {
      emit(EdgeAdded{pair->first, pair->second});
    } else {
      ++diag.intra_skipped;
    }
  }

  const std::size_t rewires = discretize(p.rewire_rate(t), rng);
  for (std::size_t k = 0; k < rewires; ++k) {
    ++diag.rewire_attempted;
    std::uniform_int_distribution<std::size_t> pick_edge(0, g.edge_count() - 1);
    auto [a, b] = g.edge(pick_edge(rng));
    std::bernoulli_distribution coin(0.5);
    // `kept` stays attached; the other endpoint is detached and re-drawn.
    const NodeId kept = coin(rng) ? a : b;
    const NodeId dropped = kept == a ? b : a;
    bool done = false;
    for (std::size_t attempt = 0; attempt < kTargetDraws; ++attempt) {
      const NodeId target = sample_preferential(g, rng);
      if (target != kept && target != dropped && !g.has_edge(kept, target)) {
        emit(EdgeRewired{kept, dropped, target});
        done = true;
        break;
      }
    }
    if (!done) ++diag.rewire_skipped;
  }
}

void DmModel::step(const EventSink& sink) {
  if (!started_) throw std::logic_error("growth model not started");
  const double t = static_cast<double>(++t_);
  accelerated_step(params_, t, graph_, rng_, diag_, std::nullopt,
                   [&](const GrowthEvent& ev) { emit(ev, sink); });
}

ShModel::ShModel(ShParams params, std::uint64_t seed)
    : GrowthModel(seed, params.n0), params_(params) {
  params_.validate();
  latest_ = static_cast<NodeId>(params_.n0 - 1);
}

std::optional<NodeId> ShModel::draw_target(double t) {
  const bool linear = !params_.nonlinear.has_value();
  if (!linear) {
    sampler_.set_exponent(params_.nonlinear->exponent(t));
    sampler_.rebuild(graph_);
  }
  auto valid = [&](NodeId v) { return v != latest_ && !graph_.has_edge(latest_, v); };

  if (graph_.edge_count() > 0) {
    for (std::size_t attempt = 0; attempt < kTargetDraws; ++attempt) {
      const NodeId v = linear ? sample_preferential(graph_, rng_) : sampler_.draw(rng_);
      if (valid(v)) return v;
      ++diag_.sh_edge_redraws;
    }
    ++diag_.sh_edge_fallbacks;
  }

  // Exact draw from the kernel restricted to valid targets. With every degree
  // zero the kernel degenerates to uniform.
  const bool all_zero = graph_.edge_count() == 0;
  std::vector<double> cumulative(graph_.node_count());
  double running = 0.0;
  for (NodeId v = 0; v < graph_.node_count(); ++v) {
    if (valid(v)) {
      if (all_zero) {
        running += 1.0;
      } else if (linear) {
        running += static_cast<double>(graph_.degree(v));
      } else {
        running += sampler_.probability(v);
      }
    }
    cumulative[v] = running;
  }
  if (running <= 0.0) return std::nullopt;
  std::uniform_real_distribution<double> u(0.0, running);
  const double x = u(rng_);
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  if (it == cumulative.end()) it = std::lower_bound(cumulative.begin(), cumulative.end(), running);
  return static_cast<NodeId>(it - cumulative.begin());
}

void ShModel::step(const EventSink& sink) {
  if (!started_) throw std::logic_error("growth model not started");
  const double t = static_cast<double>(++t_);

  if (t_ == 1) {
    std::uniform_int_distribution<std::size_t> seed_node(0, graph_.node_count() - 1);
    emit(NodeAdded{{static_cast<NodeId>(seed_node(rng_))}}, sink);
    latest_ = static_cast<NodeId>(graph_.node_count() - 1);
    return;
  }

  std::bernoulli_distribution new_node(params_.node_probability(t));
  if (new_node(rng_)) {
    emit(NodeAdded{{latest_}}, sink);
    latest_ = static_cast<NodeId>(graph_.node_count() - 1);
    return;
  }
  if (auto target = draw_target(t)) {
    emit(EdgeAdded{latest_, *target}, sink);
    latest_ = *target;
  } else {
    ++diag_.sh_edge_skipped;
  }
}

HybridModel::HybridModel(HybridParams params, std::uint64_t seed)
    : GrowthModel(seed, params.dm.n0), params_(params) {
  params_.validate();
  // Independent regime stream: with p0 = 0 the main stream matches DmModel's.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x68796272u};
  regime_rng_.seed(seq);
  last_added_ = static_cast<NodeId>(params_.dm.n0 - 1);
}

void HybridModel::step(const EventSink& sink) {
  if (!started_) throw std::logic_error("growth model not started");
  const double t = static_cast<double>(++t_);
  auto forward = [&](const GrowthEvent& ev) { emit(ev, sink); };

  std::bernoulli_distribution chain(params_.chain_probability(t));
  if (chain(regime_rng_)) {
    forward(NodeAdded{{last_added_}});
    previous_was_chain_ = true;
  } else {
    std::optional<NodeId> close_loop;
    if (previous_was_chain_) close_loop = last_added_;
    DmModel::accelerated_step(params_.dm, t, graph_, rng_, diag_, close_loop, forward);
    previous_was_chain_ = false;
  }
  last_added_ = static_cast<NodeId>(
      std::max<std::size_t>(graph_.node_count(), 1) - 1);
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Dm:
      return "dm";
    case ModelKind::Sh:
      return "sh";
    case ModelKind::ShNonlinear:
      return "sh-nonlinear";
    case ModelKind::Hybrid:
      return "hybrid";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "dm") return ModelKind::Dm;
  if (name == "sh") return ModelKind::Sh;
  if (name == "sh-nonlinear") return ModelKind::ShNonlinear;
  if (name == "hybrid") return ModelKind::Hybrid;
  throw InvalidArgument("unknown model '" + name + "' (expected dm, sh, sh-nonlinear, hybrid)");
}

void run_growth(GrowthModel& model, const GrowthLimits& limits, const EventSink& sink) {
  // The step that would add node max_nodes+1 is abandoned before its first
  // event, leaving the last state with exactly max_nodes nodes.
  EventSink guarded = [&](const GrowthEvent& ev, const Graph& g) {
    if (std::holds_alternative<NodeAdded>(ev) && g.node_count() >= limits.max_nodes) {
      throw GrowthHalted{};
    }
    if (sink) sink(ev, g);
  };
  try {
    model.start(guarded);
    while (model.time() < limits.steps) model.step(guarded);
  } catch (const GrowthHalted&) {
  }
}

namespace {

std::vector<GrowthEvent> collect(GrowthModel& model, std::size_t steps) {
  std::vector<GrowthEvent> events;
  GrowthLimits limits;
  limits.steps = steps;
  run_growth(model, limits, [&](const GrowthEvent& ev, const Graph&) { events.push_back(ev); });
  return events;
}

}  // namespace

std::vector<GrowthEvent> dm_grow(const DmParams& params, std::size_t steps, std::uint64_t seed) {
  DmModel model(params, seed);
  return collect(model, steps);
}

std::vector<GrowthEvent> sh_grow(const ShParams& params, std::size_t steps, std::uint64_t seed) {
  ShModel model(params, seed);
  return collect(model, steps);
}

std::vector<GrowthEvent> hybrid_grow(const HybridParams& params, std::size_t steps,
                                     std::uint64_t seed) {
  HybridModel model(params, seed);
  return collect(model, steps);
}

double dm_expected_edges(const DmParams& params, std::size_t steps) {
  double total = static_cast<double>(params.e0());
  for (std::size_t s = 1; s <= steps; ++s) {
    total += static_cast<double>(params.m) + params.intra_rate(static_cast<double>(s));
  }
  return total;
}

}  // namespace adjnet
