#include "adjnet/pipeline.hpp"

#include "adjnet/error.hpp"

namespace adjnet {

void AdjacencyBuilder::push(TokenId id, const EventSink& sink) {
  ++consumed_;
  auto emit = [&](const GrowthEvent& ev) {
    if (sink) sink(ev, graph_);
    apply_event(graph_, ev);
  };
  if (id == graph_.node_count()) {
    NodeAdded node;
    if (last_) node.attachments.push_back(*last_);
    emit(node);
  } else if (id > graph_.node_count()) {
    throw CorruptStream("token id " + std::to_string(id) + " skips first-appearance order");
  } else if (last_ && *last_ != id && !graph_.has_edge(*last_, id)) {
    emit(EdgeAdded{*last_, id});
  }
  last_ = id;
}

void build_adjacency(const TokenStream& ts, const EventSink& sink) {
  AdjacencyBuilder builder;
  for (TokenId id : ts.ids()) builder.push(id, sink);
}

std::vector<GrowthEvent> build_adjacency(const TokenStream& ts) {
  std::vector<GrowthEvent> events;
  build_adjacency(ts, [&](const GrowthEvent& ev, const Graph&) { events.push_back(ev); });
  return events;
}

Graph adjacency_network(const TokenStream& ts, std::optional<std::size_t> nodes) {
  AdjacencyBuilder builder;
  for (TokenId id : ts.ids()) {
    if (nodes && id == builder.graph().node_count() && builder.graph().node_count() >= *nodes) {
      break;
    }
    builder.push(id, {});
  }
  return builder.graph();
}

AsplCurve curve_for_text(const TokenStream& ts, const std::vector<std::size_t>& schedule,
                         const AsplPolicy& policy) {
  if (ts.vocabulary_size() < 2) {
    throw InsufficientData("text has " + std::to_string(ts.vocabulary_size()) +
                           " distinct words; at least 2 are needed");
  }
  CurveTracker tracker(schedule, policy);
  AdjacencyBuilder builder;
  const auto sink = tracker.sink();
  for (TokenId id : ts.ids()) builder.push(id, sink);
  tracker.finish(builder.graph());
  return tracker.take();
}

PieceEnsemble piece_ensemble(const TokenStream& ts, std::size_t pieces,
                             const std::vector<std::size_t>& schedule, const AsplPolicy& policy) {
  const auto parts = split_pieces(ts, pieces);
  PieceEnsemble out;
  out.pieces.resize(parts.size());
  const auto count = static_cast<std::int64_t>(parts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t p = 0; p < count; ++p) {
    const auto& part = parts[static_cast<std::size_t>(p)];
    if (part.vocabulary_size() >= 2) {
      out.pieces[static_cast<std::size_t>(p)] = curve_for_text(part, schedule, policy);
    } else {
      out.pieces[static_cast<std::size_t>(p)].mode = policy.describe();
    }
  }
  out.mean = average_curves(out.pieces);
  return out;
}

SurrogateComparison surrogate_comparison(const TokenStream& ts, std::size_t realizations,
                                         std::uint64_t seed,
                                         const std::vector<std::size_t>& schedule,
                                         const AsplPolicy& policy, std::size_t pieces) {
  if (realizations < 2) throw InvalidArgument("surrogate comparison needs realizations >= 2");
  if (ts.vocabulary_size() < 2) {
    throw InsufficientData("text has fewer than 2 distinct words");
  }
  SurrogateComparison out;
  out.original = pieces > 1 ? piece_ensemble(ts, pieces, schedule, policy).mean
                            : curve_for_text(ts, schedule, policy);

  std::vector<AsplCurve> shuffled(realizations);
  const auto count = static_cast<std::int64_t>(realizations);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    shuffled[idx] = curve_for_text(shuffle_stream(ts, seed + idx), schedule, policy);
  }
  out.surrogate = average_curves(shuffled);
  return out;
}

}  // namespace adjnet
