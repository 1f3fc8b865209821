#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adjnet/aspl.hpp"
#include "adjnet/events.hpp"
#include "adjnet/tokenizer.hpp"

namespace adjnet {

/// Incremental word-adjacency construction. Node ids equal token ids.
class AdjacencyBuilder {
 public:
  /// Consumes one token id, emitting at most one event.
  void push(TokenId id, const EventSink& sink);

  const Graph& graph() const { return graph_; }
  std::size_t tokens_consumed() const { return consumed_; }

 private:
  Graph graph_;
  std::optional<TokenId> last_;
  std::size_t consumed_ = 0;
};

/// Events that grow the word-adjacency network of `ts`: a first-seen word is
/// a node attached to the previous word; a repeated word adds the edge to
/// the previous word unless it already exists or the word repeats itself.
std::vector<GrowthEvent> build_adjacency(const TokenStream& ts);
void build_adjacency(const TokenStream& ts, const EventSink& sink);

/// Network after `nodes` distinct words (the last state with that many), or
/// the whole text when `nodes` is absent.
Graph adjacency_network(const TokenStream& ts, std::optional<std::size_t> nodes = std::nullopt);

/// Throws InsufficientData when the text has fewer than two distinct words.
AsplCurve curve_for_text(const TokenStream& ts, const std::vector<std::size_t>& schedule,
                         const AsplPolicy& policy = {});

struct PieceEnsemble {
  std::vector<AsplCurve> pieces;
  AsplCurve mean;
};

/// Pieces with fewer than two distinct words contribute an empty curve.
PieceEnsemble piece_ensemble(const TokenStream& ts, std::size_t pieces,
                             const std::vector<std::size_t>& schedule,
                             const AsplPolicy& policy = {});

struct SurrogateComparison {
  AsplCurve original;
  AsplCurve surrogate;
};

/// Original curve (piece-averaged when pieces > 1) against the mean over
/// `realizations` reshuffles with seeds seed, seed+1, ...
SurrogateComparison surrogate_comparison(const TokenStream& ts, std::size_t realizations,
                                         std::uint64_t seed,
                                         const std::vector<std::size_t>& schedule,
                                         const AsplPolicy& policy = {}, std::size_t pieces = 1);

}  // namespace adjnet
