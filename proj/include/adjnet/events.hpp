#pragma once

#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "adjnet/graph.hpp"

namespace adjnet {

// A new node; it receives the next dense id and one edge per attachment.
struct NodeAdded {
  std::vector<NodeId> attachments;
  friend bool operator==(const NodeAdded&, const NodeAdded&) = default;
};

struct EdgeAdded {
  NodeId i;
  NodeId j;
  friend bool operator==(const EdgeAdded&, const EdgeAdded&) = default;
};

// Edge (i, j) is replaced by (i, k).
struct EdgeRewired {
  NodeId i;
  NodeId j;
  NodeId k;
  friend bool operator==(const EdgeRewired&, const EdgeRewired&) = default;
};

using GrowthEvent = std::variant<NodeAdded, EdgeAdded, EdgeRewired>;

/// Receives each event together with the graph state *before* the event is
/// applied.
using EventSink = std::function<void(const GrowthEvent&, const Graph&)>;

/// Applies one event; throws CorruptStream on dangling ids, duplicate or
/// missing edges, or self-loops.
void apply_event(Graph& g, const GrowthEvent& ev);

Graph replay(std::span<const GrowthEvent> events, Graph start = {});

/// Line format: "N a b ..." | "E i j" | "R i j k". Blank and '#' lines are
/// skipped on input.
void write_events(std::ostream& os, std::span<const GrowthEvent> events);
void write_event(std::ostream& os, const GrowthEvent& ev);
std::vector<GrowthEvent> read_events(std::istream& is);

}  // namespace adjnet
