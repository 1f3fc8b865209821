#include "adjnet/events.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "adjnet/error.hpp"

namespace adjnet {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string describe(NodeId i, NodeId j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void require_pair(const Graph& g, NodeId i, NodeId j) {
  if (i == j || i >= g.node_count() || j >= g.node_count()) {
    throw CorruptStream("invalid node pair " + describe(i, j) + " at N=" +
                        std::to_string(g.node_count()));
  }
}

}  // namespace

void apply_event(Graph& g, const GrowthEvent& ev) {
  std::visit(
      Overloaded{
          [&](const NodeAdded& e) {
            for (std::size_t a = 0; a < e.attachments.size(); ++a) {
              if (e.attachments[a] >= g.node_count()) {
                throw CorruptStream("attachment to unknown node " +
                                    std::to_string(e.attachments[a]));
              }
              for (std::size_t b = 0; b < a; ++b) {
                if (e.attachments[a] == e.attachments[b]) {
                  throw CorruptStream("repeated attachment target " +
                                      std::to_string(e.attachments[a]));
                }
              }
            }
            const NodeId v = g.add_node();
            for (NodeId target : e.attachments) g.add_edge(v, target);
          },
          [&](const EdgeAdded& e) {
            require_pair(g, e.i, e.j);
            if (!g.add_edge(e.i, e.j)) {
              throw CorruptStream("duplicate edge " + describe(e.i, e.j));
            }
          },
          [&](const EdgeRewired& e) {
            require_pair(g, e.i, e.j);
            require_pair(g, e.i, e.k);
            if (g.has_edge(e.i, e.k)) throw CorruptStream("rewire onto existing edge");
            if (!g.remove_edge(e.i, e.j)) {
              throw CorruptStream("rewire of missing edge " + describe(e.i, e.j));
            }
            g.add_edge(e.i, e.k);
          },
      },
      ev);
}

Graph replay(std::span<const GrowthEvent> events, Graph start) {
  for (const auto& ev : events) apply_event(start, ev);
  return start;
}

void write_event(std::ostream& os, const GrowthEvent& ev) {
  std::visit(Overloaded{
                 [&](const NodeAdded& e) {
                   os << 'N';
                   for (NodeId a : e.attachments) os << ' ' << a;
                 },
                 [&](const EdgeAdded& e) { os << "E " << e.i << ' ' << e.j; },
                 [&](const EdgeRewired& e) { os << "R " << e.i << ' ' << e.j << ' ' << e.k; },
             },
             ev);
  os << '\n';
}

void write_events(std::ostream& os, std::span<const GrowthEvent> events) {
  for (const auto& ev : events) write_event(os, ev);
}

std::vector<GrowthEvent> read_events(std::istream& is) {
  std::vector<GrowthEvent> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    char kind = 0;
    fields >> kind;
    auto fail = [&] {
      throw CorruptStream("malformed event on line " + std::to_string(lineno) + ": " + line);
    };
    std::vector<NodeId> ids;
    long long value = 0;
    while (fields >> value) {
      if (value < 0) fail();
      ids.push_back(static_cast<NodeId>(value));
    }
    if (!fields.eof()) fail();
    switch (kind) {
      case 'N':
        out.emplace_back(NodeAdded{std::move(ids)});
        break;
      case 'E':
        if (ids.size() != 2) fail();
        out.emplace_back(EdgeAdded{ids[0], ids[1]});
        break;
      case 'R':
        if (ids.size() != 3) fail();
        out.emplace_back(EdgeRewired{ids[0], ids[1], ids[2]});
        break;
      default:
        fail();
    }
  }
  return out;
}

}  // namespace adjnet
