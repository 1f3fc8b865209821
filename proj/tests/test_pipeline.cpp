#include "adjnet/error.hpp"
#include "adjnet/pipeline.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adjnet;

TEST_CASE("adjacency events follow the text") {
  const auto events = build_adjacency(tokenize("a b a c c b"));
  const std::vector<GrowthEvent> expected = {NodeAdded{}, NodeAdded{{0}}, NodeAdded{{0}},
                                             EdgeAdded{2, 1}};
  CHECK(events == expected);
  const auto g = replay(events);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
}

TEST_CASE("all-distinct text grows a chain") {
  std::vector<std::string> words;
  for (int i = 0; i < 150; ++i) words.push_back("w" + std::to_string(i));
  const auto ts = TokenStream::from_words(words);
  AdjacencyBuilder builder;
  for (auto id : ts.ids()) {
    builder.push(id, {});
    CHECK(builder.graph().edge_count() == builder.graph().node_count() - 1);
  }
  const auto curve = curve_for_text(ts, default_schedule(150));
  for (const auto& p : curve.points) CHECK(std::abs(p.l - oracle::chain_aspl(p.n)) < 1e-12);

  const auto cmp = surrogate_comparison(ts, 3, 1, {10, 100, 150});
  for (const auto& p : cmp.surrogate.points) {
    CHECK(std::abs(p.l - oracle::chain_aspl(p.n)) < 1e-12);
    CHECK(p.std_error == 0.0);
  }
}

TEST_CASE("prefix networks and degenerate input") {
  const auto ts = tokenize("x y z x w v y");
  const auto g = adjacency_network(ts, 4);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 4);  // x-y, y-z, z-x, x-w
  CHECK(adjacency_network(ts).node_count() == 5);
  CHECK_THROWS_AS(curve_for_text(tokenize("same same same"), {2}), InsufficientData);
  CHECK_THROWS_AS(surrogate_comparison(ts, 1, 0, {2}), InvalidArgument);
}

TEST_CASE("piece ensemble averages per-piece curves") {
  std::vector<std::string> words;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 59);
  for (int i = 0; i < 3000; ++i) words.push_back("w" + std::to_string(pick(rng)));
  const auto ts = TokenStream::from_words(words);
  const std::vector<std::size_t> schedule = {5, 20, 40};
  const auto ens = piece_ensemble(ts, 4, schedule);
  REQUIRE(ens.pieces.size() == 4);
  const auto parts = split_pieces(ts, 4);
  for (std::size_t p = 0; p < 4; ++p) {
    const auto single = curve_for_text(parts[p], schedule);
    REQUIRE(single.points.size() == ens.pieces[p].points.size());
    for (std::size_t i = 0; i < single.points.size(); ++i) CHECK(single.points[i].l == ens.pieces[p].points[i].l);
  }
  const auto at20 = ens.mean.at(20);
  REQUIRE(at20.has_value());
  double mean = 0.0;
  for (const auto& c : ens.pieces) mean += c.at(20)->l;
  CHECK(at20->l == doctest::Approx(mean / 4.0));
  CHECK(at20->realizations == 4);
}

TEST_CASE("surrogates are seeded") {
  std::vector<std::string> words;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 99);
  for (int i = 0; i < 2000; ++i) words.push_back("w" + std::to_string(pick(rng)));
  const auto ts = TokenStream::from_words(words);
  const auto a = surrogate_comparison(ts, 4, 10, {10, 50});
  const auto b = surrogate_comparison(ts, 4, 10, {10, 50});
  CHECK(a.surrogate.points == b.surrogate.points);
  CHECK(a.original.points == b.original.points);
}
