#include <doctest.h>

#include "rainbow/generators.hpp"
#include "rainbow/io.hpp"
#include "rainbow/random.hpp"

using namespace rainbow;

namespace {

ColorSet colors(std::size_t m, std::initializer_list<std::size_t> xs) {
  ColorSet s(m);
  for (auto x : xs) s.set(x);
  return s;
}

// Threshold digraph by definition: count every arc over the color list.
bool brute_threshold_arc(const TournamentCollection& t, const std::vector<ColorId>& cs, Rational g, VertexId u,
                         VertexId v) {
  std::size_t count = 0;
  for (ColorId c : cs) count += t[c].has_arc(u, v);
  // count >= g * |cs| over the integers
  return static_cast<std::int64_t>(count) * g.den >= g.num * static_cast<std::int64_t>(cs.size());
}

}  // namespace

TEST_CASE("pair index enumerates pairs lexicographically") {
  std::size_t p = 0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) CHECK(pair_index(7, i, j) == p++);
}

TEST_CASE("tournament antisymmetry and string round trip") {
  const auto t = random_tournament(13, 5);
  for (VertexId u = 0; u < 13; ++u) {
    CHECK_FALSE(t.has_arc(u, u));
    for (VertexId v = 0; v < 13; ++v)
      if (u != v) CHECK(t.has_arc(u, v) != t.has_arc(v, u));
  }
  CHECK(Tournament::from_string(t.to_string(), 13) == t);
  CHECK_THROWS_AS(Tournament::from_string("01", 3), InvalidArgument);
  CHECK_THROWS_AS(Tournament::from_string("012", 3), InvalidArgument);
}

TEST_CASE("color_set_of_arc on the three-vertex obstruction") {
  const auto t = prop14_collection(3);
  CHECK(color_set_of_arc(t, 1, 0) == colors(3, {2}));
  CHECK(color_set_of_arc(t, 0, 1) == colors(3, {0, 1}));
  CHECK_THROWS_AS(color_set_of_arc(t, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(color_set_of_arc(t, 0, 3), InvalidArgument);

  const auto r = random_collection(9, 6, 17);
  for (VertexId u = 0; u < 9; ++u)
    for (VertexId v = u + 1; v < 9; ++v) {
      const auto a = color_set_of_arc(r, u, v);
      const auto b = color_set_of_arc(r, v, u);
      CHECK((a & b).none());
      CHECK((a | b).all());
    }
}

TEST_CASE("threshold digraph") {
  const auto fig = fig1_counterexamples();
  const auto both = threshold_digraph(fig.path_instance, {1, 2});
  CHECK(both.arc_count() == 6);

  const TournamentCollection single(5, {random_tournament(5, 2)});
  const auto same = threshold_digraph(single, {1, 1});
  CHECK(same.contains(single[0]));
  CHECK(same.arc_count() == 10);

  const auto p = threshold_digraph(prop14_collection(3), {1, 2});
  CHECK(p.arc_count() == 3);
  CHECK(p.has_arc(0, 1));
  CHECK(p.has_arc(0, 2));
  CHECK(p.has_arc(1, 2));

  CHECK_THROWS_AS(threshold_digraph(single, std::span<const ColorId>{}, {1, 2}), InvalidArgument);
  CHECK_THROWS_AS(threshold_digraph(single, {0, 1}), InvalidArgument);
}

TEST_CASE("threshold digraph agrees with a direct count") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_collection(8, 7, seed);
    SplitMix64 rng(seed);
    auto cs = rng.sample(all_colors(t), 1 + rng.below(7));
    const Rational g{static_cast<std::int64_t>(1 + rng.below(10)), 10};
    const auto d = threshold_digraph(t, cs, g);
    for (VertexId u = 0; u < 8; ++u)
      for (VertexId v = 0; v < 8; ++v)
        if (u != v) CHECK(d.has_arc(u, v) == brute_threshold_arc(t, cs, g, u, v));
  }
}

TEST_CASE("threshold monotonicity relations") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = random_collection(7, 12, rng());
    const Rational a{static_cast<std::int64_t>(1 + rng.below(5)), 10};
    const Rational b{a.num + static_cast<std::int64_t>(rng.below(6 - a.num)), 10};
    // larger threshold, fewer arcs
    CHECK(threshold_digraph(t, b).subset_of(threshold_digraph(t, a)));

    auto c2 = rng.sample(all_colors(t), 4 + rng.below(9));
    auto c1 = rng.sample(c2, 1 + rng.below(c2.size()));
    const double s1 = static_cast<double>(c1.size()), s2 = static_cast<double>(c2.size());
    if ((1 - a.value()) * s1 >= (1 - b.value()) * s2)
      CHECK(threshold_digraph(t, c2, b).subset_of(threshold_digraph(t, c1, a)));
    if (b.value() * s1 >= a.value() * s2)
      CHECK(threshold_digraph(t, c1, b).subset_of(threshold_digraph(t, c2, a)));
  }
}

TEST_CASE("majority subtournament") {
  const TournamentCollection single(6, {random_tournament(6, 8)});
  CHECK(majority_subtournament(single) == single[0]);

  const auto fig = fig1_counterexamples();
  CHECK(threshold_digraph(fig.path_instance, {1, 2}).contains(majority_subtournament(fig.path_instance)));

  CHECK(majority_subtournament(prop14_collection(3)) == transitive_tournament(3));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_collection(12, 9, seed);
    CHECK(threshold_digraph(t, {1, 2}).contains(majority_subtournament(t)));
    CHECK(threshold_digraph(t, {1, 3}).contains(majority_subtournament(t, {1, 3})));
  }
  CHECK_THROWS_AS(majority_subtournament(single, {2, 3}), InvalidArgument);
}

TEST_CASE("induced collections") {
  const auto t = random_collection(6, 4, 3);
  const auto id = induced_collection(t, std::nullopt, std::nullopt);
  CHECK(id.collection == t);

  const auto p4 = prop14_collection(4);
  const std::vector<VertexId> x{0, 1, 2};
  const std::vector<ColorId> a{2, 3};
  const auto sub = induced_collection(p4, x, a);
  CHECK(sub.collection.n() == 3);
  CHECK(sub.collection.m() == 2);
  for (ColorId c = 0; c < 2; ++c) {
    CHECK(sub.collection.has_arc(c, 0, 2));
    CHECK(sub.collection.has_arc(c, 1, 0));
    CHECK(sub.collection.has_arc(c, 2, 1));
  }

  // Nested restriction equals restriction by the composed maps, in either order.
  const std::vector<VertexId> x1{5, 1, 3, 0};
  const std::vector<ColorId> a1{3, 0, 2};
  const auto first = induced_collection(t, x1, a1);
  const std::vector<VertexId> x2{2, 0};
  const std::vector<ColorId> a2{1, 2};
  const auto nested = induced_collection(first.collection, x2, a2);
  const std::vector<VertexId> xc{3, 5};
  const std::vector<ColorId> ac{0, 2};
  CHECK(nested.collection == induced_collection(t, xc, ac).collection);
  const auto vertex_first = induced_collection(induced_collection(t, xc, std::nullopt).collection, std::nullopt, ac);
  CHECK(vertex_first.collection == induced_collection(induced_collection(t, std::nullopt, ac).collection, xc,
                                                      std::nullopt).collection);
  CHECK_THROWS_AS(induced_collection(t, std::span<const VertexId>{}, std::nullopt), InvalidArgument);
}

TEST_CASE("strong connectivity") {
  const auto fig = fig1_counterexamples();
  CHECK(is_strongly_connected(fig.path_instance[0]));
  for (std::size_t n = 2; n < 8; ++n) CHECK_FALSE(is_strongly_connected(transitive_tournament(n)));
  for (std::size_t n = 3; n < 15; ++n) CHECK(is_strongly_connected(prop14_tprime(n)));
  CHECK(is_strongly_connected(transitive_tournament(1)));
}

TEST_CASE("validate_transversal") {
  const TournamentCollection two(3, {transitive_tournament(3), transitive_tournament(3)});
  CHECK(validate_transversal(two, {}));
  const RainbowPath p{{0, 1, 2}, {0, 1}};
  CHECK(p.valid(two));
  CHECK(validate_transversal(two, p.arcs()));
  CHECK(is_hamilton_path(two, p));

  const TournamentCollection back(2, {Tournament::from_string("0", 2)});
  CHECK_FALSE(validate_transversal(back, {{0, 1, 0}}));
  const auto report = check_transversal(back, {{0, 1, 0}});
  CHECK(report.violations.size() == 1);

  CHECK_FALSE(RainbowPath({{0, 1, 2}, {0, 0}}).valid(two));
  CHECK_FALSE(RainbowPath({{0, 1, 0}, {0, 1}}).valid(two));
  CHECK_FALSE(validate_transversal(two, {{0, 1, 0}, {0, 1, 1}}));
}

TEST_CASE("collection JSON is bit-exact") {
  const auto t = prop14_collection(3);
  CHECK(dump_collection(t) == R"({"n":3,"m":3,"tournaments":["111","111","010"]})");
  CHECK(parse_collection(dump_collection(t)) == t);
  const auto r = random_collection(10, 4, 12);
  CHECK(parse_collection(dump_collection(r)) == r);
  CHECK_THROWS_AS(parse_collection(R"({"n":3,"m":2,"tournaments":["111"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_collection("not json"), InvalidArgument);

  const ColoredDigraph d{{0, 1, 2}, {1, 2, 0}};
  CHECK(to_json(d).dump() == "[[0,1,2],[1,2,0]]");
  CHECK(digraph_from_json(to_json(d)) == d);
}

TEST_CASE("rational ceiling") {
  CHECK(Rational{1, 2}.ceil_times(5) == 3);
  CHECK(Rational{1, 2}.ceil_times(4) == 2);
  CHECK(Rational{1, 6}.ceil_times(100) == 17);
  CHECK(Rational::from_double(0.15) == Rational{3, 20});
}
