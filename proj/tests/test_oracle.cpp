#include <doctest.h>

#include "rainbow/generators.hpp"
#include "rainbow/oracle.hpp"

using namespace rainbow;

TEST_CASE("three-vertex counterexamples") {
  const auto f = fig1_counterexamples();
  CHECK(exact_transversal_ham_path(f.path_instance).status == OracleStatus::NotExists);
  CHECK(exact_transversal_ham_cycle(f.cycle_instance).status == OracleStatus::NotExists);
  CHECK(reference_ham_path(f.path_instance).status == OracleStatus::NotExists);
  CHECK(reference_ham_cycle(f.cycle_instance).status == OracleStatus::NotExists);
}

TEST_CASE("easy positive instances") {
  const TournamentCollection two(3, {transitive_tournament(3), transitive_tournament(3)});
  const auto p = exact_transversal_ham_path(two);
  REQUIRE(p.status == OracleStatus::Found);
  CHECK(is_hamilton_path(two, *p.path));
  CHECK(p.path->vertices == std::vector<VertexId>{0, 1, 2});

  const auto tri = fig1_counterexamples().path_instance[0];
  const TournamentCollection three(3, {tri, tri, tri});
  const auto c = exact_transversal_ham_cycle(three);
  REQUIRE(c.status == OracleStatus::Found);
  CHECK(is_hamilton_cycle(three, *c.cycle));
  CHECK(c.cycle->vertices == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("prop14 collections have no transversal Hamilton cycle") {
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto out = exact_transversal_ham_cycle(prop14_collection(n));
    CHECK(out.status == OracleStatus::NotExists);
  }
}

TEST_CASE("agreement with permutation enumeration") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    for (std::size_t n : {4, 5}) {
      for (std::size_t m : {n - 1, n}) {
        const auto t = random_collection(n, m, seed * 31 + n * 7 + m);
        const auto a = exact_transversal_ham_path(t);
        const auto b = reference_ham_path(t);
        CHECK(a.status == b.status);
        if (a.path) CHECK(is_hamilton_path(t, *a.path));
        if (b.path) CHECK(is_hamilton_path(t, *b.path));
        const auto c = exact_transversal_ham_cycle(t);
        const auto d = reference_ham_cycle(t);
        CHECK(c.status == d.status);
        if (c.cycle) CHECK(is_hamilton_cycle(t, *c.cycle));
      }
    }
  }
}

TEST_CASE("random instance n=5 m=4 seed 1") {
  const auto t = random_collection(5, 4, 1);
  CHECK(exact_transversal_ham_path(t).status == reference_ham_path(t).status);
}

TEST_CASE("disabling the matching prune keeps the status") {
  OracleOptions off;
  off.matching_prune = false;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto t = random_collection(6, 5, seed);
    const auto a = exact_transversal_ham_path(t);
    const auto b = exact_transversal_ham_path(t, std::nullopt, {}, off);
    CHECK(a.status == b.status);
    CHECK(a.nodes_expanded <= b.nodes_expanded);
    if (b.path) CHECK(is_hamilton_path(t, *b.path));
    CHECK(exact_transversal_ham_cycle(t).status == exact_transversal_ham_cycle(t, {}, off).status);
  }
}

TEST_CASE("endpoints") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto t = random_collection(5, 5, seed);
    for (VertexId u = 0; u < 5; ++u)
      for (VertexId v = 0; v < 5; ++v) {
        if (u == v) continue;
        const auto a = exact_transversal_ham_path(t, Endpoints{u, v});
        CHECK(a.status == reference_ham_path(t, Endpoints{u, v}).status);
        if (a.path) {
          CHECK(a.path->vertices.front() == u);
          CHECK(a.path->vertices.back() == v);
          CHECK(is_hamilton_path(t, *a.path));
        }
      }
  }
}

TEST_CASE("forced colors") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto t = random_collection(5, 8, seed);
    for (ColorId i = 0; i < 8; ++i) {
      OracleOptions o;
      o.forced_colors = ColorSet(8);
      o.forced_colors->set(i);
      const auto out = exact_transversal_ham_path(t, std::nullopt, {}, o);
      if (out.status != OracleStatus::Found) continue;
      CHECK(is_hamilton_path(t, *out.path));
      CHECK(std::find(out.path->colors.begin(), out.path->colors.end(), i) != out.path->colors.end());
    }
  }
}

TEST_CASE("adding a color never destroys a Hamilton path") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto t = random_collection(5, 5, seed);
    std::vector<Tournament> fewer(t.tournaments().begin(), t.tournaments().end() - 1);
    const TournamentCollection smaller(5, fewer);
    if (exact_transversal_ham_path(smaller).status == OracleStatus::Found)
      CHECK(exact_transversal_ham_path(t).status == OracleStatus::Found);
  }
}

TEST_CASE("budget exhaustion is explicit") {
  SearchBudget tiny;
  tiny.max_nodes = 3;
  const auto out = exact_transversal_ham_cycle(prop14_collection(8), tiny);
  CHECK(out.status == OracleStatus::BudgetExhausted);
  CHECK_FALSE(out.cycle);
}

TEST_CASE("count all") {
  OracleOptions o;
  o.count_all = true;
  const TournamentCollection same(4, std::vector<Tournament>(3, transitive_tournament(4)));
  const auto out = exact_transversal_ham_path(same, std::nullopt, {}, o);
  CHECK(out.status == OracleStatus::Found);
  CHECK(*out.count == 1);
  const TournamentCollection big(8, std::vector<Tournament>(7, transitive_tournament(8)));
  CHECK_THROWS_AS(exact_transversal_ham_path(big, std::nullopt, {}, o), InvalidArgument);
}

TEST_CASE("rainbow reachability") {
  const auto f = fig1_counterexamples();
  const auto r = exact_rainbow_path(f.path_instance, 0, 2);
  REQUIRE(r.status == OracleStatus::Found);
  CHECK(r.path->valid(f.path_instance));
  CHECK(r.path->vertices.front() == 0);
  CHECK(r.path->vertices.back() == 2);

  const TournamentCollection trans(4, {transitive_tournament(4)});
  CHECK(exact_rainbow_path(trans, 3, 0).status == OracleStatus::NotExists);
  CHECK(exact_rainbow_path(trans, 0, 3).status == OracleStatus::Found);
  CHECK(*is_strongly_rainbow_connected(trans) == false);
  CHECK(*is_strongly_rainbow_connected(f.cycle_instance) == true);

  for (std::uint64_t seed = 0; seed < 10; ++seed)
    CHECK(*is_strongly_rainbow_connected(random_collection(6, 5, seed, true)) == true);
}
