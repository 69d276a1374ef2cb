#include <doctest.h>

#include <set>

#include "rainbow/generators.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/random.hpp"

using namespace rainbow;

namespace {

// n - 1 strongly connected members plus one arbitrary tournament.
TournamentCollection almost_strong(std::size_t n, std::uint64_t seed) {
  auto base = random_collection(n, n - 1, seed, true);
  auto ts = base.tournaments();
  ts.push_back(random_tournament(n, seed, 977));
  return TournamentCollection(n, std::move(ts));
}

std::size_t distinct_colors(const std::vector<ColorId>& cs) { return std::set<ColorId>(cs.begin(), cs.end()).size(); }

// The middle instance the path solver hands to rainbow_dhp: a random
// collection on n vertices with n - 1 colors, partitioned after removing
// the two end blocks.
struct DhpInstance {
  TournamentCollection t;
  Tournament tmaj;
  HPartition part;
  VertexId w0 = 0, wr = 0;
};

DhpInstance dhp_instance(std::size_t n, std::uint64_t seed, const PipelineParams& params) {
  const auto full = random_collection(n, n - 1, seed, false);
  const auto maj = majority_subtournament(full);
  const auto hp = h_partition(maj, static_cast<std::size_t>(params.mu.ceil_times(static_cast<std::int64_t>(n))),
                              Rational{1, 6});
  REQUIRE(hp.r() >= 5);
  std::vector<VertexId> mid;
  for (std::size_t i = 1; i + 1 < hp.r(); ++i) mid.insert(mid.end(), hp.blocks[i].begin(), hp.blocks[i].end());
  mid.insert(mid.end(), hp.separators.begin(), hp.separators.end());
  std::sort(mid.begin(), mid.end());
  std::vector<ColorId> colors(mid.size() - 1);
  for (std::size_t c = 0; c < colors.size(); ++c) colors[c] = static_cast<ColorId>(c);
  auto ic = induced_collection(full, mid, colors);
  const auto idx = ic.vertex_index(n);
  DhpInstance out;
  out.t = ic.collection;
  out.tmaj = maj.induced(ic.vertex_map);
  for (std::size_t i = 1; i + 1 < hp.r(); ++i) {
    std::vector<VertexId> b;
    for (VertexId v : hp.blocks[i]) b.push_back(static_cast<VertexId>(idx[v]));
    out.part.blocks.push_back(b);
    if (i + 2 < hp.r()) out.part.separators.push_back(static_cast<VertexId>(idx[hp.separators[i]]));
  }
  out.w0 = static_cast<VertexId>(idx[hp.separators.front()]);
  out.wr = static_cast<VertexId>(idx[hp.separators.back()]);
  return out;
}

}  // namespace

TEST_CASE("pipeline constants must be ordered") {
  CHECK_NOTHROW(PipelineParams{}.validate());
  CHECK_NOTHROW(PipelineParams({1, 20}, {1, 10}, {1, 5}, {1, 2}));
  CHECK_THROWS_AS(PipelineParams({1, 5}, {1, 10}, {1, 4}, {3, 10}), InvalidArgument);
  CHECK_THROWS_AS(PipelineParams({1, 20}, {1, 10}, {1, 5}, {3, 5}), InvalidArgument);
  CHECK_THROWS_AS(PipelineParams({1, 10}, {1, 10}, {1, 5}, {3, 10}), InvalidArgument);
  CHECK_THROWS_AS(PipelineParams({0, 1}, {1, 10}, {1, 5}, {3, 10}), InvalidArgument);
  PipelineParams p;
  p.beta = {1, 10};
  CHECK_THROWS_AS(transversal_ham_path(random_collection(5, 4, 1), p), InvalidArgument);
}

TEST_CASE("color ledger partition check and snapshot") {
  ColorLedger l(6);
  l.d.set(0);
  l.a.set(1);
  l.c.set(2);
  l.c.set(3);
  CHECK_FALSE(l.is_partition());
  l.b.set(4);
  l.b.set(5);
  CHECK(l.is_partition());
  l.a.set(2);
  CHECK_FALSE(l.is_partition());
  const auto s = l.snapshot();
  CHECK(s["c"] == 2);
  CHECK(s["b"] == 2);
  CHECK(s["used"] == 0);
}

TEST_CASE("solve modes parse") {
  CHECK(parse_solve_mode("exact") == SolveMode::Exact);
  CHECK(parse_solve_mode("constructive") == SolveMode::Constructive);
  CHECK(parse_solve_mode("auto") == SolveMode::Auto);
  CHECK(std::string(to_string(SolveMode::Constructive)) == "constructive");
  CHECK_THROWS_AS(parse_solve_mode("fast"), InvalidArgument);
}

TEST_CASE("exchange step moves") {
  // Colors 1 and 2 both have 0 -> 2 and 2 -> 1, so vertex 2 fits only
  // between 0 and 1.
  auto t0 = Tournament::from_string("111", 3);   // 0->1, 0->2, 1->2
  auto t12 = Tournament::from_string("110", 3);  // 0->1, 0->2, 2->1
  TournamentCollection t(3, {t0, t12, t12});
  RainbowPath p{{0, 1}, {0}};
  ColorSet unused(3);
  unused.set(1);
  unused.set(2);
  auto q = exchange_step(p, unused, t);
  REQUIRE(q);
  CHECK(q->vertices == std::vector<VertexId>{0, 2, 1});
  CHECK(q->colors == std::vector<ColorId>{1, 2});
  CHECK(q->valid(t));

  SUBCASE("prepend") {
    TournamentCollection u(3, {t0, Tournament::from_string("001", 3), t0});  // color 1: 2->0
    auto r = exchange_step(RainbowPath{{0, 1}, {0}}, unused, u);
    REQUIRE(r);
    CHECK(r->vertices.front() == 2);
    CHECK(r->valid(u));
  }
  SUBCASE("append") {
    TournamentCollection u(3, {t0, t0, t0});
    auto r = exchange_step(RainbowPath{{0, 1}, {0}}, unused, u);
    REQUIRE(r);
    CHECK(r->vertices == std::vector<VertexId>{0, 1, 2});
    CHECK(r->valid(u));
    CHECK_FALSE(exchange_step(RainbowPath{{0, 1}, {0}}, unused, u, false));
  }
  SUBCASE("saturated path") {
    CHECK_FALSE(exchange_step(*q, ColorSet(3).set(0), t));
  }
  SUBCASE("single unused color cannot splice") {
    ColorSet one(3);
    one.set(1);
    CHECK_FALSE(exchange_step(p, one, t, false));
  }
}

TEST_CASE("exchange step grows by one and stays rainbow") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 5 + seed % 6;
    const auto t = random_collection(n, n, seed);
    SplitMix64 rng(seed);
    RainbowPath p{{static_cast<VertexId>(rng.below(n))}, {}};
    ColorSet unused(n);
    unused.set();
    for (;;) {
      auto q = exchange_step(p, unused, t, true);
      if (!q) break;
      REQUIRE(q->vertices.size() == p.vertices.size() + 1);
      REQUIRE(q->valid(t));
      p = *q;
      unused.set();
      for (ColorId c : p.colors) unused.reset(c);
    }
    // Saturation under all three moves: any Hamilton rainbow path ends it,
    // otherwise at least one vertex is off the path.
    CHECK(p.vertices.size() <= n);
  }
}

TEST_CASE("rainbow_dhp small instances go to the oracle") {
  PipelineParams params;
  params.oracle_fallback_n = 12;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 9;
    const auto t = random_collection(n, n - 1, seed);
    const auto maj = majority_subtournament(t);
    // Blocks {1,2}, {4,5}, {7} with separators 3, 6 and ends 0, 8 are used
    // only when the majority orientation fits; otherwise skip the seed.
    HPartition part;
    part.blocks = {{1, 2}, {4, 5}, {7}};
    part.separators = {3, 6};
    const std::vector<VertexId> w0{0}, wr{8};
    if (!dominates(maj, w0, part.blocks.front()) || !dominates(maj, part.blocks.back(), wr)) continue;
    std::vector<Json> trace;
    const auto oracle = exact_transversal_ham_path(t, Endpoints{0, 8});
    if (oracle.status == OracleStatus::Found) {
      const auto p = rainbow_dhp(t, maj, part, 0, 8, params, &trace);
      CHECK(is_hamilton_path(t, p));
      CHECK(p.vertices.front() == 0);
      CHECK(p.vertices.back() == 8);
      CHECK(trace.back()["stage"] == "oracle");
    } else {
      CHECK_THROWS_AS(rainbow_dhp(t, maj, part, 0, 8, params), ConstructionFailure);
    }
  }
}

TEST_CASE("rainbow_dhp rejects malformed input") {
  const auto t = random_collection(9, 8, 3);
  const auto maj = majority_subtournament(t);
  HPartition part;
  part.blocks = {{1, 2}, {4, 5}, {7}};
  part.separators = {3};
  CHECK_THROWS_AS(rainbow_dhp(t, maj, part, 0, 8, {}), InvalidArgument);
  part.separators = {3, 6};
  part.blocks[2] = {7, 1};
  CHECK_THROWS_AS(rainbow_dhp(t, maj, part, 0, 8, {}), InvalidArgument);
  CHECK_THROWS_AS(rainbow_dhp(random_collection(9, 9, 3), maj, part, 0, 8, {}), InvalidArgument);
}

TEST_CASE("rainbow_dhp at n near 400") {
  PipelineParams params;
  params.seed = 11;
  const auto inst = dhp_instance(400, 11, params);
  std::vector<Json> trace;
  const auto p = rainbow_dhp(inst.t, inst.tmaj, inst.part, inst.w0, inst.wr, params, &trace);
  CHECK(is_hamilton_path(inst.t, p));
  CHECK(p.vertices.front() == inst.w0);
  CHECK(p.vertices.back() == inst.wr);
  CHECK(p.colors.size() == inst.t.m());
  CHECK(distinct_colors(p.colors) == inst.t.m());

  bool saw_step1 = false, saw_absorb = false;
  for (const auto& rec : trace) {
    if (rec["stage"] == "step1") {
      saw_step1 = true;
      CHECK(rec["min_overlap"].get<std::size_t>() > 2 * rec["blocks"].get<std::size_t>());
    }
    if (rec["stage"] == "step2") {
      const auto& l = rec["ledger"];
      CHECK(l["d"].get<std::size_t>() + l["a"].get<std::size_t>() + l["c"].get<std::size_t>() +
                l["b"].get<std::size_t>() ==
            inst.t.m());
    }
    if (rec["stage"] == "absorb") {
      saw_absorb = true;
      CHECK(rec["ledger"]["used"] == inst.t.m());
      CHECK(rec["ledger"]["c_star"] == 0);
    }
  }
  CHECK(saw_step1);
  CHECK(saw_absorb);

  // Same seed, same path.
  CHECK(rainbow_dhp(inst.t, inst.tmaj, inst.part, inst.w0, inst.wr, params) == p);
}

TEST_CASE("transversal path on the small counterexample") {
  const auto f = fig1_counterexamples();
  const auto o = transversal_ham_path(f.path_instance);
  CHECK(o.outcome.status == OracleStatus::NotExists);
  CHECK(o.route == "oracle");
  CHECK_FALSE(o.constructive_attempted);
}

TEST_CASE("transversal path agrees with the oracle at n = 6") {
  PipelineParams params;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto t = random_collection(6, 5, seed);
    params.seed = seed;
    const auto o = transversal_ham_path(t, params);
    const auto ref = exact_transversal_ham_path(t);
    REQUIRE(o.outcome.status == ref.status);
    if (o.outcome.status == OracleStatus::Found) REQUIRE(is_hamilton_path(t, *o.outcome.path));
  }
}

TEST_CASE("transversal path with the constructive branch engaged early") {
  // Below the threshold only the middle instance goes to the oracle, so the
  // partition, end-block colouring and assembly all run at n = 13..16.
  PipelineParams params;
  params.oracle_fallback_n = 10;
  std::size_t constructive = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 13 + seed % 4;
    const auto t = random_collection(n, n - 1, seed);
    params.seed = seed;
    const auto o = transversal_ham_path(t, params, SolveMode::Auto);
    const auto ref = exact_transversal_ham_path(t);
    REQUIRE(o.outcome.status == ref.status);
    if (o.outcome.path) REQUIRE(is_hamilton_path(t, *o.outcome.path));
    constructive += o.constructive_succeeded;
    const auto c = transversal_ham_path(t, params, SolveMode::Constructive);
    REQUIRE(c.outcome.status != OracleStatus::NotExists);
    if (c.outcome.status == OracleStatus::Found) REQUIRE(is_hamilton_path(t, *c.outcome.path));
  }
  MESSAGE("constructive successes: " << constructive);
  CHECK(constructive > 0);
}

TEST_CASE("transversal path at n = 600") {
  PipelineParams params;
  params.seed = 2;
  const auto t = random_collection(600, 599, 2);
  const auto o = transversal_ham_path(t, params, SolveMode::Constructive);
  REQUIRE(o.outcome.status == OracleStatus::Found);
  CHECK(o.constructive_succeeded);
  CHECK(o.route == "constructive");
  CHECK(is_hamilton_path(t, *o.outcome.path));
  const auto j = to_json(o);
  CHECK(j["status"] == "Found");
  CHECK(j["arcs"].size() == 599);
}

TEST_CASE("surplus colors are dropped by the constructive branch") {
  const auto t = random_collection(250, 260, 8);
  PipelineParams params;
  const auto o = transversal_ham_path(t, params, SolveMode::Constructive);
  REQUIRE(o.outcome.status == OracleStatus::Found);
  CHECK(is_hamilton_path(t, *o.outcome.path));
  for (ColorId c : o.outcome.path->colors) CHECK(c < 249);
}

TEST_CASE("constructive failure is reported, not hidden") {
  PipelineParams params;
  params.oracle_fallback_n = 4;
  const auto t = random_collection(30, 29, 5);
  const auto c = transversal_ham_path(t, params, SolveMode::Constructive);
  if (!c.constructive_succeeded) {
    CHECK(c.outcome.status == OracleStatus::BudgetExhausted);
    CHECK(c.failure_stage.has_value());
    const auto a = transversal_ham_path(t, params, SolveMode::Auto);
    CHECK(a.route == "fallback");
    CHECK(a.outcome.status == OracleStatus::Found);
    CHECK(is_hamilton_path(t, *a.outcome.path));
  } else {
    CHECK(is_hamilton_path(t, *c.outcome.path));
  }
}

TEST_CASE("cycle impossibility family") {
  for (std::size_t n = 3; n <= 10; ++n) {
    const auto t = prop14_collection(n);
    const auto o = transversal_ham_cycle(t);
    CHECK(o.outcome.status == OracleStatus::NotExists);
    CHECK_FALSE(o.precondition_met);
    const auto c = transversal_ham_cycle(t, {}, SolveMode::Constructive);
    CHECK(c.outcome.status == OracleStatus::BudgetExhausted);
    CHECK(c.failure_stage == std::optional<std::string>("precondition"));
  }
  const auto f = fig1_counterexamples();
  CHECK(transversal_ham_cycle(f.cycle_instance).outcome.status == OracleStatus::NotExists);
}

TEST_CASE("cycle agrees with the oracle at n = 7") {
  PipelineParams params;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto t = almost_strong(7, seed);
    params.seed = seed;
    const auto o = transversal_ham_cycle(t, params);
    CHECK(o.precondition_met);
    const auto ref = exact_transversal_ham_cycle(t);
    REQUIRE(o.outcome.status == ref.status);
    if (o.outcome.cycle) REQUIRE(is_hamilton_cycle(t, *o.outcome.cycle));
  }
}

TEST_CASE("constructive cycle branch never claims non-existence") {
  PipelineParams params;
  params.oracle_fallback_n = 4;
  std::size_t found = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 5 + seed % 20;
    const auto t = almost_strong(n, seed);
    params.seed = seed;
    const auto o = transversal_ham_cycle(t, params, SolveMode::Constructive);
    REQUIRE(o.outcome.status != OracleStatus::NotExists);
    if (o.outcome.status == OracleStatus::Found) {
      REQUIRE(is_hamilton_cycle(t, *o.outcome.cycle));
      ++found;
    } else {
      CHECK(o.failure_stage.has_value());
      CHECK(o.dead_ends > 0);
    }
    ++total;
  }
  MESSAGE("constructive cycles: " << found << " of " << total);
  CHECK(found > 0);
}

TEST_CASE("cycle through the partition route at n = 120") {
  PipelineParams params;
  params.seed = 4;
  const auto t = almost_strong(120, 4);
  const auto o = transversal_ham_cycle(t, params, SolveMode::Constructive);
  REQUIRE(o.outcome.status == OracleStatus::Found);
  CHECK(is_hamilton_cycle(t, *o.outcome.cycle));
  bool via_case1 = false;
  for (const auto& rec : o.trace)
    if (rec["stage"] == "absorb") via_case1 = true;
  CHECK(via_case1);
}

TEST_CASE("cycle search state sets") {
  // Path 0 -> 1 over color 0; vertex 2 beats 0 in colors 1 and 2, and 1
  // beats 2 only in color 1.
  auto t0 = Tournament::from_string("111", 3);
  auto t1 = Tournament::from_string("101", 3);  // 0->1, 2->0, 1->2
  auto t2 = Tournament::from_string("100", 3);  // 0->1, 2->0, 2->1
  TournamentCollection t(3, {t0, t1, t2});
  CycleSearchState st;
  st.path = {{0, 1}, {0}};
  st.k = 2;
  st.unused = ColorSet(3);
  st.unused.set(1);
  st.unused.set(2);
  st.refresh_sets(t);
  CHECK(st.s_plus[2]);
  CHECK_FALSE(st.s_minus[2]);
  CHECK_FALSE(st.s_plus[0]);
}
