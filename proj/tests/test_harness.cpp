#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>

#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"

using namespace rainbow;

namespace {

// Brute force over vertex orders and color orders; independent of both
// oracles and of the matching code.
bool brute_path(const TournamentCollection& t) {
  std::vector<VertexId> vs(t.n());
  std::iota(vs.begin(), vs.end(), VertexId{0});
  std::vector<ColorId> cs(t.m());
  std::iota(cs.begin(), cs.end(), ColorId{0});
  do {
    std::sort(cs.begin(), cs.end());
    do {
      bool ok = true;
      for (std::size_t i = 0; ok && i + 1 < vs.size(); ++i) ok = t.has_arc(cs[i], vs[i], vs[i + 1]);
      if (ok) return true;
    } while (std::next_permutation(cs.begin(), cs.end()));
  } while (std::next_permutation(vs.begin(), vs.end()));
  return false;
}

bool brute_cycle(const TournamentCollection& t) {
  std::vector<VertexId> vs(t.n());
  std::iota(vs.begin(), vs.end(), VertexId{0});
  std::vector<ColorId> cs(t.m());
  std::iota(cs.begin(), cs.end(), ColorId{0});
  do {
    std::sort(cs.begin(), cs.end());
    do {
      bool ok = true;
      for (std::size_t i = 0; ok && i < vs.size(); ++i) ok = t.has_arc(cs[i], vs[i], vs[(i + 1) % vs.size()]);
      if (ok) return true;
    } while (std::next_permutation(cs.begin(), cs.end()));
  } while (std::next_permutation(vs.begin() + 1, vs.end()));
  return false;
}

std::vector<Json> parse_lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(Json::parse(line));
  return out;
}

bool lists(const SuiteReport& r, const TournamentCollection& t) {
  return std::any_of(r.counterexamples.begin(), r.counterexamples.end(),
                     [&](const Json& c) { return collection_from_json(c.at("instance")) == t; });
}

}  // namespace

TEST_CASE("exhaustive path suite at n = 3") {
  HarnessOptions opt;
  const auto r = verify_theorem_path(3, 3, SuiteMode::Exhaustive, opt);
  CHECK(r.instances == 64);
  CHECK(r.ok());

  std::size_t expected = 0;
  for (std::uint64_t code = 0; code < 64; ++code) {
    std::vector<Tournament> ts;
    for (std::uint64_t c = 0; c < 2; ++c) {
      std::size_t bit = 0;
      const std::uint64_t word = code >> (3 * c);
      ts.push_back(Tournament::from_predicate(3, [&](std::size_t, std::size_t) { return (word >> bit++) & 1; }));
    }
    expected += brute_path(TournamentCollection(3, ts)) ? 0 : 1;
  }
  CHECK(r.counterexamples.size() == expected);
  CHECK(expected == 2);
  CHECK(lists(r, fig1_counterexamples().path_instance));
  for (const auto& c : r.counterexamples) {
    CHECK(c.at("status") == "NotExists");
    CHECK(c.at("check") == "path-oracle");
  }
}

TEST_CASE("exhaustive path suite at n = 4 enumerates every collection") {
  HarnessOptions opt;
  opt.jobs = 4;
  const auto r = verify_theorem_path(4, 4, SuiteMode::Exhaustive, opt);
  CHECK(r.instances == 262144);
  CHECK(r.ok());
  const auto& t = r.stats.at("totals");
  CHECK(t.at("found").get<std::size_t>() + t.at("not_exists").get<std::size_t>() == 262144);
  CHECK(t.at("budget_exhausted") == 0);
  CHECK(r.counterexamples.size() == t.at("not_exists").get<std::size_t>());
}

TEST_CASE("exhaustive cycle suite at n = 3 filters to the hypothesis") {
  HarnessOptions opt;
  const auto r = verify_theorem_cycle(3, 3, SuiteMode::Exhaustive, opt);
  CHECK(r.ok());

  std::size_t admitted = 0, missing = 0;
  for (std::uint64_t code = 0; code < 512; ++code) {
    std::vector<Tournament> ts;
    std::size_t strong = 0;
    for (std::uint64_t c = 0; c < 3; ++c) {
      const std::uint64_t w = (code >> (3 * c)) & 7;
      // On three vertices only the two cyclic orientations are strong.
      strong += (w == 0b101 || w == 0b010) ? 1 : 0;
      std::size_t bit = 0;
      ts.push_back(Tournament::from_predicate(3, [&](std::size_t, std::size_t) { return (w >> bit++) & 1; }));
    }
    if (strong < 2) continue;
    ++admitted;
    missing += brute_cycle(TournamentCollection(3, ts)) ? 0 : 1;
  }
  CHECK(admitted == 80);
  CHECK(r.instances == admitted);
  CHECK(r.counterexamples.size() == missing);
  CHECK(lists(r, fig1_counterexamples().cycle_instance));
}

TEST_CASE("random theorem suites agree with the enumeration oracle") {
  HarnessOptions opt;
  opt.seeds = 60;
  opt.jobs = 3;
  const auto p = verify_theorem_path(4, 6, SuiteMode::Random, opt);
  CHECK(p.instances == 180);
  CHECK(p.ok());
  const auto c = verify_theorem_cycle(4, 6, SuiteMode::Random, opt);
  CHECK(c.instances == 180);
  CHECK(c.ok());
  CHECK_THROWS_AS(verify_theorem_path(5, 5, SuiteMode::Exhaustive, opt), InvalidArgument);
  CHECK_THROWS_AS(verify_theorem_cycle(3, 4, SuiteMode::Exhaustive, opt), InvalidArgument);
}

TEST_CASE("two non-strong members block every cycle") {
  const auto r = verify_prop14(3, 10, HarnessOptions{});
  CHECK(r.instances == 8);
  CHECK(r.ok());
}

TEST_CASE("lemma suites hold on small and exhaustive families") {
  HarnessOptions opt;
  opt.seeds = 15;
  opt.jobs = 2;

  auto hp = verify_lemmas(LemmaSuite::HPartition, {3, 4, 5, 40, 300}, opt);
  CHECK(hp.instances == 8 + 64 + 1024 + 30);
  CHECK(hp.ok());

  auto ld = verify_lemmas(LemmaSuite::LowDegree, {6, 50}, opt);
  CHECK(ld.instances == 32768 + 15);
  CHECK(ld.ok());

  auto os = verify_lemmas(LemmaSuite::OneSpare, {3, 9, 40}, opt);
  CHECK(os.instances == 512 + 30);
  CHECK(os.ok());
  CHECK(os.stats.at("maxima").at("max_inspections_per_n2").get<double>() <= 2.0);

  CHECK(verify_lemmas(LemmaSuite::ForcingColor, {3, 4, 12}, opt).ok());
  CHECK(verify_lemmas(LemmaSuite::ForcingSet, {25, 50}, opt).ok());
  CHECK(verify_lemmas(LemmaSuite::Connect, {10, 20}, opt).ok());
  CHECK_THROWS_AS(verify_lemmas(LemmaSuite::ForcingSet, {24}, opt), InvalidArgument);
}

TEST_CASE("absorber suite probes every subset at desk scale") {
  HarnessOptions opt;
  opt.seeds = 6;
  const auto r = verify_lemmas(LemmaSuite::Absorber, {6, 9, 13, 30}, opt);
  CHECK(r.ok());
  const auto& by_n = r.stats.at("by_n");
  for (const char* n : {"6", "9", "13"})
    CHECK(by_n.at(n).value("exhaustive", 0) == by_n.at(n).value("accepted", 0));
  CHECK(r.stats.at("totals").value("accepted", 0) > 0);
}

TEST_CASE("pipeline suite matches the oracle") {
  HarnessOptions opt;
  opt.seeds = 40;
  opt.jobs = 4;
  CHECK(verify_pipeline(PipelineKind::Path, SolveMode::Auto, {5, 6, 7}, opt).ok());
  CHECK(verify_pipeline(PipelineKind::Cycle, SolveMode::Auto, {5, 6, 7}, opt).ok());

  opt.seeds = 6;
  const auto c = verify_pipeline(PipelineKind::Cycle, SolveMode::Constructive, {14, 16}, opt);
  CHECK(c.ok());
  CHECK(c.stats.at("totals").at("constructive_attempted") == 12);

  // Too large for the oracle: witnesses are still validated.
  opt.seeds = 2;
  const auto big = verify_pipeline(PipelineKind::Cycle, SolveMode::Auto, {70}, opt);
  CHECK(big.ok());
  CHECK(big.stats.at("totals").at("oracle_compared") == 0);
  CHECK(big.stats.at("totals").at("constructive_succeeded") == 2);
}

TEST_CASE("constructive scale reports a success rate per size") {
  HarnessOptions opt;
  opt.seeds = 2;
  const auto r = verify_constructive_scale({200}, opt);
  CHECK(r.ok());
  CHECK(r.stats.at("success_rate").contains("200"));
  CHECK(r.stats.at("success_rate").at("200").get<double>() > 0);
}

TEST_CASE("records round trip and replay") {
  HarnessOptions opt;
  const auto r = verify_theorem_path(3, 3, SuiteMode::Exhaustive, opt);
  REQUIRE_FALSE(r.counterexamples.empty());
  for (const auto& c : r.counterexamples) {
    const auto t = collection_from_json(c.at("instance"));
    CHECK(to_json(t) == c.at("instance"));
    const auto again = recheck(c);
    CHECK(again.at("counterexample") == true);
    CHECK(again.at("failed") == false);
  }

  // A cycle exists here, so the two-non-strong check must fail on replay.
  const TournamentCollection triangles(3, std::vector<Tournament>(3, prop14_tprime(3)));
  Json fake{{"suite", "prop14"}, {"check", "prop14"}, {"args", Json::object()}, {"instance", to_json(triangles)}};
  const auto a = recheck(fake), b = recheck(fake);
  CHECK(a.at("failed") == true);
  CHECK(a == b);
  CHECK(a.at("reason").get<std::string>().find("expected NotExists") != std::string::npos);
  CHECK_THROWS_AS(recheck(Json{{"check", "nope"}, {"args", Json::object()}, {"instance", fake["instance"]}}),
                  InvalidArgument);
}

TEST_CASE("reports do not depend on the worker count") {
  HarnessOptions one, four;
  one.seeds = four.seeds = 25;
  four.jobs = 4;
  auto same = [](const SuiteReport& a, const SuiteReport& b) { return report_lines(a, false) == report_lines(b, false); };
  CHECK(same(verify_theorem_cycle(3, 3, SuiteMode::Exhaustive, one),
             verify_theorem_cycle(3, 3, SuiteMode::Exhaustive, four)));
  CHECK(same(verify_theorem_path(3, 5, SuiteMode::Random, one), verify_theorem_path(3, 5, SuiteMode::Random, four)));
  CHECK(same(verify_lemmas(LemmaSuite::OneSpare, {3, 12}, one), verify_lemmas(LemmaSuite::OneSpare, {3, 12}, four)));
  CHECK(same(bench(BenchKind::Oracle, {5, 6}, one), bench(BenchKind::Oracle, {5, 6}, four)));
}

TEST_CASE("report lines") {
  HarnessOptions opt;
  const auto r = verify_theorem_path(3, 3, SuiteMode::Exhaustive, opt);
  const auto lines = parse_lines(report_lines(r, true));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].at("type") == "counterexample");
  CHECK(lines[2].at("type") == "summary");
  CHECK(lines[2].contains("wall_ms"));
  CHECK(lines[2].at("counterexamples") == 2);
  const auto bare = parse_lines(report_lines(r, false));
  CHECK_FALSE(bare[2].contains("wall_ms"));
  CHECK(summary_json(r, false) == bare[2]);
}

TEST_CASE("bench rows and csv") {
  HarnessOptions opt;
  opt.seeds = 2;
  const auto r = bench(BenchKind::HPartition, {50, 100}, opt);
  CHECK(r.instances == 4);
  CHECK(r.stats.at("rows").size() == 4);
  const auto csv = bench_csv(r, true);
  CHECK(csv.rfind("kind,n,seed,blocks,ms\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(bench_csv(r, false).rfind("kind,n,seed,blocks\n", 0) == 0);

  const auto o = bench(BenchKind::OneSpare, {100, 200}, opt);
  CHECK(o.ok());
  CHECK(o.stats.contains("inspection_exponent"));
  CHECK_THROWS_AS(parse_bench_kind("x"), InvalidArgument);
  CHECK(parse_bench_kind("one-spare") == BenchKind::OneSpare);
}

TEST_CASE("canonical forms ignore labels") {
  const auto f = fig1_counterexamples();
  const auto swapped = TournamentCollection(3, {f.path_instance[1], f.path_instance[0]});
  CHECK(canonical_form(f.path_instance) == canonical_form(swapped));
  std::vector<VertexId> perm{2, 0, 1};
  std::vector<Tournament> ts;
  for (const auto& t : f.cycle_instance.tournaments()) ts.push_back(t.induced(perm));
  CHECK(canonical_form(f.cycle_instance) == canonical_form(TournamentCollection(3, ts)));
  CHECK(canonical_form(f.cycle_instance) != canonical_form(f.path_instance));

  HarnessOptions opt;
  opt.canonical = true;
  const auto r = verify_theorem_path(3, 3, SuiteMode::Exhaustive, opt);
  CHECK(r.stats.at("distinct_counterexamples") == 1);
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 7, [&](std::size_t i) { hits[i]++; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](const auto& h) { return h.load() == 1; }));
  CHECK_THROWS_AS(parallel_for(50, 4, [](std::size_t i) {
                    if (i == 17) throw InvalidArgument("boom");
                  }),
                  InvalidArgument);
  parallel_for(0, 4, [](std::size_t) { FAIL("called"); });
}

TEST_CASE("suite names parse") {
  for (auto s : {LemmaSuite::HPartition, LemmaSuite::LowDegree, LemmaSuite::Absorber, LemmaSuite::OneSpare,
                 LemmaSuite::ForcingColor, LemmaSuite::ForcingSet, LemmaSuite::Connect})
    CHECK(parse_lemma_suite(to_string(s)) == s);
  CHECK(parse_suite_mode("random") == SuiteMode::Random);
  CHECK_THROWS_AS(parse_suite_mode("all"), InvalidArgument);
  CHECK_THROWS_AS(parse_lemma_suite("lemma"), InvalidArgument);
}
