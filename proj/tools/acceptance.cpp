// Runs the ten acceptance checks and prints one PASS/FAIL line for each.
// Exit status is the number of failed checks.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iostream>
#include <sstream>
#include <thread>

#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/partition.hpp"

using namespace rainbow;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  bool pass;
  std::string detail;
};

std::string fmt(double x, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

std::int64_t total(const SuiteReport& r, const char* key) {
  return r.stats.at("totals").value(key, std::int64_t{0});
}

Line prop14(const HarnessOptions& opt) {
  const auto t0 = Clock::now();
  const auto r = verify_prop14(3, 12, opt);
  const double s = secs_since(t0);
  return {r.ok() && r.instances == 10 && s < 60,
          "n=3..12 all NotExists: " + std::to_string(r.instances - r.failures.size()) + "/10, " + fmt(s) + " s"};
}

Line fig1() {
  const auto t0 = Clock::now();
  const auto f = fig1_counterexamples();
  const auto p = exact_transversal_ham_path(f.path_instance);
  const auto c = exact_transversal_ham_cycle(f.cycle_instance);
  const double s = secs_since(t0);
  return {p.status == OracleStatus::NotExists && c.status == OracleStatus::NotExists && s < 1,
          std::string("path ") + to_string(p.status) + ", cycle " + to_string(c.status) + ", " + fmt(s, 4) + " s"};
}

Line cross_validation(const HarnessOptions& opt) {
  const auto t0 = Clock::now();
  struct Config {
    std::size_t n, m;
  };
  std::vector<Config> configs;
  for (std::size_t n : {4, 5, 6})
    for (std::size_t m : {n - 1, n}) configs.push_back({n, m});
  const std::size_t per = 1000;
  std::vector<int> bad(configs.size() * per, 0);
  std::atomic<std::size_t> witnesses{0};
  parallel_for(bad.size(), opt.jobs, [&](std::size_t i) {
    const auto& cf = configs[i / per];
    const auto t = random_collection(cf.n, cf.m, opt.base_seed + i % per);
    auto witness_ok = [&](const OracleOutcome& o) {
      if (o.status != OracleStatus::Found) return true;
      ++witnesses;
      if (o.path) return validate_transversal(t, o.path->arcs()) && is_hamilton_path(t, *o.path);
      return o.cycle && validate_transversal(t, o.cycle->arcs()) && is_hamilton_cycle(t, *o.cycle);
    };
    const auto a = exact_transversal_ham_path(t), b = reference_ham_path(t);
    bool ok = a.status == b.status && witness_ok(a) && witness_ok(b);
    if (cf.m == cf.n) {
      const auto c = exact_transversal_ham_cycle(t), d = reference_ham_cycle(t);
      ok = ok && c.status == d.status && witness_ok(c) && witness_ok(d);
    }
    bad[i] = ok ? 0 : 1;
  });
  const auto failures = std::count(bad.begin(), bad.end(), 1);
  const double s = secs_since(t0);
  return {failures == 0 && s < 600, std::to_string(bad.size()) + " collections, " + std::to_string(witnesses) +
                                        " witnesses validated, " + std::to_string(failures) + " disagreements, " +
                                        fmt(s) + " s"};
}

Line one_spare(HarnessOptions opt) {
  std::vector<std::size_t> sizes{3};
  for (std::size_t n = 4; n <= 50; ++n) sizes.push_back(n);
  // 512 exhaustive at n = 3; the random sizes share 10^5 seeds.
  opt.seeds = (100'000 + 46) / 47;
  const auto r = verify_lemmas(LemmaSuite::OneSpare, sizes, opt);
  const double c = r.stats.at("maxima").at("max_inspections_per_n2").get<double>();
  const std::size_t random = r.instances - 512;
  return {r.ok() && random >= 100'000, "512 exhaustive + " + std::to_string(random) + " random, " +
                                           std::to_string(r.failures.size()) + " failures, max inspections/n^2 " +
                                           fmt(c, 3) + " (bound 2)"};
}

Line partition(HarnessOptions opt) {
  std::vector<std::size_t> sizes{3, 4, 5, 6};
  const std::vector<std::size_t> random_sizes{7,   8,   10,  12,  16,  24,  32,  48,   64,   100,
                                              128, 200, 256, 400, 512, 800, 1000, 1200, 1600, 2000};
  sizes.insert(sizes.end(), random_sizes.begin(), random_sizes.end());
  opt.seeds = 10'000 / random_sizes.size();
  const auto hp = verify_lemmas(LemmaSuite::HPartition, sizes, opt);
  const auto ld = verify_lemmas(LemmaSuite::LowDegree, sizes, opt);
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto t = random_tournament(2000, opt.base_seed + seed);
    for (std::size_t ell : {std::size_t{3}, std::size_t{24}, std::size_t{200}, std::size_t{2000}}) {
      const auto t0 = Clock::now();
      (void)h_partition(t, ell, Rational{1, 6});
      worst = std::max(worst, secs_since(t0));
    }
  }
  const std::size_t exhaustive = 8 + 64 + 1024 + 32768;
  return {hp.ok() && ld.ok() && worst < 1.0,
          std::to_string(exhaustive) + " exhaustive + " + std::to_string(hp.instances - exhaustive) +
              " random tournaments, " + std::to_string(total(hp, "partitions")) + " partitions, " +
              std::to_string(hp.failures.size() + ld.failures.size()) + " failures, slowest n=2000 call " +
              fmt(worst, 3) + " s"};
}

Line connect(HarnessOptions opt) {
  opt.seeds = 100;
  const auto r = verify_lemmas(LemmaSuite::Connect, {10, 20, 30}, opt);
  return {r.ok() && r.instances == 300, std::to_string(r.instances) + " collections, " +
                                            std::to_string(total(r, "pairs")) + " ordered pairs, " +
                                            std::to_string(r.failures.size()) + " failures"};
}

Line absorber(HarnessOptions opt) {
  opt.seeds = 60;
  const auto desk = verify_lemmas(LemmaSuite::Absorber, {5, 6, 7, 8, 9, 10, 11, 12, 13}, opt);
  opt.seeds = 20;
  const auto large = verify_lemmas(LemmaSuite::Absorber, {20, 40, 80}, opt);
  const bool all_exhaustive = total(desk, "exhaustive") == total(desk, "accepted");
  const bool ok = desk.ok() && large.ok() && all_exhaustive && total(desk, "accepted") > 0 &&
                  total(large, "accepted") > 0;
  return {ok, "desk: " + std::to_string(total(desk, "accepted")) + "/" + std::to_string(desk.instances) +
                  " accepted, " + std::to_string(total(desk, "probes")) + " subsets probed exhaustively; larger: " +
                  std::to_string(total(large, "accepted")) + "/" + std::to_string(large.instances) + " accepted, " +
                  std::to_string(total(large, "probes")) + " probes; " +
                  std::to_string(desk.failures.size() + large.failures.size()) + " failures"};
}

Line agreement(HarnessOptions opt) {
  opt.seeds = 300;
  const auto p = verify_pipeline(PipelineKind::Path, SolveMode::Auto, {5, 6, 7}, opt);
  const auto c = verify_pipeline(PipelineKind::Cycle, SolveMode::Auto, {5, 6, 7}, opt);
  return {p.ok() && c.ok() && p.instances == 900 && c.instances == 900,
          "path " + std::to_string(p.instances) + " (" + std::to_string(p.failures.size()) + " disagreements), cycle " +
              std::to_string(c.instances) + " (" + std::to_string(c.failures.size()) + " disagreements)"};
}

Line scale(HarnessOptions opt) {
  opt.seeds = 10;
  const auto r = verify_constructive_scale({200, 400, 800}, opt);
  bool ok = r.ok();
  std::string rates;
  for (const auto& [n, x] : r.stats.at("success_rate").items()) {
    ok = ok && x.get<double>() > 0;
    rates += (rates.empty() ? "" : ", ") + std::string("n=") + n + " " + fmt(x.get<double>());
  }
  return {ok, "success rate " + rates + "; " + std::to_string(r.failures.size()) + " invalid witnesses"};
}

Line determinism(const HarnessOptions& base) {
  HarnessOptions one = base, four = base;
  one.jobs = 1;
  four.jobs = 4;
  one.seeds = four.seeds = 30;
  std::vector<std::function<SuiteReport(const HarnessOptions&)>> suites{
      [](const HarnessOptions& o) { return verify_theorem_path(3, 3, SuiteMode::Exhaustive, o); },
      [](const HarnessOptions& o) { return verify_theorem_path(4, 6, SuiteMode::Random, o); },
      [](const HarnessOptions& o) { return verify_theorem_cycle(3, 3, SuiteMode::Exhaustive, o); },
      [](const HarnessOptions& o) { return verify_theorem_cycle(4, 6, SuiteMode::Random, o); },
      [](const HarnessOptions& o) { return verify_prop14(3, 9, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::HPartition, {5, 100}, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::LowDegree, {5, 100}, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::OneSpare, {3, 20}, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::ForcingColor, {3, 10}, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::ForcingSet, {25}, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::Connect, {10}, o); },
      [](const HarnessOptions& o) { return verify_lemmas(LemmaSuite::Absorber, {8, 30}, o); },
      [](const HarnessOptions& o) { return verify_pipeline(PipelineKind::Path, SolveMode::Auto, {5, 6}, o); },
      [](const HarnessOptions& o) { return verify_pipeline(PipelineKind::Cycle, SolveMode::Constructive, {14}, o); },
      [](const HarnessOptions& o) {
        HarnessOptions small = o;
        small.seeds = 3;
        return verify_constructive_scale({200}, small);
      },
      [](const HarnessOptions& o) { return bench(BenchKind::Oracle, {5, 6}, o); },
  };
  std::size_t same = 0;
  for (const auto& run : suites) {
    const auto a = run(one), b = run(four);
    same += report_lines(a, false) == report_lines(b, false) && bench_csv(a, false) == bench_csv(b, false);
  }
  return {same == suites.size(),
          std::to_string(same) + "/" + std::to_string(suites.size()) + " suites byte-identical for jobs 1 and 4"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  HarnessOptions opt;
  opt.jobs = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
  app.add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.base_seed, "Base seed");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Line()>>> checks{
      {"two non-strong members, no cycle", [&] { return prop14(opt); }},
      {"three-vertex counterexamples", [] { return fig1(); }},
      {"oracle cross-validation", [&] { return cross_validation(opt); }},
      {"one spare color path", [&] { return one_spare(opt); }},
      {"partition and low degree", [&] { return partition(opt); }},
      {"increasing rainbow connection", [&] { return connect(opt); }},
      {"absorber contract", [&] { return absorber(opt); }},
      {"solver vs oracle at n=5..7", [&] { return agreement(opt); }},
      {"constructive branch at scale", [&] { return scale(opt); }},
      {"determinism across worker counts", [&] { return determinism(opt); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = Clock::now();
    Line l;
    try {
      l = checks[i].second();
    } catch (const std::exception& e) {
      l = {false, std::string("threw: ") + e.what()};
    }
    failed += l.pass ? 0 : 1;
    std::cout << (l.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << checks[i].first << ": " << l.detail << " ["
              << fmt(secs_since(t0), 1) << " s]" << std::endl;
  }
  return failed;
}
