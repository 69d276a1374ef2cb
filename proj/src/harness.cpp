#include "rainbow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "rainbow/absorber.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/partition.hpp"
#include "rainbow/rainbow_paths.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Outcome of one check on one instance.
struct Verdict {
  bool failed = false;
  bool counterexample = false;
  std::string reason;
  Json status;  // extra fields copied into the record
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::vector<std::pair<std::string, double>> maxima;
  std::optional<Json> row;

  void count(const std::string& key, std::int64_t v = 1) {
    for (auto& [k, x] : counts)
      if (k == key) {
        x += v;
        return;
      }
    counts.emplace_back(key, v);
  }
  void max(const std::string& key, double v) {
    for (auto& [k, x] : maxima)
      if (k == key) {
        x = std::max(x, v);
        return;
      }
    maxima.emplace_back(key, v);
  }
  void fail(std::string why) {
    if (!failed) reason = std::move(why);
    failed = true;
  }
};

struct Job {
  std::string check;
  Json args;
  TournamentCollection instance;
  std::size_t n = 0;
};

const std::vector<std::string> kTimingKeys = {"ms", "wall_ms", "millis", "ms_exponent"};

void strip_timing(Json& j) {
  if (j.is_object()) {
    for (const auto& k : kTimingKeys) j.erase(k);
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

TournamentCollection single(const Tournament& t) { return TournamentCollection(t.n(), {t}); }

// Tournament number `code` among the 2^(n choose 2) labelled ones on n vertices.
Tournament tournament_from_code(std::size_t n, std::uint64_t code) {
  std::size_t bit = 0;
  return Tournament::from_predicate(n, [&](std::size_t, std::size_t) { return ((code >> bit++) & 1U) != 0; });
}

TournamentCollection collection_from_code(std::size_t n, std::size_t m, std::uint64_t code) {
  const std::size_t p = n * (n - 1) / 2;
  std::vector<Tournament> ts;
  for (std::size_t c = 0; c < m; ++c) ts.push_back(tournament_from_code(n, (code >> (c * p)) & ((1ULL << p) - 1)));
  return TournamentCollection(n, std::move(ts));
}

std::size_t strong_members(const TournamentCollection& t) {
  std::size_t k = 0;
  for (const auto& x : t.tournaments()) k += is_strongly_connected(x) ? 1 : 0;
  return k;
}

// n - 1 strongly connected members plus one unrestricted one.
TournamentCollection hypothesis_collection(std::size_t n, std::uint64_t seed) {
  auto ts = random_collection(n, n - 1, seed, true).tournaments();
  ts.push_back(random_tournament(n, seed, 977));
  return TournamentCollection(n, std::move(ts));
}

PipelineParams params_for(const HarnessOptions& opt, std::uint64_t seed) {
  PipelineParams p = opt.params;
  p.seed = seed;
  if (p.oracle_budget.max_nodes == 0 && !p.oracle_budget.time_limit_secs) p.oracle_budget = opt.budget;
  return p;
}

std::vector<std::size_t> partition_ells(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t ell : {std::size_t{3}, std::size_t{24}, (n + 9) / 10, n})
    if (ell >= 3 && ell <= n && std::find(out.begin(), out.end(), ell) == out.end()) out.push_back(ell);
  return out;
}

ColorSet set_from(const Json& j, std::size_t m) {
  ColorSet s(m);
  for (const auto& c : j) s.set(c.get<std::size_t>());
  return s;
}

// Calls fn on every k-subset of `items`; stops early when fn returns false.
template <class Fn>
bool for_each_subset(const std::vector<std::size_t>& items, std::size_t k, Fn&& fn) {
  if (k > items.size()) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// ---- checks ---------------------------------------------------------------

void record_oracle(Verdict& v, const OracleOutcome& o) {
  v.count("found", o.status == OracleStatus::Found);
  v.count("not_exists", o.status == OracleStatus::NotExists);
  v.count("budget_exhausted", o.status == OracleStatus::BudgetExhausted);
  v.max("max_nodes", static_cast<double>(o.nodes_expanded));
  v.status["status"] = to_string(o.status);
  v.counterexample = o.status == OracleStatus::NotExists;
}

Verdict check_path_oracle(const TournamentCollection& t, const Json&, const HarnessOptions& opt) {
  Verdict v;
  const auto o = exact_transversal_ham_path(t, std::nullopt, opt.budget);
  record_oracle(v, o);
  if (o.status == OracleStatus::Found && !(o.path && is_hamilton_path(t, *o.path))) v.fail("invalid witness");
  if (t.n() <= 6 && o.status != OracleStatus::BudgetExhausted) {
    const auto ref = reference_ham_path(t);
    if (ref.status != o.status)
      v.fail(std::string("oracle says ") + to_string(o.status) + ", enumeration says " + to_string(ref.status));
  }
  return v;
}

Verdict check_cycle_oracle(const TournamentCollection& t, const Json&, const HarnessOptions& opt) {
  Verdict v;
  const auto o = exact_transversal_ham_cycle(t, opt.budget);
  record_oracle(v, o);
  if (o.status == OracleStatus::Found && !(o.cycle && is_hamilton_cycle(t, *o.cycle))) v.fail("invalid witness");
  if (t.n() <= 6 && o.status != OracleStatus::BudgetExhausted) {
    const auto ref = reference_ham_cycle(t);
    if (ref.status != o.status)
      v.fail(std::string("oracle says ") + to_string(o.status) + ", enumeration says " + to_string(ref.status));
  }
  return v;
}

Verdict check_prop14(const TournamentCollection& t, const Json&, const HarnessOptions& opt) {
  Verdict v;
  const auto o = exact_transversal_ham_cycle(t, opt.budget);
  v.status["status"] = to_string(o.status);
  v.max("max_nodes", static_cast<double>(o.nodes_expanded));
  if (o.status != OracleStatus::NotExists) v.fail(std::string("expected NotExists, got ") + to_string(o.status));
  if (strong_members(t) + 2 != t.m()) v.fail("family does not have exactly two non-strong members");
  return v;
}

Verdict check_h_partition(const TournamentCollection& c, const Json&, const HarnessOptions&) {
  Verdict v;
  const Tournament& t = c[0];
  const Rational gamma{1, 6};
  for (std::size_t ell : partition_ells(t.n())) {
    const auto p = h_partition(t, ell, gamma);
    const auto bad = h_partition_violations(t, p, ell, gamma);
    v.count("partitions");
    v.max("max_blocks", static_cast<double>(p.r()));
    if (!bad.empty()) v.fail("ell=" + std::to_string(ell) + ": " + bad.front());
  }
  return v;
}

Verdict check_low_degree(const TournamentCollection& c, const Json&, const HarnessOptions&) {
  Verdict v;
  const Tournament& t = c[0];
  // Degrees by direct arc queries, not the packed sequence the library uses.
  std::vector<std::size_t> out(t.n());
  for (VertexId u = 0; u < t.n(); ++u) out[u] = t.out_degree(u);
  // Sorted counts answer every d in one sweep.
  std::vector<std::size_t> in_sorted, out_sorted = out;
  for (std::size_t x : out) in_sorted.push_back(t.n() - 1 - x);
  std::sort(out_sorted.begin(), out_sorted.end());
  std::sort(in_sorted.begin(), in_sorted.end());
  for (std::size_t d = 0; d < t.n(); ++d) {
    auto at_most = [d](const std::vector<std::size_t>& xs) {
      return static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), d) - xs.begin());
    };
    const bool holds = at_most(in_sorted) <= 2 * d + 1 && at_most(out_sorted) <= 2 * d + 1;
    if (!holds) v.fail("d=" + std::to_string(d) + ": bound violated");
    if (low_degree_count_bound_check(out, d) != holds) v.fail("d=" + std::to_string(d) + ": library check disagrees");
  }
  v.count("degrees", static_cast<std::int64_t>(t.n()));
  return v;
}

Verdict check_one_spare(const TournamentCollection& t, const Json&, const HarnessOptions&) {
  Verdict v;
  OneSpareStats st;
  const auto p = rainbow_ham_path_one_spare(t, &st);
  if (!is_hamilton_path(t, p)) v.fail("not a rainbow Hamilton path");
  const double n2 = static_cast<double>(t.n() * t.n());
  const double ratio = static_cast<double>(st.arc_inspections) / n2;
  v.max("max_inspections_per_n2", ratio);
  v.count("inspections", static_cast<std::int64_t>(st.arc_inspections));
  if (ratio > 2.0) v.fail("arc inspections " + std::to_string(st.arc_inspections) + " exceed 2n^2");
  return v;
}

Verdict check_forcing_color(const TournamentCollection& t, const Json& args, const HarnessOptions&) {
  Verdict v;
  const auto i = args.at("color").get<ColorId>();
  const bool exceptional = is_exceptional_configuration(t, i);
  try {
    const auto p = rainbow_ham_path_forcing_color(t, i);
    if (!is_hamilton_path(t, p)) v.fail("not a rainbow Hamilton path");
    if (std::find(p.colors.begin(), p.colors.end(), i) == p.colors.end()) v.fail("forced color missing");
    if (exceptional) v.fail("succeeded on the exceptional configuration");
    v.count("paths");
  } catch (const ConstructionFailure& e) {
    v.count("exceptional", exceptional);
    if (!exceptional || e.kind() != FailureKind::ExceptionalConfiguration) v.fail(e.what());
  }
  return v;
}

Verdict check_forcing_set(const TournamentCollection& t, const Json& args, const HarnessOptions&) {
  Verdict v;
  const ColorSet b = set_from(args.at("b"), t.m());
  const auto u = args.at("u").get<VertexId>();
  const auto w = args.at("v").get<VertexId>();
  try {
    const auto p = rainbow_ham_path_forcing_set(t, b, u, w);
    if (!is_hamilton_path(t, p)) v.fail("not a rainbow Hamilton path");
    if (p.vertices.front() != u || p.vertices.back() != w) v.fail("wrong endpoints");
    ColorSet on(t.m());
    for (ColorId c : p.colors) on.set(c);
    if (!b.is_subset_of(on)) v.fail("a forced color is missing");
    v.count("paths");
  } catch (const ConstructionFailure& e) {
    v.fail(e.what());
  }
  return v;
}

Verdict check_connect(const TournamentCollection& t, const Json&, const HarnessOptions&) {
  Verdict v;
  for (VertexId x = 0; x < t.n(); ++x)
    for (VertexId y = 0; y < t.n(); ++y) {
      if (x == y) continue;
      const std::string pair = std::to_string(x) + "->" + std::to_string(y) + ": ";
      try {
        const auto p = rainbow_connect(t, x, y);
        v.count("pairs");
        v.max("max_length", static_cast<double>(p.length()));
        if (!p.valid(t)) v.fail(pair + "invalid rainbow path");
        if (p.vertices.empty() || p.vertices.front() != x || p.vertices.back() != y) v.fail(pair + "wrong endpoints");
        if (!std::is_sorted(p.colors.begin(), p.colors.end()) ||
            std::adjacent_find(p.colors.begin(), p.colors.end()) != p.colors.end())
          v.fail(pair + "colors not strictly increasing");
      } catch (const ConstructionFailure& e) {
        v.fail(pair + e.what());
      }
    }
  return v;
}

Verdict check_absorber(const TournamentCollection& t, const Json& args, const HarnessOptions&) {
  Verdict v;
  std::vector<Arc> arcs;
  for (const auto& a : args.at("arcs")) arcs.emplace_back(a.at(0).get<VertexId>(), a.at(1).get<VertexId>());
  const ColorSet avail = set_from(args.at("avail"), t.m());
  AbsorberParams ap;
  ap.ell = args.at("ell").get<std::size_t>();
  ap.c_size = args.at("c_size").get<std::size_t>();
  ap.seed = args.at("seed").get<std::uint64_t>();
  Absorber ab;
  try {
    ab = build_absorber(t, arcs, avail, ap);
  } catch (const ConstructionFailure&) {
    v.count("rejected");
    return v;
  }
  v.count("accepted");
  auto probe = [&](const ColorSet& cprime) {
    v.count("probes");
    if (!absorbable(ab, cprime)) {
      v.fail("C' " + std::to_string(cprime.count()) + " colors not absorbable");
      return false;
    }
    const auto d = absorb(ab, cprime);
    ColorSet used(t.m());
    std::vector<Arc> got;
    for (const auto& a : d) {
      used.set(a.color);
      got.emplace_back(a.tail, a.head);
    }
    auto want = ab.target_arcs;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (!validate_transversal(t, d) || got != want || used != (ab.a | cprime)) {
      v.fail("absorb returned a wrong colouring");
      return false;
    }
    return true;
  };
  const auto cs = members(ab.c);
  if (binomial_capped(cs.size(), ab.ell, ap.exhaustive_limit) <= ap.exhaustive_limit) {
    v.count("exhaustive");
    for_each_subset(cs, ab.ell, [&](const std::vector<std::size_t>& idx) {
      ColorSet cp(t.m());
      for (auto i : idx) cp.set(cs[i]);
      return probe(cp);
    });
  } else {
    // A stream the acceptance probes did not use.
    for (const auto& cp : probe_schedule(ab, ap, stream_key(ap.seed, 0x7e57)))
      if (!probe(cp)) break;
  }
  return v;
}

std::optional<std::string> compare_pipeline(const TournamentCollection& t, const PipelineOutcome& o,
                                            const OracleOutcome& ref, SolveMode mode, bool cycle) {
  const auto st = o.outcome.status;
  if (st == OracleStatus::Found) {
    const bool ok = cycle ? o.outcome.cycle && is_hamilton_cycle(t, *o.outcome.cycle)
                          : o.outcome.path && is_hamilton_path(t, *o.outcome.path);
    if (!ok) return "invalid witness";
  }
  if (ref.status == OracleStatus::BudgetExhausted) return std::nullopt;
  if (st == ref.status) return std::nullopt;
  // A constructive give-up is not a wrong answer.
  if (mode == SolveMode::Constructive && st == OracleStatus::BudgetExhausted) return std::nullopt;
  return std::string("solver says ") + to_string(st) + ", oracle says " + to_string(ref.status);
}

Verdict check_pipeline(const TournamentCollection& t, const Json& args, const HarnessOptions& opt) {
  Verdict v;
  const bool cycle = args.at("kind").get<std::string>() == "cycle";
  const SolveMode mode = parse_solve_mode(args.at("mode").get<std::string>());
  const auto params = params_for(opt, args.at("seed").get<std::uint64_t>());
  const auto o = cycle ? transversal_ham_cycle(t, params, mode) : transversal_ham_path(t, params, mode);
  // Past the oracle's limits only the witness itself is checked.
  OracleOutcome ref;
  ref.status = OracleStatus::BudgetExhausted;
  const bool comparable = t.n() <= 64 && t.m() <= 512;
  if (comparable)
    ref = cycle ? exact_transversal_ham_cycle(t, opt.budget) : exact_transversal_ham_path(t, {}, opt.budget);
  v.count("oracle_compared", comparable);
  v.status["status"] = to_string(o.outcome.status);
  v.status["route"] = o.route;
  v.count("constructive_attempted", o.constructive_attempted);
  v.count("constructive_succeeded", o.constructive_succeeded);
  v.count("fallback", o.route == "fallback");
  v.count("dead_ends", static_cast<std::int64_t>(o.dead_ends));
  v.counterexample = ref.status == OracleStatus::NotExists;
  if (auto why = compare_pipeline(t, o, ref, mode, cycle)) v.fail(*why);
  return v;
}

Verdict check_constructive(const TournamentCollection& t, const Json& args, const HarnessOptions& opt) {
  Verdict v;
  const auto params = params_for(opt, args.at("seed").get<std::uint64_t>());
  const auto start = Clock::now();
  const auto o = transversal_ham_path(t, params, SolveMode::Constructive);
  const double ms = ms_since(start);
  v.count("succeeded", o.constructive_succeeded);
  if (!o.constructive_succeeded) v.count("failed_stage_" + o.failure_stage.value_or("unknown"));
  v.status["status"] = to_string(o.outcome.status);
  if (o.failure_stage) v.status["failure_stage"] = *o.failure_stage;
  if (o.outcome.status == OracleStatus::Found && !(o.outcome.path && is_hamilton_path(t, *o.outcome.path)))
    v.fail("invalid witness");
  if (o.outcome.status == OracleStatus::NotExists) v.fail("constructive branch claimed nonexistence");
  v.row = Json{{"n", t.n()}, {"seed", args.at("seed")}, {"succeeded", o.constructive_succeeded}, {"ms", ms}};
  return v;
}

Verdict run_check(const std::string& check, const TournamentCollection& t, const Json& args,
                  const HarnessOptions& opt) {
  if (check == "path-oracle") return check_path_oracle(t, args, opt);
  if (check == "cycle-oracle") return check_cycle_oracle(t, args, opt);
  if (check == "prop14") return check_prop14(t, args, opt);
  if (check == "h-partition") return check_h_partition(t, args, opt);
  if (check == "low-degree") return check_low_degree(t, args, opt);
  if (check == "one-spare") return check_one_spare(t, args, opt);
  if (check == "forcing-color") return check_forcing_color(t, args, opt);
  if (check == "forcing-set") return check_forcing_set(t, args, opt);
  if (check == "connect") return check_connect(t, args, opt);
  if (check == "absorber") return check_absorber(t, args, opt);
  if (check == "pipeline") return check_pipeline(t, args, opt);
  if (check == "constructive") return check_constructive(t, args, opt);
  throw InvalidArgument("unknown check '" + check + "'");
}

Json make_record(const std::string& suite, const Job& job, std::size_t index, const Verdict& v) {
  Json r;
  r["suite"] = suite;
  r["check"] = job.check;
  r["index"] = index;
  r["n"] = job.n;
  r["args"] = job.args;
  if (v.failed) r["reason"] = v.reason;
  for (const auto& [k, x] : v.status.items()) r[k] = x;
  r["instance"] = to_json(job.instance);
  return r;
}

// Builds jobs lazily by index so the exhaustive suites never hold every
// instance at once; merges verdicts in index order.
SuiteReport run_suite(const std::string& suite, std::size_t count, const std::function<Job(std::size_t)>& make,
                      const HarnessOptions& opt) {
  const auto start = Clock::now();
  struct Slot {
    Verdict v;
    std::size_t n = 0;
    std::optional<Json> record;
  };
  std::vector<Slot> slots(count);
  parallel_for(count, opt.jobs, [&](std::size_t i) {
    Job job = make(i);
    Slot& s = slots[i];
    s.n = job.n;
    s.v = run_check(job.check, job.instance, job.args, opt);
    if (s.v.failed || s.v.counterexample) s.record = make_record(suite, job, i, s.v);
  });

  SuiteReport r;
  r.suite = suite;
  r.instances = count;
  Json totals = Json::object(), maxima = Json::object(), by_n = Json::object(), rows = Json::array();
  std::vector<std::string> forms;
  for (auto& s : slots) {
    const std::string key = std::to_string(s.n);
    if (!by_n.contains(key)) by_n[key] = Json{{"instances", 0}, {"failures", 0}, {"counterexamples", 0}};
    Json& b = by_n[key];
    b["instances"] = b["instances"].get<std::int64_t>() + 1;
    for (const auto& [k, x] : s.v.counts) {
      totals[k] = totals.value(k, std::int64_t{0}) + x;
      b[k] = b.value(k, std::int64_t{0}) + x;
    }
    for (const auto& [k, x] : s.v.maxima) {
      maxima[k] = std::max(maxima.value(k, 0.0), x);
      b[k] = std::max(b.value(k, 0.0), x);
    }
    if (s.v.row) rows.push_back(*s.v.row);
    if (!s.record) continue;
    if (s.v.failed) {
      b["failures"] = b["failures"].get<std::int64_t>() + 1;
      r.failures.push_back(std::move(*s.record));
    } else {
      b["counterexamples"] = b["counterexamples"].get<std::int64_t>() + 1;
      if (opt.canonical) forms.push_back(canonical_form(collection_from_json(s.record->at("instance"))));
      r.counterexamples.push_back(std::move(*s.record));
    }
  }
  r.stats["totals"] = totals;
  r.stats["maxima"] = maxima;
  r.stats["by_n"] = by_n;
  if (!rows.empty()) r.stats["rows"] = rows;
  if (opt.canonical) {
    std::sort(forms.begin(), forms.end());
    r.stats["distinct_counterexamples"] = std::unique(forms.begin(), forms.end()) - forms.begin();
  }
  r.wall_ms = ms_since(start);
  return r;
}

// Sizes in n_min..n_max whose by_n entry shows no counterexample.
Json clean_sizes(const SuiteReport& r) {
  Json out = Json::array();
  for (const auto& [k, b] : r.stats["by_n"].items())
    if (b.at("counterexamples").get<std::int64_t>() == 0) out.push_back(std::stoul(k));
  return out;
}

std::uint64_t pow2(std::size_t bits) {
  if (bits >= 63) throw InvalidArgument("exhaustive enumeration too large");
  return 1ULL << bits;
}

}  // namespace

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Json summary_json(const SuiteReport& r, bool timing) {
  Json j;
  j["type"] = "summary";
  j["suite"] = r.suite;
  j["instances"] = r.instances;
  j["failures"] = r.failures.size();
  j["counterexamples"] = r.counterexamples.size();
  j["ok"] = r.ok();
  j["stats"] = r.stats;
  j["wall_ms"] = r.wall_ms;
  if (!timing) strip_timing(j);
  return j;
}

std::string report_lines(const SuiteReport& r, bool timing) {
  std::string out;
  auto emit = [&](const char* type, const Json& rec) {
    Json line;
    line["type"] = type;
    for (const auto& [k, x] : rec.items()) line[k] = x;
    if (!timing) strip_timing(line);
    out += line.dump() + "\n";
  };
  for (const auto& f : r.failures) emit("failure", f);
  for (const auto& c : r.counterexamples) emit("counterexample", c);
  out += summary_json(r, timing).dump() + "\n";
  return out;
}

const char* to_string(SuiteMode m) { return m == SuiteMode::Exhaustive ? "exhaustive" : "random"; }

SuiteMode parse_suite_mode(const std::string& s) {
  if (s == "exhaustive") return SuiteMode::Exhaustive;
  if (s == "random") return SuiteMode::Random;
  throw InvalidArgument("unknown suite mode '" + s + "'");
}

SuiteReport verify_theorem_path(std::size_t n_min, std::size_t n_max, SuiteMode mode, const HarnessOptions& opt) {
  if (n_min < 2 || n_min > n_max) throw InvalidArgument("need 2 <= n_min <= n_max");
  std::vector<std::pair<std::size_t, std::uint64_t>> ranges;  // (n, instances)
  if (mode == SuiteMode::Exhaustive) {
    if (n_max > 4) throw InvalidArgument("exhaustive path suite needs n <= 4");
    for (std::size_t n = n_min; n <= n_max; ++n) ranges.emplace_back(n, pow2(n * (n - 1) / 2 * (n - 1)));
  } else {
    for (std::size_t n = n_min; n <= n_max; ++n) ranges.emplace_back(n, opt.seeds);
  }
  std::size_t total = 0;
  for (const auto& [n, c] : ranges) total += c;
  auto r = run_suite(
      "theorem-path", total,
      [&](std::size_t i) {
        for (const auto& [n, c] : ranges) {
          if (i >= c) {
            i -= c;
            continue;
          }
          Job j{"path-oracle", Json::object(), {}, n};
          if (mode == SuiteMode::Exhaustive) {
            j.args["code"] = i;
            j.instance = collection_from_code(n, n - 1, i);
          } else {
            j.args["seed"] = opt.base_seed + i;
            j.instance = random_collection(n, n - 1, opt.base_seed + i);
          }
          return j;
        }
        throw std::logic_error("index out of range");
      },
      opt);
  r.stats["mode"] = to_string(mode);
  r.stats["sizes_without_counterexample"] = clean_sizes(r);
  return r;
}

SuiteReport verify_theorem_cycle(std::size_t n_min, std::size_t n_max, SuiteMode mode, const HarnessOptions& opt) {
  if (n_min < 3 || n_min > n_max) throw InvalidArgument("need 3 <= n_min <= n_max");
  std::vector<std::pair<std::size_t, std::uint64_t>> items;  // (n, code or seed)
  if (mode == SuiteMode::Exhaustive) {
    if (n_min != 3 || n_max != 3) throw InvalidArgument("exhaustive cycle suite needs n = 3");
    for (std::uint64_t code = 0; code < pow2(9); ++code)
      if (strong_members(collection_from_code(3, 3, code)) >= 2) items.emplace_back(3, code);
  } else {
    for (std::size_t n = n_min; n <= n_max; ++n)
      for (std::size_t s = 0; s < opt.seeds; ++s) items.emplace_back(n, opt.base_seed + s);
  }
  auto r = run_suite(
      "theorem-cycle", items.size(),
      [&](std::size_t i) {
        const auto [n, key] = items[i];
        Job j{"cycle-oracle", Json::object(), {}, n};
        if (mode == SuiteMode::Exhaustive) {
          j.args["code"] = key;
          j.instance = collection_from_code(n, n, key);
        } else {
          j.args["seed"] = key;
          j.instance = hypothesis_collection(n, key);
        }
        return j;
      },
      opt);
  r.stats["mode"] = to_string(mode);
  r.stats["sizes_without_counterexample"] = clean_sizes(r);
  return r;
}

SuiteReport verify_prop14(std::size_t n_min, std::size_t n_max, const HarnessOptions& opt) {
  if (n_min < 3 || n_min > n_max) throw InvalidArgument("need 3 <= n_min <= n_max");
  return run_suite(
      "prop14", n_max - n_min + 1,
      [&](std::size_t i) {
        const std::size_t n = n_min + i;
        return Job{"prop14", Json::object(), prop14_collection(n), n};
      },
      opt);
}

const char* to_string(LemmaSuite s) {
  switch (s) {
    case LemmaSuite::HPartition: return "h-partition";
    case LemmaSuite::LowDegree: return "low-degree";
    case LemmaSuite::Absorber: return "absorber";
    case LemmaSuite::OneSpare: return "one-spare";
    case LemmaSuite::ForcingColor: return "forcing-color";
    case LemmaSuite::ForcingSet: return "forcing-set";
    case LemmaSuite::Connect: return "connect";
  }
  return "h-partition";
}

LemmaSuite parse_lemma_suite(const std::string& s) {
  for (auto x : {LemmaSuite::HPartition, LemmaSuite::LowDegree, LemmaSuite::Absorber, LemmaSuite::OneSpare,
                 LemmaSuite::ForcingColor, LemmaSuite::ForcingSet, LemmaSuite::Connect})
    if (s == to_string(x)) return x;
  throw InvalidArgument("unknown lemma suite '" + s + "'");
}

namespace {

// Absorber instance: target arcs from a Hamilton path of the majority
// tournament. Desk scale (n <= 13) keeps at most 12 arcs, m <= 40, ell <= 3.
Job absorber_job(std::size_t n, std::uint64_t seed) {
  const bool desk = n <= 13;
  const std::size_t m = desk ? std::min<std::size_t>(40, 3 * n) : 2 * n;
  auto t = random_collection(n, m, seed);
  const auto tmaj = majority_subtournament(t);
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), VertexId{0});
  const auto path = tournament_hamilton_path(tmaj, all);
  const std::size_t k = std::min<std::size_t>(desk ? 12 : n - 1, n - 1);
  Json arcs = Json::array();
  for (std::size_t i = 0; i < k; ++i) arcs.push_back({path[i], path[i + 1]});
  const std::size_t ell = desk ? 1 + seed % 3 : std::max<std::size_t>(3, n / 10);
  const std::size_t c_size = std::min(m - (k - ell), desk ? 4 * ell + 4 : 3 * ell);
  Json avail = Json::array();
  for (std::size_t c = 0; c < m; ++c) avail.push_back(c);
  Json args{{"arcs", arcs}, {"avail", avail}, {"ell", ell}, {"c_size", c_size}, {"seed", seed}};
  return Job{"absorber", args, std::move(t), n};
}

Job lemma_job(LemmaSuite suite, std::size_t n, std::uint64_t key, bool exhaustive) {
  switch (suite) {
    case LemmaSuite::HPartition:
    case LemmaSuite::LowDegree: {
      const auto t = exhaustive ? tournament_from_code(n, key) : random_tournament(n, key);
      Json args{{exhaustive ? "code" : "seed", key}};
      return Job{suite == LemmaSuite::HPartition ? "h-partition" : "low-degree", args, single(t), n};
    }
    case LemmaSuite::OneSpare: {
      auto t = exhaustive ? collection_from_code(n, n, key) : random_collection(n, n, key);
      return Job{"one-spare", Json{{exhaustive ? "code" : "seed", key}}, std::move(t), n};
    }
    case LemmaSuite::ForcingColor: {
      const std::size_t m = 2 * n;
      return Job{"forcing-color", Json{{"seed", key}, {"color", key % m}}, random_collection(n, m, key), n};
    }
    case LemmaSuite::ForcingSet: {
      const std::size_t m = 4 * n;
      SplitMix64 rng(stream_key(key, 0xf5));
      std::vector<std::size_t> colors(m);
      std::iota(colors.begin(), colors.end(), 0);
      auto b = rng.sample(colors, n / 25);
      std::sort(b.begin(), b.end());
      const auto u = rng.below(n);
      auto v = rng.below(n - 1);
      if (v >= u) ++v;
      Json args{{"seed", key}, {"b", b}, {"u", u}, {"v", v}};
      return Job{"forcing-set", args, random_collection(n, m, key), n};
    }
    case LemmaSuite::Connect:
      return Job{"connect", Json{{"seed", key}}, random_collection(n, n - 1, key, true), n};
    case LemmaSuite::Absorber: return absorber_job(n, key);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SuiteReport verify_lemmas(LemmaSuite suite, const std::vector<std::size_t>& sizes, const HarnessOptions& opt) {
  struct Item {
    std::size_t n;
    std::uint64_t key;
    bool exhaustive;
  };
  std::vector<Item> items;
  for (std::size_t n : sizes) {
    const bool tournaments = suite == LemmaSuite::HPartition || suite == LemmaSuite::LowDegree;
    if (n < 1 || (suite == LemmaSuite::ForcingSet && n < 25) || (suite == LemmaSuite::Connect && n < 2) ||
        (suite == LemmaSuite::Absorber && n < 5) || (suite == LemmaSuite::ForcingColor && n < 2))
      throw InvalidArgument(std::string(to_string(suite)) + ": size " + std::to_string(n) + " out of range");
    if (tournaments && n <= 6) {
      for (std::uint64_t code = 0; code < pow2(n * (n - 1) / 2); ++code) items.push_back({n, code, true});
    } else if (suite == LemmaSuite::OneSpare && n == 3) {
      for (std::uint64_t code = 0; code < pow2(9); ++code) items.push_back({n, code, true});
    } else {
      for (std::size_t s = 0; s < opt.seeds; ++s) items.push_back({n, opt.base_seed + s, false});
    }
  }
  return run_suite(
      std::string("lemma-") + to_string(suite), items.size(),
      [&](std::size_t i) { return lemma_job(suite, items[i].n, items[i].key, items[i].exhaustive); }, opt);
}

SuiteReport verify_pipeline(PipelineKind kind, SolveMode mode, const std::vector<std::size_t>& sizes,
                            const HarnessOptions& opt) {
  const bool cycle = kind == PipelineKind::Cycle;
  std::vector<std::pair<std::size_t, std::uint64_t>> items;
  for (std::size_t n : sizes) {
    if (n < 3) throw InvalidArgument("pipeline suite needs n >= 3");
    for (std::size_t s = 0; s < opt.seeds; ++s) items.emplace_back(n, opt.base_seed + s);
  }
  auto r = run_suite(
      std::string("pipeline-") + (cycle ? "cycle" : "path"), items.size(),
      [&](std::size_t i) {
        const auto [n, seed] = items[i];
        Json args{{"kind", cycle ? "cycle" : "path"}, {"mode", to_string(mode)}, {"seed", seed}};
        auto t = cycle ? hypothesis_collection(n, seed) : random_collection(n, n - 1, seed);
        return Job{"pipeline", args, std::move(t), n};
      },
      opt);
  r.stats["mode"] = to_string(mode);
  return r;
}

SuiteReport verify_constructive_scale(const std::vector<std::size_t>& sizes, const HarnessOptions& opt) {
  std::vector<std::pair<std::size_t, std::uint64_t>> items;
  for (std::size_t n : sizes)
    for (std::size_t s = 0; s < opt.seeds; ++s) items.emplace_back(n, opt.base_seed + s);
  auto r = run_suite(
      "constructive-scale", items.size(),
      [&](std::size_t i) {
        const auto [n, seed] = items[i];
        return Job{"constructive", Json{{"seed", seed}}, random_collection(n, n - 1, seed), n};
      },
      opt);
  Json rates = Json::object();
  for (const auto& [k, b] : r.stats["by_n"].items())
    rates[k] = static_cast<double>(b.value("succeeded", std::int64_t{0})) /
               static_cast<double>(b.at("instances").get<std::int64_t>());
  r.stats["success_rate"] = rates;
  r.stats.erase("rows");
  return r;
}

Json recheck(const Json& record, const HarnessOptions& opt) {
  const auto t = collection_from_json(record.at("instance"));
  Job job{record.at("check").get<std::string>(), record.at("args"), t, t.n()};
  const Verdict v = run_check(job.check, t, job.args, opt);
  Json out = make_record(record.value("suite", std::string{}), job, record.value("index", std::size_t{0}), v);
  out["failed"] = v.failed;
  out["counterexample"] = v.counterexample;
  return out;
}

const char* to_string(BenchKind k) {
  switch (k) {
    case BenchKind::Oracle: return "oracle";
    case BenchKind::HPartition: return "h-partition";
    case BenchKind::OneSpare: return "one-spare";
    case BenchKind::Pipeline: return "pipeline";
  }
  return "oracle";
}

BenchKind parse_bench_kind(const std::string& s) {
  for (auto k : {BenchKind::Oracle, BenchKind::HPartition, BenchKind::OneSpare, BenchKind::Pipeline})
    if (s == to_string(k)) return k;
  throw InvalidArgument("unknown bench kind '" + s + "'");
}

namespace {

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    const double lx = std::log(x), ly = std::log(std::max(y, 1e-9));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(pts.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

SuiteReport bench(BenchKind kind, const std::vector<std::size_t>& sizes, const HarnessOptions& opt) {
  const auto start = Clock::now();
  std::vector<std::pair<std::size_t, std::uint64_t>> items;
  for (std::size_t n : sizes)
    for (std::size_t s = 0; s < opt.seeds; ++s) items.emplace_back(n, opt.base_seed + s);
  std::vector<Json> rows(items.size());
  std::vector<std::optional<Json>> bad(items.size());
  parallel_for(items.size(), opt.jobs, [&](std::size_t i) {
    const auto [n, seed] = items[i];
    Json row{{"kind", to_string(kind)}, {"n", n}, {"seed", seed}};
    const auto t0 = Clock::now();
    switch (kind) {
      case BenchKind::Oracle: {
        const auto t = random_collection(n, n - 1, seed);
        const auto o = exact_transversal_ham_path(t, {}, opt.budget);
        row["status"] = to_string(o.status);
        row["nodes"] = o.nodes_expanded;
        break;
      }
      case BenchKind::HPartition: {
        const auto t = random_tournament(n, seed);
        const auto t1 = Clock::now();
        const auto p = h_partition(t, std::min<std::size_t>(24, n), Rational{1, 6});
        row["blocks"] = p.r();
        row["ms"] = ms_since(t1);
        rows[i] = row;
        return;
      }
      case BenchKind::OneSpare: {
        const auto t = random_collection(n, n, seed);
        const auto t1 = Clock::now();
        OneSpareStats st;
        const auto p = rainbow_ham_path_one_spare(t, &st);
        row["ms"] = ms_since(t1);
        row["inspections"] = st.arc_inspections;
        if (!is_hamilton_path(t, p))
          bad[i] = Json{{"suite", "bench-one-spare"}, {"check", "one-spare"}, {"index", i}, {"n", n},
                        {"args", Json{{"seed", seed}}}, {"reason", "not a rainbow Hamilton path"},
                        {"instance", to_json(t)}};
        rows[i] = row;
        return;
      }
      case BenchKind::Pipeline: {
        const auto t = random_collection(n, n - 1, seed);
        const auto o = transversal_ham_path(t, params_for(opt, seed), SolveMode::Constructive);
        row["succeeded"] = o.constructive_succeeded;
        row["failure_stage"] = o.failure_stage ? Json(*o.failure_stage) : Json(nullptr);
        if (o.outcome.path && !is_hamilton_path(t, *o.outcome.path))
          bad[i] = Json{{"suite", "bench-pipeline"}, {"check", "constructive"}, {"index", i}, {"n", n},
                        {"args", Json{{"seed", seed}}}, {"reason", "invalid witness"}, {"instance", to_json(t)}};
        break;
      }
    }
    row["ms"] = ms_since(t0);
    rows[i] = row;
  });

  SuiteReport r;
  r.suite = std::string("bench-") + to_string(kind);
  r.instances = items.size();
  for (auto& b : bad)
    if (b) r.failures.push_back(std::move(*b));
  Json arr = Json::array();
  for (auto& row : rows) arr.push_back(std::move(row));
  // Per-size means for the growth fits.
  std::vector<std::pair<double, double>> ms_pts, insp_pts;
  for (std::size_t n : sizes) {
    double ms = 0, insp = 0, k = 0;
    for (const auto& row : arr)
      if (row["n"] == n) {
        ms += row["ms"].get<double>();
        insp += row.value("inspections", 0.0);
        ++k;
      }
    if (k == 0) continue;
    ms_pts.emplace_back(static_cast<double>(n), ms / k);
    insp_pts.emplace_back(static_cast<double>(n), insp / k);
  }
  if (kind == BenchKind::Oracle) {
    std::size_t done = 0;
    for (const auto& row : arr) done += row["status"] != "BudgetExhausted";
    r.stats["completed_fraction"] = arr.empty() ? 0.0 : static_cast<double>(done) / static_cast<double>(arr.size());
  }
  if (kind == BenchKind::OneSpare) r.stats["inspection_exponent"] = loglog_slope(insp_pts);
  r.stats["ms_exponent"] = loglog_slope(ms_pts);
  r.stats["rows"] = std::move(arr);
  r.wall_ms = ms_since(start);
  return r;
}

std::string bench_csv(const SuiteReport& r, bool timing) {
  std::ostringstream out;
  const Json rows = r.stats.value("rows", Json::array());
  if (rows.empty()) return "";
  std::vector<std::string> cols;
  for (const auto& [k, x] : rows.front().items())
    if (timing || std::find(kTimingKeys.begin(), kTimingKeys.end(), k) == kTimingKeys.end()) cols.push_back(k);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const Json& x = row.contains(cols[i]) ? row[cols[i]] : Json(nullptr);
      out << (i ? "," : "") << (x.is_string() ? x.get<std::string>() : x.is_null() ? "" : x.dump());
    }
    out << "\n";
  }
  return out.str();
}

std::string canonical_form(const TournamentCollection& t) {
  const std::size_t n = t.n();
  auto form = [&](const std::vector<VertexId>& perm) {
    std::vector<std::string> parts;
    for (const auto& x : t.tournaments()) parts.push_back(x.induced(perm).to_string());
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p + ",";
    return s;
  };
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  // Relabelling only pays for itself on tiny instances.
  if (n > 7) return form(perm);
  std::string best = form(perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, form(perm));
  return best;
}

}  // namespace rainbow
