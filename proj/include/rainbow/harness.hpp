#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/pipeline.hpp"

namespace rainbow {

/// Result of one suite. Records are JSON objects carrying the suite name,
/// the check that ran, its arguments and the serialized instance, so any
/// record can be replayed with `recheck`.
struct SuiteReport {
  std::string suite;
  std::size_t instances = 0;
  std::vector<Json> failures;
  /// Instances where no transversal exists (not failures).
  std::vector<Json> counterexamples;
  Json stats = Json::object();
  double wall_ms = 0;

  bool ok() const noexcept { return failures.empty(); }
};

/// JSON lines: each failure, each counterexample, then a summary line.
/// Timing fields are omitted when `timing` is false.
std::string report_lines(const SuiteReport& r, bool timing = true);
Json summary_json(const SuiteReport& r, bool timing = true);

enum class SuiteMode { Exhaustive, Random };

const char* to_string(SuiteMode m);
SuiteMode parse_suite_mode(const std::string& s);

struct HarnessOptions {
  std::size_t jobs = 1;
  std::uint64_t base_seed = 0;
  std::size_t seeds = 100;
  SearchBudget budget;
  /// Also count counterexamples up to relabelling of vertices and colors.
  bool canonical = false;
  PipelineParams params;
};

/// Oracle status for every collection with m = n - 1; NotExists instances
/// are listed, invalid witnesses and disagreement with the enumeration
/// oracle (n <= 6) are failures. Exhaustive mode needs n <= 4.
SuiteReport verify_theorem_path(std::size_t n_min, std::size_t n_max, SuiteMode mode, const HarnessOptions& opt);

/// Same for cycles on collections with m = n and at least n - 1 strongly
/// connected members. Exhaustive mode needs n = 3.
SuiteReport verify_theorem_cycle(std::size_t n_min, std::size_t n_max, SuiteMode mode, const HarnessOptions& opt);

/// The two-non-strong family: every n in range must be NotExists.
SuiteReport verify_prop14(std::size_t n_min, std::size_t n_max, const HarnessOptions& opt);

enum class LemmaSuite { HPartition, LowDegree, Absorber, OneSpare, ForcingColor, ForcingSet, Connect };

const char* to_string(LemmaSuite s);
LemmaSuite parse_lemma_suite(const std::string& s);

/// One constructive operation per suite, with its invariants asserted.
/// Small sizes run exhaustively where the suite supports it: all
/// tournaments for n <= 6 (partition, low degree) and all 512 collections
/// at n = 3 (one spare).
SuiteReport verify_lemmas(LemmaSuite suite, const std::vector<std::size_t>& sizes, const HarnessOptions& opt);

enum class PipelineKind { Path, Cycle };

/// Solver status against the exact oracle on random instances.
SuiteReport verify_pipeline(PipelineKind kind, SolveMode mode, const std::vector<std::size_t>& sizes,
                            const HarnessOptions& opt);

/// Constructive-only path solver at large n; every witness must validate
/// and the success rate is reported per size.
SuiteReport verify_constructive_scale(const std::vector<std::size_t>& sizes, const HarnessOptions& opt);

/// Reruns the check named in a failure or counterexample record and returns
/// a fresh record of the same shape with "failed" set.
Json recheck(const Json& record, const HarnessOptions& opt = {});

enum class BenchKind { Oracle, HPartition, OneSpare, Pipeline };

const char* to_string(BenchKind k);
BenchKind parse_bench_kind(const std::string& s);

/// Timings per (size, seed) in stats["rows"].
SuiteReport bench(BenchKind kind, const std::vector<std::size_t>& sizes, const HarnessOptions& opt);

/// CSV of stats["rows"], header from the first row.
std::string bench_csv(const SuiteReport& r, bool timing = true);

/// Sorted tournament strings minimised over vertex relabellings.
std::string canonical_form(const TournamentCollection& t);

/// Runs fn(i) for i < count on `jobs` threads; results come back in index
/// order whatever the scheduling.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace rainbow
