#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/partition.hpp"

namespace rainbow {

/// Constants of the constructive branch. The constructor checks
/// mu < gamma < beta < alpha <= 1/2.
struct PipelineParams {
  Rational mu{3, 20};
  Rational gamma{1, 5};
  Rational beta{1, 4};
  Rational alpha{3, 10};
  std::uint64_t seed = 0;
  /// Instances with at most this many vertices go straight to the oracle.
  std::size_t oracle_fallback_n = 12;
  std::size_t absorber_retries = 20;
  std::size_t sample_retries = 200;
  SearchBudget oracle_budget;

  PipelineParams() = default;
  PipelineParams(Rational mu_, Rational gamma_, Rational beta_, Rational alpha_);

  /// Throws InvalidArgument unless the four constants are ordered.
  void validate() const;
};

/// Color bookkeeping for one rainbow_dhp run.
struct ColorLedger {
  ColorSet d, a, c, b;
  ColorSet used;
  ColorSet b_star, c_star, d_star;

  explicit ColorLedger(std::size_t m = 0);

  std::size_t m() const noexcept { return used.size(); }
  /// D, A, C, B pairwise disjoint with union everything.
  bool is_partition() const;
  Json snapshot() const;
};

/// Longest-path machine state for the cycle search. `path` runs from y to x
/// in its first phase; k, k1 and k2 record its length when each phase ended.
struct CycleSearchState {
  RainbowPath path;
  ColorSet unused;
  VertexSet s_plus, s_minus;
  VertexId x = 0, y = 0, x_prime = 0, y_prime = 0;
  std::vector<VertexId> separators;
  std::size_t k = 0, k1 = 0, k2 = 0, ell = 0;

  /// Recomputes S+ and S- from the current path ends and unused colors,
  /// with x_1 = path.front() and x_k = the vertex at index k - 1.
  void refresh_sets(const TournamentCollection& t);
};

enum class SolveMode { Exact, Constructive, Auto };

const char* to_string(SolveMode m);
SolveMode parse_solve_mode(const std::string& s);

struct PipelineOutcome {
  OracleOutcome outcome;
  bool precondition_met = true;
  /// "oracle", "constructive" or "fallback".
  std::string route = "oracle";
  bool constructive_attempted = false;
  bool constructive_succeeded = false;
  std::optional<std::string> failure_stage;
  std::size_t dead_ends = 0;
  /// One record per stage, each with a ledger snapshot where one exists.
  std::vector<Json> trace;
};

Json to_json(const PipelineOutcome& o);

/// Rainbow Hamilton path w0 -> ... -> wr of an instance with n vertices and
/// n - 1 colors. `part` splits every vertex except w0 and wr into at least
/// three blocks. Stage failures raise ConstructionFailure naming the stage.
RainbowPath rainbow_dhp(const TournamentCollection& t, const Tournament& tmaj, const HPartition& part, VertexId w0,
                        VertexId wr, const PipelineParams& params, std::vector<Json>* trace = nullptr);

PipelineOutcome transversal_ham_path(const TournamentCollection& t, const PipelineParams& params = {},
                                     SolveMode mode = SolveMode::Auto);

PipelineOutcome transversal_ham_cycle(const TournamentCollection& t, const PipelineParams& params = {},
                                      SolveMode mode = SolveMode::Auto);

/// One longer rainbow path through a vertex off `p`: prepend, splice between
/// consecutive vertices with two distinct unused colors, or append. Without
/// endpoint moves only splices are tried.
std::optional<RainbowPath> exchange_step(const RainbowPath& p, const ColorSet& unused, const TournamentCollection& t,
                                         bool allow_endpoint_moves = true);

}  // namespace rainbow
