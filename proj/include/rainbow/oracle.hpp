#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "rainbow/transversal.hpp"

namespace rainbow {

/// max_nodes == 0 means unlimited.
struct SearchBudget {
  std::uint64_t max_nodes = 0;
  std::optional<double> time_limit_secs;
};

enum class OracleStatus { Found, NotExists, BudgetExhausted };

const char* to_string(OracleStatus s);

struct OracleOutcome {
  OracleStatus status = OracleStatus::NotExists;
  std::optional<RainbowPath> path;
  std::optional<RainbowCycle> cycle;
  std::uint64_t nodes_expanded = 0;
  double millis = 0;
  /// Number of admissible vertex sequences (count_all mode only).
  std::optional<std::uint64_t> count;
};

struct OracleOptions {
  /// Incremental matching feasibility check at every node; when off the
  /// matching is only tested at full-length leaves.
  bool matching_prune = true;
  /// Count every admissible vertex sequence instead of stopping at the first.
  bool count_all = false;
  /// Colors that must all appear on the witness.
  std::optional<ColorSet> forced_colors;
};

using Endpoints = std::pair<VertexId, VertexId>;

/// Supports n <= 64 and m <= 512.
OracleOutcome exact_transversal_ham_path(const TournamentCollection& t, std::optional<Endpoints> endpoints = {},
                                         const SearchBudget& budget = {}, const OracleOptions& options = {});

/// Cycles are enumerated with vertex 0 first.
OracleOutcome exact_transversal_ham_cycle(const TournamentCollection& t, const SearchBudget& budget = {},
                                          const OracleOptions& options = {});

/// Any rainbow path from x to y, of any length.
OracleOutcome exact_rainbow_path(const TournamentCollection& t, VertexId x, VertexId y,
                                 const SearchBudget& budget = {});

/// True iff every ordered pair is joined by a rainbow path; nullopt when the
/// budget ran out before a decision.
std::optional<bool> is_strongly_rainbow_connected(const TournamentCollection& t, const SearchBudget& budget = {});

/// Independent check by enumerating all vertex orders (cycles: 0 first) and
/// testing each with a separate simple matching routine. Small n only.
OracleOutcome reference_ham_path(const TournamentCollection& t, std::optional<Endpoints> endpoints = {});
OracleOutcome reference_ham_cycle(const TournamentCollection& t);

}  // namespace rainbow
