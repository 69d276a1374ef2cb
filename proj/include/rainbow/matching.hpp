#pragma once

#include <optional>
#include <vector>

#include "rainbow/types.hpp"

namespace rainbow {

/// Kuhn-style bipartite matching between left slots (arcs) and right
/// vertices (colors). Augmenting paths only flip edges, so a vertex that is
/// matched stays matched; matching the forced right vertices first and the
/// left slots second therefore finds a matching covering both whenever one
/// exists.
class BipartiteMatcher {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit BipartiteMatcher(std::size_t right_count);

  std::size_t right_count() const noexcept { return right_match_.size(); }
  std::size_t left_count() const noexcept { return adj_.size(); }

  /// Adds a left slot with the given neighbourhood (size right_count).
  std::size_t add_left(ColorSet adj);
  /// Removes the most recently added slot, freeing its partner.
  void pop_left();

  bool augment_left(std::size_t l);
  bool augment_right(std::size_t r);

  /// Matches every unmatched left slot; false if some slot cannot be matched.
  bool saturate_left();
  /// Augments from every unmatched left slot; returns the matching size.
  std::size_t maximize();

  std::size_t left_match(std::size_t l) const { return left_match_[l]; }
  std::size_t right_match(std::size_t r) const { return right_match_[r]; }
  std::size_t matched() const noexcept { return matched_; }

  const ColorSet& adjacency(std::size_t l) const { return adj_[l]; }

 private:
  bool dfs_left(std::size_t l);
  bool dfs_right(std::size_t r);
  void next_stamp();

  std::vector<ColorSet> adj_;
  std::vector<std::size_t> left_match_;
  std::vector<std::size_t> right_match_;
  std::vector<std::uint32_t> seen_right_;
  std::vector<std::uint32_t> seen_left_;
  std::uint32_t stamp_ = 0;
  std::size_t matched_ = 0;
};

/// Matching covering every left slot and every right vertex in `forced`
/// (if given); result[l] is the partner of slot l.
std::optional<std::vector<std::size_t>> saturating_matching(const std::vector<ColorSet>& adj, std::size_t right_count,
                                                            const ColorSet* forced = nullptr);

}  // namespace rainbow
