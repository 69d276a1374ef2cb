#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rainbow/tournament.hpp"

namespace rainbow {

/// Ordered family of tournaments on a shared vertex set. The index of a
/// tournament in the family is its color.
class TournamentCollection {
 public:
  TournamentCollection() = default;
  TournamentCollection(std::size_t n, std::vector<Tournament> tournaments);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return tournaments_.size(); }

  const Tournament& operator[](ColorId c) const { return tournaments_[c]; }
  const std::vector<Tournament>& tournaments() const noexcept { return tournaments_; }

  bool has_arc(ColorId c, VertexId u, VertexId v) const { return tournaments_[c].has_arc(u, v); }

  friend bool operator==(const TournamentCollection&, const TournamentCollection&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Tournament> tournaments_;
};

/// C(u -> v): the colors whose tournament contains the arc u -> v.
ColorSet color_set_of_arc(const TournamentCollection& t, VertexId u, VertexId v);

/// Number of colors among `colors` containing u -> v.
std::size_t arc_multiplicity(const TournamentCollection& t, std::span<const ColorId> colors, VertexId u, VertexId v);

std::vector<ColorId> all_colors(const TournamentCollection& t);

/// Arcs present in at least ceil(gamma * |colors|) of the chosen tournaments.
class MajorityDigraph {
 public:
  MajorityDigraph(std::size_t n, Rational gamma, std::size_t threshold);

  std::size_t n() const noexcept { return n_; }
  Rational gamma() const noexcept { return gamma_; }
  std::size_t threshold() const noexcept { return threshold_; }

  bool has_arc(VertexId u, VertexId v) const { return arcs_[u * n_ + v]; }
  void add_arc(VertexId u, VertexId v) { arcs_[u * n_ + v] = true; }
  std::size_t arc_count() const { return arcs_.count(); }

  /// Every arc of `t` is an arc of this digraph.
  bool contains(const Tournament& t) const;
  /// Every arc of this digraph is an arc of `other`.
  bool subset_of(const MajorityDigraph& other) const;

 private:
  std::size_t n_;
  Rational gamma_;
  std::size_t threshold_;
  boost::dynamic_bitset<std::uint64_t> arcs_;
};

MajorityDigraph threshold_digraph(const TournamentCollection& t, Rational gamma);
MajorityDigraph threshold_digraph(const TournamentCollection& t, std::span<const ColorId> colors, Rational gamma);

/// A tournament contained in the threshold digraph, gamma <= 1/2. Where both
/// orientations qualify the larger count wins, then u -> v for u < v.
Tournament majority_subtournament(const TournamentCollection& t, Rational gamma = {1, 2});
Tournament majority_subtournament(const TournamentCollection& t, std::span<const ColorId> colors,
                                  Rational gamma = {1, 2});

/// T_A[X] with vertices and colors relabelled densely. `vertex_map[k]` and
/// `color_map[k]` give the original id of local vertex / color k.
struct InducedCollection {
  TournamentCollection collection;
  std::vector<VertexId> vertex_map;
  std::vector<ColorId> color_map;

  /// Original id -> local id, or -1 when the vertex was dropped.
  std::vector<std::int64_t> vertex_index(std::size_t original_n) const;
};

InducedCollection induced_collection(const TournamentCollection& t, std::optional<std::span<const VertexId>> vertices,
                                     std::optional<std::span<const ColorId>> colors);

}  // namespace rainbow
