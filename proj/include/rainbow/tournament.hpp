#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rainbow/types.hpp"

namespace rainbow {

/// Position of the unordered pair {i, j}, i < j, in lexicographic pair order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// Complete antisymmetric orientation on vertices 0..n-1. One bit per
/// unordered pair; for i < j a set bit means the arc i -> j.
class Tournament {
 public:
  Tournament() = default;

  /// Transitive tournament: i -> j iff i < j.
  explicit Tournament(std::size_t n);

  /// Bit string in pair order, '1' meaning i -> j for i < j.
  static Tournament from_string(std::string_view bits, std::size_t n);

  template <class ArcPredicate>
  static Tournament from_predicate(std::size_t n, ArcPredicate&& has_forward_arc) {
    Tournament t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        t.bits_[pair_index(n, i, j)] = static_cast<bool>(has_forward_arc(i, j));
    return t;
  }

  /// Pair bits 64 at a time from next_word(), low bit first.
  template <class WordSource>
  static Tournament from_words(std::size_t n, WordSource&& next_word) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<std::uint64_t> blocks((pairs + 63) / 64);
    for (auto& b : blocks) b = next_word();
    Tournament t;
    t.n_ = n;
    t.bits_.append(blocks.begin(), blocks.end());
    t.bits_.resize(pairs);
    return t;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return bits_.size(); }

  bool has_arc(VertexId u, VertexId v) const {
    if (u == v) return false;
    return u < v ? bits_[pair_index(n_, u, v)] : !bits_[pair_index(n_, v, u)];
  }

  /// Orients the pair {u, v} as u -> v.
  void set_arc(VertexId u, VertexId v);

  std::size_t out_degree(VertexId v) const;
  std::size_t in_degree(VertexId v) const { return n_ - 1 - out_degree(v); }
  std::vector<std::size_t> out_degrees() const;

  std::vector<VertexId> out_neighbors(VertexId v) const;
  std::vector<VertexId> in_neighbors(VertexId v) const;

  /// Sub-tournament on `vertices`, relabelled 0..k-1 in the given order.
  Tournament induced(std::span<const VertexId> vertices) const;

  Tournament reversed() const;

  std::string to_string() const;
  const boost::dynamic_bitset<std::uint64_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const Tournament& a, const Tournament& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  std::size_t n_ = 0;
  boost::dynamic_bitset<std::uint64_t> bits_;
};

/// True iff the tournament has exactly one strongly connected component.
bool is_strongly_connected(const Tournament& t);

/// True iff every arc between X and Y points from X to Y (X => Y).
bool dominates(const Tournament& t, std::span<const VertexId> from, std::span<const VertexId> to);

}  // namespace rainbow
