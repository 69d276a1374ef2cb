#include "rainbow/collection.hpp"

#include <bit>
#include <iterator>
#include <numeric>

namespace rainbow {

TournamentCollection::TournamentCollection(std::size_t n, std::vector<Tournament> tournaments)
    : n_(n), tournaments_(std::move(tournaments)) {
  for (const auto& t : tournaments_)
    if (t.n() != n_) throw InvalidArgument("all tournaments in a collection must share the vertex count");
}

ColorSet color_set_of_arc(const TournamentCollection& t, VertexId u, VertexId v) {
  if (u == v || u >= t.n() || v >= t.n()) throw InvalidArgument("color_set_of_arc: need distinct vertices below n");
  ColorSet out(t.m());
  const bool forward = u < v;
  const std::size_t p = forward ? pair_index(t.n(), u, v) : pair_index(t.n(), v, u);
  for (ColorId c = 0; c < t.m(); ++c)
    if (t[c].bits()[p] == forward) out.set(c);
  return out;
}

std::size_t arc_multiplicity(const TournamentCollection& t, std::span<const ColorId> colors, VertexId u, VertexId v) {
  std::size_t k = 0;
  for (ColorId c : colors) k += t.has_arc(c, u, v);
  return k;
}

std::vector<ColorId> all_colors(const TournamentCollection& t) {
  std::vector<ColorId> out(t.m());
  std::iota(out.begin(), out.end(), ColorId{0});
  return out;
}

MajorityDigraph::MajorityDigraph(std::size_t n, Rational gamma, std::size_t threshold)
    : n_(n), gamma_(gamma), threshold_(threshold), arcs_(n * n) {}

bool MajorityDigraph::contains(const Tournament& t) const {
  for (VertexId u = 0; u < n_; ++u)
    for (VertexId v = 0; v < n_; ++v)
      if (u != v && t.has_arc(u, v) && !has_arc(u, v)) return false;
  return true;
}

bool MajorityDigraph::subset_of(const MajorityDigraph& other) const { return arcs_.is_subset_of(other.arcs_); }

namespace {

// Forward-arc counts per pair (i < j) over the chosen colors. Counters are
// bit-sliced: plane k of word w holds bit k of the 64 counts in that word.
std::vector<std::uint32_t> forward_counts(const TournamentCollection& t, std::span<const ColorId> colors) {
  const std::size_t pairs = t.n() < 2 ? 0 : t.n() * (t.n() - 1) / 2;
  std::vector<std::uint32_t> counts(pairs, 0);
  if (pairs == 0 || colors.empty()) return counts;
  const std::size_t words = (pairs + 63) / 64;
  std::size_t planes = 1;
  while ((std::size_t{1} << planes) <= colors.size()) ++planes;
  std::vector<std::uint64_t> plane(words * planes, 0), block;
  block.reserve(words);
  for (ColorId c : colors) {
    block.clear();
    boost::to_block_range(t[c].bits(), std::back_inserter(block));
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t x = block[w];
      for (std::size_t k = 0; x != 0 && k < planes; ++k) {
        std::uint64_t& pl = plane[w * planes + k];
        const std::uint64_t carry = pl & x;
        pl ^= x;
        x = carry;
      }
    }
  }
  for (std::size_t w = 0; w < words; ++w)
    for (std::size_t k = 0; k < planes; ++k)
      for (std::uint64_t bits = plane[w * planes + k]; bits; bits &= bits - 1)
        counts[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))] += std::uint32_t{1} << k;
  return counts;
}

void check_gamma(Rational gamma) {
  if (gamma.den <= 0 || gamma.num <= 0 || gamma.num > gamma.den) throw InvalidArgument("gamma must lie in (0, 1]");
}

}  // namespace

MajorityDigraph threshold_digraph(const TournamentCollection& t, Rational gamma) {
  const auto colors = all_colors(t);
  return threshold_digraph(t, colors, gamma);
}

MajorityDigraph threshold_digraph(const TournamentCollection& t, std::span<const ColorId> colors, Rational gamma) {
  check_gamma(gamma);
  if (colors.empty()) throw InvalidArgument("threshold_digraph: empty color set");
  const auto k = colors.size();
  const auto need = static_cast<std::size_t>(gamma.ceil_times(static_cast<std::int64_t>(k)));
  MajorityDigraph d(t.n(), gamma, need);
  const auto counts = forward_counts(t, colors);
  const std::size_t n = t.n();
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const std::size_t fwd = counts[pair_index(n, i, j)];
      if (fwd >= need) d.add_arc(i, j);
      if (k - fwd >= need) d.add_arc(j, i);
    }
  }
  return d;
}

Tournament majority_subtournament(const TournamentCollection& t, Rational gamma) {
  const auto colors = all_colors(t);
  return majority_subtournament(t, colors, gamma);
}

Tournament majority_subtournament(const TournamentCollection& t, std::span<const ColorId> colors, Rational gamma) {
  check_gamma(gamma);
  if (Rational{1, 2} < gamma) throw InvalidArgument("majority_subtournament requires gamma <= 1/2");
  if (colors.empty()) throw InvalidArgument("majority_subtournament: empty color set");
  const auto counts = forward_counts(t, colors);
  const std::size_t k = colors.size();
  const std::size_t n = t.n();
  // With gamma <= 1/2 the larger orientation always meets the threshold, so
  // picking the strictly larger count (ties forward) stays inside T^gamma.
  return Tournament::from_predicate(n, [&](std::size_t i, std::size_t j) {
    const std::size_t fwd = counts[pair_index(n, i, j)];
    return fwd >= k - fwd;
  });
}

std::vector<std::int64_t> InducedCollection::vertex_index(std::size_t original_n) const {
  std::vector<std::int64_t> idx(original_n, -1);
  for (std::size_t k = 0; k < vertex_map.size(); ++k) idx[vertex_map[k]] = static_cast<std::int64_t>(k);
  return idx;
}

InducedCollection induced_collection(const TournamentCollection& t, std::optional<std::span<const VertexId>> vertices,
                                     std::optional<std::span<const ColorId>> colors) {
  InducedCollection out;
  if (vertices) {
    out.vertex_map.assign(vertices->begin(), vertices->end());
  } else {
    out.vertex_map.resize(t.n());
    std::iota(out.vertex_map.begin(), out.vertex_map.end(), VertexId{0});
  }
  if (colors) {
    out.color_map.assign(colors->begin(), colors->end());
  } else {
    out.color_map = all_colors(t);
  }
  if (out.vertex_map.empty()) throw InvalidArgument("induced_collection: empty vertex set");
  std::vector<char> seen(t.n(), 0);
  for (VertexId v : out.vertex_map) {
    if (v >= t.n() || seen[v]) throw InvalidArgument("induced_collection: vertices must be distinct and below n");
    seen[v] = 1;
  }
  for (ColorId c : out.color_map)
    if (c >= t.m()) throw InvalidArgument("induced_collection: color out of range");

  std::vector<Tournament> sub;
  sub.reserve(out.color_map.size());
  for (ColorId c : out.color_map) sub.push_back(t[c].induced(out.vertex_map));
  out.collection = TournamentCollection(out.vertex_map.size(), std::move(sub));
  return out;
}

}  // namespace rainbow
