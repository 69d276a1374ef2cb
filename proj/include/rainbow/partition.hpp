#pragma once

#include <string>
#include <vector>

#include "rainbow/tournament.hpp"

namespace rainbow {

/// Vertex order that no single relocation can improve. Every vertex has at
/// least half of its predecessors as in-neighbours and half of its successors
/// as out-neighbours, and consecutive vertices form a Hamilton path.
struct LocalMedianOrder {
  std::vector<VertexId> order;
  std::size_t forward_arcs = 0;
  std::size_t improvements = 0;
};

LocalMedianOrder local_median_order(const Tournament& t);

/// Checks the prefix in-degree and suffix out-degree properties.
bool satisfies_median_property(const Tournament& t, const std::vector<VertexId>& order);

/// Hamilton path of t[vertices] (original labels), from a local median order.
std::vector<VertexId> tournament_hamilton_path(const Tournament& t, std::span<const VertexId> vertices);

/// At most 2d+1 vertices have in-degree <= d, and likewise for out-degree.
bool low_degree_count_bound_check(const Tournament& t, std::size_t d);
/// Same, from the out-degree sequence of a tournament.
bool low_degree_count_bound_check(std::span<const std::size_t> out_degrees, std::size_t d);

struct BlockSplit {
  std::vector<VertexId> minus;  // in-neighbours of v inside W
  VertexId v;
  std::vector<VertexId> plus;   // out-neighbours of v inside W
};

/// Splits W around the vertex maximising min(in, out) within T[W] (lowest id
/// on ties); both sides have at least ceil(|W|/6) vertices.
BlockSplit split_block(const Tournament& t, std::span<const VertexId> w);

struct HPartition {
  std::vector<std::vector<VertexId>> blocks;
  std::vector<VertexId> separators;
  std::size_t ell = 0;
  Rational gamma{1, 6};

  std::size_t r() const noexcept { return blocks.size(); }
};

/// Refines the single-block partition by splitting a largest oversized block
/// (lowest index on ties) until every block has at most ell vertices.
HPartition h_partition(const Tournament& t, std::size_t ell, Rational gamma);

/// Same, restricted to a vertex subset of t (labels stay original).
HPartition h_partition(const Tournament& t, std::span<const VertexId> vertices, std::size_t ell, Rational gamma);

/// Violations of: cover and disjointness of `universe`, gamma*ell <= |W_i| <= ell,
/// and W_i => {w_i} => W_{i+1}.
std::vector<std::string> h_partition_violations(const Tournament& t, const HPartition& p,
                                                std::span<const VertexId> universe, std::size_t ell, Rational gamma);
std::vector<std::string> h_partition_violations(const Tournament& t, const HPartition& p, std::size_t ell,
                                                Rational gamma);

}  // namespace rainbow
