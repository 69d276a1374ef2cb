#pragma once

#include <string>
#include <vector>

#include "rainbow/collection.hpp"

namespace rainbow {

struct ColoredArc {
  VertexId tail;
  VertexId head;
  ColorId color;

  friend bool operator==(const ColoredArc&, const ColoredArc&) = default;
};

using ColoredDigraph = std::vector<ColoredArc>;

/// vertices[t] -> vertices[t+1] uses colors[t].
struct RainbowPath {
  std::vector<VertexId> vertices;
  std::vector<ColorId> colors;

  std::size_t length() const noexcept { return colors.size(); }
  ColoredDigraph arcs() const;
  bool valid(const TournamentCollection& t) const;

  friend bool operator==(const RainbowPath&, const RainbowPath&) = default;
};

/// Like RainbowPath with the closing arc vertices.back() -> vertices.front()
/// colored colors.back().
struct RainbowCycle {
  std::vector<VertexId> vertices;
  std::vector<ColorId> colors;

  ColoredDigraph arcs() const;
  bool valid(const TournamentCollection& t) const;

  friend bool operator==(const RainbowCycle&, const RainbowCycle&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Colors pairwise distinct, arcs distinct, and every arc lies in the
/// tournament of its color.
ValidationReport check_transversal(const TournamentCollection& t, const ColoredDigraph& d);
bool validate_transversal(const TournamentCollection& t, const ColoredDigraph& d);

/// Path validity plus: visits every vertex, and optionally fixed endpoints.
bool is_hamilton_path(const TournamentCollection& t, const RainbowPath& p);
bool is_hamilton_cycle(const TournamentCollection& t, const RainbowCycle& c);

}  // namespace rainbow
