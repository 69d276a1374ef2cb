#pragma once

#include <optional>
#include <vector>

#include "rainbow/transversal.hpp"

namespace rainbow {

struct OneSpareStats {
  std::size_t arc_inspections = 0;
  std::size_t prepends = 0;
  std::size_t splices = 0;
  std::size_t appends = 0;
};

/// Rainbow Hamilton path when m >= n. Vertices are inserted in index order;
/// each insertion looks at the two lowest-index unused colors, so callers
/// put preferred colors first.
RainbowPath rainbow_ham_path_one_spare(const TournamentCollection& t, OneSpareStats* stats = nullptr);

/// n = 3, T_i a directed triangle and every other tournament the opposite
/// triangle.
bool is_exceptional_configuration(const TournamentCollection& t, ColorId i);

/// Rainbow Hamilton path with an arc of color i, for m >= 2n.
RainbowPath rainbow_ham_path_forcing_color(const TournamentCollection& t, ColorId i);

/// Rainbow Hamilton path u -> ... -> v that uses every color of B, for
/// n >= 25, m >= 4n and |B| <= n/25.
RainbowPath rainbow_ham_path_forcing_set(const TournamentCollection& t, const ColorSet& b, VertexId u, VertexId v);

/// Rainbow x -> y path whose colors strictly increase. Colors are scanned in
/// index order, growing the set reachable from x one color at a time.
/// `layer_sizes` receives the reachable-set size after each color.
RainbowPath rainbow_connect(const TournamentCollection& t, VertexId x, VertexId y,
                            std::vector<std::size_t>* layer_sizes = nullptr);

/// Lowest color containing u -> v that is neither used nor outside `allowed`.
std::optional<ColorId> first_free_color(const TournamentCollection& t, VertexId u, VertexId v, const ColorSet& used,
                                        const ColorSet* allowed = nullptr);

}  // namespace rainbow
