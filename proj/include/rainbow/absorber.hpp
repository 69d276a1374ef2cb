#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rainbow/transversal.hpp"

namespace rainbow {

using Arc = std::pair<VertexId, VertexId>;

struct AbsorberParams {
  std::size_t ell = 0;
  std::size_t c_size = 0;
  std::size_t retries = 20;
  std::uint64_t seed = 0;
  std::size_t random_probes = 500;
  /// Probe every ell-subset of C when there are at most this many.
  std::uint64_t exhaustive_limit = 10'000;
  /// Optional check that each arc sees at least this fraction of avail.
  std::optional<Rational> min_density;
};

/// Colour sets A, C for a fixed arc set: the arcs can be coloured rainbow by
/// A together with any ell colours of C.
struct Absorber {
  std::vector<Arc> target_arcs;
  std::vector<ColorSet> availability;  // per arc, over all m colors
  ColorSet a;
  ColorSet c;
  std::size_t ell = 0;
  std::size_t attempts = 0;
  std::size_t probes = 0;
  bool exhaustive = false;
};

/// Number of ell-subsets of an s-set, saturating at `cap + 1`.
std::uint64_t binomial_capped(std::size_t s, std::size_t ell, std::uint64_t cap);

/// True iff the arcs have a perfect matching onto A together with cprime.
bool absorbable(const Absorber& ab, const ColorSet& cprime);

/// Probe schedule used to accept an absorber: all ell-subsets of C when few
/// enough, otherwise random subsets plus adversarial ones built from the
/// colors of C that see the fewest target arcs.
std::vector<ColorSet> probe_schedule(const Absorber& ab, const AbsorberParams& params, std::uint64_t stream);

Absorber build_absorber(const TournamentCollection& t, std::vector<Arc> target_arcs, const ColorSet& avail,
                        const AbsorberParams& params);

/// Rainbow colouring of the target arcs using exactly A and cprime.
ColoredDigraph absorb(const Absorber& ab, const ColorSet& cprime);

}  // namespace rainbow
