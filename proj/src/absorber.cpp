#include "rainbow/absorber.hpp"

#include <algorithm>

#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

std::uint64_t binomial_capped(std::size_t s, std::size_t ell, std::uint64_t cap) {
  if (ell > s) return 0;
  ell = std::min(ell, s - ell);
  unsigned __int128 acc = 1;
  for (std::size_t k = 1; k <= ell; ++k) {
    acc = acc * (s - ell + k) / k;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

std::optional<std::vector<std::size_t>> match(const Absorber& ab, const ColorSet& cprime) {
  const ColorSet allowed = ab.a | cprime;
  std::vector<ColorSet> adj;
  adj.reserve(ab.availability.size());
  for (const auto& av : ab.availability) adj.push_back(av & allowed);
  return saturating_matching(adj, allowed.size());
}

ColorSet from_list(std::size_t m, const std::vector<std::size_t>& xs) {
  ColorSet s(m);
  for (auto x : xs) s.set(x);
  return s;
}

}  // namespace

bool absorbable(const Absorber& ab, const ColorSet& cprime) {
  if (ab.a.count() + cprime.count() != ab.target_arcs.size()) return false;
  return match(ab, cprime).has_value();
}

std::vector<ColorSet> probe_schedule(const Absorber& ab, const AbsorberParams& params, std::uint64_t stream) {
  const std::size_t m = ab.c.size();
  const auto cs = members(ab.c);
  const std::size_t ell = ab.ell;
  std::vector<ColorSet> probes;
  if (ell > cs.size()) return probes;

  if (binomial_capped(cs.size(), ell, params.exhaustive_limit) <= params.exhaustive_limit) {
    std::vector<std::size_t> idx(ell);
    for (std::size_t k = 0; k < ell; ++k) idx[k] = k;
    for (;;) {
      ColorSet s(m);
      for (auto k : idx) s.set(cs[k]);
      probes.push_back(std::move(s));
      std::size_t k = ell;
      while (k > 0 && idx[k - 1] == cs.size() - ell + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t q = k; q < ell; ++q) idx[q] = idx[q - 1] + 1;
    }
    return probes;
  }

  SplitMix64 rng(stream_key(params.seed, stream, 0xab));
  for (std::size_t k = 0; k < params.random_probes; ++k) probes.push_back(from_list(m, rng.sample(cs, ell)));

  // Colors of C ordered by how many target arcs they can serve, fewest first.
  std::vector<std::size_t> degree(m, 0);
  for (const auto& av : ab.availability)
    for (auto c : cs) degree[c] += av[c];
  std::vector<std::size_t> by_degree = cs;
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](auto x, auto y) { return degree[x] < degree[y]; });
  for (std::size_t s = 0; s + ell <= by_degree.size() && s < 20; ++s)
    probes.push_back(from_list(m, std::vector<std::size_t>(by_degree.begin() + static_cast<long>(s),
                                                           by_degree.begin() + static_cast<long>(s + ell))));
  // For each arc, a top-up that avoids that arc's colors as far as possible.
  for (const auto& av : ab.availability) {
    std::vector<std::size_t> pick;
    for (auto c : by_degree)
      if (!av[c] && pick.size() < ell) pick.push_back(c);
    for (auto c : by_degree)
      if (av[c] && pick.size() < ell) pick.push_back(c);
    probes.push_back(from_list(m, pick));
  }
  return probes;
}

Absorber build_absorber(const TournamentCollection& t, std::vector<Arc> target_arcs, const ColorSet& avail,
                        const AbsorberParams& params) {
  const std::size_t m = t.m();
  if (avail.size() != m) throw InvalidArgument("build_absorber: avail must have one bit per color");
  if (params.ell > target_arcs.size()) throw InvalidArgument("build_absorber: ell exceeds the number of arcs");
  const std::size_t a_size = target_arcs.size() - params.ell;
  if (a_size + params.c_size > avail.count()) throw InvalidArgument("build_absorber: not enough available colors");
  if (params.c_size < params.ell) throw InvalidArgument("build_absorber: C must hold at least ell colors");

  Absorber ab;
  ab.ell = params.ell;
  for (const auto& [u, v] : target_arcs) {
    ab.availability.push_back(color_set_of_arc(t, u, v) & avail);
    if (params.min_density) {
      const auto need = params.min_density->ceil_times(static_cast<std::int64_t>(avail.count()));
      if (static_cast<std::int64_t>(ab.availability.back().count()) < need)
        throw InvalidArgument("build_absorber: a target arc has too few available colors");
    }
  }
  ab.target_arcs = std::move(target_arcs);
  const auto pool = members(avail);

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, params.retries); ++attempt) {
    SplitMix64 rng(stream_key(params.seed, attempt, 0xa5));
    const auto chosen = rng.sample(pool, a_size + params.c_size);
    ab.a = from_list(m, std::vector<std::size_t>(chosen.begin(), chosen.begin() + static_cast<long>(a_size)));
    ab.c = from_list(m, std::vector<std::size_t>(chosen.begin() + static_cast<long>(a_size), chosen.end()));
    ab.attempts = attempt + 1;
    const auto probes = probe_schedule(ab, params, attempt);
    ab.exhaustive = binomial_capped(ab.c.count(), ab.ell, params.exhaustive_limit) <= params.exhaustive_limit;
    ab.probes = probes.size();
    bool ok = true;
    for (const auto& p : probes)
      if (!absorbable(ab, p)) {
        ok = false;
        break;
      }
    if (ok) return ab;
  }
  throw ConstructionFailure(FailureKind::AbsorberConstructionFailed, "build_absorber",
                            "no candidate passed the probe schedule");
}

ColoredDigraph absorb(const Absorber& ab, const ColorSet& cprime) {
  if (cprime.size() != ab.c.size() || !cprime.is_subset_of(ab.c) || cprime.count() != ab.ell)
    throw InvalidArgument("absorb: the top-up must be an ell-subset of C");
  if (ab.a.count() + cprime.count() != ab.target_arcs.size())
    throw ConstructionFailure(FailureKind::AbsorptionFailed, "absorb", "A and the top-up do not match the arc count");
  const auto m = match(ab, cprime);
  if (!m) throw ConstructionFailure(FailureKind::AbsorptionFailed, "absorb", "no perfect matching for this top-up");
  ColoredDigraph out;
  for (std::size_t k = 0; k < ab.target_arcs.size(); ++k)
    out.push_back({ab.target_arcs[k].first, ab.target_arcs[k].second, static_cast<ColorId>((*m)[k])});
  return out;
}

}  // namespace rainbow
