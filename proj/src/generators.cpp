#include "rainbow/generators.hpp"

#include "rainbow/random.hpp"

namespace rainbow {

namespace {

struct KindName {
  GeneratorKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {GeneratorKind::Transitive, "transitive"},
    {GeneratorKind::RandomUniform, "random_uniform"},
    {GeneratorKind::RandomStronglyConnected, "random_strongly_connected"},
    {GeneratorKind::DirectedCycleTournament, "directed_cycle_tournament"},
    {GeneratorKind::Prop14Collection, "prop14_collection"},
    {GeneratorKind::Fig1PathCounterexample, "fig1_path_counterexample"},
    {GeneratorKind::Fig1CycleCounterexample, "fig1_cycle_counterexample"},
};

Tournament triangle(bool forward) {
  Tournament t(3);
  if (forward) {
    t.set_arc(0, 1), t.set_arc(1, 2), t.set_arc(2, 0);
  } else {
    t.set_arc(1, 0), t.set_arc(2, 1), t.set_arc(0, 2);
  }
  return t;
}

}  // namespace

const char* to_string(GeneratorKind kind) {
  for (const auto& k : kKindNames)
    if (k.kind == kind) return k.name;
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& name) {
  for (const auto& k : kKindNames)
    if (name == k.name) return k.kind;
  throw InvalidArgument("unknown generator kind: " + name);
}

Tournament transitive_tournament(std::size_t n) {
  if (n < 1) throw InvalidArgument("transitive_tournament needs n >= 1");
  return Tournament(n);
}

Tournament prop14_tprime(std::size_t n) {
  if (n < 3) throw InvalidArgument("prop14_tprime needs n >= 3");
  return Tournament::from_predicate(n, [](std::size_t i, std::size_t j) { return j >= i + 2; });
}

TournamentCollection prop14_collection(std::size_t n) {
  if (n < 3) throw InvalidArgument("prop14_collection needs n >= 3");
  std::vector<Tournament> ts{transitive_tournament(n), transitive_tournament(n)};
  const Tournament tp = prop14_tprime(n);
  for (std::size_t c = 2; c < n; ++c) ts.push_back(tp);
  return TournamentCollection(n, std::move(ts));
}

Tournament directed_cycle_tournament(std::size_t n) {
  if (n < 1) throw InvalidArgument("directed_cycle_tournament needs n >= 1");
  return Tournament::from_predicate(n, [n](std::size_t i, std::size_t j) {
    const std::size_t d = j - i;  // i < j, so (j - i) mod n = d
    if (2 * d == n) return true;  // antipodal pair, i in the lower half
    return 2 * d < n;
  });
}

Fig1Instances fig1_counterexamples() {
  return {TournamentCollection(3, {triangle(true), triangle(false)}),
          TournamentCollection(3, {triangle(true), triangle(true), triangle(false)})};
}

Tournament random_tournament(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw InvalidArgument("random_tournament needs n >= 1");
  SplitMix64 rng(stream_key(seed, stream));
  return Tournament::from_words(n, rng);
}

TournamentCollection random_collection(std::size_t n, std::size_t m, std::uint64_t seed, bool strongly_connected) {
  if (strongly_connected && n < 3) throw InvalidArgument("strongly connected tournaments need n >= 3");
  std::vector<Tournament> ts;
  ts.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    Tournament t = random_tournament(n, seed, stream_key(c, 0));
    for (std::uint64_t attempt = 1; strongly_connected && !is_strongly_connected(t); ++attempt)
      t = random_tournament(n, seed, stream_key(c, attempt));
    ts.push_back(std::move(t));
  }
  return TournamentCollection(n, std::move(ts));
}

TournamentCollection generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::Transitive:
      return TournamentCollection(spec.n, std::vector<Tournament>(spec.m, transitive_tournament(spec.n)));
    case GeneratorKind::RandomUniform: return random_collection(spec.n, spec.m, spec.seed, false);
    case GeneratorKind::RandomStronglyConnected: return random_collection(spec.n, spec.m, spec.seed, true);
    case GeneratorKind::DirectedCycleTournament:
      return TournamentCollection(spec.n, std::vector<Tournament>(spec.m, directed_cycle_tournament(spec.n)));
    case GeneratorKind::Prop14Collection: return prop14_collection(spec.n);
    case GeneratorKind::Fig1PathCounterexample: return fig1_counterexamples().path_instance;
    case GeneratorKind::Fig1CycleCounterexample: return fig1_counterexamples().cycle_instance;
  }
  throw InvalidArgument("unknown generator kind");
}

}  // namespace rainbow
