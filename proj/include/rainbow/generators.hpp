#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "rainbow/collection.hpp"

namespace rainbow {

enum class GeneratorKind {
  Transitive,
  RandomUniform,
  RandomStronglyConnected,
  DirectedCycleTournament,
  Prop14Collection,
  Fig1PathCounterexample,
  Fig1CycleCounterexample,
};

const char* to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::RandomUniform;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

/// i -> j iff i < j.
Tournament transitive_tournament(std::size_t n);

/// i -> j for j >= i + 2 and (i + 1) -> i; strongly connected for n >= 3.
Tournament prop14_tprime(std::size_t n);

/// Two transitive tournaments followed by n - 2 copies of prop14_tprime(n).
TournamentCollection prop14_collection(std::size_t n);

/// Rotational tournament: i -> j iff (j - i) mod n lies in 1..(n-1)/2; for
/// even n the antipodal pairs point from the lower half. Regular when n is odd.
Tournament directed_cycle_tournament(std::size_t n);

struct Fig1Instances {
  TournamentCollection path_instance;   // 0->1->2->0 and its reverse
  TournamentCollection cycle_instance;  // two copies of 0->1->2->0 and one reverse
};
Fig1Instances fig1_counterexamples();

/// Fair coin per pair from the stream (seed, stream).
Tournament random_tournament(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Color c draws from its own stream; strongly connected members are found by
/// rejection, each attempt on a fresh derived stream.
TournamentCollection random_collection(std::size_t n, std::size_t m, std::uint64_t seed,
                                       bool strongly_connected = false);

/// Instance for a generator spec. Fixed kinds ignore m and seed (the two
/// three-vertex kinds also ignore n).
TournamentCollection generate(const GeneratorSpec& spec);

}  // namespace rainbow
