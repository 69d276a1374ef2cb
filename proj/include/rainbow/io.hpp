#pragma once

#include <string>

#include <json.hpp>

#include "rainbow/transversal.hpp"

namespace rainbow {

using Json = nlohmann::ordered_json;

Json to_json(const TournamentCollection& t);
TournamentCollection collection_from_json(const Json& j);

/// Compact canonical text: {"n":..,"m":..,"tournaments":[..]}.
std::string dump_collection(const TournamentCollection& t);
TournamentCollection parse_collection(const std::string& text);

TournamentCollection read_collection_file(const std::string& path);
void write_collection_file(const std::string& path, const TournamentCollection& t);

/// List of [tail, head, color] triples.
Json to_json(const ColoredDigraph& d);
ColoredDigraph digraph_from_json(const Json& j);

}  // namespace rainbow
