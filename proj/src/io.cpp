#include "rainbow/io.hpp"

#include <fstream>
#include <sstream>

namespace rainbow {

Json to_json(const TournamentCollection& t) {
  Json j;
  j["n"] = t.n();
  j["m"] = t.m();
  Json list = Json::array();
  for (const auto& tour : t.tournaments()) list.push_back(tour.to_string());
  j["tournaments"] = std::move(list);
  return j;
}

TournamentCollection collection_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("tournaments"))
    throw InvalidArgument("collection JSON needs n, m and tournaments");
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  const auto& list = j.at("tournaments");
  if (!list.is_array() || list.size() != m) throw InvalidArgument("tournaments must be an array of length m");
  std::vector<Tournament> ts;
  ts.reserve(m);
  for (const auto& s : list) ts.push_back(Tournament::from_string(s.get<std::string>(), n));
  return TournamentCollection(n, std::move(ts));
}

std::string dump_collection(const TournamentCollection& t) { return to_json(t).dump(); }

TournamentCollection parse_collection(const std::string& text) {
  try {
    return collection_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed collection JSON: ") + e.what());
  }
}

TournamentCollection read_collection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_collection(ss.str());
}

void write_collection_file(const std::string& path, const TournamentCollection& t) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << dump_collection(t) << '\n';
}

Json to_json(const ColoredDigraph& d) {
  Json list = Json::array();
  for (const auto& a : d) list.push_back(Json::array({a.tail, a.head, a.color}));
  return list;
}

ColoredDigraph digraph_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("colored digraph must be a JSON array");
  ColoredDigraph d;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw InvalidArgument("each arc must be [tail, head, color]");
    d.push_back({t[0].get<VertexId>(), t[1].get<VertexId>(), t[2].get<ColorId>()});
  }
  return d;
}

}  // namespace rainbow
