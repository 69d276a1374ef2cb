#include "rainbow/transversal.hpp"

#include <set>

namespace rainbow {

namespace {

bool distinct_vertices(const std::vector<VertexId>& vs, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (VertexId v : vs) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

ColoredDigraph RainbowPath::arcs() const {
  ColoredDigraph out;
  if (vertices.size() < 2) return out;
  for (std::size_t t = 0; t + 1 < vertices.size() && t < colors.size(); ++t)
    out.push_back({vertices[t], vertices[t + 1], colors[t]});
  return out;
}

bool RainbowPath::valid(const TournamentCollection& t) const {
  if (vertices.empty()) return colors.empty();
  if (colors.size() + 1 != vertices.size()) return false;
  if (!distinct_vertices(vertices, t.n())) return false;
  return validate_transversal(t, arcs());
}

ColoredDigraph RainbowCycle::arcs() const {
  ColoredDigraph out;
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i < k && i < colors.size(); ++i) out.push_back({vertices[i], vertices[(i + 1) % k], colors[i]});
  return out;
}

bool RainbowCycle::valid(const TournamentCollection& t) const {
  if (vertices.size() < 3 || colors.size() != vertices.size()) return false;
  if (!distinct_vertices(vertices, t.n())) return false;
  return validate_transversal(t, arcs());
}

ValidationReport check_transversal(const TournamentCollection& t, const ColoredDigraph& d) {
  ValidationReport r;
  std::set<ColorId> colors;
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const auto& a : d) {
    const std::string arc = std::to_string(a.tail) + "->" + std::to_string(a.head);
    if (a.tail >= t.n() || a.head >= t.n() || a.tail == a.head) {
      r.violations.push_back("arc " + arc + " is not a valid vertex pair");
      continue;
    }
    if (a.color >= t.m()) {
      r.violations.push_back("arc " + arc + " has color " + std::to_string(a.color) + " out of range");
      continue;
    }
    if (!colors.insert(a.color).second) r.violations.push_back("color " + std::to_string(a.color) + " used twice");
    if (!pairs.insert({a.tail, a.head}).second) r.violations.push_back("arc " + arc + " repeated");
    if (!t.has_arc(a.color, a.tail, a.head))
      r.violations.push_back("arc " + arc + " is not in tournament " + std::to_string(a.color));
  }
  r.ok = r.violations.empty();
  return r;
}

bool validate_transversal(const TournamentCollection& t, const ColoredDigraph& d) { return check_transversal(t, d).ok; }

bool is_hamilton_path(const TournamentCollection& t, const RainbowPath& p) {
  return p.vertices.size() == t.n() && p.valid(t);
}

bool is_hamilton_cycle(const TournamentCollection& t, const RainbowCycle& c) {
  return c.vertices.size() == t.n() && c.valid(t);
}

}  // namespace rainbow
