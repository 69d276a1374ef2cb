#include "rainbow/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rainbow/absorber.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rainbow_paths.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

PipelineParams::PipelineParams(Rational mu_, Rational gamma_, Rational beta_, Rational alpha_)
    : mu(mu_), gamma(gamma_), beta(beta_), alpha(alpha_) {
  validate();
}

void PipelineParams::validate() const {
  for (const Rational& r : {mu, gamma, beta, alpha})
    if (r.num <= 0 || r.den <= 0) throw InvalidArgument("pipeline constants must be positive");
  if (!(mu < gamma) || !(gamma < beta) || !(beta < alpha) || !(alpha <= Rational{1, 2}))
    throw InvalidArgument("pipeline constants must satisfy mu < gamma < beta < alpha <= 1/2");
}

ColorLedger::ColorLedger(std::size_t m)
    : d(m), a(m), c(m), b(m), used(m), b_star(m), c_star(m), d_star(m) {}

bool ColorLedger::is_partition() const {
  if ((d & a).any() || (d & c).any() || (d & b).any() || (a & c).any() || (a & b).any() || (c & b).any()) return false;
  return (d | a | c | b).count() == m();
}

Json ColorLedger::snapshot() const {
  return Json{{"d", d.count()},           {"a", a.count()},           {"c", c.count()},
              {"b", b.count()},           {"used", used.count()},     {"b_star", b_star.count()},
              {"c_star", c_star.count()}, {"d_star", d_star.count()}};
}

void CycleSearchState::refresh_sets(const TournamentCollection& t) {
  const std::size_t n = t.n();
  s_plus = VertexSet(n);
  s_minus = VertexSet(n);
  if (path.vertices.empty() || k == 0) return;
  VertexSet on(n);
  for (VertexId v : path.vertices) on.set(v);
  const VertexId first = path.vertices.front();
  const VertexId xk = path.vertices[k - 1];
  const auto free = members(unused);
  for (VertexId z = 0; z < n; ++z) {
    if (on[z]) continue;
    bool plus = true, minus = true;
    for (auto c : free) {
      plus = plus && t.has_arc(static_cast<ColorId>(c), z, first);
      minus = minus && t.has_arc(static_cast<ColorId>(c), xk, z);
    }
    s_plus[z] = plus;
    s_minus[z] = minus;
  }
}

const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::Exact: return "exact";
    case SolveMode::Constructive: return "constructive";
    case SolveMode::Auto: return "auto";
  }
  return "auto";
}

SolveMode parse_solve_mode(const std::string& s) {
  if (s == "exact") return SolveMode::Exact;
  if (s == "constructive") return SolveMode::Constructive;
  if (s == "auto") return SolveMode::Auto;
  throw InvalidArgument("unknown solve mode '" + s + "'");
}

Json to_json(const PipelineOutcome& o) {
  Json j;
  j["status"] = to_string(o.outcome.status);
  j["route"] = o.route;
  j["precondition_met"] = o.precondition_met;
  j["constructive_attempted"] = o.constructive_attempted;
  j["constructive_succeeded"] = o.constructive_succeeded;
  j["failure_stage"] = o.failure_stage ? Json(*o.failure_stage) : Json(nullptr);
  j["dead_ends"] = o.dead_ends;
  j["nodes_expanded"] = o.outcome.nodes_expanded;
  if (o.outcome.count) j["count"] = *o.outcome.count;
  if (o.outcome.path) {
    j["vertices"] = o.outcome.path->vertices;
    j["arcs"] = to_json(o.outcome.path->arcs());
  } else if (o.outcome.cycle) {
    j["vertices"] = o.outcome.cycle->vertices;
    j["arcs"] = to_json(o.outcome.cycle->arcs());
  }
  j["millis"] = o.outcome.millis;
  return j;
}

std::optional<RainbowPath> exchange_step(const RainbowPath& p, const ColorSet& unused, const TournamentCollection& t,
                                         bool allow_endpoint_moves) {
  const std::size_t n = t.n();
  if (p.vertices.empty()) return std::nullopt;
  VertexSet on(n);
  for (VertexId v : p.vertices) on.set(v);
  ColorSet free = unused;
  for (ColorId c : p.colors) free.reset(c);
  const auto fc = members(free);
  if (fc.empty()) return std::nullopt;
  const std::size_t k = p.vertices.size();

  // Up to two colors of `fc` containing a -> b.
  auto two = [&](VertexId a, VertexId b, ColorId out[2]) {
    std::size_t found = 0;
    for (auto c : fc) {
      if (t.has_arc(static_cast<ColorId>(c), a, b)) out[found++] = static_cast<ColorId>(c);
      if (found == 2) break;
    }
    return found;
  };

  for (VertexId z = 0; z < n; ++z) {
    if (on[z]) continue;
    ColorId a[2], b[2];
    if (allow_endpoint_moves && two(z, p.vertices.front(), a) > 0) {
      RainbowPath q = p;
      q.vertices.insert(q.vertices.begin(), z);
      q.colors.insert(q.colors.begin(), a[0]);
      return q;
    }
    for (std::size_t l = 0; l + 1 < k; ++l) {
      const std::size_t na = two(p.vertices[l], z, a);
      if (na == 0) continue;
      const std::size_t nb = two(z, p.vertices[l + 1], b);
      if (nb == 0) continue;
      ColorId i = a[0], j = b[0];
      if (i == j) {
        if (nb > 1)
          j = b[1];
        else if (na > 1)
          i = a[1];
        else
          continue;
      }
      // The old arc x_l -> x_{l+1} and its color leave the path.
      RainbowPath q = p;
      q.vertices.insert(q.vertices.begin() + static_cast<long>(l + 1), z);
      q.colors[l] = i;
      q.colors.insert(q.colors.begin() + static_cast<long>(l + 1), j);
      return q;
    }
    if (allow_endpoint_moves && two(p.vertices.back(), z, a) > 0) {
      RainbowPath q = p;
      q.vertices.push_back(z);
      q.colors.push_back(a[0]);
      return q;
    }
  }
  return std::nullopt;
}

}  // namespace rainbow
