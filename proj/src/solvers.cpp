#include <algorithm>
#include <chrono>

#include "rainbow/matching.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/rainbow_paths.hpp"

namespace rainbow {

namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void stage_failed(const std::string& stage, const std::string& what) {
  throw ConstructionFailure(FailureKind::StageFailed, stage, what);
}

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Majority tournament, its partition, and the two end paths:
// p0 runs x .. x' inside W_0 and pl runs y' .. y inside W_{r+1}.
struct Frame {
  Tournament tmaj;
  HPartition hp;
  std::vector<VertexId> p0, pl;

  VertexId w0() const { return hp.separators.front(); }
  VertexId wr() const { return hp.separators.back(); }
};

Frame make_frame(const TournamentCollection& t, const PipelineParams& params, std::vector<Json>& trace) {
  Frame f;
  f.tmaj = majority_subtournament(t);
  const auto ell = std::min<std::size_t>(
      t.n(), static_cast<std::size_t>(std::max<std::int64_t>(3, params.mu.ceil_times(static_cast<std::int64_t>(t.n())))));
  const Rational g = params.gamma < Rational{1, 6} ? params.gamma : Rational{1, 6};
  f.hp = h_partition(f.tmaj, ell, g);
  std::vector<std::size_t> sizes;
  for (const auto& b : f.hp.blocks) sizes.push_back(b.size());
  trace.push_back({{"stage", "partition"}, {"ell", ell}, {"blocks", sizes}});
  if (f.hp.r() < 5) stage_failed("partition", "fewer than five blocks");
  f.p0 = tournament_hamilton_path(f.tmaj, f.hp.blocks.front());
  f.pl = tournament_hamilton_path(f.tmaj, f.hp.blocks.back());
  return f;
}

// Greedy colors for p0, x' -> w0, wr -> y', pl (in that order), avoiding `used`.
std::vector<ColorId> precolor(const TournamentCollection& t, const Frame& f, ColorSet& used) {
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (std::size_t j = 0; j + 1 < f.p0.size(); ++j) arcs.emplace_back(f.p0[j], f.p0[j + 1]);
  arcs.emplace_back(f.p0.back(), f.w0());
  arcs.emplace_back(f.wr(), f.pl.front());
  for (std::size_t j = 0; j + 1 < f.pl.size(); ++j) arcs.emplace_back(f.pl[j], f.pl[j + 1]);
  std::vector<ColorId> out;
  for (const auto& [u, v] : arcs) {
    const auto c = first_free_color(t, u, v, used);
    if (!c) stage_failed("precolor", "an end-block arc has no free color");
    used.set(*c);
    out.push_back(*c);
  }
  return out;
}

// Path w0 -> ... -> wr through the middle blocks minus `removed`, on the
// colors outside `spent`. Returns original labels and colors.
RainbowPath solve_middle(const TournamentCollection& t, const Frame& f, const ColorSet& spent,
                         const VertexSet& removed, const PipelineParams& params, std::vector<Json>& trace) {
  const std::size_t k = f.hp.r();
  std::vector<VertexId> mid{f.w0()};
  for (std::size_t i = 1; i + 1 < k; ++i) {
    for (VertexId v : f.hp.blocks[i])
      if (!removed[v]) mid.push_back(v);
    mid.push_back(f.hp.separators[i]);
  }
  std::sort(mid.begin(), mid.end());
  std::vector<ColorId> colors;
  for (ColorId c = 0; c < t.m(); ++c)
    if (!spent[c]) colors.push_back(c);
  if (colors.size() + 1 != mid.size()) stage_failed("middle", "color count does not match the middle vertex count");
  const auto ic = induced_collection(t, mid, colors);
  const auto index = ic.vertex_index(t.n());
  HPartition lp;
  lp.ell = f.hp.ell;
  lp.gamma = f.hp.gamma;
  for (std::size_t i = 1; i + 1 < k; ++i) {
    std::vector<VertexId> b;
    for (VertexId v : f.hp.blocks[i])
      if (!removed[v]) b.push_back(static_cast<VertexId>(index[v]));
    if (b.empty()) stage_failed("middle", "a block became empty");
    lp.blocks.push_back(std::move(b));
    if (i + 2 < k) lp.separators.push_back(static_cast<VertexId>(index[f.hp.separators[i]]));
  }
  const Tournament ltmaj = f.tmaj.induced(ic.vertex_map);
  const auto p = rainbow_dhp(ic.collection, ltmaj, lp, static_cast<VertexId>(index[f.w0()]),
                             static_cast<VertexId>(index[f.wr()]), params, &trace);
  RainbowPath out;
  for (VertexId v : p.vertices) out.vertices.push_back(ic.vertex_map[v]);
  for (ColorId c : p.colors) out.colors.push_back(ic.color_map[c]);
  return out;
}

bool oracle_supports(const TournamentCollection& t) { return t.n() >= 1 && t.n() <= 64 && t.m() <= 512; }

RainbowPath constructive_path(const TournamentCollection& t, const PipelineParams& params, std::vector<Json>& trace) {
  const Frame f = make_frame(t, params, trace);
  ColorSet used(t.m());
  const auto pre = precolor(t, f, used);
  trace.push_back({{"stage", "precolor"}, {"arcs", pre.size()}});
  const auto mid = solve_middle(t, f, used, VertexSet(t.n()), params, trace);
  RainbowPath out;
  out.vertices = f.p0;
  out.colors.assign(pre.begin(), pre.begin() + static_cast<long>(f.p0.size()));  // p0 arcs and x' -> w0
  out.vertices.insert(out.vertices.end(), mid.vertices.begin(), mid.vertices.end());
  out.colors.insert(out.colors.end(), mid.colors.begin(), mid.colors.end());
  out.colors.insert(out.colors.end(), pre.begin() + static_cast<long>(f.p0.size()), pre.end());
  out.vertices.insert(out.vertices.end(), f.pl.begin(), f.pl.end());
  if (!is_hamilton_path(t, out)) stage_failed("assemble", "assembled path does not validate");
  return out;
}

}  // namespace

PipelineOutcome transversal_ham_path(const TournamentCollection& t, const PipelineParams& params, SolveMode mode) {
  params.validate();
  const auto start = Clock::now();
  const std::size_t n = t.n(), m = t.m();
  PipelineOutcome out;
  out.precondition_met = n >= 2 && m + 1 >= n;
  auto run_oracle = [&] {
    if (!oracle_supports(t)) {
      out.outcome.status = OracleStatus::BudgetExhausted;
      out.trace.push_back({{"stage", "oracle"}, {"skipped", "instance too large for the exact search"}});
      return;
    }
    out.outcome = exact_transversal_ham_path(t, std::nullopt, params.oracle_budget);
    out.trace.push_back({{"stage", "oracle"},
                         {"status", to_string(out.outcome.status)},
                         {"nodes", out.outcome.nodes_expanded}});
  };

  if (mode == SolveMode::Exact || (mode == SolveMode::Auto && (n <= params.oracle_fallback_n || !out.precondition_met))) {
    out.route = "oracle";
    run_oracle();
    out.outcome.millis = millis_since(start);
    return out;
  }
  if (!out.precondition_met) {
    out.outcome.status = OracleStatus::BudgetExhausted;
    out.failure_stage = "precondition";
    out.route = "constructive";
    out.outcome.millis = millis_since(start);
    return out;
  }

  out.constructive_attempted = true;
  try {
    // Surplus colors are dropped; the kept ones keep their indices.
    TournamentCollection work = t;
    if (m + 1 > n) {
      std::vector<Tournament> keep(t.tournaments().begin(), t.tournaments().begin() + static_cast<long>(n - 1));
      work = TournamentCollection(n, std::move(keep));
    }
    out.outcome.path = constructive_path(work, params, out.trace);
    out.outcome.status = OracleStatus::Found;
    out.constructive_succeeded = true;
    out.route = "constructive";
  } catch (const ConstructionFailure& e) {
    out.failure_stage = e.stage();
    out.trace.push_back({{"stage", e.stage()}, {"failure", to_string(e.kind())}, {"message", e.what()}});
  } catch (const std::logic_error& e) {
    out.failure_stage = "internal";
    out.trace.push_back({{"stage", "internal"}, {"message", e.what()}});
  }
  if (!out.constructive_succeeded) {
    out.outcome.path.reset();
    if (mode == SolveMode::Auto) {
      out.route = "fallback";
      run_oracle();
    } else {
      out.route = "constructive";
      out.outcome.status = OracleStatus::BudgetExhausted;
    }
  }
  out.outcome.millis = millis_since(start);
  return out;
}

namespace {

struct CycleAttempt {
  std::optional<RainbowCycle> cycle;
  std::size_t dead_ends = 0;
  std::optional<std::string> last_stage;
};

// Cycle from a y -> x connector P (colors `pc`, inner vertices `inner`)
// and the middle path.
RainbowCycle close_through_middle(const TournamentCollection& t, const Frame& f, const std::vector<VertexId>& inner,
                                  const std::vector<ColorId>& pc, const PipelineParams& params,
                                  std::vector<Json>& trace) {
  ColorSet used(t.m());
  for (ColorId c : pc) used.set(c);
  const auto pre = precolor(t, f, used);
  VertexSet removed(t.n());
  for (VertexId v : inner) removed.set(v);
  const auto mid = solve_middle(t, f, used, removed, params, trace);
  const std::size_t n0 = f.p0.size();
  RainbowCycle c;
  c.vertices = mid.vertices;  // w0 .. wr
  c.colors = mid.colors;
  c.colors.push_back(pre[n0]);  // wr -> y'
  c.vertices.insert(c.vertices.end(), f.pl.begin(), f.pl.end());
  c.colors.insert(c.colors.end(), pre.begin() + static_cast<long>(n0 + 1), pre.end());
  c.vertices.insert(c.vertices.end(), inner.begin(), inner.end());
  c.colors.insert(c.colors.end(), pc.begin(), pc.end());  // y -> .. -> x
  c.vertices.insert(c.vertices.end(), f.p0.begin(), f.p0.end());
  c.colors.insert(c.colors.end(), pre.begin(), pre.begin() + static_cast<long>(n0));  // p0 then x' -> w0
  if (!is_hamilton_cycle(t, c)) stage_failed("assemble", "assembled cycle does not validate");
  return c;
}

// Recolors the closed vertex sequence by a perfect matching of its arcs
// onto the colors.
std::optional<RainbowCycle> recolor_cycle(const TournamentCollection& t, const std::vector<VertexId>& order) {
  const std::size_t k = order.size();
  std::vector<ColorSet> adj;
  for (std::size_t j = 0; j < k; ++j) {
    ColorSet a(t.m());
    for (ColorId c = 0; c < t.m(); ++c) a[c] = t.has_arc(c, order[j], order[(j + 1) % k]);
    adj.push_back(std::move(a));
  }
  const auto mt = saturating_matching(adj, t.m());
  if (!mt) return std::nullopt;
  RainbowCycle c{order, {}};
  for (auto x : *mt) c.colors.push_back(static_cast<ColorId>(x));
  return c;
}

std::optional<ColorId> color_with(const TournamentCollection& t, const ColorSet& pool, VertexId u, VertexId v) {
  for (auto c = pool.find_first(); c != pool.npos; c = pool.find_next(c))
    if (t.has_arc(static_cast<ColorId>(c), u, v)) return static_cast<ColorId>(c);
  return std::nullopt;
}

// Rainbow y -> u -> v -> x paths with u, v inside middle blocks, pairwise
// internally disjoint, chosen greedily.
std::vector<std::pair<std::vector<VertexId>, std::vector<ColorId>>> short_connectors(const TournamentCollection& t,
                                                                                      const Frame& f) {
  const std::size_t n = t.n();
  const VertexId x = f.p0.front(), y = f.pl.back();
  std::vector<VertexId> inner;
  for (std::size_t i = 1; i + 1 < f.hp.r(); ++i) inner.insert(inner.end(), f.hp.blocks[i].begin(), f.hp.blocks[i].end());
  std::sort(inner.begin(), inner.end());
  std::vector<char> taken(n, 0);
  std::vector<std::pair<std::vector<VertexId>, std::vector<ColorId>>> out;
  auto first3 = [&](VertexId a, VertexId b) {
    std::vector<ColorId> cs;
    for (ColorId c = 0; c < t.m() && cs.size() < 3; ++c)
      if (t.has_arc(c, a, b)) cs.push_back(c);
    return cs;
  };
  for (VertexId u : inner) {
    if (taken[u]) continue;
    const auto a = first3(y, u);
    if (a.empty()) continue;
    for (VertexId v : inner) {
      if (v == u || taken[v]) continue;
      const auto b = first3(u, v);
      const auto c = first3(v, x);
      std::optional<std::vector<ColorId>> pick;
      for (ColorId i : a)
        for (ColorId j : b)
          for (ColorId k : c)
            if (!pick && i != j && j != k && i != k) pick = std::vector<ColorId>{i, j, k};
      if (pick) {
        taken[u] = taken[v] = 1;
        out.push_back({{u, v}, *pick});
        break;
      }
    }
  }
  return out;
}

// Longest-path machine on the whole collection.
std::optional<RainbowCycle> cycle_machine(const TournamentCollection& t, VertexId x, VertexId y,
                                          CycleSearchState& st, std::string& dead_end) {
  const std::size_t n = t.n(), m = t.m();
  std::vector<ColorId> strong;
  for (ColorId c = 0; c < m && strong.size() + 1 < n; ++c)
    if (is_strongly_connected(t[c])) strong.push_back(c);
  const auto ic = induced_collection(t, std::nullopt, strong);
  RainbowPath p;
  try {
    const auto lp = rainbow_connect(ic.collection, y, x);
    p.vertices = lp.vertices;
    for (ColorId c : lp.colors) p.colors.push_back(ic.color_map[c]);
  } catch (const ConstructionFailure&) {
    dead_end = "connect";
    return std::nullopt;
  }
  st.x = x;
  st.y = y;
  auto refresh_unused = [&] {
    st.unused = ColorSet(m);
    st.unused.set();
    for (ColorId c : st.path.colors) st.unused.reset(c);
  };
  st.path = p;
  refresh_unused();
  while (auto q = exchange_step(st.path, st.unused, t, false)) {
    st.path = std::move(*q);
    refresh_unused();
  }
  st.k = st.path.vertices.size();
  auto close = [&]() -> std::optional<RainbowCycle> {
    if (st.path.vertices.size() != n || st.unused.count() < 1) return std::nullopt;
    const auto c = color_with(t, st.unused, st.path.vertices.back(), st.path.vertices.front());
    if (!c) return recolor_cycle(t, st.path.vertices);
    RainbowCycle cyc{st.path.vertices, st.path.colors};
    cyc.colors.push_back(*c);
    return cyc;
  };
  if (st.k == n) {
    if (auto c = close()) return c;
    dead_end = "close";
    return std::nullopt;
  }
  if (st.k + 1 == n) {
    dead_end = "saturation";
    return std::nullopt;
  }
  st.refresh_sets(t);

  auto on_path = [&](VertexId z) {
    return std::find(st.path.vertices.begin(), st.path.vertices.end(), z) != st.path.vertices.end();
  };
  // P1: append vertices of S+ at the end, splice anything anywhere.
  for (;;) {
    bool grew = false;
    for (VertexId z = 0; z < n && !grew; ++z) {
      if (!st.s_plus[z] || on_path(z)) continue;
      if (const auto c = color_with(t, st.unused, st.path.vertices.back(), z)) {
        st.path.vertices.push_back(z);
        st.path.colors.push_back(*c);
        grew = true;
      }
    }
    if (!grew) {
      auto q = exchange_step(st.path, st.unused, t, false);
      if (!q) break;
      st.path = std::move(*q);
    }
    refresh_unused();
  }
  st.k1 = st.path.vertices.size();
  for (VertexId z = 0; z < n; ++z)
    if (st.s_plus[z] && !on_path(z)) {
      dead_end = "s-plus";
      return std::nullopt;
    }

  // P2: prepend vertices of S- at the front, splice anything anywhere.
  for (;;) {
    bool grew = false;
    for (VertexId z = 0; z < n && !grew; ++z) {
      if (!st.s_minus[z] || on_path(z)) continue;
      if (const auto c = color_with(t, st.unused, z, st.path.vertices.front())) {
        st.path.vertices.insert(st.path.vertices.begin(), z);
        st.path.colors.insert(st.path.colors.begin(), *c);
        ++st.ell;
        grew = true;
      }
    }
    if (!grew) {
      auto q = exchange_step(st.path, st.unused, t, false);
      if (!q) break;
      st.path = std::move(*q);
    }
    refresh_unused();
  }
  st.k2 = st.path.vertices.size();
  if (st.k2 != n) {
    dead_end = "s-minus";
    return std::nullopt;
  }
  if (auto c = close()) return c;
  dead_end = "close";
  return std::nullopt;
}

CycleAttempt constructive_cycle(const TournamentCollection& t, const PipelineParams& params, std::vector<Json>& trace) {
  CycleAttempt res;
  const std::size_t n = t.n();
  auto fail = [&](const std::string& stage, const std::string& msg) {
    ++res.dead_ends;
    res.last_stage = stage;
    trace.push_back({{"stage", stage}, {"dead_end", msg}});
  };
  std::optional<Frame> frame;
  try {
    frame = make_frame(t, params, trace);
  } catch (const ConstructionFailure& e) {
    fail(e.stage(), e.what());
  }

  if (frame) {
    const VertexId x = frame->p0.front(), y = frame->pl.back();
    // Case 1: a single arc y -> x.
    std::optional<ColorId> direct;
    for (ColorId c = 0; c < t.m() && !direct; ++c)
      if (t.has_arc(c, y, x)) direct = c;
    trace.push_back({{"stage", "case1"}, {"arc", direct.has_value()}});
    if (direct) {
      try {
        res.cycle = close_through_middle(t, *frame, {}, {*direct}, params, trace);
        return res;
      } catch (const ConstructionFailure& e) {
        fail(e.stage(), e.what());
      }
    } else {
      // Case 2: short rainbow connectors y -> u -> v -> x.
      const auto paths = short_connectors(t, *frame);
      trace.push_back({{"stage", "case2"},
                       {"paths", paths.size()},
                       {"threshold", params.mu.ceil_times(10 * static_cast<std::int64_t>(n))}});
      for (std::size_t k = 0; k < paths.size() && k < 3 && !res.cycle; ++k) {
        try {
          res.cycle = close_through_middle(t, *frame, paths[k].first, paths[k].second, params, trace);
        } catch (const ConstructionFailure& e) {
          fail(e.stage(), e.what());
        }
      }
      if (res.cycle) return res;
    }
  }

  // Longest-path machine. Without a partition the anchors are the pair
  // whose closing arc x -> y lies in the most colors.
  VertexId x = 0, y = 1;
  if (frame) {
    x = frame->p0.front();
    y = frame->pl.back();
  } else {
    std::size_t best = 0;
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = 0; b < n; ++b) {
        if (a == b) continue;
        std::size_t k = 0;
        for (ColorId c = 0; c < t.m(); ++c) k += t.has_arc(c, a, b);
        if (k > best) best = k, x = a, y = b;
      }
  }
  CycleSearchState st;
  if (frame) {
    st.x_prime = frame->p0.back();
    st.y_prime = frame->pl.front();
    st.separators = frame->hp.separators;
  }
  std::string dead_end;
  auto cyc = cycle_machine(t, x, y, st, dead_end);
  trace.push_back({{"stage", "machine"},
                   {"k", st.k},
                   {"k1", st.k1},
                   {"k2", st.k2},
                   {"ell", st.ell},
                   {"s_plus", st.s_plus.count()},
                   {"s_minus", st.s_minus.count()},
                   {"dead_end", cyc ? Json(nullptr) : Json(dead_end)}});
  if (cyc && is_hamilton_cycle(t, *cyc)) {
    res.cycle = std::move(cyc);
    return res;
  }
  ++res.dead_ends;
  res.last_stage = "machine-" + (cyc ? std::string("invalid") : dead_end);
  return res;
}

}  // namespace

PipelineOutcome transversal_ham_cycle(const TournamentCollection& t, const PipelineParams& params, SolveMode mode) {
  params.validate();
  const auto start = Clock::now();
  const std::size_t n = t.n(), m = t.m();
  PipelineOutcome out;
  std::size_t strong = 0;
  for (ColorId c = 0; c < m; ++c) strong += is_strongly_connected(t[c]);
  out.precondition_met = n >= 3 && m == n && strong + 1 >= n;
  out.trace.push_back({{"stage", "precondition"}, {"strongly_connected", strong}, {"met", out.precondition_met}});
  auto run_oracle = [&] {
    if (!oracle_supports(t)) {
      out.outcome.status = OracleStatus::BudgetExhausted;
      out.trace.push_back({{"stage", "oracle"}, {"skipped", "instance too large for the exact search"}});
      return;
    }
    out.outcome = exact_transversal_ham_cycle(t, params.oracle_budget);
    out.trace.push_back({{"stage", "oracle"},
                         {"status", to_string(out.outcome.status)},
                         {"nodes", out.outcome.nodes_expanded}});
  };

  if (mode == SolveMode::Exact || (mode == SolveMode::Auto && (n <= params.oracle_fallback_n || !out.precondition_met))) {
    out.route = "oracle";
    run_oracle();
    out.outcome.millis = millis_since(start);
    return out;
  }
  if (!out.precondition_met) {
    out.outcome.status = OracleStatus::BudgetExhausted;
    out.failure_stage = "precondition";
    out.route = "constructive";
    out.outcome.millis = millis_since(start);
    return out;
  }

  out.constructive_attempted = true;
  CycleAttempt att;
  try {
    att = constructive_cycle(t, params, out.trace);
  } catch (const std::logic_error& e) {
    ++att.dead_ends;
    att.last_stage = "internal";
    out.trace.push_back({{"stage", "internal"}, {"message", e.what()}});
  }
  out.dead_ends = att.dead_ends;
  if (att.cycle) {
    out.outcome.status = OracleStatus::Found;
    out.outcome.cycle = std::move(att.cycle);
    out.constructive_succeeded = true;
    out.route = "constructive";
  } else {
    out.failure_stage = att.last_stage;
    if (mode == SolveMode::Auto) {
      out.route = "fallback";
      run_oracle();
    } else {
      out.route = "constructive";
      out.outcome.status = OracleStatus::BudgetExhausted;
    }
  }
  out.outcome.millis = millis_since(start);
  return out;
}

}  // namespace rainbow
