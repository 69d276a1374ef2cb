#include <algorithm>
#include <cmath>

#include "rainbow/absorber.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/rainbow_paths.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

namespace {

[[noreturn]] void stage_failed(const std::string& stage, const std::string& what) {
  throw ConstructionFailure(FailureKind::StageFailed, stage, what);
}

Json stage_record(const std::string& stage, const ColorLedger& ledger) {
  return Json{{"stage", stage}, {"ledger", ledger.snapshot()}};
}

// Hamilton path of tmaj[vertices] by insertion in a random vertex order.
std::vector<VertexId> insertion_path(const Tournament& tmaj, std::vector<VertexId> vertices, SplitMix64& rng) {
  rng.shuffle(vertices);
  std::vector<VertexId> path;
  for (VertexId v : vertices) {
    if (path.empty() || tmaj.has_arc(v, path.front())) {
      path.insert(path.begin(), v);
      continue;
    }
    std::size_t pos = path.size();
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (tmaj.has_arc(v, path[i + 1])) {
        pos = i + 1;
        break;
      }
    path.insert(path.begin() + static_cast<long>(pos), v);
  }
  return path;
}

struct Colored {
  std::vector<VertexId> vertices;
  std::vector<ColorId> colors;
};

}  // namespace

RainbowPath rainbow_dhp(const TournamentCollection& t, const Tournament& tmaj, const HPartition& part, VertexId w0,
                        VertexId wr, const PipelineParams& params, std::vector<Json>* trace) {
  params.validate();
  const std::size_t n = t.n(), m = t.m();
  auto record = [&](Json j) {
    if (trace) trace->push_back(std::move(j));
  };
  if (n < 2 || m + 1 != n) throw InvalidArgument("rainbow_dhp needs n - 1 colors on n vertices");
  if (tmaj.n() != n) throw InvalidArgument("rainbow_dhp: tmaj has the wrong vertex count");
  if (w0 >= n || wr >= n || w0 == wr) throw InvalidArgument("rainbow_dhp: invalid endpoints");
  const std::size_t r = part.r();
  if (r < 3 || part.separators.size() + 1 != r)
    throw InvalidArgument("rainbow_dhp needs at least three blocks and one separator between consecutive blocks");
  {
    std::vector<int> hits(n, 0);
    ++hits[w0], ++hits[wr];
    for (VertexId s : part.separators) ++hits.at(s);
    for (const auto& block : part.blocks) {
      if (block.empty()) throw InvalidArgument("rainbow_dhp: empty block");
      for (VertexId v : block) ++hits.at(v);
    }
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
      throw InvalidArgument("rainbow_dhp: blocks, separators and endpoints must partition the vertices");
  }
  const std::vector<VertexId> head{w0}, tail{wr};
  if (!dominates(tmaj, head, part.blocks.front()) || !dominates(tmaj, part.blocks.back(), tail))
    throw InvalidArgument("rainbow_dhp needs w0 => W_1 and W_r => wr in tmaj");

  if (n <= params.oracle_fallback_n) {
    const auto o = exact_transversal_ham_path(t, Endpoints{w0, wr}, params.oracle_budget);
    record({{"stage", "oracle"}, {"status", to_string(o.status)}, {"nodes", o.nodes_expanded}});
    if (o.status != OracleStatus::Found) stage_failed("oracle", "no rainbow Hamilton path between the endpoints");
    return *o.path;
  }

  {
    const auto thr = threshold_digraph(t, params.alpha);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        if (u != v && tmaj.has_arc(u, v) && !thr.has_arc(u, v))
          stage_failed("precondition", "tmaj is not inside the alpha-threshold digraph");
  }

  // s[i] precedes block i and s[i + 1] follows it.
  std::vector<VertexId> s{w0};
  s.insert(s.end(), part.separators.begin(), part.separators.end());
  s.push_back(wr);
  const auto& blocks = part.blocks;
  const auto nn = static_cast<std::int64_t>(n);

  // Block prefix L1 = [0, tau) whose path edges land in [beta n, (beta + mu) n].
  const std::int64_t lo = params.beta.ceil_times(nn);
  const std::int64_t hi = (params.beta.num * params.mu.den + params.mu.num * params.beta.den) * nn /
                          (params.beta.den * params.mu.den);
  std::size_t tau = 0;
  std::int64_t eq1 = 0;
  while (tau < r && eq1 < lo) eq1 += static_cast<std::int64_t>(blocks[tau++].size()) - 1;
  if (eq1 < lo || eq1 > hi || tau + 2 > r) stage_failed("step2", "no block prefix fits the absorber window");
  const auto ell_abs = static_cast<std::size_t>(params.gamma.ceil_times(nn));
  if (ell_abs > static_cast<std::size_t>(eq1)) stage_failed("step2", "absorber top-up exceeds the prefix edges");
  const std::size_t l2_count = r - tau - 1;

  // Step 1: separator colors D.
  std::vector<std::pair<VertexId, VertexId>> links;
  for (std::size_t i = 0; i < r; ++i)
    for (VertexId v : blocks[i]) {
      links.emplace_back(s[i], v);
      links.emplace_back(v, s[i + 1]);
    }
  std::vector<ColorSet> link_colors;
  link_colors.reserve(links.size());
  std::size_t a_min = m;
  for (const auto& [u, v] : links) {
    link_colors.push_back(color_set_of_arc(t, u, v));
    a_min = std::min(a_min, link_colors.back().count());
  }
  const double need = 2.0 * static_cast<double>(r) + 1.0;
  const double target = need + 3.0 * std::sqrt(need);
  if (a_min == 0) stage_failed("step1", "a separator arc has no color");
  double p = std::min(1.0, target / static_cast<double>(a_min));
  const auto cap_signed = static_cast<std::int64_t>(2 * (r - 1) + blocks[tau].size() + 1 + ell_abs) -
                          static_cast<std::int64_t>(l2_count);
  const std::size_t cap = cap_signed < 0 ? 0 : static_cast<std::size_t>(cap_signed);

  ColorLedger ledger(m);
  std::size_t attempt = 0;
  bool accepted = false;
  std::size_t min_overlap = 0;
  for (; attempt < std::max<std::size_t>(1, params.sample_retries) && !accepted; ++attempt) {
    SplitMix64 rng(stream_key(params.seed, 0xd0, attempt));
    ColorSet d(m);
    for (ColorId c = 0; c < m; ++c)
      if (rng.uniform() < p) d.set(c);
    min_overlap = m;
    for (const auto& lc : link_colors) min_overlap = std::min(min_overlap, (lc & d).count());
    const bool p2 = min_overlap > 2 * r;
    const bool p1 = d.count() <= cap;
    if (p1 && p2) {
      ledger.d = d;
      accepted = true;
    } else if (!p2) {
      p = std::min(1.0, p * 1.05);
    } else {
      p *= 0.95;
    }
  }
  {
    Json rec = stage_record("step1", ledger);
    rec["attempts"] = attempt;
    rec["rate"] = p;
    rec["cap"] = cap;
    rec["min_overlap"] = min_overlap;
    rec["blocks"] = r;
    record(std::move(rec));
  }
  if (!accepted) stage_failed("step1", "no sample of D met both size and overlap checks");

  // Step 2: prefix paths and the absorber over their arcs.
  std::vector<Colored> paths(r);
  std::vector<Arc> q1;
  for (std::size_t i = 0; i < tau; ++i) {
    paths[i].vertices = tournament_hamilton_path(tmaj, blocks[i]);
    for (std::size_t j = 0; j + 1 < paths[i].vertices.size(); ++j)
      q1.emplace_back(paths[i].vertices[j], paths[i].vertices[j + 1]);
  }
  ColorSet avail = ~ledger.d;
  const std::size_t a_size = q1.size() - ell_abs;
  if (avail.count() < a_size + ell_abs) stage_failed("step2", "too few colors left for the absorber");
  AbsorberParams ap;
  ap.ell = ell_abs;
  ap.c_size = std::min<std::size_t>(static_cast<std::size_t>(Rational{10 * params.beta.num, params.beta.den}
                                                                 .ceil_times(nn)),
                                    avail.count() - a_size);
  ap.retries = params.absorber_retries;
  ap.seed = stream_key(params.seed, 0xab);
  Absorber ab;
  try {
    ab = build_absorber(t, q1, avail, ap);
  } catch (const ConstructionFailure& e) {
    throw ConstructionFailure(e.kind(), "step2", e.what());
  }
  ledger.a = ab.a;
  ledger.c = ab.c;
  ledger.b = ~(ledger.d | ledger.a | ledger.c);
  if (!ledger.is_partition()) stage_failed("step2", "color classes do not partition the palette");
  {
    Json rec = stage_record("step2", ledger);
    rec["tau"] = tau;
    rec["prefix_edges"] = eq1;
    rec["top_up"] = ell_abs;
    rec["absorber_attempts"] = ab.attempts;
    rec["probes"] = ab.probes;
    record(std::move(rec));
  }

  // How many prefix arcs each color can serve; colors serving few go first
  // into the later blocks so that the top-up keeps the versatile ones.
  std::vector<std::size_t> q1deg(m, 0);
  for (const auto& av : ab.availability)
    for (auto c = av.find_first(); c != av.npos; c = av.find_next(c)) ++q1deg[c];
  auto by_q1deg = [&](std::vector<std::size_t> cs) {
    std::stable_sort(cs.begin(), cs.end(), [&](auto x, auto y) { return q1deg[x] < q1deg[y]; });
    return cs;
  };

  // Step 3: blocks after tau, each on its own budget of |W_i| colors with
  // B first.
  std::size_t budget_total = 0;
  for (std::size_t i = tau + 1; i < r; ++i) budget_total += blocks[i].size();
  const auto bcolors = members(ledger.b);
  const auto ccolors = by_q1deg(members(ledger.c));
  const std::size_t b_in = std::min(bcolors.size(), budget_total);
  if (ccolors.size() < budget_total - b_in) stage_failed("step3", "C cannot fill the block budgets");
  std::vector<std::vector<ColorId>> budget(r);
  {
    std::size_t next = 0, i = tau + 1;
    while (next < b_in) {
      if (budget[i].size() < blocks[i].size()) budget[i].push_back(static_cast<ColorId>(bcolors[next++]));
      i = i + 1 < r ? i + 1 : tau + 1;
    }
    for (std::size_t k = b_in; k < bcolors.size(); ++k) ledger.b_star.set(bcolors[k]);
    std::size_t cn = 0;
    for (std::size_t j = tau + 1; j < r; ++j)
      while (budget[j].size() < blocks[j].size()) budget[j].push_back(static_cast<ColorId>(ccolors[cn++]));
  }
  for (std::size_t i = tau + 1; i < r; ++i) {
    if (blocks[i].size() == 1) {
      paths[i].vertices = blocks[i];
    } else {
      const auto ic = induced_collection(t, blocks[i], budget[i]);
      const auto lp = rainbow_ham_path_one_spare(ic.collection);
      for (VertexId v : lp.vertices) paths[i].vertices.push_back(ic.vertex_map[v]);
      for (ColorId c : lp.colors) paths[i].colors.push_back(ic.color_map[c]);
    }
    for (ColorId c : paths[i].colors) ledger.used.set(c);
    for (ColorId c : budget[i])
      if (!ledger.used[c]) (ledger.b[c] ? ledger.b_star : ledger.c_star).set(c);
  }
  std::vector<ColorId> in_color(r), out_color(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (i == tau) continue;
    const auto ci = first_free_color(t, s[i], paths[i].vertices.front(), ledger.used, &ledger.d);
    if (!ci) stage_failed("step3", "no D color left for a separator arc");
    ledger.used.set(*ci);
    const auto co = first_free_color(t, paths[i].vertices.back(), s[i + 1], ledger.used, &ledger.d);
    if (!co) stage_failed("step3", "no D color left for a separator arc");
    ledger.used.set(*co);
    in_color[i] = *ci;
    out_color[i] = *co;
  }
  ledger.d_star = ledger.d & ~ledger.used;
  ledger.c_star = ledger.c & ~ledger.used;
  record(stage_record("step3", ledger));

  // Exchange: leftover B* and D* colors replace C colors on block arcs
  // after tau, which sends those C colors back to C*.
  {
    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (block, arc index)
    for (std::size_t i = tau + 1; i < r; ++i)
      for (std::size_t j = 0; j < paths[i].colors.size(); ++j)
        if (ledger.c[paths[i].colors[j]]) slots.emplace_back(i, j);
    const auto forced = members(ledger.b_star | ledger.d_star);
    BipartiteMatcher bm(slots.size());
    for (auto f : forced) {
      ColorSet adj(slots.size());
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& path = paths[slots[k].first].vertices;
        adj[k] = t.has_arc(static_cast<ColorId>(f), path[slots[k].second], path[slots[k].second + 1]);
      }
      bm.add_left(std::move(adj));
    }
    bm.maximize();
    std::size_t swapped = 0;
    for (std::size_t l = 0; l < forced.size(); ++l) {
      const std::size_t k = bm.left_match(l);
      if (k == BipartiteMatcher::npos) continue;
      ColorId& slot = paths[slots[k].first].colors[slots[k].second];
      ledger.used.reset(slot);
      ledger.c_star.set(slot);
      slot = static_cast<ColorId>(forced[l]);
      ledger.used.set(slot);
      ledger.b_star.reset(slot);
      ledger.d_star.reset(slot);
      ++swapped;
    }
    Json rec = stage_record("exchange", ledger);
    rec["swapped"] = swapped;
    record(std::move(rec));
  }

  // Step 4: path through W_tau using every leftover B*/D* color; what stays
  // unused of C* is the top-up for the absorber.
  const ColorSet fprime = ledger.b_star | ledger.d_star;
  const ColorSet sstar = fprime | ledger.c_star;
  const std::size_t tau_arcs = blocks[tau].size() + 1;
  if (sstar.count() != tau_arcs + ell_abs) stage_failed("step4", "leftover color count does not match");
  if ((sstar & ledger.used).any()) stage_failed("step4", "ledger overlap between used and unspent colors");

  std::optional<Colored> tau_path;
  std::optional<ColorSet> cprime;
  std::string route;
  const std::size_t nt = blocks[tau].size() + 2;
  if (nt >= 25 && sstar.count() >= 4 * nt && 25 * fprime.count() <= nt) {
    std::vector<VertexId> vs{s[tau]};
    vs.insert(vs.end(), blocks[tau].begin(), blocks[tau].end());
    vs.push_back(s[tau + 1]);
    const auto cs = members(sstar);
    std::vector<ColorId> cl(cs.begin(), cs.end());
    const auto ic = induced_collection(t, vs, cl);
    ColorSet lb(cl.size());
    for (std::size_t k = 0; k < cl.size(); ++k) lb[k] = fprime[cl[k]];
    try {
      const auto lp = rainbow_ham_path_forcing_set(ic.collection, lb, 0, static_cast<VertexId>(nt - 1));
      Colored c;
      ColorSet left = sstar;
      for (VertexId v : lp.vertices) c.vertices.push_back(ic.vertex_map[v]);
      for (ColorId x : lp.colors) {
        c.colors.push_back(ic.color_map[x]);
        left.reset(ic.color_map[x]);
      }
      if (absorbable(ab, left)) {
        tau_path = std::move(c);
        cprime = left;
        route = "forcing-set";
      }
    } catch (const std::exception&) {
      // fall through to the matching route
    }
  }
  if (!tau_path) {
    const auto forced = members(fprime);
    const auto rest = by_q1deg(members(ledger.c_star));
    SplitMix64 rng(stream_key(params.seed, 0x4a));
    for (std::size_t att = 0; att < 8 && !tau_path; ++att) {
      std::vector<VertexId> h =
          att == 0 ? tournament_hamilton_path(tmaj, blocks[tau]) : insertion_path(tmaj, blocks[tau], rng);
      std::vector<VertexId> seq{s[tau]};
      seq.insert(seq.end(), h.begin(), h.end());
      seq.push_back(s[tau + 1]);
      std::vector<std::size_t> order = forced;
      std::vector<std::size_t> tail_order = rest;
      if (att >= 4) rng.shuffle(tail_order);
      order.insert(order.end(), tail_order.begin(), tail_order.end());
      std::vector<ColorSet> adj;
      for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
        ColorSet a(order.size());
        for (std::size_t k = 0; k < order.size(); ++k)
          a[k] = t.has_arc(static_cast<ColorId>(order[k]), seq[j], seq[j + 1]);
        adj.push_back(std::move(a));
      }
      ColorSet must(order.size());
      for (std::size_t k = 0; k < forced.size(); ++k) must.set(k);
      const auto mt = saturating_matching(adj, order.size(), &must);
      if (!mt) continue;
      Colored c;
      c.vertices = seq;
      ColorSet left = sstar;
      for (auto k : *mt) {
        c.colors.push_back(static_cast<ColorId>(order[k]));
        left.reset(order[k]);
      }
      if (absorbable(ab, left)) {
        tau_path = std::move(c);
        cprime = left;
        route = "matching";
      }
    }
  }
  if (!tau_path) stage_failed("step4", "no path through the middle block left an absorbable top-up");
  for (ColorId c : tau_path->colors) ledger.used.set(c);
  ledger.b_star.reset();
  ledger.d_star.reset();
  ledger.c_star = *cprime;
  {
    Json rec = stage_record("step4", ledger);
    rec["route"] = route;
    rec["forced"] = fprime.count();
    record(std::move(rec));
  }

  const ColoredDigraph q1_colored = absorb(ab, *cprime);
  {
    std::size_t k = 0;
    for (std::size_t i = 0; i < tau; ++i)
      for (std::size_t j = 0; j + 1 < paths[i].vertices.size(); ++j) paths[i].colors.push_back(q1_colored[k++].color);
  }
  for (const auto& a : q1_colored) ledger.used.set(a.color);
  ledger.c_star.reset();
  record(stage_record("absorb", ledger));

  RainbowPath out;
  for (std::size_t i = 0; i < r; ++i) {
    if (i == tau) {
      out.vertices.insert(out.vertices.end(), tau_path->vertices.begin(), tau_path->vertices.end() - 1);
      out.colors.insert(out.colors.end(), tau_path->colors.begin(), tau_path->colors.end());
      continue;
    }
    out.vertices.push_back(s[i]);
    out.colors.push_back(in_color[i]);
    out.vertices.insert(out.vertices.end(), paths[i].vertices.begin(), paths[i].vertices.end());
    out.colors.insert(out.colors.end(), paths[i].colors.begin(), paths[i].colors.end());
    out.colors.push_back(out_color[i]);
  }
  out.vertices.push_back(wr);
  if (ledger.used.count() != m) stage_failed("assemble", "some color was not spent");
  if (!is_hamilton_path(t, out) || out.vertices.front() != w0 || out.vertices.back() != wr)
    stage_failed("assemble", "assembled path does not validate");
  return out;
}

}  // namespace rainbow
