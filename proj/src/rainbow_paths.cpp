#include "rainbow/rainbow_paths.hpp"

#include <algorithm>

#include "rainbow/oracle.hpp"
#include "rainbow/partition.hpp"

namespace rainbow {

namespace {

RainbowPath lift(const RainbowPath& local, const InducedCollection& ic) {
  RainbowPath out;
  for (VertexId v : local.vertices) out.vertices.push_back(ic.vertex_map[v]);
  for (ColorId c : local.colors) out.colors.push_back(ic.color_map[c]);
  return out;
}

ColorSet used_colors(std::size_t m, const RainbowPath& p) {
  ColorSet s(m);
  for (ColorId c : p.colors) s.set(c);
  return s;
}

bool is_directed_triangle(const Tournament& t, bool forward) {
  return forward ? t.has_arc(0, 1) && t.has_arc(1, 2) && t.has_arc(2, 0)
                 : t.has_arc(1, 0) && t.has_arc(2, 1) && t.has_arc(0, 2);
}

}  // namespace

std::optional<ColorId> first_free_color(const TournamentCollection& t, VertexId u, VertexId v, const ColorSet& used,
                                        const ColorSet* allowed) {
  for (ColorId c = 0; c < t.m(); ++c) {
    if (used[c] || (allowed && !(*allowed)[c])) continue;
    if (t.has_arc(c, u, v)) return c;
  }
  return std::nullopt;
}

RainbowPath rainbow_ham_path_one_spare(const TournamentCollection& t, OneSpareStats* stats) {
  const std::size_t n = t.n();
  if (n == 0) throw InvalidArgument("rainbow_ham_path_one_spare needs n >= 1");
  if (t.m() < n) throw InsufficientColors("rainbow_ham_path_one_spare needs at least n colors");
  OneSpareStats local;
  OneSpareStats& st = stats ? *stats : local;
  st = {};
  auto arc = [&](ColorId c, VertexId a, VertexId b) {
    ++st.arc_inspections;
    return t.has_arc(c, a, b);
  };

  std::vector<VertexId> path{0};
  std::vector<ColorId> colors;
  ColorSet unused(t.m());
  unused.set();
  for (VertexId v = 1; v < n; ++v) {
    const ColorId c[2] = {static_cast<ColorId>(unused.find_first()),
                          static_cast<ColorId>(unused.find_next(unused.find_first()))};
    // (a) prepend
    bool done = false;
    for (int j = 0; j < 2 && !done; ++j) {
      if (arc(c[j], v, path.front())) {
        path.insert(path.begin(), v);
        colors.insert(colors.begin(), c[j]);
        unused.reset(c[j]);
        ++st.prepends;
        done = true;
      }
    }
    // (b) splice before the first u_t with v -> u_t in c1 or c2. Every
    // earlier vertex beats v in both colors, in particular u_{t-1}.
    for (std::size_t pos = 1; pos < path.size() && !done; ++pos) {
      for (int j = 0; j < 2 && !done; ++j) {
        if (!arc(c[j], v, path[pos])) continue;
        if (!arc(c[1 - j], path[pos - 1], v))
          throw std::logic_error("rainbow_ham_path_one_spare: splice precondition failed");
        unused.set(colors[pos - 1]);
        colors[pos - 1] = c[1 - j];
        colors.insert(colors.begin() + static_cast<long>(pos), c[j]);
        path.insert(path.begin() + static_cast<long>(pos), v);
        unused.reset(c[0]);
        unused.reset(c[1]);
        ++st.splices;
        done = true;
      }
    }
    // (c) v loses to every vertex in both colors; append with c1.
    if (!done) {
      if (!arc(c[0], path.back(), v)) throw std::logic_error("rainbow_ham_path_one_spare: append precondition failed");
      path.push_back(v);
      colors.push_back(c[0]);
      unused.reset(c[0]);
      ++st.appends;
    }
  }
  if (st.arc_inspections > 2 * n * n) throw std::logic_error("rainbow_ham_path_one_spare: inspection bound exceeded");
  return {std::move(path), std::move(colors)};
}

bool is_exceptional_configuration(const TournamentCollection& t, ColorId i) {
  if (t.n() != 3 || i >= t.m()) return false;
  for (bool forward : {true, false}) {
    if (!is_directed_triangle(t[i], forward)) continue;
    for (ColorId c = 0; c < t.m(); ++c)
      if (c != i && !is_directed_triangle(t[c], !forward)) return false;
    return true;
  }
  return false;
}

namespace {

RainbowPath forcing_color_base(const TournamentCollection& t, ColorId i) {
  const std::size_t n = t.n();
  if (n == 2) {
    if (t.has_arc(i, 0, 1)) return {{0, 1}, {i}};
    return {{1, 0}, {i}};
  }
  if (is_exceptional_configuration(t, i))
    throw ConstructionFailure(FailureKind::ExceptionalConfiguration, "forcing_color",
                              "directed triangle against opposite triangles");
  // The oracle handles at most 512 colors; a path needs far fewer.
  std::optional<InducedCollection> narrowed;
  const TournamentCollection* host = &t;
  ColorId forced = i;
  if (t.m() > 512) {
    std::vector<ColorId> keep{i};
    for (ColorId c = 0; keep.size() < 512; ++c)
      if (c != i) keep.push_back(c);
    narrowed = induced_collection(t, std::nullopt, keep);
    host = &narrowed->collection;
    forced = 0;
  }
  OracleOptions options;
  options.forced_colors = ColorSet(host->m());
  options.forced_colors->set(forced);
  const auto out = exact_transversal_ham_path(*host, std::nullopt, {}, options);
  if (out.status != OracleStatus::Found)
    throw ConstructionFailure(FailureKind::StageFailed, "forcing_color", "no path through the forced color");
  return narrowed ? lift(*out.path, *narrowed) : *out.path;
}

RainbowPath forcing_color_rec(const TournamentCollection& t, ColorId i) {
  const std::size_t n = t.n();
  if (n <= 7) return forcing_color_base(t, i);

  const Tournament maj = majority_subtournament(t);
  const auto deg = maj.out_degrees();
  VertexId v = 0;
  std::size_t best = n;
  for (VertexId u = 0; u < n; ++u)
    if (deg[u] >= 4 && deg[u] < best) best = deg[u], v = u;

  const auto out_nb = maj.out_neighbors(v);
  const auto in_nb = maj.in_neighbors(v);
  const auto sub = induced_collection(t, out_nb, std::nullopt);
  RainbowPath p = lift(forcing_color_rec(sub.collection, i), sub);

  ColorSet used = used_colors(t.m(), p);
  const auto head = first_free_color(t, v, p.vertices.front(), used);
  if (!head) throw ConstructionFailure(FailureKind::StageFailed, "forcing_color", "no free color into the out-path");
  p.vertices.insert(p.vertices.begin(), v);
  p.colors.insert(p.colors.begin(), *head);
  used.set(*head);
  if (in_nb.empty()) return p;

  std::vector<ColorId> free;
  for (ColorId c = 0; c < t.m(); ++c)
    if (!used[c]) free.push_back(c);
  const auto low = induced_collection(t, in_nb, free);
  RainbowPath q = lift(rainbow_ham_path_one_spare(low.collection), low);
  for (ColorId c : q.colors) used.set(c);
  const auto join = first_free_color(t, q.vertices.back(), v, used);
  if (!join) throw ConstructionFailure(FailureKind::StageFailed, "forcing_color", "no free color for the join");
  q.colors.push_back(*join);
  q.vertices.insert(q.vertices.end(), p.vertices.begin(), p.vertices.end());
  q.colors.insert(q.colors.end(), p.colors.begin(), p.colors.end());
  return q;
}

}  // namespace

RainbowPath rainbow_ham_path_forcing_color(const TournamentCollection& t, ColorId i) {
  if (t.n() < 2) throw InvalidArgument("rainbow_ham_path_forcing_color needs n >= 2");
  if (i >= t.m()) throw InvalidArgument("forced color out of range");
  if (t.m() < 2 * t.n()) throw InsufficientColors("rainbow_ham_path_forcing_color needs m >= 2n");
  return forcing_color_rec(t, i);
}

RainbowPath rainbow_ham_path_forcing_set(const TournamentCollection& t, const ColorSet& b, VertexId u, VertexId v) {
  const std::size_t n = t.n(), m = t.m();
  if (n < 25) throw InvalidArgument("rainbow_ham_path_forcing_set needs n >= 25");
  if (m < 4 * n) throw InvalidArgument("rainbow_ham_path_forcing_set needs m >= 4n");
  if (b.size() != m) throw InvalidArgument("forced set must have one bit per color");
  if (25 * b.count() > n) throw InvalidArgument("rainbow_ham_path_forcing_set needs |B| <= n/25");
  if (u == v || u >= n || v >= n) throw InvalidArgument("rainbow_ham_path_forcing_set needs distinct endpoints");

  std::vector<VertexId> inner;
  for (VertexId w = 0; w < n; ++w)
    if (w != u && w != v) inner.push_back(w);
  const Tournament maj = majority_subtournament(t);
  const auto hp = h_partition(maj, inner, std::min<std::size_t>(24, inner.size()), {1, 6});
  const std::size_t r = hp.r();

  // Private budgets of 2|W_i| colors from outside B, lowest colors first.
  std::vector<ColorId> pool;
  for (ColorId c = 0; c < m; ++c)
    if (!b[c]) pool.push_back(c);
  std::vector<std::vector<ColorId>> budget(r);
  std::size_t next = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < 2 * hp.blocks[i].size(); ++k) budget[i].push_back(pool.at(next++));

  auto solve_block = [&](std::size_t i, std::optional<ColorId> forced) {
    std::vector<ColorId> colors = budget[i];
    if (forced) colors.insert(colors.begin(), *forced);
    const auto ic = induced_collection(t, hp.blocks[i], colors);
    if (forced) return lift(rainbow_ham_path_forcing_color(ic.collection, 0), ic);
    return lift(rainbow_ham_path_one_spare(ic.collection), ic);
  };

  std::vector<RainbowPath> paths(r);
  std::vector<bool> solved(r, false);
  std::vector<ColorId> forced_list = [&] {
    std::vector<ColorId> out;
    for (auto c = b.find_first(); c != ColorSet::npos; c = b.find_next(c)) out.push_back(static_cast<ColorId>(c));
    return out;
  }();

  paths[0] = solve_block(0, std::nullopt), solved[0] = true;
  if (r > 1) paths[r - 1] = solve_block(r - 1, std::nullopt), solved[r - 1] = true;

  // Try to spend B on the two endpoint arcs.
  std::optional<ColorId> first_arc, last_arc;
  std::vector<bool> spent(forced_list.size(), false);
  for (std::size_t k = 0; k < forced_list.size() && !first_arc; ++k)
    if (t.has_arc(forced_list[k], u, paths[0].vertices.front())) first_arc = forced_list[k], spent[k] = true;
  for (std::size_t k = 0; k < forced_list.size() && !last_arc; ++k)
    if (!spent[k] && t.has_arc(forced_list[k], paths[r - 1].vertices.back(), v))
      last_arc = forced_list[k], spent[k] = true;

  std::vector<std::size_t> targets;
  for (std::size_t i = 1; i + 1 < r; ++i) targets.push_back(i);
  if (!first_arc) targets.push_back(0);
  if (!last_arc && r > 1) targets.push_back(r - 1);
  std::size_t slot = 0;
  for (std::size_t k = 0; k < forced_list.size(); ++k) {
    if (spent[k]) continue;
    if (slot == targets.size())
      throw ConstructionFailure(FailureKind::StageFailed, "forcing_set", "more forced colors than blocks");
    const std::size_t i = targets[slot++];
    paths[i] = solve_block(i, forced_list[k]);
    solved[i] = true;
    spent[k] = true;
  }
  for (std::size_t i = 0; i < r; ++i)
    if (!solved[i]) paths[i] = solve_block(i, std::nullopt);

  // Release unused budget colors and connect greedily outside B.
  ColorSet used(m);
  for (const auto& p : paths)
    for (ColorId c : p.colors) used.set(c);
  if (first_arc) used.set(*first_arc);
  if (last_arc) used.set(*last_arc);
  ColorSet allowed = ~b;
  auto connect = [&](VertexId a, VertexId z) {
    const auto c = first_free_color(t, a, z, used, &allowed);
    if (!c) throw ConstructionFailure(FailureKind::StageFailed, "forcing_set", "no free color for a connecting arc");
    used.set(*c);
    return *c;
  };

  RainbowPath out;
  out.vertices.push_back(u);
  for (std::size_t i = 0; i < r; ++i) {
    const VertexId entry = i == 0 ? u : hp.separators[i - 1];
    const ColorId c = (i == 0 && first_arc) ? *first_arc : connect(entry, paths[i].vertices.front());
    out.colors.push_back(c);
    out.vertices.insert(out.vertices.end(), paths[i].vertices.begin(), paths[i].vertices.end());
    out.colors.insert(out.colors.end(), paths[i].colors.begin(), paths[i].colors.end());
    const VertexId exit = i + 1 < r ? hp.separators[i] : v;
    out.colors.push_back((i + 1 == r && last_arc) ? *last_arc : connect(paths[i].vertices.back(), exit));
    out.vertices.push_back(exit);
  }

  if (!is_hamilton_path(t, out))
    throw ConstructionFailure(FailureKind::StageFailed, "forcing_set", "assembled path does not validate");
  for (ColorId c : forced_list)
    if (std::find(out.colors.begin(), out.colors.end(), c) == out.colors.end())
      throw ConstructionFailure(FailureKind::StageFailed, "forcing_set", "a forced color is unused");
  return out;
}

RainbowPath rainbow_connect(const TournamentCollection& t, VertexId x, VertexId y, std::vector<std::size_t>* layer_sizes) {
  const std::size_t n = t.n();
  if (x == y || x >= n || y >= n) throw InvalidArgument("rainbow_connect needs distinct vertices below n");
  constexpr VertexId none = static_cast<VertexId>(-1);
  std::vector<VertexId> parent(n, none);
  std::vector<ColorId> entry(n, 0);
  std::vector<char> reached(n, 0);
  std::vector<VertexId> layer{x};
  reached[x] = 1;
  std::optional<ColorId> stalled;
  if (layer_sizes) layer_sizes->clear();

  for (ColorId c = 0; c < t.m() && !reached[y]; ++c) {
    std::vector<VertexId> grown;
    for (VertexId w = 0; w < n; ++w) {
      if (reached[w]) continue;
      for (VertexId u : layer) {
        if (t.has_arc(c, u, w)) {
          parent[w] = u, entry[w] = c;
          grown.push_back(w);
          break;
        }
      }
    }
    if (grown.empty() && !stalled) stalled = c;
    for (VertexId w : grown) reached[w] = 1;
    layer.insert(layer.end(), grown.begin(), grown.end());
    std::sort(layer.begin(), layer.end());
    if (layer_sizes) layer_sizes->push_back(layer.size());
  }
  if (!reached[y]) {
    const std::string where = stalled ? "color " + std::to_string(*stalled) : "the last color";
    throw ConstructionFailure(FailureKind::NoProgress, "rainbow_connect", "reachable set stopped growing at " + where);
  }

  RainbowPath p;
  for (VertexId w = y; w != x; w = parent[w]) {
    p.vertices.push_back(w);
    p.colors.push_back(entry[w]);
  }
  p.vertices.push_back(x);
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.colors.begin(), p.colors.end());
  return p;
}

}  // namespace rainbow
