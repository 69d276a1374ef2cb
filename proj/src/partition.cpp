#include "rainbow/partition.hpp"

#include <algorithm>
#include <numeric>

namespace rainbow {

namespace {

// Out-neighbourhood rows for fast degree counts inside vertex subsets.
std::vector<VertexSet> out_rows(const Tournament& t) {
  const std::size_t n = t.n();
  std::vector<VertexSet> rows(n, VertexSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t.bits()[pair_index(n, i, j)])
        rows[i].set(j);
      else
        rows[j].set(i);
    }
  return rows;
}

VertexSet as_set(std::size_t n, std::span<const VertexId> vs) {
  VertexSet s(n);
  for (VertexId v : vs) s.set(v);
  return s;
}

BlockSplit split_with_rows(const std::vector<VertexSet>& rows, std::span<const VertexId> w) {
  if (w.size() < 3) throw InvalidArgument("split_block needs at least three vertices");
  const VertexSet mask = as_set(rows.size(), w);
  const std::size_t k = w.size();
  VertexId best = w.front();
  std::size_t best_score = 0;
  bool have = false;
  for (VertexId v : w) {
    const std::size_t out = (rows[v] & mask).count();
    const std::size_t score = std::min(out, k - 1 - out);
    if (!have || score > best_score || (score == best_score && v < best)) {
      best = v, best_score = score, have = true;
    }
  }
  const std::size_t need = (k + 5) / 6;
  if (best_score < need) throw std::logic_error("split_block: no vertex with both degrees >= |W|/6");
  BlockSplit s{{}, best, {}};
  for (VertexId u : w) {
    if (u == best) continue;
    (rows[best][u] ? s.plus : s.minus).push_back(u);
  }
  std::sort(s.minus.begin(), s.minus.end());
  std::sort(s.plus.begin(), s.plus.end());
  return s;
}

}  // namespace

LocalMedianOrder local_median_order(const Tournament& t) {
  const std::size_t n = t.n();
  LocalMedianOrder out;
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), VertexId{0});
  const auto deg = t.out_degrees();
  std::stable_sort(out.order.begin(), out.order.end(), [&](VertexId a, VertexId b) { return deg[a] > deg[b]; });

  auto& ord = out.order;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t p = 0; p < n; ++p) {
      const VertexId x = ord[p];
      long best = 0;
      std::size_t target = p;
      long g = 0;
      for (std::size_t q = p; q-- > 0;) {
        g += t.has_arc(x, ord[q]) ? 1 : -1;
        if (g > best) best = g, target = q;
      }
      g = 0;
      for (std::size_t q = p + 1; q < n; ++q) {
        g += t.has_arc(ord[q], x) ? 1 : -1;
        if (g > best) best = g, target = q;
      }
      if (best <= 0) continue;
      if (target < p)
        std::rotate(ord.begin() + static_cast<long>(target), ord.begin() + static_cast<long>(p),
                    ord.begin() + static_cast<long>(p) + 1);
      else
        std::rotate(ord.begin() + static_cast<long>(p), ord.begin() + static_cast<long>(p) + 1,
                    ord.begin() + static_cast<long>(target) + 1);
      ++out.improvements;
      improved = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.forward_arcs += t.has_arc(ord[i], ord[j]);
  return out;
}

bool satisfies_median_property(const Tournament& t, const std::vector<VertexId>& order) {
  const std::size_t n = order.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t in = 0, out = 0;
    for (std::size_t i = 0; i < j; ++i) in += t.has_arc(order[i], order[j]);
    for (std::size_t i = j + 1; i < n; ++i) out += t.has_arc(order[j], order[i]);
    if (2 * in < j || 2 * out < n - 1 - j) return false;
  }
  return true;
}

std::vector<VertexId> tournament_hamilton_path(const Tournament& t, std::span<const VertexId> vertices) {
  const auto local = local_median_order(t.induced(vertices));
  std::vector<VertexId> out;
  out.reserve(vertices.size());
  for (VertexId k : local.order) out.push_back(vertices[k]);
  return out;
}

bool low_degree_count_bound_check(const Tournament& t, std::size_t d) {
  const auto deg = t.out_degrees();
  return low_degree_count_bound_check(deg, d);
}

bool low_degree_count_bound_check(std::span<const std::size_t> out_degrees, std::size_t d) {
  const std::size_t n = out_degrees.size();
  std::size_t low_in = 0, low_out = 0;
  for (std::size_t x : out_degrees) {
    low_out += x <= d;
    low_in += n - 1 - x <= d;
  }
  return low_in <= 2 * d + 1 && low_out <= 2 * d + 1;
}

BlockSplit split_block(const Tournament& t, std::span<const VertexId> w) {
  for (VertexId v : w)
    if (v >= t.n()) throw InvalidArgument("split_block: vertex out of range");
  return split_with_rows(out_rows(t), w);
}

HPartition h_partition(const Tournament& t, std::size_t ell, Rational gamma) {
  std::vector<VertexId> all(t.n());
  std::iota(all.begin(), all.end(), VertexId{0});
  return h_partition(t, all, ell, gamma);
}

HPartition h_partition(const Tournament& t, std::span<const VertexId> vertices, std::size_t ell, Rational gamma) {
  if (ell < 3 || ell > vertices.size()) throw InvalidArgument("h_partition needs 3 <= ell <= n");
  if (gamma.num <= 0 || gamma.den <= 0 || Rational{1, 6} < gamma)
    throw InvalidArgument("h_partition needs 0 < gamma <= 1/6");
  HPartition p;
  p.ell = ell;
  p.gamma = gamma;
  p.blocks.emplace_back(vertices.begin(), vertices.end());
  std::sort(p.blocks.front().begin(), p.blocks.front().end());
  if (vertices.size() <= ell) return p;

  const auto rows = out_rows(t);
  for (;;) {
    std::size_t pick = p.blocks.size();
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
      if (p.blocks[i].size() > ell && (pick == p.blocks.size() || p.blocks[i].size() > p.blocks[pick].size()))
        pick = i;
    if (pick == p.blocks.size()) break;
    auto s = split_with_rows(rows, p.blocks[pick]);
    p.blocks[pick] = std::move(s.minus);
    p.blocks.insert(p.blocks.begin() + static_cast<long>(pick) + 1, std::move(s.plus));
    p.separators.insert(p.separators.begin() + static_cast<long>(pick), s.v);
  }
  return p;
}

std::vector<std::string> h_partition_violations(const Tournament& t, const HPartition& p,
                                                std::span<const VertexId> universe, std::size_t ell, Rational gamma) {
  std::vector<std::string> bad;
  if (p.blocks.empty()) bad.push_back("no blocks");
  if (p.separators.size() + 1 != p.blocks.size() && !p.blocks.empty())
    bad.push_back("separator count must be one less than the block count");

  std::vector<int> hits(t.n(), 0);
  for (const auto& b : p.blocks)
    for (VertexId v : b)
      if (v < t.n()) ++hits[v];
  for (VertexId v : p.separators)
    if (v < t.n()) ++hits[v];
  std::vector<char> in_universe(t.n(), 0);
  for (VertexId v : universe) in_universe[v] = 1;
  for (VertexId v = 0; v < t.n(); ++v) {
    if (in_universe[v] && hits[v] != 1) bad.push_back("vertex " + std::to_string(v) + " covered " +
                                                      std::to_string(hits[v]) + " times");
    if (!in_universe[v] && hits[v] != 0) bad.push_back("vertex " + std::to_string(v) + " is outside the universe");
  }

  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto size = static_cast<std::int64_t>(p.blocks[i].size());
    if (size * gamma.den < gamma.num * static_cast<std::int64_t>(ell) || p.blocks[i].size() > ell)
      bad.push_back("block " + std::to_string(i) + " has size " + std::to_string(size));
  }

  for (std::size_t i = 0; i < p.separators.size() && i + 1 < p.blocks.size(); ++i) {
    const VertexId w = p.separators[i];
    for (VertexId a : p.blocks[i])
      if (!t.has_arc(a, w)) bad.push_back("arc " + std::to_string(w) + "->" + std::to_string(a) + " breaks W_i => w_i");
    for (VertexId b : p.blocks[i + 1])
      if (!t.has_arc(w, b))
        bad.push_back("arc " + std::to_string(b) + "->" + std::to_string(w) + " breaks w_i => W_{i+1}");
  }
  return bad;
}

std::vector<std::string> h_partition_violations(const Tournament& t, const HPartition& p, std::size_t ell,
                                                Rational gamma) {
  std::vector<VertexId> all(t.n());
  std::iota(all.begin(), all.end(), VertexId{0});
  return h_partition_violations(t, p, all, ell, gamma);
}

}  // namespace rainbow
