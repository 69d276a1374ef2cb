// Permutation enumeration with a plain adjacency-list matching. Shares no
// search or matching code with the backtracking oracle so the two can certify
// each other.
#include <algorithm>
#include <chrono>
#include <numeric>

#include "rainbow/oracle.hpp"

namespace rainbow {

namespace {

struct SimpleMatching {
  const std::vector<std::vector<ColorId>>& options;
  std::vector<int> owner;
  std::vector<char> used;

  SimpleMatching(const std::vector<std::vector<ColorId>>& opts, std::size_t m) : options(opts), owner(m, -1), used(m) {}

  bool try_slot(std::size_t slot) {
    for (ColorId c : options[slot]) {
      if (used[c]) continue;
      used[c] = 1;
      if (owner[c] < 0 || try_slot(static_cast<std::size_t>(owner[c]))) {
        owner[c] = static_cast<int>(slot);
        return true;
      }
    }
    return false;
  }

  /// Colors per slot, or empty when some slot cannot be matched.
  std::vector<ColorId> solve() {
    for (std::size_t s = 0; s < options.size(); ++s) {
      std::fill(used.begin(), used.end(), 0);
      if (!try_slot(s)) return {};
    }
    std::vector<ColorId> out(options.size());
    for (std::size_t c = 0; c < owner.size(); ++c)
      if (owner[c] >= 0) out[static_cast<std::size_t>(owner[c])] = static_cast<ColorId>(c);
    return out;
  }
};

std::vector<ColorId> colors_of(const TournamentCollection& t, VertexId u, VertexId v) {
  std::vector<ColorId> out;
  for (ColorId c = 0; c < t.m(); ++c)
    if (t[c].has_arc(u, v)) out.push_back(c);
  return out;
}

// Tries to color the vertex order as a path (or cycle); returns true and
// fills `colors` on success.
bool colorable(const TournamentCollection& t, const std::vector<VertexId>& order, bool closed,
               std::vector<ColorId>& colors) {
  std::vector<std::vector<ColorId>> slots;
  const std::size_t k = order.size();
  const std::size_t arcs = closed ? k : k - 1;
  for (std::size_t i = 0; i < arcs; ++i) {
    slots.push_back(colors_of(t, order[i], order[(i + 1) % k]));
    if (slots.back().empty()) return false;
  }
  if (arcs > t.m()) return false;
  if (arcs == 0) {
    colors.clear();
    return true;
  }
  SimpleMatching sm(slots, t.m());
  colors = sm.solve();
  return !colors.empty();
}

}  // namespace

OracleOutcome reference_ham_path(const TournamentCollection& t, std::optional<Endpoints> endpoints) {
  const auto start = std::chrono::steady_clock::now();
  OracleOutcome out;
  std::vector<VertexId> order(t.n());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::vector<ColorId> colors;
  do {
    ++out.nodes_expanded;
    if (endpoints && (order.front() != endpoints->first || order.back() != endpoints->second)) continue;
    if (colorable(t, order, false, colors)) {
      out.status = OracleStatus::Found;
      out.path = RainbowPath{order, colors};
      break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

OracleOutcome reference_ham_cycle(const TournamentCollection& t) {
  const auto start = std::chrono::steady_clock::now();
  OracleOutcome out;
  if (t.n() >= 3) {
    std::vector<VertexId> order(t.n());
    std::iota(order.begin(), order.end(), VertexId{0});
    std::vector<ColorId> colors;
    do {
      ++out.nodes_expanded;
      if (colorable(t, order, true, colors)) {
        out.status = OracleStatus::Found;
        out.cycle = RainbowCycle{order, colors};
        break;
      }
    } while (std::next_permutation(order.begin() + 1, order.end()));
  }
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace rainbow
