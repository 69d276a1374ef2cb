#include "rainbow/oracle.hpp"

#include <array>
#include <bit>
#include <chrono>

namespace rainbow {

const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Found: return "Found";
    case OracleStatus::NotExists: return "NotExists";
    case OracleStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <std::size_t W>
struct Mask {
  std::array<std::uint64_t, W> w{};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
};

enum class Mode { Path, Cycle, Reach };

template <std::size_t W>
class Search {
 public:
  Search(const TournamentCollection& t, const SearchBudget& budget, const OracleOptions& options)
      : n_(t.n()), m_(t.m()), budget_(budget), options_(options), colors_(n_ * n_),
        right_match_(m_, -1), seen_(m_, 0), start_(Clock::now()) {
    for (VertexId u = 0; u < n_; ++u)
      for (VertexId v = 0; v < n_; ++v)
        if (u != v)
          for (ColorId c = 0; c < m_; ++c)
            if (t.has_arc(c, u, v)) colors_[u * n_ + v].set(c);
    if (options_.forced_colors) {
      for (auto c = options_.forced_colors->find_first(); c != ColorSet::npos; c = options_.forced_colors->find_next(c))
        if (c < m_) forced_.push_back(static_cast<int>(c));
    }
  }

  OracleOutcome run_hamilton(Mode mode, std::optional<Endpoints> endpoints) {
    mode_ = mode;
    if (endpoints) end_ = endpoints->second;
    const std::size_t arcs_needed = mode == Mode::Cycle ? n_ : n_ - 1;
    const bool hopeless = arcs_needed > m_ || forced_.size() > arcs_needed || (mode == Mode::Cycle && n_ < 3);
    if (!hopeless) {
      if (mode == Mode::Cycle) {
        root(0);
      } else if (endpoints) {
        root(endpoints->first);
      } else {
        for (VertexId s = 0; s < n_ && !stopped(); ++s) root(s);
      }
    }
    return finish();
  }

  OracleOutcome run_reach(VertexId x, VertexId y) {
    mode_ = Mode::Reach;
    target_ = y;
    path_.push_back(x);
    visited_ = std::uint64_t{1} << x;
    reach(x);
    return finish();
  }

 private:
  const Mask<W>& colors(VertexId u, VertexId v) const { return colors_[u * n_ + v]; }

  bool stopped() const { return found_stop_ || budget_hit_; }

  bool tick() {
    ++nodes_;
    if (budget_.max_nodes && nodes_ > budget_.max_nodes) budget_hit_ = true;
    if (budget_.time_limit_secs && (nodes_ & 1023) == 0 &&
        millis_since(start_) > *budget_.time_limit_secs * 1000.0)
      budget_hit_ = true;
    return !budget_hit_;
  }

  bool dfs_left(int l) {
    const Mask<W>& a = left_adj_[l];
    for (std::size_t k = 0; k < W; ++k) {
      for (std::uint64_t bits = a.w[k]; bits; bits &= bits - 1) {
        const int r = static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        if (seen_[r] == stamp_) continue;
        seen_[r] = stamp_;
        if (right_match_[r] < 0 || dfs_left(right_match_[r])) {
          left_match_[l] = r;
          right_match_[r] = l;
          return true;
        }
      }
    }
    return false;
  }

  bool dfs_right(int r) {
    for (int l = 0; l < static_cast<int>(left_adj_.size()); ++l) {
      if (seen_left_[l] == stamp_ || !left_adj_[l].test(static_cast<std::size_t>(r))) continue;
      seen_left_[l] = stamp_;
      if (left_match_[l] < 0 || dfs_right(left_match_[l])) {
        left_match_[l] = r;
        right_match_[r] = l;
        return true;
      }
    }
    return false;
  }

  void bump() {
    if (++stamp_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      std::fill(seen_left_.begin(), seen_left_.end(), 0);
      stamp_ = 1;
    }
  }

  // Adds the arc u -> v as a matching slot. With pruning on, the slot must be
  // matched immediately or it is withdrawn.
  bool push_arc(VertexId u, VertexId v, bool prune) {
    left_adj_.push_back(colors(u, v));
    left_match_.push_back(-1);
    seen_left_.push_back(0);
    if (!prune) return true;
    bump();
    if (dfs_left(static_cast<int>(left_adj_.size()) - 1)) return true;
    pop_arc();
    return false;
  }

  void pop_arc() {
    if (left_match_.back() >= 0) right_match_[left_match_.back()] = -1;
    left_adj_.pop_back();
    left_match_.pop_back();
    seen_left_.pop_back();
  }

  // Full matching test for the current slots, forced colors first. The
  // incremental state is restored afterwards.
  bool leaf_feasible() {
    if (options_.matching_prune && forced_.empty()) return true;
    const auto saved_left = left_match_;
    const auto saved_right = right_match_;
    std::fill(left_match_.begin(), left_match_.end(), -1);
    std::fill(right_match_.begin(), right_match_.end(), -1);
    bool ok = true;
    for (int r : forced_) {
      bump();
      if (!dfs_right(r)) {
        ok = false;
        break;
      }
    }
    for (int l = 0; ok && l < static_cast<int>(left_adj_.size()); ++l) {
      if (left_match_[l] >= 0) continue;
      bump();
      ok = dfs_left(l);
    }
    if (ok) record_witness();
    left_match_ = saved_left;
    right_match_ = saved_right;
    return ok;
  }

  void record_witness() {
    if (witness_taken_) return;
    witness_taken_ = true;
    std::vector<ColorId> cs;
    for (int c : left_match_) cs.push_back(static_cast<ColorId>(c));
    if (mode_ == Mode::Cycle)
      cycle_ = RainbowCycle{path_, cs};
    else
      path_out_ = RainbowPath{path_, cs};
  }

  void on_success() {
    if (options_.count_all) {
      ++count_;
    } else {
      found_stop_ = true;
    }
  }

  void root(VertexId s) {
    path_.assign(1, s);
    visited_ = std::uint64_t{1} << s;
    if (n_ == 1) {
      if (mode_ == Mode::Path && forced_.empty()) {
        record_witness();
        on_success();
      }
      return;
    }
    extend(s);
  }

  void leaf() {
    const VertexId last = path_.back();
    if (mode_ == Mode::Cycle) {
      if (!colors(last, 0).any() || !tick()) return;
      if (!push_arc(last, 0, options_.matching_prune)) return;
      if (leaf_feasible()) {
        record_witness();
        on_success();
      }
      pop_arc();
      return;
    }
    if (leaf_feasible()) {
      record_witness();
      on_success();
    }
  }

  void extend(VertexId v) {
    if (path_.size() == n_) {
      leaf();
      return;
    }
    const bool last_step = path_.size() + 1 == n_;
    for (VertexId w = 0; w < n_; ++w) {
      if ((visited_ >> w) & 1) continue;
      if (end_) {
        if (last_step && w != *end_) continue;
        if (!last_step && w == *end_) continue;
      }
      if (!colors(v, w).any()) continue;
      if (!tick()) return;
      if (!push_arc(v, w, options_.matching_prune)) continue;
      visited_ |= std::uint64_t{1} << w;
      path_.push_back(w);
      extend(w);
      path_.pop_back();
      visited_ &= ~(std::uint64_t{1} << w);
      pop_arc();
      if (stopped()) return;
    }
  }

  void reach(VertexId v) {
    for (VertexId w = 0; w < n_; ++w) {
      if ((visited_ >> w) & 1) continue;
      if (!colors(v, w).any()) continue;
      if (!tick()) return;
      if (!push_arc(v, w, true)) continue;
      path_.push_back(w);
      if (w == target_) {
        record_witness();
        found_stop_ = true;
      } else {
        visited_ |= std::uint64_t{1} << w;
        reach(w);
        visited_ &= ~(std::uint64_t{1} << w);
      }
      path_.pop_back();
      pop_arc();
      if (stopped()) return;
    }
  }

  OracleOutcome finish() {
    OracleOutcome out;
    out.nodes_expanded = nodes_;
    if (options_.count_all) {
      out.count = count_;
      if (budget_hit_)
        out.status = OracleStatus::BudgetExhausted;
      else
        out.status = count_ > 0 ? OracleStatus::Found : OracleStatus::NotExists;
    } else if (found_stop_) {
      out.status = OracleStatus::Found;
    } else {
      out.status = budget_hit_ ? OracleStatus::BudgetExhausted : OracleStatus::NotExists;
    }
    if (out.status == OracleStatus::Found) {
      out.path = path_out_;
      out.cycle = cycle_;
    }
    out.millis = millis_since(start_);
    return out;
  }

  std::size_t n_, m_;
  SearchBudget budget_;
  OracleOptions options_;
  std::vector<Mask<W>> colors_;
  std::vector<int> forced_;

  std::vector<Mask<W>> left_adj_;
  std::vector<int> left_match_;
  std::vector<int> right_match_;
  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> seen_left_;
  std::uint32_t stamp_ = 0;

  Mode mode_ = Mode::Path;
  std::optional<VertexId> end_;
  VertexId target_ = 0;
  std::vector<VertexId> path_;
  std::uint64_t visited_ = 0;

  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  std::uint64_t count_ = 0;
  bool budget_hit_ = false;
  bool found_stop_ = false;
  bool witness_taken_ = false;
  std::optional<RainbowPath> path_out_;
  std::optional<RainbowCycle> cycle_;
};

void check_size(const TournamentCollection& t, const OracleOptions& options) {
  if (t.n() == 0) throw InvalidArgument("oracle needs at least one vertex");
  if (t.n() > 64) throw InvalidArgument("oracle supports at most 64 vertices");
  if (t.m() > 512) throw InvalidArgument("oracle supports at most 512 colors");
  if (options.count_all && t.n() > 7) throw InvalidArgument("count_all is limited to n <= 7");
}

template <class F>
OracleOutcome dispatch(const TournamentCollection& t, F&& f) {
  if (t.m() <= 64) return f(std::integral_constant<std::size_t, 1>{});
  return f(std::integral_constant<std::size_t, 8>{});
}

}  // namespace

OracleOutcome exact_transversal_ham_path(const TournamentCollection& t, std::optional<Endpoints> endpoints,
                                         const SearchBudget& budget, const OracleOptions& options) {
  check_size(t, options);
  if (endpoints) {
    const auto [u, v] = *endpoints;
    if (u >= t.n() || v >= t.n() || (u == v && t.n() > 1)) throw InvalidArgument("invalid path endpoints");
  }
  return dispatch(t, [&](auto w) {
    Search<decltype(w)::value> s(t, budget, options);
    return s.run_hamilton(Mode::Path, endpoints);
  });
}

OracleOutcome exact_transversal_ham_cycle(const TournamentCollection& t, const SearchBudget& budget,
                                          const OracleOptions& options) {
  check_size(t, options);
  return dispatch(t, [&](auto w) {
    Search<decltype(w)::value> s(t, budget, options);
    return s.run_hamilton(Mode::Cycle, std::nullopt);
  });
}

OracleOutcome exact_rainbow_path(const TournamentCollection& t, VertexId x, VertexId y, const SearchBudget& budget) {
  check_size(t, {});
  if (x == y || x >= t.n() || y >= t.n()) throw InvalidArgument("exact_rainbow_path needs distinct vertices below n");
  return dispatch(t, [&](auto w) {
    Search<decltype(w)::value> s(t, budget, {});
    return s.run_reach(x, y);
  });
}

std::optional<bool> is_strongly_rainbow_connected(const TournamentCollection& t, const SearchBudget& budget) {
  for (VertexId x = 0; x < t.n(); ++x) {
    for (VertexId y = 0; y < t.n(); ++y) {
      if (x == y) continue;
      const auto out = exact_rainbow_path(t, x, y, budget);
      if (out.status == OracleStatus::BudgetExhausted) return std::nullopt;
      if (out.status == OracleStatus::NotExists) return false;
    }
  }
  return true;
}

}  // namespace rainbow
