#include "rainbow/matching.hpp"

#include <algorithm>

namespace rainbow {

BipartiteMatcher::BipartiteMatcher(std::size_t right_count)
    : right_match_(right_count, npos), seen_right_(right_count, 0) {}

std::size_t BipartiteMatcher::add_left(ColorSet adj) {
  if (adj.size() != right_count()) throw InvalidArgument("BipartiteMatcher: adjacency has the wrong size");
  adj_.push_back(std::move(adj));
  left_match_.push_back(npos);
  seen_left_.push_back(0);
  return adj_.size() - 1;
}

void BipartiteMatcher::pop_left() {
  const std::size_t l = adj_.size() - 1;
  if (left_match_[l] != npos) {
    right_match_[left_match_[l]] = npos;
    --matched_;
  }
  adj_.pop_back();
  left_match_.pop_back();
  seen_left_.pop_back();
}

void BipartiteMatcher::next_stamp() {
  if (++stamp_ == 0) {
    std::fill(seen_right_.begin(), seen_right_.end(), 0);
    std::fill(seen_left_.begin(), seen_left_.end(), 0);
    stamp_ = 1;
  }
}

bool BipartiteMatcher::dfs_left(std::size_t l) {
  const ColorSet& a = adj_[l];
  for (auto r = a.find_first(); r != ColorSet::npos; r = a.find_next(r)) {
    if (right_match_[r] == npos) {
      seen_right_[r] = stamp_;
      left_match_[l] = r;
      right_match_[r] = l;
      return true;
    }
  }
  for (auto r = a.find_first(); r != ColorSet::npos; r = a.find_next(r)) {
    if (seen_right_[r] == stamp_) continue;
    seen_right_[r] = stamp_;
    if (right_match_[r] == npos || dfs_left(right_match_[r])) {
      left_match_[l] = r;
      right_match_[r] = l;
      return true;
    }
  }
  return false;
}

bool BipartiteMatcher::dfs_right(std::size_t r) {
  for (std::size_t l = 0; l < adj_.size(); ++l) {
    if (left_match_[l] == npos && adj_[l][r]) {
      seen_left_[l] = stamp_;
      left_match_[l] = r;
      right_match_[r] = l;
      return true;
    }
  }
  for (std::size_t l = 0; l < adj_.size(); ++l) {
    if (seen_left_[l] == stamp_ || !adj_[l][r]) continue;
    seen_left_[l] = stamp_;
    if (left_match_[l] == npos || dfs_right(left_match_[l])) {
      left_match_[l] = r;
      right_match_[r] = l;
      return true;
    }
  }
  return false;
}

bool BipartiteMatcher::augment_left(std::size_t l) {
  if (left_match_[l] != npos) return true;
  next_stamp();
  if (!dfs_left(l)) return false;
  ++matched_;
  return true;
}

bool BipartiteMatcher::augment_right(std::size_t r) {
  if (right_match_[r] != npos) return true;
  next_stamp();
  if (!dfs_right(r)) return false;
  ++matched_;
  return true;
}

bool BipartiteMatcher::saturate_left() {
  for (std::size_t l = 0; l < adj_.size(); ++l)
    if (!augment_left(l)) return false;
  return true;
}

std::size_t BipartiteMatcher::maximize() {
  for (std::size_t l = 0; l < adj_.size(); ++l) augment_left(l);
  return matched_;
}

std::optional<std::vector<std::size_t>> saturating_matching(const std::vector<ColorSet>& adj, std::size_t right_count,
                                                            const ColorSet* forced) {
  BipartiteMatcher m(right_count);
  for (const auto& a : adj) m.add_left(a);
  if (forced) {
    for (auto r = forced->find_first(); r != ColorSet::npos; r = forced->find_next(r))
      if (!m.augment_right(r)) return std::nullopt;
  }
  if (!m.saturate_left()) return std::nullopt;
  std::vector<std::size_t> out(adj.size());
  for (std::size_t l = 0; l < adj.size(); ++l) out[l] = m.left_match(l);
  return out;
}

}  // namespace rainbow
