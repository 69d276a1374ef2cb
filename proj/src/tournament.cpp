#include "rainbow/tournament.hpp"

#include <algorithm>

namespace rainbow {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::ExceptionalConfiguration: return "exceptional-configuration";
    case FailureKind::AbsorberConstructionFailed: return "absorber-construction-failed";
    case FailureKind::AbsorptionFailed: return "absorption-failed";
    case FailureKind::NoProgress: return "no-progress";
    case FailureKind::StageFailed: return "stage-failed";
  }
  return "unknown";
}

Tournament::Tournament(std::size_t n) : n_(n), bits_(n < 2 ? 0 : n * (n - 1) / 2) { bits_.set(); }

Tournament Tournament::from_string(std::string_view bits, std::size_t n) {
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (bits.size() != pairs) {
    throw InvalidArgument("tournament string has length " + std::to_string(bits.size()) + ", expected " +
                          std::to_string(pairs));
  }
  Tournament t(n);
  for (std::size_t p = 0; p < pairs; ++p) {
    if (bits[p] != '0' && bits[p] != '1') throw InvalidArgument("tournament string must be over {0,1}");
    t.bits_[p] = bits[p] == '1';
  }
  return t;
}

void Tournament::set_arc(VertexId u, VertexId v) {
  if (u == v || u >= n_ || v >= n_) throw InvalidArgument("set_arc: invalid vertex pair");
  if (u < v)
    bits_[pair_index(n_, u, v)] = true;
  else
    bits_[pair_index(n_, v, u)] = false;
}

std::size_t Tournament::out_degree(VertexId v) const {
  std::size_t d = 0;
  for (VertexId u = 0; u < n_; ++u) d += has_arc(v, u);
  return d;
}

std::vector<std::size_t> Tournament::out_degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) ++deg[bits_[pair_index(n_, i, j)] ? i : j];
  return deg;
}

std::vector<VertexId> Tournament::out_neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n_; ++u)
    if (has_arc(v, u)) out.push_back(u);
  return out;
}

std::vector<VertexId> Tournament::in_neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n_; ++u)
    if (has_arc(u, v)) out.push_back(u);
  return out;
}

Tournament Tournament::induced(std::span<const VertexId> vertices) const {
  const std::size_t k = vertices.size();
  Tournament t(k);
  if (std::is_sorted(vertices.begin(), vertices.end()) &&
      std::adjacent_find(vertices.begin(), vertices.end()) == vertices.end()) {
    // Every kept pair keeps its orientation, so bits copy over directly.
    std::size_t p = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t row = pair_index(n_, vertices[a], vertices[a] + 1) - 1;
      for (std::size_t b = a + 1; b < k; ++b) t.bits_[p++] = bits_[row + vertices[b] - vertices[a]];
    }
    return t;
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) t.bits_[pair_index(k, a, b)] = has_arc(vertices[a], vertices[b]);
  return t;
}

Tournament Tournament::reversed() const {
  Tournament t = *this;
  t.bits_.flip();
  return t;
}

std::string Tournament::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t p = 0; p < bits_.size(); ++p)
    if (bits_[p]) s[p] = '1';
  return s;
}

bool is_strongly_connected(const Tournament& t) {
  const std::size_t n = t.n();
  if (n <= 1) return true;
  // A tournament is strong iff every vertex is reachable from 0 and 0 is
  // reachable from every vertex.
  auto reach_all = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v = 0; v < n; ++v) {
        if (seen[v]) continue;
        if (forward ? t.has_arc(u, v) : t.has_arc(v, u)) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach_all(true) && reach_all(false);
}

bool dominates(const Tournament& t, std::span<const VertexId> from, std::span<const VertexId> to) {
  return std::all_of(from.begin(), from.end(), [&](VertexId x) {
    return std::all_of(to.begin(), to.end(), [&](VertexId y) { return t.has_arc(x, y); });
  });
}

}  // namespace rainbow
