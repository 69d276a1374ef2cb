#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace rainbow {

using VertexId = std::uint32_t;
using ColorId = std::uint32_t;

/// Dense set of colors (or vertices) indexed from zero.
using ColorSet = boost::dynamic_bitset<std::uint64_t>;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientColors : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FailureKind {
  ExceptionalConfiguration,
  AbsorberConstructionFailed,
  AbsorptionFailed,
  NoProgress,
  StageFailed,
};

const char* to_string(FailureKind kind);

/// A constructive routine could not produce its object. `stage` names the
/// step that gave up so callers can fall back or report it.
class ConstructionFailure : public std::runtime_error {
 public:
  ConstructionFailure(FailureKind kind, std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), kind_(kind), stage_(std::move(stage)) {}

  FailureKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  FailureKind kind_;
  std::string stage_;
};

/// Exact non-negative rational used for density thresholds.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 2;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {}

  /// Smallest integer k with k >= (num/den) * count.
  std::int64_t ceil_times(std::int64_t count) const {
    const std::int64_t p = num * count;
    return p <= 0 ? 0 : (p + den - 1) / den;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// Closest rational with the given denominator; used to parse CLI floats.
  static Rational from_double(double x, std::int64_t den = 1'000'000) {
    auto n = static_cast<std::int64_t>(x * static_cast<double>(den) + 0.5);
    const std::int64_t g = std::gcd(n, den);
    return g == 0 ? Rational{0, 1} : Rational{n / g, den / g};
  }

  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

inline std::vector<std::size_t> members(const boost::dynamic_bitset<std::uint64_t>& set) {
  std::vector<std::size_t> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != boost::dynamic_bitset<std::uint64_t>::npos; i = set.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

}  // namespace rainbow
