#pragma once

// Program states and finite input domains for exhaustive enumeration.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gclrip/rational.hpp"

namespace gclrip {

struct State {
  std::map<std::string, Rational> scalars;
  std::map<std::string, std::vector<Integer>> arrays;

  bool binds(const std::string& name) const {
    return scalars.count(name) != 0 || arrays.count(name) != 0;
  }
  /// The state with only the named scalars and arrays kept.
  State restricted(const std::set<std::string>& names) const;

  friend bool operator==(const State& a, const State& b) {
    return a.scalars == b.scalars && a.arrays == b.arrays;
  }
  friend bool operator!=(const State& a, const State& b) { return !(a == b); }
  friend bool operator<(const State& a, const State& b) {
    if (a.scalars != b.scalars) return a.scalars < b.scalars;
    return a.arrays < b.arrays;
  }
};

/// "{a: 1, b: [5, 0]}" with names in sorted order.
std::string to_string(const State& s);

struct ScalarRange {
  Integer lo;
  Integer hi;
};

struct ArraySpec {
  std::size_t len_lo = 0;
  std::size_t len_hi = 0;
  Integer elem_lo;
  Integer elem_hi;
};

inline constexpr std::uint64_t default_state_cap = 10'000'000;

struct DomainSpec {
  std::map<std::string, ScalarRange> scalars;
  std::map<std::string, ArraySpec> arrays;

  /// Number of states; throws DomainError on an empty or inverted range.
  Integer size() const;
  bool covers(const std::string& name) const {
    return scalars.count(name) != 0 || arrays.count(name) != 0;
  }
  DomainSpec restricted(const std::set<std::string>& names) const;
};

std::string to_string(const DomainSpec& d);

/// Parses "a=-3..3,b=0..5" into scalar ranges of `into`.
void parse_scalar_ranges(std::string_view text, DomainSpec& into);
/// Parses "b=len:1..2,elem:0..5" (several separated by ';') into array specs.
void parse_array_specs(std::string_view text, DomainSpec& into);
DomainSpec parse_domain(std::string_view scalars, std::string_view arrays = {});

/// Visits every state in deterministic order: variables sorted by name, the
/// last varying fastest; array lengths ascend, then elements
/// lexicographically. Throws DomainTooLarge before visiting anything when
/// the domain exceeds `cap`.
void for_each_state(const DomainSpec& domain, std::uint64_t cap,
                    const std::function<void(const State&)>& visit);

std::vector<State> enumerate(const DomainSpec& domain,
                             std::uint64_t cap = default_state_cap);

}  // namespace gclrip
