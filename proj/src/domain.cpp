#include "gclrip/domain.hpp"

#include <optional>

#include "gclrip/errors.hpp"

namespace gclrip {

State State::restricted(const std::set<std::string>& names) const {
  State out;
  for (const auto& [k, v] : scalars) {
    if (names.count(k)) out.scalars.emplace(k, v);
  }
  for (const auto& [k, v] : arrays) {
    if (names.count(k)) out.arrays.emplace(k, v);
  }
  return out;
}

std::string to_string(const State& s) {
  // Scalars and arrays share one sorted namespace in the rendering.
  std::map<std::string, std::string> parts;
  for (const auto& [k, v] : s.scalars) parts[k] = to_string(v);
  for (const auto& [k, v] : s.arrays) {
    std::string text = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) text += ", ";
      text += v[i].str();
    }
    parts[k] = text + "]";
  }
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : parts) {
    if (!first) out += ", ";
    first = false;
    out += k + ": " + v;
  }
  return out + "}";
}

Integer DomainSpec::size() const {
  Integer total = 1;
  for (const auto& [name, r] : scalars) {
    if (r.lo > r.hi) throw DomainError("empty range for '" + name + "'");
    total *= r.hi - r.lo + 1;
  }
  for (const auto& [name, a] : arrays) {
    if (a.len_lo > a.len_hi || a.elem_lo > a.elem_hi) {
      throw DomainError("empty array spec for '" + name + "'");
    }
    const Integer width = a.elem_hi - a.elem_lo + 1;
    Integer count = 0;
    for (std::size_t len = a.len_lo; len <= a.len_hi; ++len) {
      count += boost::multiprecision::pow(width, static_cast<unsigned>(len));
    }
    total *= count;
  }
  return total;
}

DomainSpec DomainSpec::restricted(const std::set<std::string>& names) const {
  DomainSpec out;
  for (const auto& [k, v] : scalars) {
    if (names.count(k)) out.scalars.emplace(k, v);
  }
  for (const auto& [k, v] : arrays) {
    if (names.count(k)) out.arrays.emplace(k, v);
  }
  return out;
}

std::string to_string(const DomainSpec& d) {
  std::string out;
  for (const auto& [k, r] : d.scalars) {
    if (!out.empty()) out += ",";
    out += k + "=" + r.lo.str() + ".." + r.hi.str();
  }
  for (const auto& [k, a] : d.arrays) {
    if (!out.empty()) out += ",";
    out += k + "=len:" + std::to_string(a.len_lo) + ".." + std::to_string(a.len_hi) +
           ",elem:" + a.elem_lo.str() + ".." + a.elem_hi.str();
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

Integer parse_integer(std::string_view s, std::string_view context) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
    throw DomainError("bad integer in '" + std::string(context) + "'");
  }
  Integer v(std::string{s});
  return negative ? Integer(-v) : v;
}

std::pair<Integer, Integer> parse_range(std::string_view s, std::string_view context) {
  auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    throw DomainError("expected lo..hi in '" + std::string(context) + "'");
  }
  Integer lo = parse_integer(s.substr(0, dots), context);
  Integer hi = parse_integer(s.substr(dots + 2), context);
  if (lo > hi) throw DomainError("empty range in '" + std::string(context) + "'");
  return {lo, hi};
}

std::pair<std::string, std::string_view> split_binding(std::string_view item) {
  auto eq = item.find('=');
  if (eq == std::string_view::npos || trim(item.substr(0, eq)).empty()) {
    throw DomainError("expected name=... in '" + std::string(item) + "'");
  }
  return {std::string(trim(item.substr(0, eq))), trim(item.substr(eq + 1))};
}

}  // namespace

void parse_scalar_ranges(std::string_view text, DomainSpec& into) {
  if (trim(text).empty()) return;
  for (auto item : split(text, ',')) {
    auto [name, range] = split_binding(item);
    auto [lo, hi] = parse_range(range, item);
    into.scalars[name] = ScalarRange{lo, hi};
  }
}

void parse_array_specs(std::string_view text, DomainSpec& into) {
  if (trim(text).empty()) return;
  for (auto item : split(text, ';')) {
    auto [name, rest] = split_binding(item);
    std::optional<std::pair<Integer, Integer>> len;
    std::optional<std::pair<Integer, Integer>> elem;
    for (auto field : split(rest, ',')) {
      auto colon = field.find(':');
      if (colon == std::string_view::npos) {
        throw DomainError("expected len:lo..hi or elem:lo..hi in '" + std::string(item) + "'");
      }
      auto key = trim(field.substr(0, colon));
      auto range = parse_range(field.substr(colon + 1), item);
      if (key == "len") {
        len = range;
      } else if (key == "elem") {
        elem = range;
      } else {
        throw DomainError("unknown array field '" + std::string(key) + "'");
      }
    }
    if (!len || !elem) {
      throw DomainError("array spec needs both len and elem: '" + std::string(item) + "'");
    }
    if (len->first < 0) throw DomainError("negative array length for '" + name + "'");
    into.arrays[name] = ArraySpec{static_cast<std::size_t>(len->first),
                                  static_cast<std::size_t>(len->second), elem->first,
                                  elem->second};
  }
}

DomainSpec parse_domain(std::string_view scalars, std::string_view arrays) {
  DomainSpec d;
  parse_scalar_ranges(scalars, d);
  parse_array_specs(arrays, d);
  return d;
}

namespace {

std::vector<std::vector<Integer>> array_values(const ArraySpec& a) {
  std::vector<std::vector<Integer>> out;
  for (std::size_t len = a.len_lo; len <= a.len_hi; ++len) {
    std::vector<Integer> cur(len, a.elem_lo);
    for (;;) {
      out.push_back(cur);
      std::size_t k = len;
      while (k > 0 && cur[k - 1] == a.elem_hi) {
        cur[k - 1] = a.elem_lo;
        --k;
      }
      if (k == 0) break;
      ++cur[k - 1];
    }
  }
  return out;
}

}  // namespace

void for_each_state(const DomainSpec& domain, std::uint64_t cap,
                    const std::function<void(const State&)>& visit) {
  const Integer size = domain.size();
  if (size > cap) {
    throw DomainTooLarge("domain has " + size.str() + " states, cap is " +
                         std::to_string(cap));
  }
  struct Axis {
    std::string name;
    bool array;
    std::vector<Integer> scalar_values;
    std::vector<std::vector<Integer>> array_values;
    std::size_t count() const { return array ? array_values.size() : scalar_values.size(); }
  };
  // One axis per name, interleaving scalars and arrays by name.
  std::map<std::string, Axis> by_name;
  for (const auto& [name, r] : domain.scalars) {
    Axis axis{name, false, {}, {}};
    for (Integer v = r.lo; v <= r.hi; ++v) axis.scalar_values.push_back(v);
    by_name.emplace(name, std::move(axis));
  }
  for (const auto& [name, a] : domain.arrays) {
    by_name.emplace(name, Axis{name, true, {}, array_values(a)});
  }
  std::vector<Axis> axes;
  for (auto& [_, axis] : by_name) axes.push_back(std::move(axis));

  std::vector<std::size_t> idx(axes.size(), 0);
  State state;
  auto load = [&](std::size_t k) {
    const Axis& a = axes[k];
    if (a.array) {
      state.arrays[a.name] = a.array_values[idx[k]];
    } else {
      state.scalars[a.name] = Rational(a.scalar_values[idx[k]]);
    }
  };
  for (std::size_t k = 0; k < axes.size(); ++k) load(k);
  for (;;) {
    visit(state);
    std::size_t k = axes.size();
    while (k > 0 && idx[k - 1] + 1 == axes[k - 1].count()) {
      idx[k - 1] = 0;
      load(k - 1);
      --k;
    }
    if (k == 0) return;
    ++idx[k - 1];
    load(k - 1);
  }
}

std::vector<State> enumerate(const DomainSpec& domain, std::uint64_t cap) {
  std::vector<State> out;
  for_each_state(domain, cap, [&](const State& s) { out.push_back(s); });
  return out;
}

}  // namespace gclrip
