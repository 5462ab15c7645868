#pragma once

#include <cstddef>
#include <string>

#include "core/rational.hpp"
#include "core/word.hpp"

namespace circw {

// Witness for a repetition found in (or circularly around) a word.
//
// The repeated string is s = v . t where t = w[t_begin..t_end),
// u = w[t_end..u_end) is the gap, and v = w[u_end..v_end). Ordinary
// (non-circular) factors are represented with an empty t (t_begin ==
// t_end == u_end), so s is just the factor w[u_end..v_end).
struct RepetitionWitness {
  std::size_t t_begin = 0, t_end = 0, u_end = 0, v_end = 0;
  std::size_t period = 1;

  static RepetitionWitness plain(std::size_t begin, std::size_t end, std::size_t p) {
    return RepetitionWitness{begin, begin, begin, end, p};
  }
  static RepetitionWitness circular(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                                    std::size_t p) {
    return RepetitionWitness{i, j, k, l, p};
  }

  bool is_circular() const { return t_begin != t_end; }
  std::size_t length() const { return (t_end - t_begin) + (v_end - u_end); }
  Rational exponent() const {
    return Rational(static_cast<std::int64_t>(length()), static_cast<std::int64_t>(period));
  }

  // The repeated string itself, as symbols of w.
  std::vector<Symbol> repetition(SymSpan w) const {
    std::vector<Symbol> s;
    s.reserve(length());
    for (std::size_t x = u_end; x < v_end; ++x) s.push_back(w[x]);
    for (std::size_t x = t_begin; x < t_end; ++x) s.push_back(w[x]);
    return s;
  }

  // Self-check: positions are ordered and in range, and the claimed period
  // really is a period of s. Exponent and length follow by construction.
  bool replay(SymSpan w) const {
    if (!(t_begin <= t_end && t_end <= u_end && u_end <= v_end && v_end <= w.size())) return false;
    std::size_t len = length();
    if (len == 0 || period == 0 || period > len) return false;
    auto s = repetition(w);
    for (std::size_t x = period; x < s.size(); ++x)
      if (s[x] != s[x - period]) return false;
    return true;
  }
};

}  // namespace circw
