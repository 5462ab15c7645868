// Brute-force oracles, independent of the library's implementation paths.
// Everything here follows the definitions directly, with no shared code
// beyond the Word container.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/rational.hpp"
#include "core/word.hpp"

namespace oracle {

using circw::Rational;
using circw::SymSpan;
using circw::Symbol;

// Smallest period by testing every candidate.
inline std::size_t naive_shortest_period(SymSpan w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < w.size() && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return p;
  }
  return w.size();
}

inline Rational naive_exponent(SymSpan w) {
  return Rational(static_cast<std::int64_t>(w.size()),
                  static_cast<std::int64_t>(naive_shortest_period(w)));
}

inline Rational naive_critical_exponent(SymSpan w) {
  Rational best = Rational::integer(0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      Rational e = naive_exponent(w.subspan(i, j - i));
      if (best < e) best = e;
    }
  return best;
}

// All circular factors s = vt for tuv a factor of w, by definition.
inline std::set<std::vector<Symbol>> naive_circular_factors(SymSpan w, std::size_t max_len) {
  std::set<std::vector<Symbol>> out;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      for (std::size_t k = j; k <= n; ++k)
        for (std::size_t l = k; l <= n; ++l) {
          std::vector<Symbol> s(w.begin() + k, w.begin() + l);
          s.insert(s.end(), w.begin() + i, w.begin() + j);
          if (!s.empty() && s.size() <= max_len) out.insert(std::move(s));
        }
  return out;
}

inline Rational naive_circular_critical_exponent(SymSpan w) {
  Rational best = Rational::integer(0);
  for (const auto& s : naive_circular_factors(w, w.size())) {
    Rational e = naive_exponent(SymSpan(s));
    if (best < e) best = e;
  }
  return best;
}

inline bool naive_is_power_free(SymSpan w, const circw::PowerThreshold& th) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j)
      if (th.violated_by(naive_exponent(w.subspan(i, j - i)))) return false;
  return true;
}

inline bool naive_is_circularly_power_free(SymSpan w, const circw::PowerThreshold& th) {
  for (const auto& s : naive_circular_factors(w, w.size()))
    if (th.violated_by(naive_exponent(SymSpan(s)))) return false;
  return true;
}

inline bool naive_has_short_square(SymSpan w, std::size_t bound) {
  for (std::size_t p = 1; 2 * p < bound && 2 * p <= w.size(); ++p)
    for (std::size_t i = 0; i + 2 * p <= w.size(); ++i) {
      bool eq = true;
      for (std::size_t x = 0; x < p && eq; ++x) eq = w[i + x] == w[i + p + x];
      if (eq) return true;
    }
  return false;
}

}  // namespace oracle
