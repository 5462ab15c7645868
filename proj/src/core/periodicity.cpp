#include "core/periodicity.hpp"

#include <algorithm>

namespace circw {

std::vector<std::int32_t> border_table(SymSpan w) {
  std::vector<std::int32_t> b(w.size() + 1, 0);
  if (w.empty()) return b;
  b[0] = -1;  // sentinel simplifies the loop; callers index b[1..n]
  std::int32_t k = -1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    while (k >= 0 && w[static_cast<std::size_t>(k)] != w[i]) k = b[static_cast<std::size_t>(k)];
    ++k;
    b[i + 1] = k;
  }
  b[0] = 0;
  return b;
}

std::size_t shortest_period(SymSpan w) {
  if (w.empty()) fail(Errc::empty_word, "shortest_period of empty word");
  auto b = border_table(w);
  return w.size() - static_cast<std::size_t>(b[w.size()]);
}

Rational exponent(SymSpan w) {
  if (w.empty()) fail(Errc::empty_word, "exponent of empty word");
  return Rational(static_cast<std::int64_t>(w.size()),
                  static_cast<std::int64_t>(shortest_period(w)));
}

CriticalExponent critical_exponent(SymSpan w) {
  if (w.empty()) fail(Errc::empty_word, "critical exponent of empty word");
  const std::size_t n = w.size();
  Rational best = Rational::integer(0);
  RepetitionWitness bw = RepetitionWitness::plain(0, 1, 1);

  // One failure-function row per start; factor w[i..i+len) has shortest
  // period len - border[len].
  std::vector<std::int32_t> b(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    b[0] = -1;
    std::int32_t k = -1;
    for (std::size_t x = 0; x + i < n; ++x) {
      while (k >= 0 && w[i + static_cast<std::size_t>(k)] != w[i + x]) {
        k = b[static_cast<std::size_t>(k)];
      }
      ++k;
      const std::size_t len = x + 1;
      b[len] = k;
      const std::size_t p = len - static_cast<std::size_t>(k);
      // best < len/p  <=>  best.num * p < len * best.den; prefer the
      // shortest witness on ties
      const __int128 lhs = static_cast<__int128>(best.num()) * p;
      const __int128 rhs = static_cast<__int128>(len) * best.den();
      if (lhs < rhs || (lhs == rhs && len < bw.length())) {
        best = Rational(static_cast<std::int64_t>(len), static_cast<std::int64_t>(p));
        bw = RepetitionWitness::plain(i, i + len, p);
      }
    }
  }
  return {best, bw};
}

std::optional<RepetitionWitness> find_power_violation(SymSpan w, const PowerThreshold& th) {
  const std::size_t n = w.size();
  if (n == 0) return std::nullopt;
  // run[p] = length of the longest p-periodic suffix of the prefix scanned so
  // far; a violating factor must show up as such a suffix at its end position.
  const std::int64_t a = th.value.num(), bden = th.value.den();
  std::size_t pmax = static_cast<std::size_t>(
      std::min<std::int64_t>(static_cast<std::int64_t>(n),
                             (static_cast<std::int64_t>(n) * bden) / std::max<std::int64_t>(a, 1) + 1));
  std::vector<std::uint32_t> run(pmax + 1, 0);
  for (std::size_t e = 1; e <= n; ++e) {
    const std::size_t limit = std::min(e, pmax);
    for (std::size_t p = 1; p <= limit; ++p) {
      if (e <= p) {
        run[p] = static_cast<std::uint32_t>(e);
      } else {
        run[p] = (w[e - 1] == w[e - 1 - p]) ? run[p] + 1 : static_cast<std::uint32_t>(p);
      }
      if (th.violated_by(run[p], p)) {
        // Trim to the shortest violating length for a tight witness.
        std::size_t len = run[p];
        while (len > p && th.violated_by(len - 1, p)) --len;
        return RepetitionWitness::plain(e - len, e, p);
      }
    }
  }
  return std::nullopt;
}

}  // namespace circw
