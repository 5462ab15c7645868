#include "core/circular.hpp"

#include <algorithm>
#include <array>

namespace circw {

std::vector<Word> conjugates(const Word& w) {
  if (w.empty()) return {w};
  std::vector<Word> out;
  out.reserve(w.size());
  for (std::size_t r = 0; r < w.size(); ++r) out.push_back(w.rotated(r));
  return out;
}

std::set<std::string> circular_factors(SymSpan w, std::size_t max_len) {
  const std::size_t n = w.size();
  if (n > 300) fail(Errc::bound, "circular_factors is brute force; |w| <= 300 required");
  std::set<std::string> out;
  if (max_len == 0) return out;
  std::string s;
  for (std::size_t k = 0; k <= n; ++k) {        // v = w[k..l)
    const std::size_t lmax = std::min(n, k + max_len);
    for (std::size_t l = k; l <= lmax; ++l) {
      const std::size_t lv = l - k;
      for (std::size_t i = 0; i <= k; ++i) {    // t = w[i..j), j <= k
        const std::size_t jmax = std::min(k, i + (max_len - lv));
        s.assign(reinterpret_cast<const char*>(w.data()) + k, lv);
        if (lv >= 1) out.insert(s);
        for (std::size_t j = i + 1; j <= jmax; ++j) {
          s.push_back(static_cast<char>(w[j - 1]));
          out.insert(s);
        }
      }
    }
  }
  return out;
}

namespace {

// Shared state for the suffix-anchored scans: run[p] is the length of the
// longest p-periodic suffix of the current prefix.
struct RunTable {
  std::vector<std::uint32_t> run;
  std::size_t pmax;
  RunTable(std::size_t n, std::size_t pcap) : run(std::min(n, pcap) + 2, 0), pmax(pcap) {}

  void advance(SymSpan w, std::size_t n) {  // prefix length n, after appending w[n-1]
    const std::size_t lim = std::min(n - 1, pmax);
    for (std::size_t p = 1; p <= lim; ++p) {
      if (p == n - 1) run[p] = static_cast<std::uint32_t>(p);
      run[p] = (w[n - 1] == w[n - 1 - p]) ? run[p] + 1 : static_cast<std::uint32_t>(p);
    }
  }
};

inline bool beats(std::uint64_t len, std::uint64_t p, const Rational& best) {
  return static_cast<__int128>(len) * best.den() > static_cast<__int128>(best.num()) * p;
}

}  // namespace

CircularCriticalExponent circular_critical_exponent(SymSpan w) {
  const std::size_t n = w.size();
  if (n == 0) fail(Errc::empty_word, "circular critical exponent of empty word");
  if (n > 4000)
    fail(Errc::bound,
         "exact circular critical exponent is cubic; use the threshold check for |w| > 4000");

  // A repeated symbol already yields a circular square; without one every
  // circular factor has pairwise distinct symbols and the maximum is 1.
  {
    std::array<bool, 256> seen{};
    bool repeat = false;
    for (Symbol s : w) {
      if (seen[s]) { repeat = true; break; }
      seen[s] = true;
    }
    if (!repeat) return {Rational::integer(1), RepetitionWitness::plain(0, 1, 1)};
  }

  Rational best = Rational::integer(1);
  RepetitionWitness bw = RepetitionWitness::plain(0, 1, 1);
  RunTable rt(n, n);
  const auto& run = rt.run;

  for (std::size_t np = 2; np <= n; ++np) {
    rt.advance(w, np);

    // Ordinary repetitions ending at the last position.
    for (std::size_t p = 1; p < np; ++p) {
      if (beats(run[p], p, best)) {
        best = Rational(static_cast<std::int64_t>(run[p]), static_cast<std::int64_t>(p));
        bw = RepetitionWitness::plain(np - run[p], np, p);
      }
    }

    // v = suffix of length >= p, t an earlier factor continuing v's period:
    // t must be a prefix of the cyclic continuation C_p, C_p[x] = w[np-p+(x%p)].
    for (std::size_t p = 1; p + 1 < np; ++p) {
      if (!beats(np, p, best)) break;  // even |s| = np cannot beat best
      const Symbol c0 = w[np - p];
      const std::size_t Mp = run[p];
      for (std::size_t i = 0; i + p < np; ++i) {
        if (w[i] != c0) continue;
        if (!beats(std::min<std::size_t>(np - i, Mp + (np - p - i)), p, best)) continue;
        std::size_t x = 0;
        while (i + x < np - p && w[i + x] == w[np - p + (x % p)]) ++x;
        if (x == 0) continue;
        const std::size_t score = std::min(np - i, Mp + x);
        if (beats(score, p, best)) {
          best = Rational(static_cast<std::int64_t>(score), static_cast<std::int64_t>(p));
          const std::size_t lv = std::min(np - (i + x), Mp);
          bw = RepetitionWitness::circular(i, i + x, np - lv, np, p);
        }
      }
    }

    // Period longer than the suffix part: s = (v c)^e with e >= 2 forces the
    // suffix v to reoccur ending at some e' <= np - |v|. Exponents below 2
    // cannot arise here and cannot win (best is already >= 2 unless the word
    // has all-distinct symbols, handled above).
    for (std::size_t ep = 2; ep + 1 <= np; ++ep) {
      // longest common suffix of w[0..ep) and w[0..np), capped
      const std::size_t cap = std::min(ep, np - ep);
      std::size_t cs = 0;
      while (cs < cap && w[ep - 1 - cs] == w[np - 1 - cs]) ++cs;
      for (std::size_t lv = 1; lv <= cs; ++lv) {
        const std::size_t m = ep - lv;
        const std::size_t k = np - lv;
        for (std::size_t i = m; i-- > 0;) {
          const std::size_t p = lv + (m - i);
          if (!beats(lv + (k - i), p, best)) break;  // ratio only shrinks as i decreases
          std::size_t x = m + lv;
          while (x < k && w[x] == w[x - p]) ++x;
          const std::size_t len = lv + (x - i);
          if (beats(len, p, best)) {
            best = Rational(static_cast<std::int64_t>(len), static_cast<std::int64_t>(p));
            bw = RepetitionWitness::circular(i, x, k, np, p);
          }
        }
      }
    }
  }
  return {best, bw};
}

namespace {

// Naive fallback for thresholds below 2, where the regime scan is incomplete.
std::optional<RepetitionWitness> naive_circular_violation(SymSpan w, const PowerThreshold& th,
                                                          std::size_t max_span) {
  const std::size_t n = w.size();
  if (n > 300) fail(Errc::bound, "circular thresholds below 2 are checked naively; |w| <= 300");
  std::vector<Symbol> s;
  for (std::size_t l = 1; l <= n; ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      for (std::size_t i = 0; i + (l == k ? 1 : 0) <= k; ++i) {
        if (max_span && l - i > max_span) continue;
        for (std::size_t j = i; j <= k; ++j) {
          if (j == i && l == k) continue;  // empty s
          s.clear();
          s.insert(s.end(), w.begin() + k, w.begin() + l);
          s.insert(s.end(), w.begin() + i, w.begin() + j);
          if (s.empty()) continue;
          const std::size_t p = shortest_period(SymSpan(s));
          if (th.violated_by(s.size(), p))
            return RepetitionWitness::circular(i, j, k, l, p);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RepetitionWitness> find_circular_violation(SymSpan w, const PowerThreshold& th,
                                                         std::size_t max_span) {
  const std::size_t n = w.size();
  if (n == 0) return std::nullopt;
  if (th.value < Rational::integer(2)) return naive_circular_violation(w, th, max_span);

  const std::int64_t a = th.value.num(), b = th.value.den();
  // Largest |t| an already-clean prefix can contribute for period p: a longer
  // t would itself have been an ordinary violation at an earlier position.
  auto tmax = [&](std::size_t p) -> std::size_t {
    __int128 ap = static_cast<__int128>(a) * p;
    std::size_t lim = static_cast<std::size_t>((ap - (th.strict ? 0 : 1)) / b);
    return lim;
  };
  auto violates = [&](std::uint64_t len, std::uint64_t p) { return th.violated_by(len, p); };

  // A witness within a span window has |s| <= max_span, bounding its period.
  const std::size_t pmax =
      max_span ? static_cast<std::size_t>((static_cast<__int128>(max_span) * b) / a) + 1 : n;
  RunTable rtab(n, pmax);
  const auto& run = rtab.run;
  // sq_ends[p]: end positions of squares of period p seen so far. Without
  // one, a clean continuation t holds at most 2p-1 symbols; with them, long
  // continuations must start exactly a square-length before a recorded end.
  std::vector<std::vector<std::uint32_t>> sq_ends(rtab.run.size());

  for (std::size_t np = 1; np <= n; ++np) {
    rtab.advance(w, np);
    const std::size_t pcap = std::min(
        pmax, static_cast<std::size_t>((static_cast<__int128>(np) * b) / a) + 1);
    for (std::size_t p = 1; p <= std::min(np - 1, rtab.pmax); ++p)
      if (run[p] >= 2 * p) sq_ends[p].push_back(static_cast<std::uint32_t>(np));

    // Ordinary repetitions ending here (p = np allowed: exponent 1 thresholds).
    for (std::size_t p = 1; p <= std::min(np, pcap); ++p) {
      const std::size_t len = (p == np) ? np : run[p];
      if (len > (max_span ? max_span : len)) continue;
      if (violates(len, p)) {
        std::size_t l2 = len;
        while (l2 > p && violates(l2 - 1, p)) --l2;
        if (!max_span || l2 <= max_span) return RepetitionWitness::plain(np - l2, np, p);
      }
      if (max_span && run[p] > max_span && violates(max_span, p))
        return RepetitionWitness::plain(np - max_span, np, p);
    }

    // Suffix-anchored circular candidates, period within the suffix part.
    for (std::size_t p = 1; p + 1 < np && p <= pcap; ++p) {
      const std::size_t Mp = run[p];
      std::size_t tm = tmax(p);
      if (sq_ends[p].empty()) tm = std::min(tm, 2 * p - 1);
      if (!violates(Mp + std::min(tm, np - p > 0 ? np - p : 0), p)) continue;
      const std::size_t imin = (max_span && np > max_span) ? np - max_span : 0;
      // shortest t that can still violate, given the suffix run
      const __int128 need = static_cast<__int128>(a) * p;
      std::size_t score_need = static_cast<std::size_t>(
          th.strict ? need / b + 1 : (need + b - 1) / b);
      const std::size_t x_need = score_need > Mp ? score_need - Mp : 1;

      auto try_start = [&](std::size_t i) -> std::optional<RepetitionWitness> {
        if (!violates(std::min(np - i, Mp + std::min(tm, np - p - i)), p)) return std::nullopt;
        std::size_t x = 0;
        const std::size_t xcap = std::min(tm, np - p - i);
        while (x < xcap && w[i + x] == w[np - p + (x % p)]) ++x;
        if (x == 0) return std::nullopt;
        const std::size_t score = std::min(np - i, Mp + x);
        if (violates(score, p)) {
          std::size_t lv = std::min(np - (i + x), Mp);
          while (lv > p && violates(lv - 1 + x, p)) --lv;
          return RepetitionWitness::circular(i, i + x, np - lv, np, p);
        }
        return std::nullopt;
      };

      if (x_need >= 2 * p) {
        // t needs a leading square of period p; only recorded square ends
        // can start such a continuation
        for (std::uint32_t e : sq_ends[p]) {
          if (e < 2 * p + imin) continue;
          const std::size_t i = e - 2 * p;
          if (i + p >= np || e > np - p) continue;
          if (auto v = try_start(i)) return v;
        }
      } else {
        const Symbol c0 = w[np - p];
        for (std::size_t i = imin; i + p < np; ++i) {
          if (w[i] != c0) continue;
          if (auto v = try_start(i)) return v;
        }
      }
    }

    // Period exceeding the suffix part (s = (v c)^e, e >= 2): v reoccurs.
    // All positions of a windowed witness sit within max_span of the end.
    const std::size_t ilow = (max_span && np > max_span) ? np - max_span : 0;
    if (a >= 3 * b) {
      // At exponent 3 and above the second and third period copies are
      // adjacent in the built part; only recorded squares can seed one.
      for (std::size_t p = 2; p <= pcap; ++p) {
        const auto& ends = sq_ends[p];
        for (std::size_t idx = ends.size(); idx-- > 0;) {
          const std::size_t e = ends[idx];
          if (e < ilow + 2 * p + 1) break;  // too far left for the span
          if (e + 1 > np) continue;         // needs room for a nonempty suffix
          const std::size_t m = e - 2 * p;
          const std::size_t lv_max = std::min<std::size_t>(p - 1, np - e);
          const std::size_t lv_min = (p > m) ? p - m : 1;
          for (std::size_t lv = lv_min; lv <= lv_max; ++lv) {
            const std::size_t k = np - lv;
            const std::size_t i = m - (p - lv);
            if (i < ilow) continue;
            if (!violates(lv + (k - i), p)) continue;
            bool vocc = true;
            for (std::size_t r = 0; r < lv && vocc; ++r) vocc = w[m + r] == w[np - lv + r];
            if (!vocc) continue;
            bool crep = true;
            for (std::size_t r = 0; i + r < m && crep; ++r) crep = w[i + r] == w[m + lv + r];
            if (!crep) continue;
            std::size_t x = e;
            while (x < k && w[x] == w[x - p]) ++x;
            if (violates(lv + (x - i), p))
              return RepetitionWitness::circular(i, x, k, np, p);
          }
        }
      }
    } else {
      const std::size_t ep_lo = (max_span && np > max_span + 2) ? np - max_span : 2;
      for (std::size_t ep = ep_lo; ep + 1 <= np; ++ep) {
        const std::size_t cap = std::min(ep, np - ep);
        std::size_t cs = 0;
        while (cs < cap && w[ep - 1 - cs] == w[np - 1 - cs]) ++cs;
        for (std::size_t lv = 1; lv <= cs; ++lv) {
          const std::size_t m = ep - lv;
          const std::size_t k = np - lv;
          for (std::size_t i = m; i-- > ilow;) {
            const std::size_t p = lv + (m - i);
            if (!violates(lv + (k - i), p)) break;
            std::size_t x = m + lv;
            while (x < k && w[x] == w[x - p]) ++x;
            if (violates(lv + (x - i), p))
              return RepetitionWitness::circular(i, x, k, np, p);
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

void insert_factors_of(SymSpan r, std::set<std::string>* out) {
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j <= r.size(); ++j)
      out->insert(key_of(r.subspan(i, j - i)));
}

}  // namespace

bool verify_conjugate_characterization(SymSpan w, std::size_t bound) {
  if (w.size() > bound) fail(Errc::bound, "conjugate characterization check exceeds brute-force bound");
  const std::size_t n = w.size();
  std::set<std::string> a, b, c, d;
  std::vector<Symbol> rot;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t e = s + 1; e <= n; ++e) {
      const std::size_t len = e - s;
      for (std::size_t r = 0; r < len; ++r) {
        rot.clear();
        rot.insert(rot.end(), w.begin() + s + r, w.begin() + e);
        rot.insert(rot.end(), w.begin() + s, w.begin() + s + r);
        SymSpan rv(rot);
        insert_factors_of(rv, &a);
        for (std::size_t l = 1; l <= len; ++l) {
          b.insert(key_of(rv.subspan(0, l)));
          c.insert(key_of(rv.subspan(len - l, l)));
        }
      }
    }
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      for (std::size_t k = j; k <= n; ++k)
        for (std::size_t l = k; l <= n; ++l) {
          if ((j - i) + (l - k) == 0) continue;
          std::string s = key_of(w.subspan(k, l - k));
          s += key_of(w.subspan(i, j - i));
          d.insert(s);
        }
  return a == b && b == c && c == d;
}

}  // namespace circw
