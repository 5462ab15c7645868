#include <functional>
#include <random>

#include "core/circular.hpp"
#include "core/periodicity.hpp"
#include "core/word.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace circw;

namespace {

Word W(const std::string& s) { return Word::parse(s); }

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

std::vector<Symbol> random_word(std::mt19937& rng, int k, std::size_t len) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<Symbol> w(len);
  for (auto& c : w) c = static_cast<Symbol>(d(rng));
  return w;
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
  CHECK(R(14, 6) == R(7, 3));
  CHECK(R(7, 3) > R(2));
  CHECK(R(13, 4) < R(7, 2));
  CHECK(R(105, 46).str() == "105/46");
  CHECK(R(4, 2).str() == "2");
  CHECK(Rational::parse("13/4").value() == R(13, 4));
  CHECK(Rational::parse("2").value() == R(2));
  CHECK(!Rational::parse("3.25").has_value());
  CHECK(!Rational::parse("").has_value());
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("-1/2").has_value());
}

TEST_CASE("word parsing maps letters by first appearance") {
  Word w = W("alfalfa");
  CHECK(w.size() == 7);
  CHECK(w.alphabet_size() == 3);
  CHECK(w.symbols() == std::vector<Symbol>{0, 1, 2, 0, 1, 2, 0});
  CHECK(w.render() == "alfalfa");
  CHECK(W("0120120").symbols() == w.symbols());
  CHECK_THROWS_AS(W("a1b"), Error);
  CHECK_THROWS_AS(W("a b"), Error);
  CHECK(W("").empty());
}

TEST_CASE("shortest period and exponent") {
  CHECK(shortest_period(W("alfalfa").span()) == 3);
  CHECK(shortest_period(W("aaaa").span()) == 1);
  CHECK(shortest_period(W("abcab").span()) == 3);
  CHECK(exponent(W("alfalfa").span()) == R(7, 3));
  CHECK(exponent(W("ab").span()) == R(1));
  CHECK(exponent(W("ababa").span()) == R(5, 2));
  CHECK_THROWS_AS(exponent(SymSpan()), Error);
  CHECK_THROWS_AS(shortest_period(SymSpan()), Error);
}

TEST_CASE("shortest period agrees with the naive scan on all short words") {
  for (int k = 1; k <= 3; ++k) {
    std::vector<Symbol> w;
    std::function<void()> rec = [&] {
      if (!w.empty()) CHECK(shortest_period(SymSpan(w)) == oracle::naive_shortest_period(SymSpan(w)));
      if (w.size() == 9) return;
      for (Symbol c = 0; c < k; ++c) {
        w.push_back(c);
        rec();
        w.pop_back();
      }
    };
    rec();
  }
}

TEST_CASE("critical exponent with witness") {
  auto [e1, w1] = critical_exponent(W("ababa").span());
  CHECK(e1 == R(5, 2));
  CHECK(w1.period == 2);
  CHECK(w1.replay(W("ababa").span()));

  CHECK(critical_exponent(W("abc").span()).value == R(1));

  Word dividing = W("dividing");
  auto [e2, w2] = critical_exponent(dividing.span());
  CHECK(e2 == R(3, 2));
  std::string s = dividing.render(w2.u_end, w2.v_end);
  CHECK((s == "idi" || s == "ivi"));
  CHECK(e2 == oracle::naive_critical_exponent(dividing.span()));
}

TEST_CASE("conjugates") {
  auto rot = [](const std::string& s) {
    std::vector<std::string> out;
    for (const auto& x : conjugates(Word::parse(s))) out.push_back(x.render());
    return out;
  };
  CHECK(rot("abc") == std::vector<std::string>{"abc", "bca", "cab"});
  CHECK(rot("aa") == std::vector<std::string>{"aa", "aa"});
  CHECK(rot("dividi") ==
        std::vector<std::string>{"dividi", "ividid", "vididi", "ididiv", "didivi", "idivid"});
  CHECK(conjugates(Word()).size() == 1);
}

TEST_CASE("circular factors") {
  Word aba = W("aba");
  auto fs = circular_factors(aba.span(), 2);
  std::set<std::string> rendered;
  for (const auto& key : fs) {
    std::vector<Symbol> tmp(key.begin(), key.end());
    rendered.insert(aba.render_span(SymSpan(tmp)));
  }
  CHECK(rendered == std::set<std::string>{"a", "b", "aa", "ab", "ba"});

  CHECK(circular_factors(SymSpan(), 5).empty());

  Word dividing = W("dividing");
  auto fs6 = circular_factors(dividing.span(), 6);
  bool has_ididi = false;
  for (const auto& key : fs6) {
    std::vector<Symbol> tmp(key.begin(), key.end());
    if (dividing.render_span(SymSpan(tmp)) == "ididi") has_ididi = true;
  }
  CHECK(has_ididi);

  // matches the definitional enumeration
  auto naive = oracle::naive_circular_factors(dividing.span(), 5);
  auto mine = circular_factors(dividing.span(), 5);
  CHECK(naive.size() == mine.size());
}

TEST_CASE("circular critical exponent on the worked examples") {
  Word dividing = W("dividing");
  auto [e, wit] = circular_critical_exponent(dividing.span());
  CHECK(e == R(5, 2));
  CHECK(wit.replay(dividing.span()));
  auto rep = wit.repetition(dividing.span());
  CHECK(dividing.render_span(SymSpan(rep)) == "ididi");

  CHECK(circular_critical_exponent(W("ab").span()).value == R(1));

  Word aabaa = W("aabaa");
  auto [e2, wit2] = circular_critical_exponent(aabaa.span());
  CHECK(e2 == R(4));
  CHECK(aabaa.render_span(SymSpan(wit2.repetition(aabaa.span()))) == "aaaa");
  CHECK(e2 == oracle::naive_circular_critical_exponent(aabaa.span()));
}

TEST_CASE("circular critical exponent matches the oracle on random words") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    int k = 2 + (trial % 3);
    std::size_t len = 1 + (trial % 14);
    auto w = random_word(rng, k, len);
    auto mine = circular_critical_exponent(SymSpan(w)).value;
    auto theirs = oracle::naive_circular_critical_exponent(SymSpan(w));
    CAPTURE(Word(w, k).render());
    CHECK(mine == theirs);
  }
}

TEST_CASE("power freeness verdicts") {
  PowerThreshold two_plus(R(2), true);
  auto v = find_power_violation(W("ababa").span(), two_plus);
  REQUIRE(v.has_value());
  CHECK(v->exponent() > R(2));
  CHECK(v->replay(W("ababa").span()));

  CHECK(is_power_free(SymSpan(), PowerThreshold(R(1), false)));

  Word w = W("abcacbabcb");
  PowerThreshold th(R(7, 4), true);
  CHECK(is_power_free(w.span(), th));
  CHECK(oracle::naive_is_power_free(w.span(), th));
}

TEST_CASE("circular power freeness on dividing") {
  Word w = W("dividing");
  CHECK(is_circularly_power_free(w.span(), PowerThreshold(R(3), false)));
  CHECK(is_circularly_power_free(w.span(), PowerThreshold(R(5, 2), true)));
  auto v = find_circular_violation(w.span(), PowerThreshold(R(5, 2), false));
  REQUIRE(v.has_value());
  CHECK(v->exponent() >= R(5, 2));
  CHECK(w.render_span(SymSpan(v->repetition(w.span()))) == "ididi");
}

TEST_CASE("threshold scan matches the oracle on random words") {
  std::mt19937 rng(777);
  const std::vector<PowerThreshold> thresholds = {
      PowerThreshold(R(2), false),  PowerThreshold(R(2), true),  PowerThreshold(R(5, 2), false),
      PowerThreshold(R(3), false),  PowerThreshold(R(13, 4), false), PowerThreshold(R(4), true),
      PowerThreshold(R(3, 2), false)};
  for (int trial = 0; trial < 400; ++trial) {
    int k = 2 + (trial % 2);
    std::size_t len = 1 + (trial % 10);
    auto w = random_word(rng, k, len);
    const auto& th = thresholds[trial % thresholds.size()];
    bool mine = is_circularly_power_free(SymSpan(w), th);
    bool theirs = oracle::naive_is_circularly_power_free(SymSpan(w), th);
    CAPTURE(Word(w, k).render());
    CAPTURE(th.str());
    CHECK(mine == theirs);
    bool mine_plain = is_power_free(SymSpan(w), th);
    CHECK(mine_plain == oracle::naive_is_power_free(SymSpan(w), th));
  }
}

TEST_CASE("windowed circular scan only sees spans within the window") {
  // 00100..0100: the two 00 blocks yield a circular 4-power only when the
  // span covers both of them.
  Word w = W("0010000100");
  std::vector<Symbol> v = {0, 0, 1, 0, 0};
  CHECK(!is_circularly_power_free(SymSpan(v), PowerThreshold(R(4), false)));
  CHECK(find_circular_violation(w.span(), PowerThreshold(R(4), false), 5).has_value());
}

TEST_CASE("proposition 2 characterizations coincide") {
  CHECK(verify_conjugate_characterization(W("aba").span()));
  CHECK(verify_conjugate_characterization(W("001011").span()));
  for (int n = 1; n <= 8; ++n)
    for (int bits = 0; bits < (1 << n); ++bits) {
      std::vector<Symbol> w(n);
      for (int i = 0; i < n; ++i) w[i] = static_cast<Symbol>((bits >> i) & 1);
      CHECK(verify_conjugate_characterization(SymSpan(w)));
    }
  std::vector<Symbol> big(13, 0);
  CHECK_THROWS_AS(verify_conjugate_characterization(SymSpan(big)), Error);
}

TEST_CASE("exponent properties") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_word(rng, 2 + trial % 3, 1 + trial % 6);
    // exponent of x^n is at least n
    int n = 1 + trial % 4;
    std::vector<Symbol> xn;
    for (int i = 0; i < n; ++i) xn.insert(xn.end(), x.begin(), x.end());
    CHECK(exponent(SymSpan(xn)) >= R(n));
    CHECK(exponent(SymSpan(x)) >= R(1));
    // critical exponent bounded by circular critical exponent
    auto ce = critical_exponent(SymSpan(xn)).value;
    auto cce = circular_critical_exponent(SymSpan(xn)).value;
    CHECK(ce <= cce);
  }
}

TEST_CASE("monotonicity under factors") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    auto w = random_word(rng, 2, 4 + trial % 8);
    auto ce = critical_exponent(SymSpan(w)).value;
    auto cce = circular_critical_exponent(SymSpan(w)).value;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j <= w.size(); ++j) {
        SymSpan f = SymSpan(w).subspan(i, j - i);
        CHECK(critical_exponent(f).value <= ce);
        CHECK(circular_critical_exponent(f).value <= cce);
      }
  }
}

TEST_CASE("witnesses replay on random inputs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto w = random_word(rng, 2 + trial % 2, 2 + trial % 12);
    auto c = critical_exponent(SymSpan(w));
    CHECK(c.witness.replay(SymSpan(w)));
    CHECK(c.witness.exponent() == c.value);
    auto cc = circular_critical_exponent(SymSpan(w));
    CHECK(cc.witness.replay(SymSpan(w)));
    CHECK(cc.witness.exponent() == cc.value);
    if (auto v = find_circular_violation(SymSpan(w), PowerThreshold(R(2), false))) {
      CHECK(v->replay(SymSpan(w)));
      CHECK(v->exponent() >= R(2));
    }
  }
}
