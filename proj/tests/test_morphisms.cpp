#include <functional>
#include <random>
#include <set>

#include "core/factorset.hpp"
#include "core/morphism.hpp"
#include "core/periodicity.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace circw;

namespace {

std::string render(const std::vector<Symbol>& v) {
  std::string s;
  for (Symbol x : v) s.push_back(static_cast<char>('0' + x));
  return s;
}

std::string render_key(const std::string& key) {
  std::string s;
  for (char c : key) s.push_back(static_cast<char>('0' + c));
  return s;
}

// Definition-level synchronization checks, independent of the library's.
bool oracle_synchronizing(const UniformMorphism& h) {
  const std::size_t q = h.arity();
  for (Symbol a = 0; a < h.source_alphabet(); ++a)
    for (Symbol b = 0; b < h.source_alphabet(); ++b) {
      std::vector<Symbol> ab = h.image(a);
      ab.insert(ab.end(), h.image(b).begin(), h.image(b).end());
      for (Symbol c = 0; c < h.source_alphabet(); ++c)
        for (std::size_t off = 0; off + q <= 2 * q; ++off) {
          if (!std::equal(h.image(c).begin(), h.image(c).end(), ab.begin() + off)) continue;
          bool ok = (off == 0 && a == c) || (off == q && b == c);
          if (!ok) return false;
        }
    }
  return true;
}

bool oracle_strongly_synchronizing(const UniformMorphism& h) {
  if (!oracle_synchronizing(h)) return false;
  const std::size_t q = h.arity();
  for (Symbol a = 0; a < h.source_alphabet(); ++a)
    for (Symbol b = 0; b < h.source_alphabet(); ++b)
      for (Symbol c = 0; c < h.source_alphabet(); ++c) {
        if (c == a || c == b) continue;
        for (std::size_t split = 0; split <= q; ++split) {
          bool xp = std::equal(h.image(c).begin(), h.image(c).begin() + split,
                               h.image(a).begin());
          bool ys = std::equal(h.image(c).begin() + split, h.image(c).end(),
                               h.image(b).begin() + split);
          if (xp && ys) return false;
        }
      }
  return true;
}

}  // namespace

TEST_CASE("builtin image tables") {
  const auto& mu = UniformMorphism::mu();
  CHECK(mu.arity() == 15);
  CHECK(mu.source_alphabet() == 6);
  CHECK(mu.target_alphabet() == 3);
  CHECK(render(mu.image(0)) == "012102120102012");
  CHECK(render(mu.image(1)) == "201020121012021");
  CHECK(render(mu.image(2)) == "012102010212010");
  CHECK(render(mu.image(3)) == "201210212021012");
  CHECK(render(mu.image(4)) == "102120121012021");
  CHECK(render(mu.image(5)) == "102010212021012");

  const auto& psi = UniformMorphism::psi();
  CHECK(psi.arity() == 4);
  CHECK(render(psi.image(0)) == "0435");
  CHECK(render(psi.image(1)) == "2341");
  CHECK(render(psi.image(2)) == "3542");
  CHECK(render(psi.image(3)) == "3540");
  CHECK(render(psi.image(4)) == "4134");
  CHECK(render(psi.image(5)) == "4105");

  const auto& tm = UniformMorphism::thue_morse();
  CHECK(tm.arity() == 2);
  CHECK(render(tm.image(0)) == "01");
  CHECK(render(tm.image(1)) == "10");

  CHECK(!UniformMorphism::builtin("nope").has_value());
}

TEST_CASE("apply") {
  const auto& psi = UniformMorphism::psi();
  CHECK(psi.apply(Word::parse("0")).render() == "0435");
  CHECK(psi.apply(Word()).empty());
  const auto& mu = UniformMorphism::mu();
  CHECK(mu.apply(Word::parse("01")).render() == "012102120102012201020121012021");
  CHECK(mu.apply(Word::parse("01")).size() == 2 * mu.arity());
  CHECK_THROWS_AS(psi.apply(Word({7}, 8)), Error);
}

TEST_CASE("morphism file format round trip") {
  const auto& psi = UniformMorphism::psi();
  UniformMorphism back = UniformMorphism::parse(psi.file_text(), "psi2");
  for (Symbol a = 0; a < 6; ++a) CHECK(back.image(a) == psi.image(a));
  CHECK_THROWS_AS(UniformMorphism::parse("2 2\n01\n10\n"), Error);
  CHECK_THROWS_AS(UniformMorphism::parse("2 2 2\n01\n1\n"), Error);
  CHECK_THROWS_AS(UniformMorphism::load("/nonexistent/morphism"), Error);
}

TEST_CASE("fixed point prefixes") {
  const auto& psi = UniformMorphism::psi();
  CHECK(psi.fixed_point_prefix(0, 4).render() == "0435");
  CHECK(psi.fixed_point_prefix(0, 0).empty());
  const auto& tm = UniformMorphism::thue_morse();
  CHECK(tm.fixed_point_prefix(0, 8).render() == "01101001");
  // mu maps its six letters into {0,1,2}, so iterating from 0 is legal
  CHECK(UniformMorphism::mu().fixed_point_prefix(0, 15).render() == "012102120102012");
  // seed whose image does not start with it
  CHECK_THROWS_AS(psi.fixed_point_prefix(1, 10), Error);
  // target alphabet escapes the source alphabet: no fixed point
  UniformMorphism wide(2, 3, {{0, 2}, {1, 2}}, "wide");
  CHECK_THROWS_AS(wide.fixed_point_prefix(0, 10), Error);

  // prefix property and the fixed-point property
  Word p64 = psi.fixed_point_prefix(0, 64);
  Word p256 = psi.fixed_point_prefix(0, 256);
  CHECK(std::equal(p64.symbols().begin(), p64.symbols().end(), p256.symbols().begin()));
  Word applied = psi.apply(p64);
  CHECK(std::equal(p64.symbols().begin(), p64.symbols().end(), applied.symbols().begin()));
}

TEST_CASE("synchronization checks against the definitional oracle") {
  const auto& mu = UniformMorphism::mu();
  const auto& psi = UniformMorphism::psi();
  const auto& tm = UniformMorphism::thue_morse();

  CHECK(mu.is_synchronizing());
  CHECK(mu.is_strongly_synchronizing());
  CHECK(psi.is_synchronizing());
  CHECK(psi.is_strongly_synchronizing());

  CHECK(oracle_synchronizing(mu));
  CHECK(oracle_strongly_synchronizing(mu));
  CHECK(oracle_synchronizing(psi));
  CHECK(oracle_strongly_synchronizing(psi));

  // Thue-Morse is not synchronizing: h(00) = 0101 contains h(1) = 10 inside.
  CHECK(!tm.is_synchronizing());
  CHECK(!oracle_synchronizing(tm));
  auto ce = tm.synchronizing_counterexample();
  REQUIRE(ce.has_value());
  CHECK(ce->offset > 0);
  CHECK(ce->offset < tm.arity() * 2);

  UniformMorphism h(3, 2, {{0, 1}, {1, 0}, {0, 0}}, "custom");
  CHECK(h.is_synchronizing() == oracle_synchronizing(h));
  CHECK(h.is_strongly_synchronizing() == oracle_strongly_synchronizing(h));

  // random small morphisms agree with the oracle
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 2 + trial % 2;
    std::size_t q = 2 + trial % 3;
    std::vector<std::vector<Symbol>> images(k, std::vector<Symbol>(q));
    for (auto& im : images)
      for (auto& s : im) s = static_cast<Symbol>(rng() % k);
    UniformMorphism hr(k, k, images, "rand");
    CHECK(hr.is_synchronizing() == oracle_synchronizing(hr));
    CHECK(hr.is_strongly_synchronizing() == oracle_strongly_synchronizing(hr));
  }
}

TEST_CASE("factor sets by closure") {
  const auto& psi = UniformMorphism::psi();
  FactorSet letters = factor_set(psi, 0, 1);
  std::set<std::string> rendered;
  for (const auto& m : letters.members) rendered.insert(render_key(m));
  CHECK(rendered == std::set<std::string>{"0", "1", "2", "3", "4", "5"});

  const auto& tm = UniformMorphism::thue_morse();
  FactorSet tm2 = factor_set(tm, 0, 2);
  rendered.clear();
  for (const auto& m : tm2.members) rendered.insert(render_key(m));
  CHECK(rendered == std::set<std::string>{"00", "01", "10", "11"});

  // no square z z with |zz| < 16 among psi's factors
  for (std::size_t m = 2; m < 16; m += 2) {
    FactorSet fs = factor_set(psi, 0, m);
    for (const auto& member : fs.members) {
      bool square = true;
      for (std::size_t x = m / 2; x < m && square; ++x) square = member[x] == member[x - m / 2];
      CHECK(!square);
    }
  }
}

TEST_CASE("factor-set closure agrees with the lifting route and with prefixes") {
  const auto& psi = UniformMorphism::psi();
  const auto& tm = UniformMorphism::thue_morse();
  for (std::size_t L : {3, 5, 8, 13}) {
    for (const UniformMorphism* h : {&psi, &tm}) {
      FactorSet direct = factor_set(*h, 0, L);
      std::size_t pre_len = std::min<std::size_t>(L, (L + h->arity() - 1) / h->arity() + 1);
      FactorSet pre = factor_set(*h, 0, pre_len);
      auto lifted = lift_factors(*h, pre.members, L);
      CHECK(direct.members == lifted);

      // witnessed membership: every member occurs in the reported prefix
      Word prefix =
          h->fixed_point_prefix(0, std::min<std::size_t>(direct.witness_prefix_len, 1 << 16));
      std::string hay = key_of(prefix.span());
      for (const auto& m : direct.members) CHECK(hay.find(m) != std::string::npos);

      // and no length-L factor of a long prefix is missing from the set
      std::set<std::string> from_prefix;
      for (std::size_t i = 0; i + L <= hay.size(); ++i) from_prefix.insert(hay.substr(i, L));
      for (const auto& f : from_prefix) CHECK(direct.contains(f));
    }
  }
}

TEST_CASE("image factor sets for mu(psi^omega(0))") {
  FactorSet fs = image_factor_set(UniformMorphism::mu(), UniformMorphism::psi(), 0, 30);
  CHECK(fs.length == 30);
  CHECK(!fs.members.empty());
  Word prefix = main_word_prefix(5000);
  std::string hay = key_of(prefix.span());
  // exactness both ways on a long prefix
  std::set<std::string> from_prefix;
  for (std::size_t i = 0; i + 30 <= hay.size(); ++i) from_prefix.insert(hay.substr(i, 30));
  for (const auto& f : from_prefix) CHECK(fs.contains(f));
  for (const auto& m : fs.members) CHECK(hay.find(m) != std::string::npos);

  CHECK(main_word_prefix(15).render() == "012102120102012");
}

TEST_CASE("lift_power_freeness") {
  ClaimReport psi2 = lift_power_freeness(UniformMorphism::psi(), 0, 2);
  CHECK(psi2.pass);
  CHECK(psi2.parameters["bound"] == 16);
  ClaimReport psi3 = lift_power_freeness(UniformMorphism::psi(), 0, 3);
  CHECK(psi3.pass);
  CHECK(psi3.parameters["bound"] == 24);

  // Thue-Morse contains squares; the short-power scan fails before the
  // strongly-synchronizing precondition is consulted.
  ClaimReport tm2 = lift_power_freeness(UniformMorphism::thue_morse(), 0, 2);
  CHECK(!tm2.pass);
  REQUIRE(!tm2.witnesses.empty());
  CHECK((tm2.witnesses[0] == "00" || tm2.witnesses[0] == "11"));

  // when the scan finds nothing the lifting argument needs a strongly
  // synchronizing morphism: Thue-Morse is cubefree but not synchronizing,
  // so the n = 3 check refuses to conclude
  CHECK_THROWS_AS(lift_power_freeness(UniformMorphism::thue_morse(), 0, 3), Error);

  // squares in the fixed point surface as failures before any precondition:
  // h(0) = 01 = h(1) has the square fixed point (01)^omega
  UniformMorphism weird(2, 2, {{0, 1}, {0, 1}}, "weird");
  ClaimReport wrep = lift_power_freeness(weird, 0, 2);
  CHECK(!wrep.pass);
}

TEST_CASE("prefix power alignment") {
  const auto& psi = UniformMorphism::psi();
  CHECK(check_power_alignment(psi, psi.fixed_point_prefix(0, 12), 2));  // vacuous

  UniformMorphism bad(2, 2, {{0, 1}, {0, 1}}, "bad");
  CHECK_THROWS_AS(check_power_alignment(bad, Word::parse("00"), 2), Error);

  // Thue-Morse is not synchronizing, so the checked form refuses it, but
  // the instance conclusion holds: h(00) = 0101 = (01)^2 with u = 0.
  const auto& tm = UniformMorphism::thue_morse();
  CHECK_THROWS_AS(check_power_alignment(tm, Word::parse("00"), 2), Error);
  CHECK(power_alignment_instance_holds(tm, Word::parse("00"), 2));

  // randomized instances over the verified-synchronizing builtins
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const UniformMorphism& h = (trial % 2) ? psi : UniformMorphism::mu();
    std::size_t len = 1 + trial % 6;
    std::vector<Symbol> w(len);
    for (auto& c : w) c = static_cast<Symbol>(rng() % 6);
    unsigned n = 2 + trial % 2;
    CHECK(check_power_alignment(h, Word(w, 6), n));
  }
}

TEST_CASE("a mutated psi image is caught by the short-square scan") {
  const auto& psi = UniformMorphism::psi();
  std::vector<std::vector<Symbol>> images;
  for (Symbol a = 0; a < 6; ++a) images.push_back(psi.image(a));
  images[0][2] = 0;  // 0435 -> 0405
  UniformMorphism mutant(6, 6, images, "psi-mutant");
  bool detected = false;
  try {
    detected = !lift_power_freeness(mutant, 0, 2).pass;
  } catch (const Error&) {
    detected = true;
  }
  CHECK(detected);
}
