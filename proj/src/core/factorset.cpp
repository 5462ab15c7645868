#include "core/factorset.hpp"

#include <algorithm>
#include <map>

#include "core/errors.hpp"

namespace circw {

namespace {

std::vector<std::string> window_factors(const std::string& s, std::size_t len) {
  std::vector<std::string> out;
  if (s.size() < len || len == 0) return out;
  out.reserve(s.size() - len + 1);
  for (std::size_t i = 0; i + len <= s.size(); ++i) out.push_back(s.substr(i, len));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string apply_key(const UniformMorphism& h, const std::string& key) {
  std::string out;
  out.reserve(key.size() * h.arity());
  for (char c : key) {
    const auto& im = h.image(static_cast<Symbol>(c));
    out.append(reinterpret_cast<const char*>(im.data()), im.size());
  }
  return out;
}

// Window length in the preimage that covers any length-len window of the image.
std::size_t preimage_len(std::size_t len, std::size_t q) {
  return std::min<std::size_t>(len, (len + q - 1) / q + 1);
}

}  // namespace

std::vector<std::string> lift_factors(const UniformMorphism& h, const std::vector<std::string>& pre,
                                      std::size_t length) {
  std::set<std::string> out;
  for (const auto& x : pre) {
    std::string hx = apply_key(h, x);
    for (std::size_t i = 0; i + length <= hx.size(); ++i) out.insert(hx.substr(i, length));
  }
  return std::vector<std::string>(out.begin(), out.end());
}

FactorSet factor_set(const UniformMorphism& h, Symbol seed, std::size_t length) {
  if (length < 1) fail(Errc::argument, "factor-set length must be >= 1");
  if (auto why = h.prolongable_failure(seed))
    fail(Errc::precondition, "factor_set needs a prolongable morphism: " + *why);
  const std::size_t q = h.arity();

  // Tower of window lengths: each level is lifted from the one below, the
  // base lifts from itself. State repeats one step => exact for h^omega.
  std::vector<std::size_t> tower{length};
  while (true) {
    std::size_t next = preimage_len(tower.back(), q);
    if (next >= tower.back()) break;
    tower.push_back(next);
  }

  // Seed the tower sets from a genuine iterate long enough for every level.
  std::vector<Symbol> u{seed};
  int iters = 0;
  while (u.size() < length + q) {
    u = h.apply_raw(SymSpan(u));
    ++iters;
    if (u.size() > (std::size_t{1} << 26)) fail(Errc::bound, "factor-set seed iterate too large");
  }
  std::string us(reinterpret_cast<const char*>(u.data()), u.size());
  std::vector<std::vector<std::string>> sets(tower.size());
  for (std::size_t t = 0; t < tower.size(); ++t) sets[t] = window_factors(us, tower[t]);

  for (;; ++iters) {
    std::vector<std::vector<std::string>> next(tower.size());
    bool changed = false;
    for (std::size_t t = 0; t < tower.size(); ++t) {
      const auto& src = (t + 1 < tower.size()) ? sets[t + 1] : sets.back();
      next[t] = lift_factors(h, src, tower[t]);
      changed = changed || next[t] != sets[t];
    }
    if (!changed) break;
    sets = std::move(next);
    if (iters > 64) fail(Errc::bound, "factor-set closure failed to stabilize");
  }

  FactorSet fs;
  fs.length = length;
  fs.members = std::move(sets[0]);
  fs.source = h.name().empty() ? "morphism" : h.name();
  fs.seed = seed;
  fs.iterations = iters;
  // Every member shows up once the iterate reaches q^iters symbols (saturate).
  std::size_t wit = 1;
  for (int i = 0; i < iters && wit < (std::size_t{1} << 40); ++i) wit *= q;
  fs.witness_prefix_len = wit;
  return fs;
}

FactorSet image_factor_set(const UniformMorphism& outer, const UniformMorphism& inner, Symbol seed,
                           std::size_t length) {
  if (outer.source_alphabet() < inner.target_alphabet())
    fail(Errc::alphabet, "outer morphism cannot read the inner fixed point");
  FactorSet pre = factor_set(inner, seed, preimage_len(length, outer.arity()));
  FactorSet fs;
  fs.length = length;
  fs.members = lift_factors(outer, pre.members, length);
  fs.source = (outer.name().empty() ? "outer" : outer.name()) + "(" + pre.source + "^omega)";
  fs.seed = seed;
  fs.iterations = pre.iterations;
  fs.witness_prefix_len =
      pre.witness_prefix_len > (std::size_t{1} << 40) / outer.arity()
          ? (std::size_t{1} << 40)
          : pre.witness_prefix_len * outer.arity();
  return fs;
}

std::vector<std::string> truncate_factor_set(const FactorSet& full, std::size_t len) {
  if (len > full.length) fail(Errc::argument, "cannot extend a factor set by truncation");
  std::set<std::string> out;
  for (const auto& m : full.members) out.insert(m.substr(0, len));
  return std::vector<std::string>(out.begin(), out.end());
}

ClaimReport lift_power_freeness(const UniformMorphism& h, Symbol seed, unsigned n) {
  if (n < 2) fail(Errc::argument, "power order n must be at least 2");
  if (auto why = h.prolongable_failure(seed))
    fail(Errc::precondition, "lift_power_freeness needs a prolongable morphism: " + *why);
  const std::size_t q = h.arity();
  const std::size_t bound = 2 * n * q;

  ClaimReport rep;
  rep.claim_id = "lift-power-freeness";
  rep.statement = h.name() + "^omega(" + std::to_string(seed) + ") avoids " + std::to_string(n) +
                  "-th powers";
  rep.parameters = {{"n", n}, {"q", q}, {"bound", bound}};

  // Any z^n with |z^n| < 2nq has |z| < 2q; scan the exact factor sets.
  for (std::size_t zlen = 1; zlen < 2 * q; ++zlen) {
    const std::size_t m = zlen * n;
    FactorSet fs = factor_set(h, seed, m);
    for (const auto& member : fs.members) {
      bool power = true;
      for (std::size_t x = zlen; x < m && power; ++x) power = member[x] == member[x - zlen];
      if (power) {
        rep.pass = false;
        std::string rendered;
        for (char c : member) rendered.push_back(static_cast<char>('0' + c));
        rep.witnesses.push_back(rendered);
        rep.stats = {{"witness_period", zlen}};
        return rep;
      }
    }
  }

  if (!h.is_strongly_synchronizing())
    fail(Errc::precondition,
         "short powers are absent but the morphism is not strongly synchronizing; "
         "the lifting argument does not apply");
  rep.pass = true;
  rep.stats = {{"note", std::to_string(n) + "-th-power-free by short-power exclusion and lifting"}};
  return rep;
}

}  // namespace circw
