#pragma once

#include <set>
#include <string>
#include <vector>

#include "core/morphism.hpp"
#include "core/report.hpp"
#include "core/word.hpp"

namespace circw {

// The exact set of length-L factors of a fixed point h^omega(seed), as raw
// symbol strings (see key_of). Closed: one further closure iteration adds
// nothing, which pins the set of the infinite word exactly.
struct FactorSet {
  std::size_t length = 0;
  std::vector<std::string> members;  // sorted
  std::string source;                // morphism name or description
  Symbol seed = 0;
  int iterations = 0;                // closure steps until stable
  std::size_t witness_prefix_len = 0;  // every member occurs in this prefix (saturated)

  bool contains(const std::string& key) const {
    return std::binary_search(members.begin(), members.end(), key);
  }
};

FactorSet factor_set(const UniformMorphism& h, Symbol seed, std::size_t length);

// Cross-check route: length-L factors are exactly the length-L factors of
// h applied to the length-(ceil(L/q)+1) factors.
std::vector<std::string> lift_factors(const UniformMorphism& h, const std::vector<std::string>& pre,
                                      std::size_t length);

// Exact length-L factors of outer(h^omega(seed)) for a non-prolongable outer
// morphism such as mu.
FactorSet image_factor_set(const UniformMorphism& outer, const UniformMorphism& inner, Symbol seed,
                           std::size_t length);

// Every factor of length len <= set.length is a prefix of a member; derive
// the shorter sets cheaply.
std::vector<std::string> truncate_factor_set(const FactorSet& full, std::size_t len);

// Checks that h^omega(seed) has no factor z^n with |z^n| < 2 n q using the
// exact factor sets. Finding a short power fails the claim outright; when
// none exists the strongly-synchronizing precondition must hold for the
// lifting argument, and is enforced.
ClaimReport lift_power_freeness(const UniformMorphism& h, Symbol seed, unsigned n);

}  // namespace circw
