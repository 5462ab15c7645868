#pragma once

#include <optional>
#include <set>
#include <vector>

#include "core/periodicity.hpp"
#include "core/witness.hpp"
#include "core/word.hpp"

namespace circw {

// The |w| rotations of w, in shift order 0,1,...,|w|-1 ([eps] for eps).
std::vector<Word> conjugates(const Word& w);

// Deduplicated set of all s = vt with tuv a factor of w and 1 <= |s| <= max_len,
// as raw symbol strings. Brute enumeration; intended for desk-scale words.
std::set<std::string> circular_factors(SymSpan w, std::size_t max_len);

struct CircularCriticalExponent {
  Rational value;
  RepetitionWitness witness;
};

// Exact maximum of exponent(s) over the circular factors of w, with a
// (t,u,v)-decomposition witness. O(n^3)-ish with pruning.
CircularCriticalExponent circular_critical_exponent(SymSpan w);

// First circular repetition violating the threshold, scanning end positions
// left to right, or nullopt. If max_span > 0 only witnesses whose tuv span
// (distance from t's start to v's end) is at most max_span are considered,
// which is exactly the "every length-max_span window is free" check.
std::optional<RepetitionWitness> find_circular_violation(SymSpan w, const PowerThreshold& th,
                                                         std::size_t max_span = 0);

inline bool is_circularly_power_free(SymSpan w, const PowerThreshold& th) {
  return !find_circular_violation(w, th).has_value();
}

// Brute-force check that the four characterizations of circular factors
// (factor / prefix / suffix of a conjugate of a factor, and the vt form)
// define the same set of nonempty strings. |w| must be <= bound.
bool verify_conjugate_characterization(SymSpan w, std::size_t bound = 12);

}  // namespace circw
