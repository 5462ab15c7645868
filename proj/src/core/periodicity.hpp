#pragma once

#include <optional>
#include <vector>

#include "core/rational.hpp"
#include "core/witness.hpp"
#include "core/word.hpp"

namespace circw {

// Longest-proper-border table (KMP failure function): border[i] is the
// length of the longest proper border of w[0..i).
std::vector<std::int32_t> border_table(SymSpan w);

// Smallest p >= 1 with w[i+p] = w[i] for all 0 <= i < |w|-p.
std::size_t shortest_period(SymSpan w);

// |w| / shortest_period(w), exact.
Rational exponent(SymSpan w);

struct CriticalExponent {
  Rational value;
  RepetitionWitness witness;
};

// Maximum of exponent(f) over all nonempty factors f, with a witness.
// O(n^2): one border-table row per start position.
CriticalExponent critical_exponent(SymSpan w);

// First factor (smallest end position, then smallest period) violating the
// threshold, or nullopt if w is power-free for it.
std::optional<RepetitionWitness> find_power_violation(SymSpan w, const PowerThreshold& th);

inline bool is_power_free(SymSpan w, const PowerThreshold& th) {
  return !find_power_violation(w, th).has_value();
}

}  // namespace circw
