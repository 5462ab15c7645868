#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/report.hpp"
#include "core/search.hpp"
#include "core/word.hpp"

namespace circw {

// Radius for the final finite check on mu(psi^omega(0)): violations of the
// circular (13/4)+ bound are confined to products shorter than constant * q.
struct CheckRadius {
  int constant = 22;
  int q = 15;
  int radius() const { return constant * q; }
};

struct VerifyOptions {
  bool skip_long = false;       // skip the full exhaustive 147 search
  int threads = 1;              // forwarded to searches
  CheckRadius radius;           // verify_main_word bound, configurable
  std::size_t prefix_oracle = 100000;  // prefix length for windowed oracles
};

ClaimReport verify_psi_squarefree(const VerifyOptions& opt = {});
ClaimReport verify_psi_circularly_cubefree(const VerifyOptions& opt = {});
ClaimReport verify_main_word(const VerifyOptions& opt = {});
ClaimReport verify_147(const VerifyOptions& opt = {});          // full C = 147 search
ClaimReport verify_147_scaled(const VerifyOptions& opt = {});   // CI variant, C = 50
ClaimReport verify_thue_morse_binary(const VerifyOptions& opt = {});
ClaimReport verify_rtc_bracket_desk(const VerifyOptions& opt = {});
ClaimReport verify_rti2(int i_max, const VerifyOptions& opt = {});

std::vector<ClaimReport> verify_all(const VerifyOptions& opt = {});
std::optional<ClaimReport> verify_claim(const std::string& claim_id, const VerifyOptions& opt = {});
std::vector<std::string> claim_ids();

// No product of two blocks (suffix of `left` then prefix of `right`) crossing
// the junction, of length <= cap_len, violates the threshold. Returns the
// (length, period) of a violation if one exists.
std::optional<std::pair<std::size_t, std::size_t>> junction_violation(
    const std::string& left, const std::string& right, std::size_t cap_len,
    const PowerThreshold& th);

// Changing any single image symbol of mu or psi must flip at least one cheap
// claim to fail. Returns the mutants that escaped detection (empty = pass).
std::vector<std::string> mutation_escapees();

}  // namespace circw
