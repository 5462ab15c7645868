#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/morphism.hpp"
#include "core/rational.hpp"
#include "core/witness.hpp"
#include "core/word.hpp"
#include "json.hpp"

namespace circw {

struct SearchConfig {
  int alphabet_size = 2;
  PowerThreshold threshold{Rational::integer(2), false};
  bool circular = false;
  std::optional<std::uint32_t> square_bound;  // forbid squares xx with |xx| < this
  std::size_t max_length = 500;
  bool symmetry_reduction = true;  // letters must debut in increasing order
  int threads = 1;
  std::size_t split_depth = 6;

  nlohmann::json to_json() const;
  static SearchConfig from_json(const nlohmann::json& j);
};

struct SearchResult {
  std::size_t longest_length = 0;
  Word witness;
  bool exhausted = false;
  std::uint64_t nodes_visited = 0;
  std::uint64_t wall_time_ms = 0;
  bool stopped = false;  // progress callback asked to stop; state checkpointed

  nlohmann::json to_json(const SearchConfig& cfg) const;
};

// Called roughly every checkpoint interval; return true to request a stop.
using ProgressFn = std::function<bool(std::uint64_t nodes, std::size_t depth)>;

// Incremental validity checker for the backtracking search. A word is grown
// symbol by symbol; try_push accepts the symbol exactly when no constraint
// violation touches the new position, which together with induction over the
// pushes equals full checking.
class IncrementalChecker {
 public:
  explicit IncrementalChecker(const SearchConfig& cfg);

  bool try_push(Symbol c);
  void pop();
  std::size_t size() const { return n_; }
  const std::vector<Symbol>& word() const { return w_; }
  // the violation that made the last try_push return false
  const std::optional<RepetitionWitness>& last_violation() const { return last_violation_; }

 private:
  std::optional<RepetitionWitness> circular_violation(std::size_t np) const;

  SearchConfig cfg_;
  std::int64_t ta_, tb_;  // threshold a/b
  bool strict_;
  std::size_t pmax_ = 0;
  std::vector<Symbol> w_;
  std::size_t n_ = 0;
  // run rows per depth: rows_[n * (pmax_+2) + p] = longest p-periodic suffix of w[0..n)
  std::vector<std::uint16_t> rows_;
  std::vector<std::uint32_t> ord_thresh_;  // run >= ord_thresh_[p] => ordinary violation
  std::vector<std::uint32_t> tmax_;        // max |t| a clean prefix allows for period p
  // square bookkeeping for the long-period regime
  std::vector<std::uint32_t> sq_count_;               // squares of period p present
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sq_events_;  // (p, end)
  std::vector<std::uint32_t> sq_marks_;               // events per depth
  std::vector<std::vector<std::uint32_t>> pos1_;      // positions per symbol
  std::vector<std::vector<std::uint32_t>> pos2_;      // positions per symbol pair
  std::optional<RepetitionWitness> last_violation_;
};

// Longest word satisfying cfg, by exhaustive lexicographic DFS. If the
// max_length cap is reached the search stops at the first cap-length word
// (exhausted = false). checkpoint_path enables periodic checkpoints and, if
// resume is true, continues from the file's saved position.
SearchResult longest_word(const SearchConfig& cfg, const std::string& checkpoint_path = {},
                          bool resume = false, const ProgressFn& progress = {});

struct ProductExponent {
  Rational value;
  std::vector<std::string> parts;  // rendered factors
  std::string product;
};

// Maximum exponent over concatenations of `parts` nonempty factors with total
// length <= max_total_len. The factor pool either comes from a finite word or
// from the exact factor sets of a morphism fixed point.
ProductExponent product_exponent(const Word& w, unsigned parts, std::size_t max_total_len);
ProductExponent product_exponent_morphic(const UniformMorphism& h, Symbol seed, unsigned parts,
                                         std::size_t max_total_len);

struct EvidenceRow {
  std::uint32_t square_bound;
  SearchResult result;
};

// Lower-bound evidence for rtc(k): exhausted finite lengths at the given
// circular threshold, for each square-avoidance bound in the schedule.
std::vector<EvidenceRow> threshold_evidence(int k, const PowerThreshold& th,
                                            const std::vector<std::uint32_t>& schedule,
                                            std::size_t max_length = 400);

// Dejean repetition thresholds (known values) and the conjectured circular ones.
Rational repetition_threshold(int k);
Rational circular_repetition_threshold(int k);  // proved for k = 2, 3; conjectured beyond

}  // namespace circw
