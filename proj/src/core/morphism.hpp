#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/word.hpp"

namespace circw {

struct SyncCounterexample {
  Symbol a, b, c;
  std::size_t offset;  // h(c) occurs inside h(ab) at this offset; r = h(ab)[0..offset)
};

struct SsmCounterexample {
  Symbol a, b, c;
  std::size_t split;  // h(c) = x y with x = h(a)[0..split), y a suffix of h(b)
};

// q-uniform morphism given by one image of length q per source symbol.
class UniformMorphism {
 public:
  UniformMorphism(int source_alphabet, int target_alphabet, std::vector<std::vector<Symbol>> images,
                  std::string name = {});

  static const UniformMorphism& mu();          // 15-uniform, 6 letters -> 3
  static const UniformMorphism& psi();         // 4-uniform, 6 letters -> 6
  static const UniformMorphism& thue_morse();  // 0 -> 01, 1 -> 10
  static std::optional<UniformMorphism> builtin(const std::string& name);

  // File format: header "k_source k_target q", then one image per line.
  static UniformMorphism parse(const std::string& text, std::string name = {});
  static UniformMorphism load(const std::string& path);

  int source_alphabet() const { return src_k_; }
  int target_alphabet() const { return tgt_k_; }
  std::size_t arity() const { return q_; }
  const std::vector<Symbol>& image(Symbol a) const { return images_[a]; }
  const std::string& name() const { return name_; }
  std::string file_text() const;

  Word apply(const Word& w) const;
  std::vector<Symbol> apply_raw(SymSpan w) const;

  // h is prolongable on a when it maps its alphabet into itself, h(a) starts
  // with a, and q >= 2. Returns a reason when not.
  std::optional<std::string> prolongable_failure(Symbol seed) const;
  bool prolongable(Symbol seed) const { return !prolongable_failure(seed).has_value(); }

  // First n symbols of h^omega(seed).
  Word fixed_point_prefix(Symbol seed, std::size_t n) const;

  std::optional<SyncCounterexample> synchronizing_counterexample() const;
  bool is_synchronizing() const { return !synchronizing_counterexample().has_value(); }
  std::optional<SsmCounterexample> strongly_synchronizing_counterexample() const;
  bool is_strongly_synchronizing() const {
    return is_synchronizing() && !strongly_synchronizing_counterexample().has_value();
  }

 private:
  int src_k_, tgt_k_;
  std::size_t q_;
  std::vector<std::vector<Symbol>> images_;
  std::string name_;
};

// Checks, for synchronizing h and n > 1, that every prefix z^n of h(w) with
// |z| >= q has q | |z| and a prefix u^n of w underneath it. Vacuously true
// when h(w) has no such power prefix. Throws Errc::precondition when h is
// not synchronizing.
bool check_power_alignment(const UniformMorphism& h, const Word& w, unsigned n);

// The conclusion of the same statement checked on one instance without the
// synchronization precondition (the property can hold incidentally).
bool power_alignment_instance_holds(const UniformMorphism& h, const Word& w, unsigned n);

// First n symbols of mu(psi^omega(0)), the central ternary word.
Word main_word_prefix(std::size_t n);

}  // namespace circw
