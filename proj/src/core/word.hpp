#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/errors.hpp"

namespace circw {

using Symbol = std::uint8_t;
using SymSpan = std::span<const Symbol>;

// Finite word over {0..alphabet_size-1}. A word optionally carries a glyph
// table so that letter input like "alfalfa" renders back in its own letters;
// symbols without a glyph table render as digits (k <= 10) or letters.
class Word {
 public:
  Word() = default;

  Word(std::vector<Symbol> syms, int alphabet_size, std::string glyphs = {})
      : syms_(std::move(syms)), k_(alphabet_size), glyphs_(std::move(glyphs)) {
    if (k_ < 1) fail(Errc::argument, "alphabet size must be >= 1");
    for (Symbol s : syms_)
      if (s >= k_) fail(Errc::alphabet, "symbol out of alphabet");
    if (!glyphs_.empty() && static_cast<int>(glyphs_.size()) < k_)
      fail(Errc::argument, "glyph table smaller than alphabet");
  }

  // Digits map to symbols directly; letters map to 0-based symbols in order
  // of first appearance. Mixing the two is rejected.
  static Word parse(std::string_view text) {
    if (text.empty()) return Word({}, 1);
    bool has_digit = false, has_letter = false;
    for (char c : text) {
      if (c >= '0' && c <= '9') has_digit = true;
      else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) has_letter = true;
      else fail(Errc::parse, std::string("unsupported character '") + c + "' in word");
    }
    if (has_digit && has_letter) fail(Errc::parse, "word mixes digits and letters");
    std::vector<Symbol> syms;
    syms.reserve(text.size());
    if (has_digit) {
      int k = 1;
      for (char c : text) {
        syms.push_back(static_cast<Symbol>(c - '0'));
        k = std::max(k, c - '0' + 1);
      }
      return Word(std::move(syms), k);
    }
    std::string glyphs;
    for (char c : text) {
      auto pos = glyphs.find(c);
      if (pos == std::string::npos) {
        if (glyphs.size() >= 250) fail(Errc::parse, "too many distinct letters");
        pos = glyphs.size();
        glyphs.push_back(c);
      }
      syms.push_back(static_cast<Symbol>(pos));
    }
    int k = static_cast<int>(glyphs.size());
    return Word(std::move(syms), k, std::move(glyphs));
  }

  std::size_t size() const { return syms_.size(); }
  bool empty() const { return syms_.empty(); }
  int alphabet_size() const { return k_; }
  Symbol operator[](std::size_t i) const { return syms_[i]; }
  const std::vector<Symbol>& symbols() const { return syms_; }
  const std::string& glyphs() const { return glyphs_; }
  SymSpan span() const { return SymSpan(syms_); }

  char glyph(Symbol s) const {
    if (!glyphs_.empty()) return glyphs_[s];
    if (s < 10) return static_cast<char>('0' + s);
    if (s < 36) return static_cast<char>('a' + (s - 10));
    return '?';
  }

  std::string render() const { return render(0, syms_.size()); }

  std::string render(std::size_t begin, std::size_t end) const {
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.push_back(glyph(syms_[i]));
    return out;
  }

  std::string render_span(SymSpan s) const {
    std::string out;
    out.reserve(s.size());
    for (Symbol x : s) out.push_back(glyph(x));
    return out;
  }

  Word sub(std::size_t begin, std::size_t end) const {
    if (begin > end || end > syms_.size()) fail(Errc::argument, "factor range out of bounds");
    return Word(std::vector<Symbol>(syms_.begin() + begin, syms_.begin() + end), k_, glyphs_);
  }

  // Rotation by r: w[r..) . w[..r).
  Word rotated(std::size_t r) const {
    if (syms_.empty()) return *this;
    r %= syms_.size();
    std::vector<Symbol> out;
    out.reserve(syms_.size());
    out.insert(out.end(), syms_.begin() + r, syms_.end());
    out.insert(out.end(), syms_.begin(), syms_.begin() + r);
    return Word(std::move(out), k_, glyphs_);
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.syms_ == b.syms_;  // alphabet/glyphs are presentation, not identity
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<Symbol> syms_;
  int k_ = 1;
  std::string glyphs_;
};

// Raw byte-string view of a symbol sequence, used for factor-set keys.
inline std::string key_of(SymSpan s) {
  return std::string(reinterpret_cast<const char*>(s.data()), s.size());
}

}  // namespace circw
