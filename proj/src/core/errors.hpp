#pragma once

#include <stdexcept>
#include <string>

namespace circw {

enum class Errc {
  argument,      // malformed or out-of-range argument
  parse,         // unparsable text input
  empty_word,    // operation undefined on the empty word
  alphabet,      // symbol outside the declared alphabet
  precondition,  // documented precondition violated
  bound,         // configured brute-force bound exceeded
  io,            // file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace circw
