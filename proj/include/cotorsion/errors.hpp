#pragma once

#include <stdexcept>
#include <string>

namespace ctl {

// Bad input: mismatched presentations, malformed intervals, unparsable files.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured dimension cap.
class EnumerationRefused : public std::runtime_error {
 public:
  EnumerationRefused(const std::string& what, int cap)
      : std::runtime_error(what + " (dim cap " + std::to_string(cap) + ")"), cap_(cap) {}
  int cap() const noexcept { return cap_; }

 private:
  int cap_;
};

// Neither the serial path nor the Fitting / idempotent fallback settled the
// decomposition. Never replaced by a guess.
class DecompositionInconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction needed an approximation conflation the bounded search did
// not produce. Verdicts that hit this become Unknown.
class WitnessMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent routes disagreed, or a constructed object violated an
// invariant that the theory guarantees.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ctl
