#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace balpairs {

using ElementId = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relations whose closure is not antisymmetric. `cycle` lists the offending
// elements in order, first element repeated at the end.
class CycleError : public Error {
 public:
  CycleError(std::string what, std::vector<ElementId> cycle)
      : Error(std::move(what)), cycle_(std::move(cycle)) {}
  const std::vector<ElementId>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<ElementId> cycle_;
};

class BadIdError : public Error {
 public:
  using Error::Error;
};

// Input too large for an exact engine under the configured caps.
class SizeError : public Error {
 public:
  using Error::Error;
};

class WouldCycleError : public Error {
 public:
  using Error::Error;
};

class NotForestError : public Error {
 public:
  NotForestError(std::string what, std::vector<ElementId> cycle)
      : Error(std::move(what)), cycle_(std::move(cycle)) {}
  const std::vector<ElementId>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<ElementId> cycle_;
};

class NotUpwardForestError : public Error {
 public:
  using Error::Error;
};

class NotGoodPairError : public Error {
 public:
  using Error::Error;
};

class EmptyChainError : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// A structural claim that must hold under the caller's hypotheses did not.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// The constructive balanced-pair extraction found no balanced pair.
class TheoremViolated : public Error {
 public:
  using Error::Error;
};

class NotSemiorderError : public Error {
 public:
  using Error::Error;
};

class IsChainError : public Error {
 public:
  using Error::Error;
};

class NotApplicableError : public Error {
 public:
  using Error::Error;
};

// The forest pair finder reached a state its case analysis does not cover.
// `state` is a human-readable dump of the finder's state at that point.
class AlgorithmStuck : public Error {
 public:
  AlgorithmStuck(std::string what, std::string state)
      : Error(std::move(what)), state_(std::move(state)) {}
  const std::string& state() const noexcept { return state_; }

 private:
  std::string state_;
};

// Bad command-line or API usage, e.g. an unknown campaign name.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace balpairs
