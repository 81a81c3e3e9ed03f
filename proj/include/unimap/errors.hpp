#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace unimap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent permutation data: alpha with fixed points, non-bijective sigma,
/// negative or non-integral genus.
class MalformedMapError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked for a size above its configured cap.
class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::int64_t requested, std::int64_t cap)
      : Error(what + ": requested " + std::to_string(requested) + ", cap is " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::int64_t requested() const noexcept { return requested_; }
  std::int64_t cap() const noexcept { return cap_; }

 private:
  std::int64_t requested_;
  std::int64_t cap_;
};

/// Rejection sampling ran out of attempts.
class AttemptsExhaustedError : public Error {
 public:
  AttemptsExhaustedError(std::uint64_t attempts, double observed_rate, double expected_rate)
      : Error("sampler exhausted " + std::to_string(attempts) +
              " attempts (observed acceptance rate " + std::to_string(observed_rate) +
              ", exact acceptance probability " + std::to_string(expected_rate) +
              "); raise max_attempts or lower n"),
        attempts_(attempts),
        observed_rate_(observed_rate),
        expected_rate_(expected_rate) {}
  std::uint64_t attempts() const noexcept { return attempts_; }
  double observed_rate() const noexcept { return observed_rate_; }
  double expected_rate() const noexcept { return expected_rate_; }

 private:
  std::uint64_t attempts_;
  double observed_rate_;
  double expected_rate_;
};

/// Core decomposition requested for a tree (genus 0).
class GenusZeroError : public Error {
 public:
  GenusZeroError() : Error("core is undefined for a genus-0 map") {}
};

/// A branch decomposition whose pieces do not fit together.
class CornerMismatchError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A cut with an empty side, or a side of zero volume.
class EmptySideError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  DisconnectedGraphError() : Error("graph is disconnected") {}
};

class InfeasibleConstantsError : public Error {
 public:
  using Error::Error;
};

}  // namespace unimap
