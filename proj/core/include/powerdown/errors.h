#ifndef POWERDOWN_ERRORS_H_
#define POWERDOWN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace powerdown {

/** Base class of every exception thrown by the library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** An argument lies outside the domain of an operation (e.g. a window outside [0, D]). */
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/** Some job has p > d - r; no schedule can exist. */
class TriviallyInfeasibleError : public Error {
 public:
  explicit TriviallyInfeasibleError(const std::string& what) : Error(what) {}
};

/** The instance cannot be scheduled even with every machine always active. */
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/** Malformed instance, supply or schedule text. */
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/** An internal guarantee did not hold. Always a bug or a violated precondition. */
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(what) {}
};

/** A guarded exponential routine was asked to run beyond its configured limits. */
class LimitExceededError : public Error {
 public:
  explicit LimitExceededError(const std::string& what) : Error(what) {}
};

}  // namespace powerdown

#endif  // POWERDOWN_ERRORS_H_
