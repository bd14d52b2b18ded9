#pragma once

#include <stdexcept>
#include <string>

namespace evolexis {

class LexisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverlapError : public LexisError {
 public:
  using LexisError::LexisError;
};

class DuplicateStringError : public LexisError {
 public:
  using LexisError::LexisError;
};

/// An occurrence passed to add_intermediate does not line up with the host's
/// piece boundaries or does not spell the requested string.
class InvalidOccurrenceError : public LexisError {
 public:
  using LexisError::LexisError;
};

class NotATargetError : public LexisError {
 public:
  using LexisError::LexisError;
};

class DuplicateTargetError : public LexisError {
 public:
  using LexisError::LexisError;
};

/// Candidate generation could not produce an acceptable target within the
/// configured number of consecutive trials.
class StallError : public LexisError {
 public:
  using LexisError::LexisError;
};

/// H-score undefined because the flat reference core is empty.
class DegenerateError : public LexisError {
 public:
  using LexisError::LexisError;
};

class ConfigError : public LexisError {
 public:
  using LexisError::LexisError;
};

}  // namespace evolexis
