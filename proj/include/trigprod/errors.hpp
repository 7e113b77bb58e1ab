// Error taxonomy shared by the whole library. Every failure mode that the
// evaluators can signal maps to one of these types; the CLI translates them
// to its stable exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace trigprod {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument too close to a pole (or a zero that the log-space evaluator
// cannot represent). `term_index` is the factor index k when the rejection
// happened inside a product, -1 otherwise. `factor` names the offending
// sub-expression.
class PoleProximityError : public Error {
 public:
  PoleProximityError(const std::string& what, long term_index = -1,
                     std::string factor = {})
      : Error(what), term_index(term_index), factor(std::move(factor)) {}
  long term_index;
  std::string factor;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class InvalidRequestError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormulaError : public Error {
 public:
  using Error::Error;
};

// Requested tolerance cannot be met within the index/precision caps.
// `achievable` is the model-estimated remainder at the cap.
class ToleranceUnreachableError : public Error {
 public:
  ToleranceUnreachableError(const std::string& what, double achievable)
      : Error(what), achievable(achievable) {}
  double achievable;
};

class InsufficientSamplesError : public Error {
 public:
  InsufficientSamplesError(const std::string& what, long usable)
      : Error(what), usable(usable) {}
  long usable;
};

// Index or exponent caps exceeded (e.g. exact integer exponents past 2^96).
class RangeCapError : public Error {
 public:
  using Error::Error;
};

// An operation produced a non-finite value that the caller may not store.
class NumericRangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace trigprod
