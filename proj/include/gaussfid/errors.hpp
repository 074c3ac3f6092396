#ifndef GAUSSFID_ERRORS_HPP
#define GAUSSFID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gaussfid {

/// Base of every exception thrown by the library. `kind()` is a stable
/// machine-readable tag, also used by the command-line front end.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

class DimensionError : public Error {
public:
  explicit DimensionError(const std::string &what) : Error("invalid-dimension", what) {}
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string &what) : Error("domain", what) {}
};

class SymmetryError : public Error {
public:
  explicit SymmetryError(const std::string &what) : Error("symmetry", what) {}
};

class DefinitenessError : public Error {
public:
  explicit DefinitenessError(const std::string &what) : Error("definiteness", what) {}
};

class UncertaintyViolation : public Error {
public:
  explicit UncertaintyViolation(const std::string &what)
      : Error("uncertainty-violation", what) {}
};

class ConditioningError : public Error {
public:
  explicit ConditioningError(const std::string &what) : Error("conditioning", what) {}
};

class DecompositionError : public Error {
public:
  explicit DecompositionError(const std::string &what)
      : Error("decomposition-failure", what) {}
};

class NumericalConsistencyError : public Error {
public:
  explicit NumericalConsistencyError(const std::string &what)
      : Error("numerical-consistency", what) {}
};

/// Raised by the Fock-space oracle when a state or operator does not fit the
/// truncated space accurately enough.
class TruncationError : public Error {
public:
  TruncationError(const std::string &what, double measured)
      : Error("truncation", what), measured_(measured) {}

  double measured() const noexcept { return measured_; }

private:
  double measured_;
};

} // namespace gaussfid

#endif // GAUSSFID_ERRORS_HPP
