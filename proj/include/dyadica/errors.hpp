#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dyadica {

/// Error categories; the CLI maps them onto process exit codes.
enum class ErrorKind {
  malformed_input = 2,
  precondition = 3,
  check_failure = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string what)
      : std::runtime_error(std::move(what)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class MalformedInput : public Error {
 public:
  explicit MalformedInput(std::string what)
      : Error(ErrorKind::malformed_input, std::move(what)) {}
};

/// A space candidate failed one of the quasi-metric/measure axioms.
class AxiomViolation : public Error {
 public:
  explicit AxiomViolation(std::string what)
      : Error(ErrorKind::check_failure, std::move(what)) {}
};

class ZeroDistanceDistinctPoints : public AxiomViolation {
 public:
  explicit ZeroDistanceDistinctPoints(std::string what)
      : AxiomViolation(std::move(what)) {}
};

class AsymmetricDistance : public AxiomViolation {
 public:
  explicit AsymmetricDistance(std::string what)
      : AxiomViolation(std::move(what)) {}
};

class NegativeMass : public AxiomViolation {
 public:
  explicit NegativeMass(std::string what) : AxiomViolation(std::move(what)) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(std::string what)
      : Error(ErrorKind::precondition, std::move(what)) {}
};

class NonpositiveRadius : public PreconditionError {
 public:
  explicit NonpositiveRadius(std::string what)
      : PreconditionError(std::move(what)) {}
};

class DegenerateDelta : public PreconditionError {
 public:
  explicit DegenerateDelta(std::string what)
      : PreconditionError(std::move(what)) {}
};

class NonpositiveWeight : public PreconditionError {
 public:
  explicit NonpositiveWeight(std::string what)
      : PreconditionError(std::move(what)) {}
};

class LambdaTooSmall : public PreconditionError {
 public:
  explicit LambdaTooSmall(std::string what)
      : PreconditionError(std::move(what)) {}
};

class SubcriticalA : public PreconditionError {
 public:
  explicit SubcriticalA(std::string what)
      : PreconditionError(std::move(what)) {}
};

class DivergentTail : public PreconditionError {
 public:
  explicit DivergentTail(std::string what)
      : PreconditionError(std::move(what)) {}
};

class MissingLevelData : public PreconditionError {
 public:
  explicit MissingLevelData(std::string what)
      : PreconditionError(std::move(what)) {}
};

class MalformedCollection : public PreconditionError {
 public:
  explicit MalformedCollection(std::string what)
      : PreconditionError(std::move(what)) {}
};

class NoClosedForm : public PreconditionError {
 public:
  explicit NoClosedForm(std::string what)
      : PreconditionError(std::move(what)) {}
};

class EtaOutOfRange : public PreconditionError {
 public:
  explicit EtaOutOfRange(std::string what)
      : PreconditionError(std::move(what)) {}
};

class InvalidNormBound : public PreconditionError {
 public:
  explicit InvalidNormBound(std::string what)
      : PreconditionError(std::move(what)) {}
};

class ZeroFunction : public PreconditionError {
 public:
  explicit ZeroFunction(std::string what)
      : PreconditionError(std::move(what)) {}
};

/// A guaranteed postcondition failed at runtime; indicates either a bug or an
/// unsound caller-supplied constant (e.g. an operator norm bound that is not
/// actually an upper bound).
class PostconditionFailed : public Error {
 public:
  explicit PostconditionFailed(std::string what)
      : Error(ErrorKind::check_failure, std::move(what)) {}
};

}  // namespace dyadica
