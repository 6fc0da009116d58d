#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entscope {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mismatched tensor shapes or party dimension lists.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Party or block index outside the valid range, malformed block sets.
class IndexError : public Error {
public:
  using Error::Error;
};

/// Invalid argument values (m/k out of range, bad configuration).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// State/mixture expression fails to parse; carries the offending position.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// State or density-matrix file missing or unreadable.
class FileError : public Error {
public:
  using Error::Error;
};

/// Input state is not normalized and normalization was not requested.
class NormalizationError : public Error {
public:
  using Error::Error;
};

/// Witness construction requires a state that is product across the partition.
class NotProductError : public Error {
public:
  using Error::Error;
};

/// Density matrix has an eigenvalue below the PSD tolerance.
class NonPSDError : public Error {
public:
  using Error::Error;
};

/// Matrix passed as an isometry fails V^H V = I beyond tolerance.
class IsometryError : public Error {
public:
  using Error::Error;
};

/// Operation refused because it exceeds its configured cost guard.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

}  // namespace entscope
