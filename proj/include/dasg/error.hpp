#pragma once

#include <stdexcept>
#include <string>

namespace dasg {

// Exit-code contract of the command-line front end.
enum class ErrorKind : int {
  usage = 1,      // bad arguments or violated preconditions
  data = 2,       // unreadable or ill-formed input, degenerate samples
  numerical = 3,  // non-PD matrices, singular systems, non-convergence
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

// A node whose indicator functions have zero variance. `node` is 0-based.
class DegenerateNodeError : public DataError {
 public:
  DegenerateNodeError(int node, const std::string& what)
      : DataError(what), node_(node) {}
  int node() const noexcept { return node_; }

 private:
  int node_;
};

}  // namespace dasg
