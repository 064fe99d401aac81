#pragma once

#include <stdexcept>
#include <string>

namespace ystruct {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (bad argument, bad range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Structural problem in a graph: unknown node, cycle, duplicate edge.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (files, CSV cells, arities).
class DataError : public Error {
 public:
  using Error::Error;
};

// Witness DAGs handed to the PAG builder disagree on their observed
// d-separation relations.
class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ystruct
