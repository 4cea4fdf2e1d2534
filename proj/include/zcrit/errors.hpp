#pragma once

#include <stdexcept>
#include <string>

namespace zcrit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Classes or matrices sized for different lattices.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A rank precondition failed (non-positive rank, or a candidate that is not proper).
class RankViolation : public Error {
 public:
  using Error::Error;
};

// The charge of the reference object vanishes, so its phase is undefined.
class ZeroCharge : public Error {
 public:
  using Error::Error;
};

// The leading coefficient a_hat vanishes; the twist class is undefined.
class AlphaZero : public Error {
 public:
  using Error::Error;
};

class InvalidSurface : public Error {
 public:
  using Error::Error;
};

// A matrix form is not of the required bidegree or block shape.
class TypeViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace zcrit
