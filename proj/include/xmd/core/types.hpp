// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace xmd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Below this |lambda| every routine takes the exact Bregman branch.
inline constexpr double kLambdaZero = 1e-12;

/// Smallest admissible argument of the logarithm in the cost.
inline constexpr double kLogFloor = 1e-14;

inline bool is_bregman(double lambda) { return lambda < kLambdaZero && lambda > -kLambdaZero; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point or argument outside the admissible set.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The generator violates lambda-regularity at a point.
class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, double value) : Error(what), value_(value) {}
  double value() const { return value_; }

 private:
  double value_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A step could not be kept feasible by reflection and step halving.
class InfeasibleStep : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace xmd
