// types.hpp: Numeric aliases shared by every dickesim module.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace dicke {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Operator on the 2^N product space. Basis index bit (N-1-n) holds qubit n,
// i.e. qubit 0 is the most significant bit; a set bit means |1> (excited).
using DenseOperator = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace dicke
