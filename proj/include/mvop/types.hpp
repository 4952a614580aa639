#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mvop {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Largest entry modulus; 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

}  // namespace mvop
