// types.hpp -- shared scalar/matrix aliases and Pauli constants
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace floqssh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline ComplexMatrix pauli_x() {
    ComplexMatrix s(2, 2);
    s << 0, 1,
         1, 0;
    return s;
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix s(2, 2);
    s << Complex(0, 0), Complex(0, -1),
         Complex(0, 1), Complex(0, 0);
    return s;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix s(2, 2);
    s << 1, 0,
         0, -1;
    return s;
}

}  // namespace floqssh
