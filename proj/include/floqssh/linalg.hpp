// linalg.hpp -- dense complex eigensolves, matrix exponential, and the
// principal-branch Floquet logarithm. Everything here is a pure function of
// its inputs and safe to call from concurrent workers.
#pragma once

#include <stdexcept>
#include <string>

#include "floqssh/types.hpp"

namespace floqssh::linalg {

// QR iteration exceeded its sweep cap, or a computed eigenpair failed the
// residual bound. Either way the input is numerically pathological.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// The matrix norm is large enough that exp(A) would overflow doubles.
struct OverflowRisk : std::runtime_error {
    explicit OverflowRisk(const std::string& what) : std::runtime_error(what) {}
};

// The eigenvector matrix of a one-period propagator is numerically singular
// (exceptional point); a similarity-based logarithm is not trustworthy there.
struct DefectiveMonodromy : std::runtime_error {
    explicit DefectiveMonodromy(const std::string& what) : std::runtime_error(what) {}
};

struct EigenDecomposition {
    ComplexVector eigenvalues;    // sorted by (Re, Im) ascending
    ComplexMatrix eigenvectors;   // unit-2-norm right eigenvectors, one column per eigenvalue
    bool condition_flag = false;  // eigenvector basis close to singular (rcond < 1e-12)
};

// Full right eigendecomposition of a general complex square matrix.
// Residual contract: ||A v_j - lambda_j v_j||_2 <= 1e-9 * ||A||_F for every j,
// else NonConvergence. Iteration cap: 100 * dim QR sweeps.
EigenDecomposition eig_dense(const ComplexMatrix& a);

// Eigenvalues only (complex Schur, no eigenvectors), sorted by (Re, Im).
// Much cheaper than eig_dense inside dense parameter grids.
ComplexVector eigvals_dense(const ComplexMatrix& a);

// exp(A) by scaling-and-squaring with diagonal Pade cores of degree
// 3/5/7/9/13 and the standard 1-norm theta thresholds. Relative error is
// at the 1e-13 level for ||A|| <= 10. Throws OverflowRisk once ||A||_1
// exceeds ln(DBL_MAX) ~ 709, where exp(A) cannot be represented.
ComplexMatrix expm(const ComplexMatrix& a);

// Effective Hamiltonian of a one-period propagator: H = (i/T) log G with the
// principal branch Im(log mu) in (-pi, pi] applied per eigenvalue, so every
// quasienergy Re(lambda_j) lands in [-omega/2, omega/2), omega = 2*pi/T.
// Throws std::invalid_argument when G is singular (a multiplier magnitude
// below 1e-300 has no logarithm) and DefectiveMonodromy when the eigenvector
// basis is numerically singular.
ComplexMatrix floquet_log(const ComplexMatrix& g, double period);

// Quasienergies of a one-period propagator: the eigenvalues floquet_log
// would produce, computed without forming eigenvectors (usable at
// exceptional points where the eigenbasis degenerates). Sorted by (Re, Im).
ComplexVector floquet_quasienergies(const ComplexMatrix& g, double period);

// (i/T) log(mu) on the same principal branch floquet_log uses; lets callers
// pair a multiplier's quasienergy with its eigenvector. Throws
// std::invalid_argument when |mu| is below 1e-300.
Complex multiplier_to_quasienergy(Complex multiplier, double period);

}  // namespace floqssh::linalg
