#include "floqssh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace floqssh::linalg {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
    if (a.rows() < 1 || a.rows() != a.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
    if (!a.allFinite())
        throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
}

// Deterministic eigenvalue order for reproducible output files.
std::vector<Eigen::Index> sorted_order(const ComplexVector& v) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&v](Eigen::Index i, Eigen::Index j) {
        if (v[i].real() != v[j].real()) return v[i].real() < v[j].real();
        return v[i].imag() < v[j].imag();
    });
    return idx;
}

constexpr double kRcondDefective = 1e-12;

}  // namespace

EigenDecomposition eig_dense(const ComplexMatrix& a) {
    require_square(a, "eig_dense");
    const Eigen::Index n = a.rows();

    Eigen::ComplexEigenSolver<ComplexMatrix> solver;
    solver.setMaxIterations(100 * n);
    solver.compute(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("eig_dense: QR iteration did not converge within 100*dim sweeps");

    const auto order = sorted_order(solver.eigenvalues());
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        out.eigenvalues[j] = solver.eigenvalues()[src];
        out.eigenvectors.col(j) = solver.eigenvectors().col(src).normalized();
    }

    const double residual_tol = 1e-9 * a.norm();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double residual =
            (a * out.eigenvectors.col(j) - out.eigenvalues[j] * out.eigenvectors.col(j)).norm();
        if (residual > residual_tol)
            throw NonConvergence("eig_dense: eigenpair residual " + std::to_string(residual) +
                                 " exceeds 1e-9*||A||_F");
    }

    out.condition_flag = Eigen::PartialPivLU<ComplexMatrix>(out.eigenvectors).rcond() < kRcondDefective;
    return out;
}

ComplexVector eigvals_dense(const ComplexMatrix& a) {
    require_square(a, "eigvals_dense");
    const Eigen::Index n = a.rows();

    Eigen::ComplexSchur<ComplexMatrix> schur;
    schur.setMaxIterations(100 * n);
    schur.compute(a, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw NonConvergence("eigvals_dense: QR iteration did not converge within 100*dim sweeps");

    const ComplexVector vals = schur.matrixT().diagonal();
    const auto order = sorted_order(vals);
    ComplexVector out(n);
    for (Eigen::Index j = 0; j < n; ++j) out[j] = vals[order[static_cast<std::size_t>(j)]];
    return out;
}

namespace {

// Diagonal Pade numerator coefficients b_0..b_m and the 1-norm thresholds
// under which each degree reaches double-precision accuracy.
const double kPade3[] = {120., 60., 12., 1.};
const double kPade5[] = {30240., 15120., 3360., 420., 30., 1.};
const double kPade7[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
const double kPade9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                         2162160., 110880., 3960., 90., 1.};
const double kPade13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                          1187353796428800.,  129060195264000.,   10559470521600.,
                          670442572800.,      33522128640.,       1323241920.,
                          40840800.,          960960.,            16380.,
                          182.,               1.};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

// F = (V - U)^{-1} (V + U): the [m/m] rational approximant to exp.
ComplexMatrix pade_solve(const ComplexMatrix& u, const ComplexMatrix& v) {
    return Eigen::PartialPivLU<ComplexMatrix>(v - u).solve(v + u);
}

ComplexMatrix expm_low_degree(const ComplexMatrix& a, const double* b, int m) {
    const Eigen::Index n = a.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    ComplexMatrix even = b[0] * id;  // V = sum b[2k] A^{2k}
    ComplexMatrix odd = b[1] * id;   // U = A * sum b[2k+1] A^{2k}
    ComplexMatrix pow = id;
    for (int k = 1; 2 * k <= m; ++k) {
        pow = pow * a2;
        even += b[2 * k] * pow;
        if (2 * k + 1 <= m) odd += b[2 * k + 1] * pow;
    }
    return pade_solve(a * odd, even);
}

// Degree-13 core with the A2/A4/A6 factorization (6 matrix products).
ComplexMatrix expm_degree13(const ComplexMatrix& a) {
    const double* b = kPade13;
    const Eigen::Index n = a.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a2 * a4;
    const ComplexMatrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const ComplexMatrix v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
    require_square(a, "expm");

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 > 709.0)
        throw OverflowRisk("expm: ||A||_1 = " + std::to_string(norm1) +
                           " exceeds the double-precision exp cap (~709)");

    if (norm1 <= kTheta3) return expm_low_degree(a, kPade3, 3);
    if (norm1 <= kTheta5) return expm_low_degree(a, kPade5, 5);
    if (norm1 <= kTheta7) return expm_low_degree(a, kPade7, 7);
    if (norm1 <= kTheta9) return expm_low_degree(a, kPade9, 9);

    int squarings = 0;
    if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    ComplexMatrix f = expm_degree13(a / std::pow(2.0, squarings));
    for (int i = 0; i < squarings; ++i) f = f * f;
    return f;
}

namespace {

// (i/T) log mu with Im(log mu) in (-pi, pi]. std::log lands in [-pi, pi];
// the -pi edge (arg of a negative real with signed-zero imaginary part) is
// remapped to +pi so the quasienergy real part falls in [-omega/2, omega/2).
Complex quasienergy_of_multiplier(Complex mu, double period, const char* who) {
    if (std::abs(mu) < 1e-300)
        throw std::invalid_argument(std::string(who) + ": singular propagator, multiplier magnitude ~ 0");
    Complex l = std::log(mu);
    if (l.imag() <= -kPi) l += Complex(0.0, 2.0 * kPi);
    return Complex(0.0, 1.0) * l / period;
}

void require_period(double period, const char* who) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw std::invalid_argument(std::string(who) + ": period must be positive and finite");
}

}  // namespace

ComplexMatrix floquet_log(const ComplexMatrix& g, double period) {
    require_square(g, "floquet_log");
    require_period(period, "floquet_log");

    const EigenDecomposition ed = eig_dense(g);
    ComplexVector lam(ed.eigenvalues.size());
    for (Eigen::Index j = 0; j < lam.size(); ++j)
        lam[j] = quasienergy_of_multiplier(ed.eigenvalues[j], period, "floquet_log");

    if (ed.condition_flag)
        throw DefectiveMonodromy(
            "floquet_log: eigenvector matrix numerically singular (exceptional point)");

    Eigen::PartialPivLU<ComplexMatrix> lu(ed.eigenvectors);
    return ed.eigenvectors * lam.asDiagonal() * lu.inverse();
}

Complex multiplier_to_quasienergy(Complex multiplier, double period) {
    require_period(period, "multiplier_to_quasienergy");
    return quasienergy_of_multiplier(multiplier, period, "multiplier_to_quasienergy");
}

ComplexVector floquet_quasienergies(const ComplexMatrix& g, double period) {
    require_square(g, "floquet_quasienergies");
    require_period(period, "floquet_quasienergies");

    const ComplexVector mu = eigvals_dense(g);
    ComplexVector eps(mu.size());
    for (Eigen::Index j = 0; j < eps.size(); ++j)
        eps[j] = quasienergy_of_multiplier(mu[j], period, "floquet_quasienergies");

    const auto order = sorted_order(eps);
    ComplexVector out(eps.size());
    for (Eigen::Index j = 0; j < out.size(); ++j) out[j] = eps[order[static_cast<std::size_t>(j)]];
    return out;
}

}  // namespace floqssh::linalg
