#include "floqssh/floquet.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "floqssh/linalg.hpp"

namespace floqssh::floquet {

namespace {

void require_positive_omega(double omega) {
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw std::invalid_argument("drive frequency must be positive and finite");
    }
}

// |sin(E tau)| for E^2 = e2 of either sign; used to tell G = I apart from
// the r = 0 singular axis where the propagator direction is lost.
double abs_sin_etau(double e2, const bloch::EvolutionCoefficients& co) {
    return std::sqrt(std::abs(e2)) * std::abs(co.sinc_et);
}

}  // namespace

void DriveSpec::validate() const { require_positive_omega(omega); }

std::pair<ComplexMatrix, ComplexMatrix> drive_pair(const DriveSpec& drive,
                                                   const lattice::LatticeConfig& config) {
    drive.validate();
    config.validate();
    switch (drive.kind) {
        case DriveKind::pt_pt:
            return {lattice::build_pt_ssh(config, +1), lattice::build_pt_ssh(config, -1)};
        case DriveKind::pt_hermitian:
            return {lattice::build_pt_ssh(config, +1), lattice::build_ssh(config)};
        case DriveKind::two_site:
            return {lattice::build_two_site(1.0, config.gamma, +1),
                    lattice::build_two_site(1.0, config.gamma, -1)};
    }
    throw std::invalid_argument("unknown drive kind");
}

ComplexMatrix monodromy(const ComplexMatrix& h_first, const ComplexMatrix& h_second,
                        double period) {
    if (!std::isfinite(period) || period <= 0.0) {
        throw std::invalid_argument("drive period must be positive and finite");
    }
    if (h_first.rows() != h_second.rows() || h_first.cols() != h_second.cols()) {
        throw std::invalid_argument("half-step Hamiltonians must have matching shape");
    }
    const Complex step(0.0, -0.5 * period);
    return linalg::expm(step * h_second) * linalg::expm(step * h_first);
}

QuasienergySolution quasienergy_analytic(double r, double gamma, double omega) {
    if (!std::isfinite(r) || r < 0.0 || !std::isfinite(gamma)) {
        throw std::invalid_argument("coupling must be nonnegative and parameters finite");
    }
    require_positive_omega(omega);

    const double tau = kPi / omega;
    const double e2 = r * r - gamma * gamma;
    const auto co = bloch::evolution_coefficients(e2, tau);

    QuasienergySolution out;
    out.x = r * co.sinc_et;
    const double ax = std::abs(out.x);
    if (ax <= 1.0) {
        out.eta = 0.0;
        out.quasienergy = Complex(std::asin(ax) / tau, 0.0);
    } else {
        out.eta = std::asinh(std::sqrt((ax - 1.0) * (ax + 1.0))) / tau;
        out.quasienergy = Complex(0.5 * omega, out.eta);
    }
    return out;
}

FloquetAnalytic hf_analytic(double r, double gamma, double omega) {
    const auto sol = quasienergy_analytic(r, gamma, omega);
    const double tau = kPi / omega;
    const double e2 = r * r - gamma * gamma;
    const auto co = bloch::evolution_coefficients(e2, tau);
    const double ax = std::abs(sol.x);

    if (std::abs(ax - 1.0) <= 1e-10) {
        throw ResonanceSingularity("effective Hamiltonian undefined at exceptional point |x| = 1");
    }

    FloquetAnalytic out;
    out.quasienergy = sol.quasienergy;
    out.eta = sol.eta;
    out.x = sol.x;

    if (sol.x == 0.0) {
        if (abs_sin_etau(e2, co) > 0.0) {
            throw ResonanceSingularity(
                "effective Hamiltonian undefined on the zero-coupling gain/loss axis");
        }
        // Monodromy is the identity; the principal logarithm vanishes.
        out.prefactor = Complex(0.0, 0.0);
        out.hf_vector.setZero();
        out.matrix = ComplexMatrix::Zero(2, 2);
        return out;
    }

    const double sign = sol.x > 0.0 ? 1.0 : -1.0;
    if (ax < 1.0) {
        out.prefactor = Complex(std::asin(sol.x) / (tau * std::sqrt((1.0 - ax) * (1.0 + ax))), 0.0);
    } else {
        // Broken phase: eigenvalues +-(omega/2 + i eta); i * (omega/2 + i eta)
        // has real part -eta.
        out.prefactor =
            sign * Complex(-sol.eta, 0.5 * omega) / std::sqrt((ax - 1.0) * (ax + 1.0));
    }

    const double ce = co.cos_et;
    const double s = co.sinc_et;
    out.hf_vector(0) = out.prefactor * ce;
    out.hf_vector(1) = Complex(0.0, -1.0) * out.prefactor * gamma * s;
    out.hf_vector(2) = Complex(0.0, 0.0);

    out.matrix = ComplexMatrix::Zero(2, 2);
    out.matrix(0, 1) = out.prefactor * (ce - gamma * s);
    out.matrix(1, 0) = out.prefactor * (ce + gamma * s);
    return out;
}

ComplexMatrix hf_shifted(double r, double gamma, double omega) {
    const auto sol = quasienergy_analytic(r, gamma, omega);
    const double ax = std::abs(sol.x);
    if (std::abs(ax - 1.0) <= 1e-10) {
        throw linalg::DefectiveMonodromy("monodromy is defective at exceptional point |x| = 1");
    }

    if (sol.x == 0.0) {
        // Quasienergy pair {0, 0}; split it to {0, omega} on the symmetric /
        // antisymmetric basis, which keeps the result pseudo-Hermitian.
        ComplexMatrix out(2, 2);
        const double h = 0.5 * omega;
        out << h, -h, -h, h;
        return out;
    }

    const auto an = hf_analytic(r, gamma, omega);
    const Complex eps = an.quasienergy;

    ComplexMatrix vectors(2, 2);
    vectors.col(0) << an.matrix(0, 1), eps;
    vectors.col(1) << an.matrix(0, 1), -eps;
    vectors.col(0).normalize();
    vectors.col(1).normalize();

    ComplexMatrix shifted = ComplexMatrix::Zero(2, 2);
    shifted(0, 0) = eps;
    shifted(1, 1) = omega - eps;
    return vectors * shifted * Eigen::PartialPivLU<ComplexMatrix>(vectors).inverse();
}

BlockPhase block_phase(DriveKind kind, double r, double gamma, double omega) {
    BlockPhase out;
    if (kind != DriveKind::pt_hermitian) {
        const auto sol = quasienergy_analytic(r, gamma, omega);
        out.eta = sol.eta;
        out.ep_distance = std::abs(std::abs(sol.x) - 1.0);
        return out;
    }

    if (!std::isfinite(r) || r < 0.0 || !std::isfinite(gamma)) {
        throw std::invalid_argument("coupling must be nonnegative and parameters finite");
    }
    require_positive_omega(omega);
    const double tau = kPi / omega;
    const double e2 = r * r - gamma * gamma;
    const auto co = bloch::evolution_coefficients(e2, tau);
    // Half-trace of exp(-i r sigma_x tau) exp(-i (r sigma_x + i gamma sigma_z) tau).
    const double y = std::cos(r * tau) * co.cos_et - r * std::sin(r * tau) * co.sinc_et;
    const double ay = std::abs(y);
    out.eta = ay > 1.0 ? std::acosh(ay) / (2.0 * tau) : 0.0;
    out.ep_distance = std::abs(ay - 1.0);
    return out;
}

SymmetryFlags classify_symmetries(const ComplexMatrix& h, double tol) {
    if (h.rows() != 2 || h.cols() != 2) {
        throw std::invalid_argument("symmetry classification expects a 2x2 block");
    }
    if (!std::isfinite(tol) || tol < 0.0) {
        throw std::invalid_argument("tolerance must be nonnegative");
    }
    const double scale = std::max(1.0, h.norm());
    const ComplexMatrix sx = pauli_x();
    const ComplexMatrix sy = pauli_y();
    const ComplexMatrix sz = pauli_z();
    const ComplexMatrix hdag = h.adjoint();

    SymmetryFlags flags;
    flags.sublattice = (sz * h * sz + h).norm() <= tol * scale;
    flags.pseudo_hermitian = (sx * h * sx - hdag).norm() <= tol * scale;
    flags.chiral = (sy * h * sy + hdag).norm() <= tol * scale;
    return flags;
}

ComplexMatrix monodromy_k_analytic(const bloch::BlochParams& p, double omega) {
    p.validate();
    require_positive_omega(omega);
    const double tau = kPi / omega;
    const double r = bloch::r_of_k(p);
    const double gamma = p.gamma;
    const double e2 = r * r - gamma * gamma;
    const auto co = bloch::evolution_coefficients(e2, tau);
    const double c = co.cos_et;
    const double s = co.sinc_et;

    ComplexMatrix g(2, 2);
    const double diag = c * c - (r * r + gamma * gamma) * s * s;
    g(0, 0) = Complex(diag, 0.0);
    g(1, 1) = Complex(diag, 0.0);
    g(0, 1) = Complex(0.0, -2.0 * r * s) * (c - gamma * s);
    g(1, 0) = Complex(0.0, -2.0 * r * s) * (c + gamma * s);
    return g;
}

}  // namespace floqssh::floquet
