// floquet.hpp -- the two-step drive: numeric monodromy, closed-form
// quasienergy and effective Hamiltonian for a single momentum block, the
// shifted (zone-edge-centered) Hamiltonian, and symmetry classification.
//
// The drive alternates two Hamiltonians over one period T = 2*pi/omega,
// each acting for tau = T/2: G(T) = exp(-i h2 tau) exp(-i h1 tau). For the
// rotated 2x2 block with coupling r and gain/loss gamma, everything reduces
// to the real folding variable
//     x = r sin(E tau)/E,        E^2 = r^2 - gamma^2,
// through cos(2 curlyE tau) = 1 - 2 x^2: |x| <= 1 gives a real quasienergy
// pair +-curlyE, |x| > 1 the broken pair +-(omega/2 + i eta). |x| = 1 is the
// exceptional point where the monodromy becomes defective.
#pragma once

#include <stdexcept>
#include <utility>

#include "floqssh/bloch.hpp"
#include "floqssh/lattice.hpp"
#include "floqssh/types.hpp"

namespace floqssh::floquet {

// The effective-Hamiltonian direction is undefined where sin(2 curlyE tau)
// vanishes while the half-step rotation does not: exceptional points
// (|x| = 1) and the r = 0, gamma != 0 axis.
struct ResonanceSingularity : std::runtime_error {
    explicit ResonanceSingularity(const std::string& what) : std::runtime_error(what) {}
};

enum class DriveKind {
    pt_pt,         // gain/loss sign flips between half-steps
    pt_hermitian,  // gain/loss on, then off
    two_site,      // single gain/loss dimer, sign-flip drive
};

struct DriveSpec {
    DriveKind kind = DriveKind::pt_pt;
    double omega = 1.0;

    double period() const { return 2.0 * kPi / omega; }
    double half_period() const { return kPi / omega; }
    void validate() const;
};

// The ordered pair of half-step Hamiltonians for a drive. For the lattice
// kinds both are config.sites()-dimensional; two_site ignores the lattice
// size and uses the dimer with coupling v + w = 1 and the config's gamma.
std::pair<ComplexMatrix, ComplexMatrix> drive_pair(const DriveSpec& drive,
                                                   const lattice::LatticeConfig& config);

// One-period propagator exp(-i h2 T/2) exp(-i h1 T/2); h1 acts first.
ComplexMatrix monodromy(const ComplexMatrix& h_first, const ComplexMatrix& h_second,
                        double period);

struct QuasienergySolution {
    Complex quasienergy;  // representative of the +- pair: Re in [0, omega/2], Im >= 0
    double eta = 0.0;     // Im(quasienergy) in the broken phase, else 0
    double x = 0.0;       // folding variable, real in both phases
};

// Closed-form quasienergy of one rotated block under the sign-flip drive.
// Total for r >= 0, omega > 0 (no singularities; |x| = 1 included).
QuasienergySolution quasienergy_analytic(double r, double gamma, double omega);

struct FloquetAnalytic {
    Complex quasienergy;        // as in QuasienergySolution
    double eta = 0.0;
    double x = 0.0;
    Complex prefactor;          // c in H_F = c (cos(E tau) sigma_x - i gamma (sin(E tau)/E) sigma_y)
    Eigen::Vector3cd hf_vector; // sigma_x/y/z coefficients of H_F; z component is 0
    ComplexMatrix matrix;       // the 2x2 effective Hamiltonian itself
};

// Closed-form effective Hamiltonian of one rotated block. Eigenvalues are
// +-quasienergy and exp(-i matrix T) reproduces the block monodromy.
// Throws ResonanceSingularity when the direction is undefined (see above).
FloquetAnalytic hf_analytic(double r, double gamma, double omega);

// Zone-edge-centered variant: spectrum {curlyE, omega - curlyE}, so the
// broken phase yields a conjugate pair about omega/2 and the trace is
// always omega. Pseudo-Hermitian under sigma_x in both phases. Throws
// DefectiveMonodromy at exceptional points.
ComplexMatrix hf_shifted(double r, double gamma, double omega);

// Closed-form PT status of one 2x2 block under a drive. For the sign-flip
// kinds the folding variable is x; for the mixed drive it is the half-trace
// y = cos(2 curlyE tau) of the block monodromy. Both are real, and |.| = 1
// marks the exceptional point in either case.
struct BlockPhase {
    double eta = 0.0;          // max |Im quasienergy| of the block
    double ep_distance = 0.0;  // | |folding variable| - 1 |
};
BlockPhase block_phase(DriveKind kind, double r, double gamma, double omega);

struct SymmetryFlags {
    bool sublattice = false;       // sigma_z H sigma_z = -H
    bool pseudo_hermitian = false; // sigma_x H sigma_x = H^dagger
    bool chiral = false;           // sigma_y H sigma_y = -H^dagger
};

// Deviations are measured in Frobenius norm relative to max(1, ||H||_F).
SymmetryFlags classify_symmetries(const ComplexMatrix& h, double tol = 1e-10);

// Closed-form one-period propagator of the rotated block at p.k:
//     (cos^2 - (r^2+gamma^2) s^2) I - 2 i r s (cos - gamma s sigma-structure)
// written out entrywise; equals propagator_k(-gamma, tau) * propagator_k(+gamma, tau).
ComplexMatrix monodromy_k_analytic(const bloch::BlochParams& p, double omega);

}  // namespace floqssh::floquet
