// bloch.hpp -- momentum-space 2x2 blocks of the bulk chain, the k-dependent
// frame rotation that concentrates the couplings onto sigma_x, and the
// closed-form single-block propagator.
//
// Conventions. The block at momentum k is
//     h(k) = (v + w cos k) sigma_x + (w sin k) sigma_y + i gamma sigma_z,
// the rotated frame removes the sigma_y part leaving r(k) sigma_x +
// i gamma sigma_z with r(k) = sqrt(v^2 + w^2 + 2 v w cos k), and the block
// eigenvalue is E = sqrt(r^2 - gamma^2) on the principal branch (real >= 0
// when r >= |gamma|, positive-imaginary otherwise). Every propagator
// coefficient used downstream depends on E only through the real number E^2,
// which keeps cos(Et) and sin(Et)/E real in both phases.
#pragma once

#include <stdexcept>
#include <vector>

#include "floqssh/types.hpp"

namespace floqssh::bloch {

struct BlochParams {
    double v = 0.25;
    double w = 0.75;
    double gamma = 0.0;
    double k = 0.0;

    void validate() const;
};

struct BlochBlock {
    double r = 0.0;    // rotated coupling, in [|v-w|, v+w]
    double phi = 0.0;  // rotation angle, full-quadrant arctangent
    Complex energy;    // principal root of r^2 - gamma^2
    bool degenerate_direction = false;  // r = 0: phi undefined, set to 0
};

// Wrap any finite momentum into [-pi, pi).
double wrap_k(double k);

// Uniform momentum grid of n points covering [-pi, pi), endpoint excluded.
std::vector<double> k_grid(int n = 201);

ComplexMatrix h_pt_k(const BlochParams& p);

double r_of_k(const BlochParams& p);

// Principal square root of the real number e2: real >= 0 branch when
// e2 >= 0, positive-imaginary branch otherwise.
Complex principal_root(double e2);

// Rotation data for the block at p.k. When r = 0 (only reachable at v = w,
// k = pi) the rotation direction is undefined; phi is set to 0 and the
// degenerate_direction flag raised instead of throwing.
BlochBlock rotate_block(const BlochParams& p);

// The rotated block r sigma_x + i gamma sigma_z itself.
ComplexMatrix rotated_hamiltonian(const BlochParams& p);

// cos(Et) and sin(Et)/E as real scalars, valid for e2 of either sign. The
// |Et| ~ 0 region (|e2*t^2| < 1e-8) is evaluated by series to avoid
// cancellation at exceptional points.
struct EvolutionCoefficients {
    double cos_et = 1.0;
    double sinc_et = 0.0;  // sin(Et)/E, -> t as E -> 0
};
EvolutionCoefficients evolution_coefficients(double e2, double t);

// exp(-i t (r sigma_x + i gamma sigma_z)) in closed form:
// cos(Et) I - i (sin(Et)/E) (r sigma_x + i gamma sigma_z).
ComplexMatrix propagator_k(const BlochParams& p, double t);

}  // namespace floqssh::bloch
