#include "floqssh/bloch.hpp"

#include <cmath>

namespace floqssh::bloch {

void BlochParams::validate() const {
    if (!std::isfinite(v) || !std::isfinite(w) || !std::isfinite(gamma) || !std::isfinite(k))
        throw std::invalid_argument("BlochParams: parameters must be finite");
    if (v < 0.0 || w < 0.0) throw std::invalid_argument("BlochParams: couplings must be >= 0");
}

double wrap_k(double k) {
    double wrapped = std::remainder(k, 2.0 * kPi);  // lands in [-pi, pi]
    if (wrapped >= kPi) wrapped -= 2.0 * kPi;
    return wrapped;
}

std::vector<double> k_grid(int n) {
    if (n < 1) throw std::invalid_argument("k_grid: need at least one point");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) grid[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * j / n;
    return grid;
}

ComplexMatrix h_pt_k(const BlochParams& p) {
    p.validate();
    const double hx = p.v + p.w * std::cos(p.k);
    const double hy = p.w * std::sin(p.k);
    ComplexMatrix h(2, 2);
    h << Complex(0.0, p.gamma), Complex(hx, -hy),
         Complex(hx, hy),       Complex(0.0, -p.gamma);
    return h;
}

double r_of_k(const BlochParams& p) {
    p.validate();
    const double r2 = p.v * p.v + p.w * p.w + 2.0 * p.v * p.w * std::cos(p.k);
    return std::sqrt(std::max(r2, 0.0));  // r2 can round to -eps at v = w, k = pi
}

Complex principal_root(double e2) {
    if (e2 >= 0.0) return Complex(std::sqrt(e2), 0.0);
    return Complex(0.0, std::sqrt(-e2));
}

BlochBlock rotate_block(const BlochParams& p) {
    BlochBlock block;
    block.r = r_of_k(p);
    if (block.r == 0.0) {
        block.phi = 0.0;
        block.degenerate_direction = true;
    } else {
        block.phi = std::atan2(p.w * std::sin(p.k), p.v + p.w * std::cos(p.k));
    }
    block.energy = principal_root(block.r * block.r - p.gamma * p.gamma);
    return block;
}

ComplexMatrix rotated_hamiltonian(const BlochParams& p) {
    const double r = r_of_k(p);
    ComplexMatrix h(2, 2);
    h << Complex(0.0, p.gamma), Complex(r, 0.0),
         Complex(r, 0.0),       Complex(0.0, -p.gamma);
    return h;
}

EvolutionCoefficients evolution_coefficients(double e2, double t) {
    if (!std::isfinite(e2) || !std::isfinite(t))
        throw std::invalid_argument("evolution_coefficients: arguments must be finite");

    const double z = e2 * t * t;  // (Et)^2, real in both phases
    EvolutionCoefficients c;
    if (std::abs(z) < 1e-8) {
        // Truncation error ~ z^3/720 < 2e-27: below double roundoff here.
        c.cos_et = 1.0 - z / 2.0 + z * z / 24.0;
        c.sinc_et = t * (1.0 - z / 6.0 + z * z / 120.0);
    } else if (e2 > 0.0) {
        const double e = std::sqrt(e2);
        c.cos_et = std::cos(e * t);
        c.sinc_et = std::sin(e * t) / e;
    } else {
        const double m = std::sqrt(-e2);  // E = i*m
        c.cos_et = std::cosh(m * t);
        c.sinc_et = std::sinh(m * t) / m;
    }
    return c;
}

ComplexMatrix propagator_k(const BlochParams& p, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("propagator_k: time must be finite");
    const double r = r_of_k(p);
    const auto [cos_et, sinc_et] = evolution_coefficients(r * r - p.gamma * p.gamma, t);
    const Complex mi(0.0, -1.0);
    ComplexMatrix u(2, 2);
    u << cos_et + sinc_et * p.gamma, mi * sinc_et * r,
         mi * sinc_et * r,           cos_et - sinc_et * p.gamma;
    return u;
}

}  // namespace floqssh::bloch
