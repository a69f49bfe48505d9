#include "floqssh/lattice.hpp"

#include <cmath>

namespace floqssh::lattice {

namespace {

void require_sign(int sign, const char* who) {
    if (sign != 1 && sign != -1) throw std::invalid_argument(std::string(who) + ": sign must be +1 or -1");
}

}  // namespace

LatticeConfig LatticeConfig::from_ratio(int dimers, double v_ratio, double gamma) {
    LatticeConfig config;
    config.dimers = dimers;
    config.v = v_ratio;
    config.w = 1.0 - v_ratio;
    config.gamma = gamma;
    config.validate();
    return config;
}

void LatticeConfig::validate() const {
    if (dimers < 1) throw std::invalid_argument("LatticeConfig: dimers must be >= 1");
    if (!std::isfinite(v) || !std::isfinite(w) || !std::isfinite(gamma))
        throw std::invalid_argument("LatticeConfig: parameters must be finite");
    if (v < 0.0 || w < 0.0) throw std::invalid_argument("LatticeConfig: couplings must be >= 0");
    if (std::abs(v + w - 1.0) > 1e-12)
        throw std::invalid_argument("LatticeConfig: couplings must satisfy v + w = 1");
}

ComplexMatrix build_ssh(const LatticeConfig& config, Boundary boundary) {
    config.validate();
    const int n = config.sites();
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (int m = 0; m < config.dimers; ++m) {
        const int a = 2 * m;
        const int b = 2 * m + 1;
        h(a, b) = config.v;
        h(b, a) = config.v;
        if (m + 1 < config.dimers) {
            h(b, a + 2) = config.w;
            h(a + 2, b) = config.w;
        }
    }
    if (boundary == Boundary::periodic && config.dimers > 1) {
        h(n - 1, 0) = config.w;  // (M,B)-(1,A) bond closes the ring
        h(0, n - 1) = config.w;
    }
    return h;
}

ComplexMatrix build_pt_ssh(const LatticeConfig& config, int sign, Boundary boundary) {
    require_sign(sign, "build_pt_ssh");
    ComplexMatrix h = build_ssh(config, boundary);
    if (config.gamma == 0.0) return h;  // bitwise-identical to the Hermitian chain
    const Complex onsite(0.0, sign * config.gamma);
    for (int m = 0; m < config.dimers; ++m) {
        h(2 * m, 2 * m) += onsite;       // gain on A
        h(2 * m + 1, 2 * m + 1) -= onsite;  // loss on B
    }
    return h;
}

ComplexMatrix build_two_site(double coupling, double gamma, int sign) {
    require_sign(sign, "build_two_site");
    if (!std::isfinite(coupling) || !std::isfinite(gamma))
        throw std::invalid_argument("build_two_site: parameters must be finite");
    ComplexMatrix h(2, 2);
    h << Complex(0.0, sign * gamma), Complex(coupling, 0.0),
         Complex(coupling, 0.0),     Complex(0.0, -sign * gamma);
    return h;
}

}  // namespace floqssh::lattice
