// lattice.hpp -- real-space Hamiltonians for the dimerized chain: Hermitian
// couplings v (intra-dimer) and w (inter-dimer) with the normalization
// v + w = 1 setting the unit of energy, plus balanced gain/loss +i*gamma on
// A sites and -i*gamma on B sites.
#pragma once

#include <stdexcept>

#include "floqssh/types.hpp"

namespace floqssh::lattice {

enum class Sublattice { A, B };
enum class Boundary { open, periodic };

// Cell index m runs 1..M; sites are stored A,B,A,B,... ascending in m, so the
// flattened index is 2(m-1) for A and 2(m-1)+1 for B.
struct SiteIndex {
    int cell = 1;
    Sublattice sublattice = Sublattice::A;

    int flat() const { return 2 * (cell - 1) + (sublattice == Sublattice::A ? 0 : 1); }
    static SiteIndex from_flat(int index) {
        return {index / 2 + 1, index % 2 == 0 ? Sublattice::A : Sublattice::B};
    }
};

struct LatticeConfig {
    int dimers = 20;
    double v = 0.25;
    double w = 0.75;
    double gamma = 0.0;

    // Couplings from the dimensionless ratio v/(v+w); w fills the remainder.
    static LatticeConfig from_ratio(int dimers, double v_ratio, double gamma = 0.0);

    int sites() const { return 2 * dimers; }
    void validate() const;
};

// Hermitian chain: v on (m,A)-(m,B) bonds, w on (m,B)-(m+1,A) bonds, open
// ends by default. The periodic variant closes the chain with one extra w
// bond; it exists to test bulk thresholds without edge effects.
ComplexMatrix build_ssh(const LatticeConfig& config, Boundary boundary = Boundary::open);

// build_ssh plus the staggered imaginary potential sign*i*gamma*(+1 on A,
// -1 on B). sign=-1 yields the entrywise complex conjugate (time-reversed
// partner), since the hoppings are real.
ComplexMatrix build_pt_ssh(const LatticeConfig& config, int sign = +1,
                           Boundary boundary = Boundary::open);

// Minimal gain/loss dimer: coupling*sigma_x + sign*i*gamma*sigma_z.
ComplexMatrix build_two_site(double coupling, double gamma, int sign = +1);

}  // namespace floqssh::lattice
