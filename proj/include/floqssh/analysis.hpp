// analysis.hpp -- spectral post-processing: IPR, PT-phase classification,
// band sweeps over v/v_T, phase-diagram grids, and edge-state extraction.
// Everything is a pure function of its arguments; grid cells and sweep
// points are independent and may be evaluated in any order.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floqssh/floquet.hpp"
#include "floqssh/lattice.hpp"
#include "floqssh/types.hpp"

namespace floqssh::analysis {

struct NotNormalized : std::runtime_error {
    explicit NotNormalized(const std::string& what) : std::runtime_error(what) {}
};

// n uniformly spaced values from lo to hi inclusive; n >= 2, or n == 1 with
// lo == hi. Endpoints are exact.
RealVector linspace(double lo, double hi, int n);

// Inverse participation ratio sum_m |psi_m|^4 of a unit-2-norm state.
// Throws NotNormalized when the 2-norm deviates from 1 by more than 1e-8.
double ipr(const ComplexVector& state);

// Symmetric Hausdorff distance between two spectra viewed as point sets,
// insensitive to ordering and to +-pair relabeling.
double hausdorff_distance(const ComplexVector& a, const ComplexVector& b);

struct SpectrumEntry {
    Complex energy;
    ComplexVector state;  // unit 2-norm right eigenvector
    double ipr = 0.0;
};

// Entries sorted by (Re, Im) of energy.
struct Spectrum {
    std::vector<SpectrumEntry> entries;

    int sites() const { return entries.empty() ? 0 : static_cast<int>(entries.front().state.size()); }
};

// Eigen-decomposition of a static Hamiltonian, repackaged with IPRs.
Spectrum static_spectrum(const ComplexMatrix& h);

// Quasienergy spectrum of the two-step drive: eigenvectors of the monodromy
// with principal-branch quasienergies, Re in [-omega/2, omega/2). h_first
// acts over the first half-period.
Spectrum floquet_spectrum(const ComplexMatrix& h_first, const ComplexMatrix& h_second,
                          double period);

// max |Im energy| over the spectrum. Throws std::invalid_argument when empty.
double pt_broken_measure(const Spectrum& spectrum);

// Distance of re to the nearest integer multiple of omega; selection measure
// for zero modes of a folded quasienergy spectrum.
double distance_to_zero_mod(double re, double omega);

enum class CellStatus : int {
    ok = 0,
    exceptional = 1,  // some block sits within 1e-10 of |folding variable| = 1
    defective = 2,    // real-space eigensolve failed; value from the analytic route
};
const char* cell_status_name(CellStatus status);

enum class PhasePlane {
    omega_gamma,  // x = gamma/v_T, y = omega/v_T, v fixed
    v_omega,      // x = v/v_T,     y = omega/v_T, gamma fixed
};

struct PhaseAxis {
    std::string name;
    RealVector values;
};

struct PhaseGrid {
    PhaseAxis x_axis;
    PhaseAxis y_axis;
    RealMatrix values;                                       // ny x nx, max |Im eps|
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> flags;  // CellStatus per cell

    CellStatus flag(Eigen::Index iy, Eigen::Index ix) const {
        return static_cast<CellStatus>(flags(iy, ix));
    }
};

struct PhaseDiagramSpec {
    floquet::DriveKind kind = floquet::DriveKind::pt_pt;
    PhasePlane plane = PhasePlane::omega_gamma;
    int nx = 201;
    int ny = 201;
    double x_lo = 0.0;
    double x_hi = 1.0;
    double omega_lo = 0.3;
    double omega_hi = 5.0;
    double fixed_v = 0.25;     // used by the omega_gamma plane
    double fixed_gamma = 0.2;  // used by the v_omega plane
    int dimers = 20;
    int k_points = 201;  // momentum scan for the analytic exceptional-point check

    void validate() const;
};

// Per cell: analytic exceptional-point scan first; otherwise real-space
// monodromy + principal logarithm + pt_broken_measure, falling back to the
// analytic block value on solver failure (flagged DEFECTIVE). Deterministic
// regardless of evaluation order.
PhaseGrid phase_diagram(const PhaseDiagramSpec& spec);

struct BandSweepSpec {
    int dimers = 20;
    double gamma = 0.0;
    RealVector v_values;  // strictly increasing, within [0, 1]
    std::optional<floquet::DriveSpec> drive;  // absent: static spectrum

    void validate() const;
};

struct SweepPoint {
    double v = 0.0;
    Spectrum spectrum;
    bool defective = false;  // eigensolve failed at this point; spectrum empty
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

SweepResult band_sweep(const BandSweepSpec& spec);

struct EdgeState {
    Complex energy;
    ComplexVector state;
    double ipr = 0.0;
    double left_weight = 0.0;   // sum |psi|^2 over the first ceil(N/10) sites
    double right_weight = 0.0;  // same over the last ceil(N/10) sites
};

struct EdgeStateOptions {
    double energy_tol = 1e-3;
    double ipr_min = 0.2;
    std::optional<double> omega;  // set for quasienergy spectra: select by |Re e mod omega|
    bool remix_degenerate_pair = true;

    void validate() const;
};

// Zero-mode extraction: entries with |Re energy| <= energy_tol (static), or
// Re energy within energy_tol of a multiple of omega (Floquet), then
// ipr >= ipr_min. When exactly two states pass the energy cut and their
// energies agree within 2*energy_tol, the pair spans a degenerate edge
// subspace whose eigenvectors may hybridize across the chain; it is remixed
// into maximally side-polarized combinations (half-chain imbalance
// eigenvectors) before the IPR cut. Possibly empty result.
std::vector<EdgeState> edge_states(const Spectrum& spectrum, const EdgeStateOptions& options);

}  // namespace floqssh::analysis
