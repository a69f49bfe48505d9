#include "floqssh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>

#include "floqssh/bloch.hpp"
#include "floqssh/linalg.hpp"

namespace floqssh::analysis {

namespace {

constexpr double kExceptionalTol = 1e-10;

bool energy_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Weight on the first (left) or last (right) ceil(N/10) sites.
double end_weight(const ComplexVector& state, bool left) {
    const Eigen::Index n = state.size();
    const Eigen::Index span = (n + 9) / 10;
    double w = 0.0;
    for (Eigen::Index i = 0; i < span; ++i) {
        const Eigen::Index m = left ? i : n - 1 - i;
        w += std::norm(state[m]);
    }
    return w;
}

SpectrumEntry make_entry(Complex energy, ComplexVector state) {
    SpectrumEntry e;
    e.energy = energy;
    e.state = std::move(state);
    e.ipr = ipr(e.state);
    return e;
}

}  // namespace

RealVector linspace(double lo, double hi, int n) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("linspace: bounds must be finite");
    }
    if (n == 1) {
        if (lo != hi) throw std::invalid_argument("linspace: single point requires lo == hi");
        RealVector v(1);
        v[0] = lo;
        return v;
    }
    if (n < 2 || !(lo < hi)) {
        throw std::invalid_argument("linspace: need n >= 2 and lo < hi");
    }
    RealVector v(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    v[n - 1] = hi;
    return v;
}

double ipr(const ComplexVector& state) {
    if (state.size() == 0) throw std::invalid_argument("ipr: empty state");
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw NotNormalized("ipr: state 2-norm deviates from 1 by " + std::to_string(norm - 1.0));
    }
    return state.cwiseAbs2().squaredNorm();
}

double hausdorff_distance(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() == 0 || b.size() == 0) {
        throw std::invalid_argument("hausdorff_distance: empty spectrum");
    }
    auto one_sided = [](const ComplexVector& p, const ComplexVector& q) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < q.size(); ++j) best = std::min(best, std::abs(p[i] - q[j]));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

Spectrum static_spectrum(const ComplexMatrix& h) {
    const auto ed = linalg::eig_dense(h);
    Spectrum out;
    out.entries.reserve(static_cast<std::size_t>(ed.eigenvalues.size()));
    for (Eigen::Index j = 0; j < ed.eigenvalues.size(); ++j) {
        out.entries.push_back(make_entry(ed.eigenvalues[j], ed.eigenvectors.col(j)));
    }
    return out;
}

Spectrum floquet_spectrum(const ComplexMatrix& h_first, const ComplexMatrix& h_second,
                          double period) {
    const ComplexMatrix g = floquet::monodromy(h_first, h_second, period);
    const auto ed = linalg::eig_dense(g);
    Spectrum out;
    out.entries.reserve(static_cast<std::size_t>(ed.eigenvalues.size()));
    for (Eigen::Index j = 0; j < ed.eigenvalues.size(); ++j) {
        const Complex eps = linalg::multiplier_to_quasienergy(ed.eigenvalues[j], period);
        out.entries.push_back(make_entry(eps, ed.eigenvectors.col(j)));
    }
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) {
                         return energy_less(a.energy, b.energy);
                     });
    return out;
}

double pt_broken_measure(const Spectrum& spectrum) {
    if (spectrum.entries.empty()) {
        throw std::invalid_argument("pt_broken_measure: empty spectrum");
    }
    double worst = 0.0;
    for (const auto& e : spectrum.entries) worst = std::max(worst, std::abs(e.energy.imag()));
    return worst;
}

double distance_to_zero_mod(double re, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("distance_to_zero_mod: omega must be positive");
    }
    return std::abs(std::remainder(re, omega));
}

const char* cell_status_name(CellStatus status) {
    switch (status) {
        case CellStatus::ok: return "OK";
        case CellStatus::exceptional: return "EXCEPTIONAL";
        case CellStatus::defective: return "DEFECTIVE";
    }
    return "UNKNOWN";
}

void PhaseDiagramSpec::validate() const {
    if (nx < 2 || ny < 2) throw std::invalid_argument("phase grid needs at least 2x2 cells");
    if (dimers < 1) throw std::invalid_argument("dimers must be >= 1");
    if (k_points < 2) throw std::invalid_argument("momentum scan needs >= 2 points");
    for (double b : {x_lo, x_hi, omega_lo, omega_hi, fixed_v, fixed_gamma}) {
        if (!std::isfinite(b)) throw std::invalid_argument("phase grid bounds must be finite");
    }
    if (!(x_lo < x_hi) || x_lo < 0.0) throw std::invalid_argument("x range must satisfy 0 <= lo < hi");
    if (!(omega_lo < omega_hi) || omega_lo <= 0.0) {
        throw std::invalid_argument("omega range must satisfy 0 < lo < hi");
    }
    if (plane == PhasePlane::v_omega) {
        if (x_hi > 1.0) throw std::invalid_argument("v/v_T range must stay within [0, 1]");
        if (fixed_gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
        if (kind == floquet::DriveKind::two_site) {
            throw std::invalid_argument("the two-site drive has no v parameter; use the omega-gamma plane");
        }
    } else {
        if (fixed_v < 0.0 || fixed_v > 1.0) throw std::invalid_argument("v/v_T must lie in [0, 1]");
    }
}

PhaseGrid phase_diagram(const PhaseDiagramSpec& spec) {
    spec.validate();

    PhaseGrid grid;
    grid.x_axis.name = spec.plane == PhasePlane::omega_gamma ? "gamma_over_vT" : "v_over_vT";
    grid.x_axis.values = linspace(spec.x_lo, spec.x_hi, spec.nx);
    grid.y_axis.name = "omega_over_vT";
    grid.y_axis.values = linspace(spec.omega_lo, spec.omega_hi, spec.ny);
    grid.values.resize(spec.ny, spec.nx);
    grid.flags.resize(spec.ny, spec.nx);

    const std::vector<double> ks = bloch::k_grid(spec.k_points);
    const bool two_site = spec.kind == floquet::DriveKind::two_site;

#if defined(_OPENMP)
#pragma omp parallel for collapse(2) schedule(static)
#endif
    for (int iy = 0; iy < spec.ny; ++iy) {
        for (int ix = 0; ix < spec.nx; ++ix) {
            const double omega = grid.y_axis.values[iy];
            double v = spec.fixed_v;
            double gamma = spec.fixed_gamma;
            if (spec.plane == PhasePlane::omega_gamma) {
                gamma = grid.x_axis.values[ix];
            } else {
                v = grid.x_axis.values[ix];
            }

            // Closed-form per-block scan: broken measure of the translation-
            // invariant system and distance to the nearest exceptional point.
            double eta_analytic = 0.0;
            double ep_distance = std::numeric_limits<double>::infinity();
            if (two_site) {
                const auto bp = floquet::block_phase(spec.kind, 1.0, gamma, omega);
                eta_analytic = bp.eta;
                ep_distance = bp.ep_distance;
            } else {
                const double w = 1.0 - v;
                for (double k : ks) {
                    bloch::BlochParams p;
                    p.v = v;
                    p.w = w;
                    p.gamma = gamma;
                    p.k = k;
                    const auto bp = floquet::block_phase(spec.kind, bloch::r_of_k(p), gamma, omega);
                    eta_analytic = std::max(eta_analytic, bp.eta);
                    ep_distance = std::min(ep_distance, bp.ep_distance);
                }
            }

            if (ep_distance <= kExceptionalTol) {
                grid.values(iy, ix) = eta_analytic;
                grid.flags(iy, ix) = static_cast<int>(CellStatus::exceptional);
                continue;
            }

            try {
                const auto config = lattice::LatticeConfig::from_ratio(spec.dimers, v, gamma);
                floquet::DriveSpec drive;
                drive.kind = spec.kind;
                drive.omega = omega;
                const auto pair = floquet::drive_pair(drive, config);
                const ComplexMatrix g = floquet::monodromy(pair.first, pair.second, drive.period());
                const auto ed = linalg::eig_dense(g);
                if (ed.condition_flag) {
                    throw linalg::DefectiveMonodromy("phase cell at an exceptional point");
                }
                double worst = 0.0;
                for (Eigen::Index j = 0; j < ed.eigenvalues.size(); ++j) {
                    const Complex eps =
                        linalg::multiplier_to_quasienergy(ed.eigenvalues[j], drive.period());
                    worst = std::max(worst, std::abs(eps.imag()));
                }
                grid.values(iy, ix) = worst;
                grid.flags(iy, ix) = static_cast<int>(CellStatus::ok);
            } catch (const std::runtime_error&) {
                // Eigensolve failed (defective or non-convergent monodromy):
                // keep the analytic per-block value so the sweep continues.
                grid.values(iy, ix) = eta_analytic;
                grid.flags(iy, ix) = static_cast<int>(CellStatus::defective);
            }
        }
    }
    return grid;
}

void BandSweepSpec::validate() const {
    if (dimers < 1) throw std::invalid_argument("dimers must be >= 1");
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw std::invalid_argument("gamma must be nonnegative and finite");
    }
    if (v_values.size() == 0) throw std::invalid_argument("band sweep needs at least one v value");
    for (Eigen::Index i = 0; i < v_values.size(); ++i) {
        if (!std::isfinite(v_values[i]) || v_values[i] < 0.0 || v_values[i] > 1.0) {
            throw std::invalid_argument("v/v_T values must lie in [0, 1]");
        }
        if (i > 0 && !(v_values[i - 1] < v_values[i])) {
            throw std::invalid_argument("v/v_T grid must be strictly increasing");
        }
    }
    if (drive) {
        drive->validate();
        if (drive->kind == floquet::DriveKind::two_site) {
            throw std::invalid_argument("band sweeps are defined for lattice drives only");
        }
    }
}

SweepResult band_sweep(const BandSweepSpec& spec) {
    spec.validate();
    SweepResult out;
    out.points.reserve(static_cast<std::size_t>(spec.v_values.size()));
    for (Eigen::Index i = 0; i < spec.v_values.size(); ++i) {
        SweepPoint point;
        point.v = spec.v_values[i];
        const auto config = lattice::LatticeConfig::from_ratio(spec.dimers, point.v, spec.gamma);
        try {
            if (spec.drive) {
                const auto pair = floquet::drive_pair(*spec.drive, config);
                point.spectrum = floquet_spectrum(pair.first, pair.second, spec.drive->period());
            } else {
                point.spectrum = static_spectrum(lattice::build_pt_ssh(config));
            }
        } catch (const std::runtime_error&) {
            point.defective = true;
            point.spectrum = Spectrum{};
        }
        out.points.push_back(std::move(point));
    }
    return out;
}

void EdgeStateOptions::validate() const {
    if (!(energy_tol > 0.0) || !(ipr_min > 0.0)) {
        throw std::invalid_argument("edge-state thresholds must be positive");
    }
    if (omega && (!(*omega > 0.0) || !std::isfinite(*omega))) {
        throw std::invalid_argument("omega must be positive and finite");
    }
}

std::vector<EdgeState> edge_states(const Spectrum& spectrum, const EdgeStateOptions& options) {
    options.validate();

    std::vector<const SpectrumEntry*> selected;
    for (const auto& e : spectrum.entries) {
        const double d = options.omega ? distance_to_zero_mod(e.energy.real(), *options.omega)
                                       : std::abs(e.energy.real());
        if (d <= options.energy_tol) selected.push_back(&e);
    }

    std::vector<EdgeState> out;
    auto emit = [&out, &options](Complex energy, const ComplexVector& state) {
        EdgeState es;
        es.energy = energy;
        es.state = state;
        es.ipr = ipr(state);
        es.left_weight = end_weight(state, true);
        es.right_weight = end_weight(state, false);
        if (es.ipr >= options.ipr_min) out.push_back(std::move(es));
    };

    // A near-degenerate zero-mode pair spans a two-dimensional edge subspace;
    // the eigensolver is free to return hybridized combinations spread over
    // both chain ends. Remix to the extreme half-chain-imbalance states,
    // which are the side-polarized representatives of the same subspace.
    const bool remix = options.remix_degenerate_pair && selected.size() == 2 &&
                       std::abs(selected[0]->energy - selected[1]->energy) <=
                           2.0 * options.energy_tol &&
                       selected[0]->state.size() >= 2;
    if (remix) {
        const Eigen::Index n = selected[0]->state.size();
        ComplexMatrix psi(n, 2);
        psi.col(0) = selected[0]->state;
        psi.col(1) = selected[1]->state;
        RealVector imbalance(n);
        for (Eigen::Index m = 0; m < n; ++m) imbalance[m] = m < n / 2 ? 1.0 : -1.0;
        const ComplexMatrix overlap = psi.adjoint() * psi;
        const ComplexMatrix weighted = psi.adjoint() * imbalance.asDiagonal() * psi;
        Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> ges(weighted, overlap);
        if (ges.info() == Eigen::Success) {
            // Eigenvalues ascend, so column 1 is the left-polarized state;
            // report it first, paired with the lower (Re, Im) energy.
            const ComplexVector left = (psi * ges.eigenvectors().col(1)).normalized();
            const ComplexVector right = (psi * ges.eigenvectors().col(0)).normalized();
            emit(selected[0]->energy, left);
            emit(selected[1]->energy, right);
            return out;
        }
    }

    for (const auto* e : selected) emit(e->energy, e->state);
    return out;
}

}  // namespace floqssh::analysis
