#include "floqssh/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "floqssh/analysis.hpp"
#include "floqssh/bloch.hpp"
#include "floqssh/io.hpp"
#include "floqssh/lattice.hpp"
#include "floqssh/linalg.hpp"
#include "floqssh/version.hpp"

namespace floqssh::cli {

namespace {

double parse_double_strict(const std::string& text, const char* what) {
    double x = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, x);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + ": cannot parse number '" + text + "'");
    }
    return x;
}

int parse_int_strict(const std::string& text, const char* what) {
    int x = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, x);
    if (res.ec != std::errc() || res.ptr != end) {
        throw std::invalid_argument(std::string(what) + ": cannot parse integer '" + text + "'");
    }
    return x;
}

io::Format parse_format(const std::string& name) {
    if (name == "csv") return io::Format::csv;
    if (name == "json") return io::Format::json;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

double require_scalar(const std::string& spec, const char* what) {
    const RealVector v = parse_scalar_or_range(spec);
    if (v.size() != 1) {
        throw std::invalid_argument(std::string(what) + ": expected a scalar, got a range");
    }
    return v[0];
}

// Options shared by every subcommand; each holds its own copy so defaults
// can differ per subcommand.
struct RunConfig {
    int dimers = 20;
    std::string v_spec = "0:1:101";
    double gamma = 0.0;
    double omega = 0.0;  // 0 means "static" where a drive is optional
    std::string drive = "pt-pt";
    std::string grid = "201x201";
    std::string plane = "omega-gamma";
    double x_min = 0.0;
    double x_max = 1.0;
    double omega_min = 0.3;
    double omega_max = 5.0;
    int k_points = 201;
    double energy_tol = 1e-3;
    double ipr_min = 0.2;
    std::string out;
    std::string format = "csv";
    std::string families = "monodromy-agreement,symmetry-dichotomy,coefficient-reality";
    std::string inject;
    int draws = 10000;
    std::string config;  // consumed before parsing; kept for --help only
};

using Meta = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double x) { return io::format_double(x); }

// ---------------------------------------------------------------- ssh-bands

int cmd_ssh_bands(const RunConfig& cfg) {
    analysis::BandSweepSpec spec;
    spec.dimers = cfg.dimers;
    spec.gamma = 0.0;
    spec.v_values = parse_scalar_or_range(cfg.v_spec);
    const auto result = analysis::band_sweep(spec);

    io::Table t;
    t.metadata = {{"subcommand", "ssh-bands"},
                  {"dimers", std::to_string(cfg.dimers)},
                  {"v_over_vt", cfg.v_spec}};
    t.columns = {"v_over_vt", "eig_index", "re_E", "im_E", "ipr"};
    for (const auto& point : result.points) {
        if (point.defective) {
            t.metadata.emplace_back("warning", "eigensolve failed at v=" + fmt(point.v));
            continue;
        }
        for (std::size_t j = 0; j < point.spectrum.entries.size(); ++j) {
            const auto& e = point.spectrum.entries[j];
            t.rows.push_back({point.v, static_cast<std::int64_t>(j), e.energy.real(),
                              e.energy.imag(), e.ipr});
        }
    }
    io::write_table(t, cfg.out, parse_format(cfg.format));
    return 0;
}

// ---------------------------------------------------------------- static-pt

int cmd_static_pt(const RunConfig& cfg) {
    analysis::BandSweepSpec spec;
    spec.dimers = cfg.dimers;
    spec.gamma = cfg.gamma;
    spec.v_values = parse_scalar_or_range(cfg.v_spec);
    const auto result = analysis::band_sweep(spec);

    io::Table t;
    t.metadata = {{"subcommand", "static-pt"},
                  {"dimers", std::to_string(cfg.dimers)},
                  {"v_over_vt", cfg.v_spec},
                  {"gamma_over_vt", fmt(cfg.gamma)}};
    t.columns = {"v_over_vt", "gamma_over_vt", "eig_index", "re_E", "im_E", "ipr"};
    for (const auto& point : result.points) {
        if (point.defective) {
            t.metadata.emplace_back("warning", "eigensolve failed at v=" + fmt(point.v));
            continue;
        }
        for (std::size_t j = 0; j < point.spectrum.entries.size(); ++j) {
            const auto& e = point.spectrum.entries[j];
            t.rows.push_back({point.v, cfg.gamma, static_cast<std::int64_t>(j), e.energy.real(),
                              e.energy.imag(), e.ipr});
        }
    }
    io::write_table(t, cfg.out, parse_format(cfg.format));
    return 0;
}

// --------------------------------------------------------- floquet-spectrum

int cmd_floquet_spectrum(const RunConfig& cfg) {
    analysis::BandSweepSpec spec;
    spec.dimers = cfg.dimers;
    spec.gamma = cfg.gamma;
    spec.v_values = parse_scalar_or_range(cfg.v_spec);
    floquet::DriveSpec drive;
    drive.kind = parse_drive(cfg.drive);
    drive.omega = cfg.omega;
    spec.drive = drive;
    const auto result = analysis::band_sweep(spec);

    io::Table t;
    t.metadata = {{"subcommand", "floquet-spectrum"},
                  {"dimers", std::to_string(cfg.dimers)},
                  {"v_over_vt", cfg.v_spec},
                  {"gamma_over_vt", fmt(cfg.gamma)},
                  {"omega_over_vt", fmt(cfg.omega)},
                  {"drive", cfg.drive}};
    t.columns = {"v_over_vt", "eig_index", "re_eps", "im_eps", "ipr", "status"};
    for (const auto& point : result.points) {
        if (point.defective) {
            t.rows.push_back({point.v, static_cast<std::int64_t>(-1), 0.0, 0.0, 0.0,
                              std::string("DEFECTIVE")});
            continue;
        }
        for (std::size_t j = 0; j < point.spectrum.entries.size(); ++j) {
            const auto& e = point.spectrum.entries[j];
            t.rows.push_back({point.v, static_cast<std::int64_t>(j), e.energy.real(),
                              e.energy.imag(), e.ipr, std::string("OK")});
        }
    }
    io::write_table(t, cfg.out, parse_format(cfg.format));
    return 0;
}

// ------------------------------------------------------------ phase-diagram

analysis::PhasePlane parse_plane(const std::string& name) {
    if (name == "omega-gamma") return analysis::PhasePlane::omega_gamma;
    if (name == "v-omega") return analysis::PhasePlane::v_omega;
    throw std::invalid_argument("unknown plane '" + name + "' (expected omega-gamma or v-omega)");
}

int cmd_phase_diagram(const RunConfig& cfg) {
    analysis::PhaseDiagramSpec spec;
    spec.kind = parse_drive(cfg.drive);
    spec.plane = parse_plane(cfg.plane);
    const auto dims = parse_grid(cfg.grid);
    spec.nx = dims.first;
    spec.ny = dims.second;
    spec.x_lo = cfg.x_min;
    spec.x_hi = cfg.x_max;
    spec.omega_lo = cfg.omega_min;
    spec.omega_hi = cfg.omega_max;
    spec.fixed_v = require_scalar(cfg.v_spec, "--v-over-vt");
    spec.fixed_gamma = cfg.gamma;
    spec.dimers = cfg.dimers;
    spec.k_points = cfg.k_points;
    const auto grid = analysis::phase_diagram(spec);

    io::Table t;
    t.metadata = {{"subcommand", "phase-diagram"},
                  {"drive", cfg.drive},
                  {"plane", cfg.plane},
                  {"dimers", std::to_string(cfg.dimers)},
                  {"grid", cfg.grid},
                  {"x_axis", grid.x_axis.name},
                  {"y_axis", grid.y_axis.name},
                  {"x_range", fmt(cfg.x_min) + ":" + fmt(cfg.x_max)},
                  {"omega_range", fmt(cfg.omega_min) + ":" + fmt(cfg.omega_max)},
                  {"v_over_vt", fmt(spec.fixed_v)},
                  {"gamma_over_vt", fmt(cfg.gamma)},
                  {"k_points", std::to_string(cfg.k_points)},
                  {"resonance_omega_n1", fmt(2.0)},
                  {"resonance_omega_n3", fmt(2.0 / 3.0)},
                  {"resonance_omega_n5", fmt(2.0 / 5.0)}};
    t.columns = {"x", "y", "max_im", "flag"};

    long defective = 0;
    for (int iy = 0; iy < spec.ny; ++iy) {
        for (int ix = 0; ix < spec.nx; ++ix) {
            const auto status = grid.flag(iy, ix);
            if (status == analysis::CellStatus::defective) ++defective;
            t.rows.push_back({grid.x_axis.values[ix], grid.y_axis.values[iy],
                              grid.values(iy, ix), std::string(analysis::cell_status_name(status))});
        }
    }
    io::write_table(t, cfg.out, parse_format(cfg.format));

    const double fraction =
        static_cast<double>(defective) / (static_cast<double>(spec.nx) * spec.ny);
    if (fraction > 0.10) {
        std::cerr << "phase-diagram: " << defective << " of " << spec.nx * spec.ny
                  << " cells are DEFECTIVE\n";
        return 2;
    }
    return 0;
}

// -------------------------------------------------------------- edge-states

int cmd_edge_states(const RunConfig& cfg) {
    const double v = require_scalar(cfg.v_spec, "--v-over-vt");
    const auto config = lattice::LatticeConfig::from_ratio(cfg.dimers, v, cfg.gamma);
    const bool driven = cfg.omega > 0.0;

    analysis::Spectrum spectrum;
    if (driven) {
        floquet::DriveSpec drive;
        drive.kind = parse_drive(cfg.drive);
        drive.omega = cfg.omega;
        if (drive.kind == floquet::DriveKind::two_site) {
            throw std::invalid_argument("edge states are defined on the lattice drives");
        }
        const auto pair = floquet::drive_pair(drive, config);
        spectrum = analysis::floquet_spectrum(pair.first, pair.second, drive.period());
    } else {
        spectrum = analysis::static_spectrum(lattice::build_pt_ssh(config));
    }

    analysis::EdgeStateOptions options;
    options.energy_tol = cfg.energy_tol;
    options.ipr_min = cfg.ipr_min;
    if (driven) options.omega = cfg.omega;
    const auto edges = analysis::edge_states(spectrum, options);

    // The delocalized reference profile: highest-IPR state outside the
    // zero-mode energy window.
    int bulk = -1;
    double best = -1.0;
    for (std::size_t i = 0; i < spectrum.entries.size(); ++i) {
        const auto& e = spectrum.entries[i];
        const double d = driven ? analysis::distance_to_zero_mod(e.energy.real(), cfg.omega)
                                : std::abs(e.energy.real());
        if (d <= options.energy_tol) continue;
        if (e.ipr > best) {
            best = e.ipr;
            bulk = static_cast<int>(i);
        }
    }

    io::Table t;
    t.metadata = {{"subcommand", "edge-states"},
                  {"dimers", std::to_string(cfg.dimers)},
                  {"v_over_vt", fmt(v)},
                  {"gamma_over_vt", fmt(cfg.gamma)},
                  {"omega_over_vt", fmt(cfg.omega)},
                  {"drive", driven ? cfg.drive : std::string("static")},
                  {"energy_tol", fmt(cfg.energy_tol)},
                  {"ipr_min", fmt(cfg.ipr_min)}};
    for (std::size_t s = 0; s < edges.size(); ++s) {
        const std::string tag = "state_" + std::to_string(s + 1);
        t.metadata.emplace_back(tag + "_re_energy", fmt(edges[s].energy.real()));
        t.metadata.emplace_back(tag + "_im_energy", fmt(edges[s].energy.imag()));
        t.metadata.emplace_back(tag + "_ipr", fmt(edges[s].ipr));
        t.metadata.emplace_back(tag + "_left_weight", fmt(edges[s].left_weight));
        t.metadata.emplace_back(tag + "_right_weight", fmt(edges[s].right_weight));
    }
    if (bulk >= 0) {
        const auto& e = spectrum.entries[static_cast<std::size_t>(bulk)];
        t.metadata.emplace_back("bulk_re_energy", fmt(e.energy.real()));
        t.metadata.emplace_back("bulk_im_energy", fmt(e.energy.imag()));
        t.metadata.emplace_back("bulk_ipr", fmt(e.ipr));
    }
    if (edges.empty()) {
        t.metadata.emplace_back("warning", "EmptySelection: no state passed the edge filters");
        std::cerr << "edge-states: warning: EmptySelection (no state passed the edge filters)\n";
    }

    t.columns = {"site_index", "sublattice"};
    for (std::size_t s = 0; s < edges.size(); ++s) {
        t.columns.push_back("psi_abs_" + std::to_string(s + 1));
    }
    if (bulk >= 0) t.columns.push_back("psi_abs_bulk");

    const int sites = config.sites();
    for (int m = 0; m < sites; ++m) {
        std::vector<io::Cell> row;
        row.reserve(t.columns.size());
        row.emplace_back(static_cast<std::int64_t>(m + 1));
        row.emplace_back(std::string(m % 2 == 0 ? "A" : "B"));
        for (const auto& edge : edges) row.emplace_back(std::abs(edge.state[m]));
        if (bulk >= 0) {
            row.emplace_back(std::abs(spectrum.entries[static_cast<std::size_t>(bulk)].state[m]));
        }
        t.rows.push_back(std::move(row));
    }
    io::write_table(t, cfg.out, parse_format(cfg.format));
    return 0;
}

// ----------------------------------------------------------------- validate

struct FamilyReport {
    bool pass = true;
    nlohmann::ordered_json details;
};

// Circular distance between quasienergies defined modulo omega.
double mod_distance(Complex a, Complex b, double omega) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = -1; s <= 1; ++s) {
        best = std::min(best, std::abs(a - b + Complex(s * omega, 0.0)));
    }
    return best;
}

// Closed-form block monodromy and effective Hamiltonian against products of
// numerically exponentiated half-step propagators.
FamilyReport family_monodromy(double inject) {
    const double v_set[] = {0.1, 0.25, 0.4, 0.5, 0.75, 0.9};
    const double gamma_set[] = {0.0, 0.1, 0.3, 0.6, 1.0};
    const double omega_set[] = {0.45, 0.7, 1.3, 2.6, 5.0};
    const auto ks = bloch::k_grid(17);
    const double eps_m = std::numeric_limits<double>::epsilon();
    const double matrix_tol = 1e-12;
    const double eps_floor = 1e-8;
    const double form_floor = 1e-12;

    double max_matrix = 0.0;
    double max_eps = 0.0;
    double max_eps_margin = 0.0;
    double max_form = 0.0;
    double max_form_margin = 0.0;
    long samples = 0;
    for (double v : v_set) {
        for (double gamma : gamma_set) {
            for (double omega : omega_set) {
                for (double k : ks) {
                    bloch::BlochParams p;
                    p.v = v;
                    p.w = 1.0 - v;
                    p.gamma = gamma;
                    p.k = k;
                    const double period = 2.0 * kPi / omega;

                    bloch::BlochParams pm = p;
                    pm.gamma = -gamma;
                    const ComplexMatrix g_num = floquet::monodromy(
                        bloch::rotated_hamiltonian(p), bloch::rotated_hamiltonian(pm), period);
                    const ComplexMatrix g_closed = floquet::monodromy_k_analytic(p, omega);

                    const double r = bloch::r_of_k(p);
                    // Rounding floor of both evaluation routes: half-step
                    // entries grow like e^{|Im E| tau} before cancelling, so
                    // deviations are meaningful only relative to that square.
                    const double im_e = std::sqrt(std::max(0.0, gamma * gamma - r * r));
                    const double scale = std::max(1.0, std::exp(im_e * period));
                    max_matrix = std::max(
                        max_matrix, (g_num - g_closed).cwiseAbs().maxCoeff() / scale);
                    const auto sol = floquet::quasienergy_analytic(r, gamma, omega);
                    const ComplexVector eps_num = linalg::floquet_quasienergies(g_num, period);
                    double dev_eps = 0.0;
                    for (const Complex sign : {Complex(1, 0), Complex(-1, 0)}) {
                        double best = std::numeric_limits<double>::infinity();
                        for (Eigen::Index j = 0; j < eps_num.size(); ++j) {
                            best = std::min(best,
                                            mod_distance(sign * sol.quasienergy, eps_num[j], omega));
                        }
                        dev_eps = std::max(dev_eps, best);
                    }
                    dev_eps += inject;
                    // A broken cell stores its small multiplier with absolute
                    // rounding error ~eps*e^{eta T} inherited from the large
                    // one, so its log carries ~eps*e^{2 eta T}/T no matter
                    // how the product is formed. Grant that much above the
                    // floor and track the worst deviation-to-allowance ratio.
                    const double allow_eps = std::max(
                        eps_floor, 8.0 * eps_m * std::exp(2.0 * sol.eta * period) / period);
                    max_eps = std::max(max_eps, dev_eps);
                    max_eps_margin = std::max(max_eps_margin, dev_eps / allow_eps);

                    try {
                        const auto hf = floquet::hf_analytic(r, gamma, omega);
                        const ComplexMatrix g_form =
                            linalg::expm(Complex(0.0, -period) * hf.matrix);
                        const double dev_form =
                            (g_form - g_closed).cwiseAbs().maxCoeff() / scale + inject;
                        // Near the folding edge |x| = 1 the closed-form axis
                        // is a 0/0 limit losing ~eps/||x|-1|, and squaring a
                        // large-norm generator inside expm costs another
                        // ~eps*(T*|hf|)^2, so the allowance covers both.
                        const double axis_margin = period * hf.matrix.norm();
                        const double edge_gap = std::abs(std::abs(sol.x) - 1.0);
                        const double allow_form = std::max(
                            form_floor,
                            eps_m * (32.0 * (1.0 + axis_margin * axis_margin) +
                                     64.0 / edge_gap));
                        max_form = std::max(max_form, dev_form);
                        max_form_margin = std::max(max_form_margin, dev_form / allow_form);
                    } catch (const floquet::ResonanceSingularity&) {
                        // Effective-Hamiltonian direction undefined here; the
                        // monodromy and quasienergy checks still apply.
                    }
                    ++samples;
                }
            }
        }
    }
    max_matrix += inject;

    FamilyReport rep;
    rep.pass = max_matrix <= matrix_tol && max_form_margin <= 1.0 && max_eps_margin <= 1.0;
    rep.details["pass"] = rep.pass;
    rep.details["samples"] = samples;
    rep.details["max_monodromy_deviation"] = max_matrix;
    rep.details["monodromy_tolerance"] = matrix_tol;
    rep.details["max_effective_form_deviation"] = max_form;
    rep.details["effective_form_allowance_floor"] = form_floor;
    rep.details["max_effective_form_margin"] = max_form_margin;
    rep.details["max_quasienergy_deviation"] = max_eps;
    rep.details["quasienergy_allowance_floor"] = eps_floor;
    rep.details["max_quasienergy_margin"] = max_eps_margin;
    return rep;
}

// Symmetry-class dichotomy of the effective Hamiltonian, plus
// pseudo-Hermiticity and trace of the zone-edge-shifted variant.
FamilyReport family_dichotomy(int draws, double inject) {
    std::mt19937_64 rng(0x51f0c3a2b4d8e691ULL);
    std::uniform_real_distribution<double> coupling(0.0, 2.0);
    std::uniform_real_distribution<double> frequency(0.3, 5.0);

    long mismatches = 0;
    double max_ph = 0.0;
    double max_trace = 0.0;
    const ComplexMatrix sx = pauli_x();
    for (int n = 0; n < draws; ++n) {
        double r = 0.0;
        double gamma = 0.0;
        double omega = 1.0;
        while (true) {
            r = coupling(rng);
            gamma = coupling(rng);
            omega = frequency(rng);
            const auto sol = floquet::quasienergy_analytic(r, gamma, omega);
            if (sol.x != 0.0 && std::abs(std::abs(sol.x) - 1.0) > 1e-8) break;
        }
        const auto hf = floquet::hf_analytic(r, gamma, omega);
        const auto flags = floquet::classify_symmetries(hf.matrix, 1e-10);
        const bool real_eps = hf.eta == 0.0;
        if (!(flags.sublattice && flags.pseudo_hermitian == real_eps &&
              flags.chiral == real_eps)) {
            ++mismatches;
        }

        const ComplexMatrix hs = floquet::hf_shifted(r, gamma, omega);
        max_ph = std::max(max_ph,
                          (sx * hs * sx - hs.adjoint()).norm() / std::max(1.0, hs.norm()));
        max_trace =
            std::max(max_trace, std::abs(hs.trace() - omega) / std::max(1.0, omega));
    }
    max_ph += inject;

    FamilyReport rep;
    rep.pass = mismatches == 0 && max_ph <= 1e-10 && max_trace <= 1e-10;
    rep.details["pass"] = rep.pass;
    rep.details["samples"] = draws;
    rep.details["mismatches"] = mismatches;
    rep.details["max_pseudo_hermiticity_deviation"] = max_ph;
    rep.details["max_trace_deviation"] = max_trace;
    rep.details["tolerance"] = 1e-10;
    return rep;
}

// The folding variable r sin(E tau)/E must stay real whether E is real or
// imaginary; checked against full complex arithmetic.
FamilyReport family_reality(int draws, double inject) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    std::uniform_real_distribution<double> frequency(0.3, 5.0);

    double max_imag = 0.0;
    double max_cross = 0.0;
    for (int n = 0; n < draws; ++n) {
        double r = 0.0;
        double gamma = 0.0;
        double omega = 1.0;
        double e2 = 0.0;
        while (true) {
            r = coupling(rng);
            gamma = coupling(rng);
            omega = frequency(rng);
            e2 = r * r - gamma * gamma;
            if (std::abs(e2) > 1e-12) break;
        }
        const double tau = kPi / omega;
        const Complex ec = std::sqrt(Complex(e2, 0.0));
        const Complex z = r * std::sin(ec * tau) / ec;
        const double x = r * bloch::evolution_coefficients(e2, tau).sinc_et;
        const double scale = std::max(1.0, std::abs(z));
        max_imag = std::max(max_imag, std::abs(z.imag()) / scale);
        max_cross = std::max(max_cross, std::abs(z.real() - x) / scale);
    }
    max_imag += inject;

    FamilyReport rep;
    rep.pass = max_imag <= 1e-12 && max_cross <= 1e-12;
    rep.details["pass"] = rep.pass;
    rep.details["samples"] = draws;
    rep.details["max_imaginary_part"] = max_imag;
    rep.details["max_path_disagreement"] = max_cross;
    rep.details["tolerance"] = 1e-12;
    return rep;
}

int cmd_validate(const RunConfig& cfg) {
    const std::vector<std::string> canonical = {"monodromy-agreement", "symmetry-dichotomy",
                                                "coefficient-reality"};
    std::vector<std::string> requested;
    std::stringstream ss(cfg.families);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token.erase(0, token.find_first_not_of(" \t"));
        const auto last = token.find_last_not_of(" \t");
        token.erase(last == std::string::npos ? 0 : last + 1);
        if (!token.empty()) requested.push_back(token);
    }
    if (requested.empty()) throw std::invalid_argument("validate: empty family selection");
    for (const auto& f : requested) {
        if (std::find(canonical.begin(), canonical.end(), f) == canonical.end()) {
            throw std::invalid_argument("validate: unknown family '" + f + "'");
        }
    }
    if (!cfg.inject.empty() &&
        std::find(canonical.begin(), canonical.end(), cfg.inject) == canonical.end()) {
        throw std::invalid_argument("validate: unknown family '" + cfg.inject + "'");
    }
    if (cfg.draws < 1) throw std::invalid_argument("validate: draws must be >= 1");

    nlohmann::ordered_json families = nlohmann::ordered_json::object();
    bool all_pass = true;
    std::vector<std::string> failed;
    for (const auto& name : canonical) {
        if (std::find(requested.begin(), requested.end(), name) == requested.end()) continue;
        const double inject = cfg.inject == name ? 1e-6 : 0.0;
        FamilyReport rep;
        if (name == "monodromy-agreement") {
            rep = family_monodromy(inject);
        } else if (name == "symmetry-dichotomy") {
            rep = family_dichotomy(cfg.draws, inject);
        } else {
            rep = family_reality(cfg.draws, inject);
        }
        families[name] = rep.details;
        all_pass = all_pass && rep.pass;
        if (!rep.pass) failed.push_back(name);
    }

    nlohmann::ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["pass"] = all_pass;
    doc["families"] = std::move(families);
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        io::write_text(text, cfg.out);
    }
    if (!all_pass) {
        std::cerr << "validate: FAILED:";
        for (const auto& f : failed) std::cerr << ' ' << f;
        std::cerr << '\n';
        return 2;
    }
    return 0;
}

// ------------------------------------------------------------------- wiring

constexpr const char* kConfigHelp = "key=value configuration file (flags take precedence)";

// Simple key=value file: one pair per line, '#' or ';' comments and blank
// lines ignored, optional double quotes around the value. Duplicate keys
// within one file resolve to the last occurrence.
std::vector<std::pair<std::string, std::string>> read_config_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    const auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(" \t") - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos || trim(text.substr(0, eq)).empty()) {
            throw std::invalid_argument("config file " + path + " line " +
                                        std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        bool replaced = false;
        for (auto& kv : pairs) {
            if (kv.first == key) {
                kv.second = value;
                replaced = true;
                break;
            }
        }
        if (!replaced) pairs.emplace_back(std::move(key), std::move(value));
    }
    return pairs;
}

// Strip '--config FILE' from the raw arguments and append '--key value' for
// every file entry whose flag the command line did not set, so explicit
// flags always win. A dangling '--config' is left for the parser to reject.
std::vector<std::string> apply_config_files(std::vector<std::string> args) {
    std::vector<std::string> files;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            files.push_back(args[i + 1]);
            ++i;
        } else if (args[i].rfind("--config=", 0) == 0) {
            files.push_back(args[i].substr(9));
        } else {
            kept.push_back(args[i]);
        }
    }
    const auto flag_present = [&kept](const std::string& flag) {
        for (const auto& a : kept) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    for (const auto& file : files) {
        for (const auto& [key, value] : read_config_pairs(file)) {
            const std::string flag = "--" + key;
            if (flag_present(flag)) continue;
            kept.push_back(flag);
            kept.push_back(value);
        }
    }
    return kept;
}

void add_output_options(CLI::App* sub, RunConfig& cfg, bool required_out = true) {
    auto* out = sub->add_option("--out", cfg.out, "output file path");
    if (required_out) out->required();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--config", cfg.config, kConfigHelp);
}

void add_lattice_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--dimers", cfg.dimers, "number of unit cells M (2M sites)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--v-over-vt", cfg.v_spec,
                    "intra-dimer coupling ratio: scalar or min:max:count")
        ->capture_default_str();
}

void add_gamma_option(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--gamma-over-vt", cfg.gamma, "gain/loss rate ratio")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

void add_drive_option(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--drive", cfg.drive, "drive kind")
        ->check(CLI::IsMember({"pt-pt", "pt-hermitian", "two-site"}))
        ->capture_default_str();
}

}  // namespace

RealVector parse_scalar_or_range(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        RealVector v(1);
        v[0] = parse_double_strict(text, "value grid");
        return v;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
        throw std::invalid_argument("value grid must be a scalar or min:max:count: '" + text + "'");
    }
    const double lo = parse_double_strict(text.substr(0, c1), "value grid");
    const double hi = parse_double_strict(text.substr(c1 + 1, c2 - c1 - 1), "value grid");
    const int n = parse_int_strict(text.substr(c2 + 1), "value grid");
    if (n < 1) throw std::invalid_argument("value grid needs at least one point");
    return analysis::linspace(lo, hi, n);
}

std::pair<int, int> parse_grid(const std::string& text) {
    auto sep = text.find('x');
    if (sep == std::string::npos) sep = text.find('X');
    if (sep == std::string::npos) {
        throw std::invalid_argument("grid must be NxM: '" + text + "'");
    }
    const int nx = parse_int_strict(text.substr(0, sep), "grid");
    const int ny = parse_int_strict(text.substr(sep + 1), "grid");
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2x2 cells");
    return {nx, ny};
}

floquet::DriveKind parse_drive(const std::string& name) {
    if (name == "pt-pt") return floquet::DriveKind::pt_pt;
    if (name == "pt-hermitian") return floquet::DriveKind::pt_hermitian;
    if (name == "two-site") return floquet::DriveKind::two_site;
    throw std::invalid_argument("unknown drive '" + name +
                                "' (expected pt-pt, pt-hermitian, or two-site)");
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Static and Floquet-driven PT-symmetric SSH lattice simulator"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);

    RunConfig cfg_bands, cfg_static, cfg_floquet, cfg_phase, cfg_edges, cfg_validate;
    int exit_code = 0;

    auto* bands = app.add_subcommand("ssh-bands", "static SSH band sweep over v/v_T");
    add_lattice_options(bands, cfg_bands);
    add_output_options(bands, cfg_bands);
    bands->callback([&] { exit_code = cmd_ssh_bands(cfg_bands); });

    auto* statics = app.add_subcommand("static-pt", "static PT-SSH spectrum sweep over v/v_T");
    add_lattice_options(statics, cfg_static);
    add_gamma_option(statics, cfg_static);
    add_output_options(statics, cfg_static);
    statics->callback([&] { exit_code = cmd_static_pt(cfg_static); });

    auto* flq = app.add_subcommand("floquet-spectrum",
                                   "quasienergy spectrum sweep of the driven lattice");
    add_lattice_options(flq, cfg_floquet);
    add_gamma_option(flq, cfg_floquet);
    flq->add_option("--omega-over-vt", cfg_floquet.omega, "drive frequency ratio")
        ->check(CLI::PositiveNumber)
        ->required();
    add_drive_option(flq, cfg_floquet);
    add_output_options(flq, cfg_floquet);
    flq->callback([&] { exit_code = cmd_floquet_spectrum(cfg_floquet); });

    RunConfig& pc = cfg_phase;
    pc.v_spec = "0.25";
    pc.gamma = 0.2;
    auto* phase = app.add_subcommand("phase-diagram", "max |Im eps| over a parameter plane");
    add_lattice_options(phase, pc);
    add_gamma_option(phase, pc);
    add_drive_option(phase, pc);
    phase->add_option("--plane", pc.plane, "parameter plane")
        ->check(CLI::IsMember({"omega-gamma", "v-omega"}))
        ->capture_default_str();
    phase->add_option("--grid", pc.grid, "x-by-y cell counts, NxM")->capture_default_str();
    phase->add_option("--x-min", pc.x_min, "x-axis lower bound")->capture_default_str();
    phase->add_option("--x-max", pc.x_max, "x-axis upper bound")->capture_default_str();
    phase->add_option("--omega-min", pc.omega_min, "omega lower bound")->capture_default_str();
    phase->add_option("--omega-max", pc.omega_max, "omega upper bound")->capture_default_str();
    phase->add_option("--k-points", pc.k_points, "momentum points for the analytic scan")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(phase, pc);
    phase->callback([&] { exit_code = cmd_phase_diagram(cfg_phase); });

    RunConfig& ec = cfg_edges;
    ec.v_spec = "0.25";
    auto* edges = app.add_subcommand("edge-states",
                                     "zero-mode profiles and the highest-IPR bulk state");
    add_lattice_options(edges, ec);
    add_gamma_option(edges, ec);
    edges->add_option("--omega-over-vt", ec.omega,
                      "drive frequency ratio; omit for the static spectrum")
        ->check(CLI::PositiveNumber);
    add_drive_option(edges, ec);
    edges->add_option("--energy-tol", ec.energy_tol, "zero-mode energy window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    edges->add_option("--ipr-min", ec.ipr_min, "localization threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(edges, ec);
    edges->callback([&] { exit_code = cmd_edge_states(cfg_edges); });

    auto* val = app.add_subcommand("validate", "run the internal oracle suites");
    val->add_option("--families", cfg_validate.families, "comma-separated family list")
        ->capture_default_str();
    val->add_option("--draws", cfg_validate.draws, "random draws per sampled family")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    val->add_option("--inject-perturbation", cfg_validate.inject,
                    "perturb the named family (self-test hook)")
        ->group("");
    val->add_option("--out", cfg_validate.out, "report path (stdout when omitted)");
    val->add_option("--config", cfg_validate.config, kConfigHelp);
    val->callback([&] { exit_code = cmd_validate(cfg_validate); });

    try {
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
        args = apply_config_files(std::move(args));
        std::vector<const char*> cargs;
        cargs.reserve(args.size() + 1);
        cargs.push_back(argc > 0 ? argv[0] : "floqssh");
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const io::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}

}  // namespace floqssh::cli
