#include <doctest.h>

#include <cmath>

#include "floqssh/lattice.hpp"
#include "floqssh/linalg.hpp"
#include "floqssh/types.hpp"

using namespace floqssh;

namespace {

// True when every eigenvalue's image under `map` is present in the list.
bool spectrum_closed_under(const ComplexVector& eigs, Complex (*map)(Complex), double tol) {
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const Complex target = map(eigs[i]);
        double best = 1e300;
        for (Eigen::Index j = 0; j < eigs.size(); ++j)
            best = std::min(best, std::abs(eigs[j] - target));
        if (best > tol) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("single dimer") {
    const auto h = lattice::build_ssh(lattice::LatticeConfig::from_ratio(1, 1.0));
    CHECK(h(0, 0) == Complex(0.0, 0.0));
    CHECK(h(0, 1) == Complex(1.0, 0.0));
    CHECK(h(1, 0) == Complex(1.0, 0.0));
    CHECK(h(1, 1) == Complex(0.0, 0.0));
    const ComplexVector eigs = linalg::eigvals_dense(h);
    CHECK(std::abs(eigs[0] - Complex(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(eigs[1] - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("v = 0 decouples the outermost sites") {
    const auto config = lattice::LatticeConfig::from_ratio(20, 0.0);
    const auto h = lattice::build_ssh(config);
    CHECK(h.row(0).norm() == 0.0);
    CHECK(h.row(config.sites() - 1).norm() == 0.0);
    const ComplexVector eigs = linalg::eigvals_dense(h);
    int zeros = 0;
    for (Eigen::Index j = 0; j < eigs.size(); ++j)
        if (std::abs(eigs[j]) < 1e-12) ++zeros;
    CHECK(zeros == 2);
}

TEST_CASE("bulk gap equals twice the coupling imbalance") {
    const auto h = lattice::build_ssh(lattice::LatticeConfig::from_ratio(20, 0.25));
    const ComplexVector eigs = linalg::eigvals_dense(h);
    double min_bulk = 1e300;
    for (Eigen::Index j = 0; j < eigs.size(); ++j) {
        const double mag = std::abs(eigs[j]);
        if (mag > 1e-4) min_bulk = std::min(min_bulk, mag);
    }
    CHECK(2.0 * min_bulk == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("hermitian spectrum is symmetric under negation") {
    const auto h = lattice::build_ssh(lattice::LatticeConfig::from_ratio(8, 0.3));
    const ComplexVector eigs = linalg::eigvals_dense(h);
    CHECK(spectrum_closed_under(eigs, [](Complex z) { return -z; }, 1e-10));
}

TEST_CASE("gain/loss chain basics") {
    const auto config = lattice::LatticeConfig::from_ratio(10, 0.3, 0.2);
    const auto h = lattice::build_pt_ssh(config);

    SUBCASE("gamma = 0 reproduces the hermitian chain exactly") {
        auto plain = config;
        plain.gamma = 0.0;
        CHECK((lattice::build_pt_ssh(plain) - lattice::build_ssh(plain)).norm() == 0.0);
    }
    SUBCASE("sign flip is entrywise conjugation") {
        CHECK((lattice::build_pt_ssh(config, -1) - h.conjugate()).norm() == 0.0);
    }
    SUBCASE("balanced gain and loss leave the trace zero") {
        CHECK(std::abs(h.trace()) == 0.0);
    }
    SUBCASE("spectrum closed under complex conjugation") {
        const ComplexVector eigs = linalg::eigvals_dense(h);
        CHECK(spectrum_closed_under(eigs, [](Complex z) { return std::conj(z); }, 1e-10));
    }
}

TEST_CASE("bulk threshold on the closed ring") {
    // With periodic boundaries the edge modes are gone and the exact bulk
    // threshold |v - w| applies: real below, complex above.
    auto config = lattice::LatticeConfig::from_ratio(20, 0.3, 0.35);
    const ComplexVector below =
        linalg::eigvals_dense(lattice::build_pt_ssh(config, +1, lattice::Boundary::periodic));
    double max_im = 0.0;
    for (Eigen::Index j = 0; j < below.size(); ++j)
        max_im = std::max(max_im, std::abs(below[j].imag()));
    CHECK(max_im < 1e-7);

    config.gamma = 0.45;
    const ComplexVector above =
        linalg::eigvals_dense(lattice::build_pt_ssh(config, +1, lattice::Boundary::periodic));
    max_im = 0.0;
    for (Eigen::Index j = 0; j < above.size(); ++j)
        max_im = std::max(max_im, std::abs(above[j].imag()));
    CHECK(max_im > 1e-3);
}

TEST_CASE("open chain in the topological regime is never fully real") {
    // The edge pair sits off the real axis for any gamma > 0 when v < w.
    const auto config = lattice::LatticeConfig::from_ratio(20, 0.4, 0.05);
    const ComplexVector eigs = linalg::eigvals_dense(lattice::build_pt_ssh(config));
    double max_im = 0.0;
    for (Eigen::Index j = 0; j < eigs.size(); ++j)
        max_im = std::max(max_im, std::abs(eigs[j].imag()));
    CHECK(max_im > 1e-6);
}

TEST_CASE("periodic boundary adds the closing bond") {
    const auto config = lattice::LatticeConfig::from_ratio(3, 0.25);
    const auto open = lattice::build_ssh(config);
    const auto ring = lattice::build_ssh(config, lattice::Boundary::periodic);
    CHECK(open(0, 5) == Complex(0.0, 0.0));
    CHECK(ring(0, 5) == Complex(0.75, 0.0));
    CHECK(ring(5, 0) == Complex(0.75, 0.0));
    CHECK((ring - open).norm() == doctest::Approx(0.75 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("two-site dimer") {
    CHECK((lattice::build_two_site(1.0, 0.0) - pauli_x()).norm() == 0.0);

    const ComplexVector real_pair = linalg::eigvals_dense(lattice::build_two_site(1.0, 0.5));
    CHECK(std::abs(real_pair[0] - Complex(-std::sqrt(0.75), 0.0)) < 1e-12);
    CHECK(std::abs(real_pair[1] - Complex(std::sqrt(0.75), 0.0)) < 1e-12);

    const ComplexVector broken = linalg::eigvals_dense(lattice::build_two_site(1.0, 1.5));
    CHECK(std::abs(broken[0] - Complex(0.0, -std::sqrt(1.25))) < 1e-12);
    CHECK(std::abs(broken[1] - Complex(0.0, std::sqrt(1.25))) < 1e-12);
}

TEST_CASE("site indexing is a bijection") {
    for (int flat = 0; flat < 40; ++flat) {
        const auto site = lattice::SiteIndex::from_flat(flat);
        CHECK(site.flat() == flat);
    }
    const lattice::SiteIndex site{3, lattice::Sublattice::B};
    CHECK(site.flat() == 5);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(lattice::LatticeConfig::from_ratio(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(lattice::LatticeConfig::from_ratio(5, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(lattice::LatticeConfig::from_ratio(5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(
        lattice::build_pt_ssh(lattice::LatticeConfig::from_ratio(5, 0.5), 2),
        std::invalid_argument);

    lattice::LatticeConfig bad;
    bad.v = 0.5;
    bad.w = 0.6;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
