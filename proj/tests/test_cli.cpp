#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "support.hpp"

namespace {

const std::string kCli = FLOQSSH_CLI_PATH;
const std::string kGoldenDir = FLOQSSH_GOLDEN_DIR;

int run_cli(const std::string& args) { return testsupport::run_command(kCli + " " + args); }

int run_cli_quiet(const std::string& args) {
    return testsupport::run_command(kCli + " " + args + " 2>/dev/null");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("band sweep table shape and dimerized limit") {
    const auto dir = testsupport::fresh_dir("bands");
    const std::string out = dir + "/bands.csv";
    REQUIRE(run_cli("ssh-bands --dimers 20 --v-over-vt 0:1:11 --out " + out) == 0);

    const auto t = testsupport::parse_table_file(out);
    CHECK(t.meta("subcommand") == "ssh-bands");
    CHECK(t.meta("dimers") == "20");
    CHECK(t.columns == std::vector<std::string>{"v_over_vt", "eig_index", "re_E", "im_E", "ipr"});
    REQUIRE(t.rows.size() == 11u * 40u);

    // v = 0 rows: two decoupled end sites at E = 0, everything else at |E| = 1.
    const int cv = t.col("v_over_vt");
    const int cre = t.col("re_E");
    const int cim = t.col("im_E");
    int zeros = 0;
    for (std::size_t i = 0; i < 40; ++i) {
        CHECK(t.num(i, cv) == 0.0);
        CHECK(std::abs(t.num(i, cim)) < 1e-12);
        if (std::abs(t.num(i, cre)) < 1e-10) ++zeros;
    }
    CHECK(zeros == 2);
}

TEST_CASE("band sweep bulk gap at quarter coupling") {
    const auto dir = testsupport::fresh_dir("gap");
    const std::string out = dir + "/point.csv";
    REQUIRE(run_cli("ssh-bands --dimers 20 --v-over-vt 0.25 --out " + out) == 0);

    const auto t = testsupport::parse_table_file(out);
    REQUIRE(t.rows.size() == 40);
    const int cre = t.col("re_E");
    double min_bulk = 1e300;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double mag = std::abs(t.num(i, cre));
        if (mag > 1e-4) min_bulk = std::min(min_bulk, mag);
    }
    CHECK(2.0 * min_bulk == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("zero-gain static sweep matches the hermitian sweep") {
    const auto dir = testsupport::fresh_dir("zerogain");
    const std::string a = dir + "/a.csv";
    const std::string b = dir + "/b.csv";
    REQUIRE(run_cli("ssh-bands --dimers 6 --v-over-vt 0:1:5 --out " + a) == 0);
    REQUIRE(run_cli("static-pt --dimers 6 --v-over-vt 0:1:5 --gamma-over-vt 0 --out " + b) == 0);

    const auto ta = testsupport::parse_table_file(a);
    const auto tb = testsupport::parse_table_file(b);
    REQUIRE(ta.rows.size() == tb.rows.size());
    CHECK(tb.columns[1] == "gamma_over_vt");
    for (std::size_t i = 0; i < ta.rows.size(); ++i) {
        CHECK(ta.rows[i][0] == tb.rows[i][0]);
        CHECK(tb.rows[i][1] == "0");
        for (std::size_t c = 1; c < ta.rows[i].size(); ++c) {
            CHECK(ta.rows[i][c] == tb.rows[i][c + 1]);
        }
    }
}

TEST_CASE("static gain spectrum carries a localized imaginary pair") {
    const auto dir = testsupport::fresh_dir("staticpt");
    const std::string out = dir + "/pt.csv";
    REQUIRE(run_cli("static-pt --dimers 20 --v-over-vt 0.25 --gamma-over-vt 0.25 --out " + out) ==
            0);

    const auto t = testsupport::parse_table_file(out);
    REQUIRE(t.rows.size() == 40);
    const int cre = t.col("re_E");
    const int cim = t.col("im_E");
    const int cipr = t.col("ipr");
    int imaginary_pair = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (std::abs(t.num(i, cre)) >= 1e-8) continue;
        ++imaginary_pair;
        CHECK(std::abs(t.num(i, cim)) > 1e-3);
        CHECK(t.num(i, cipr) == doctest::Approx(0.80).epsilon(0.07));
    }
    CHECK(imaginary_pair == 2);
}

TEST_CASE("quasienergy sweep is folded with localized zero modes") {
    const auto dir = testsupport::fresh_dir("flq");
    const std::string out = dir + "/flq.csv";
    REQUIRE(run_cli("floquet-spectrum --dimers 20 --v-over-vt 0.1 --gamma-over-vt 0.2"
                    " --omega-over-vt 0.7 --out " +
                    out) == 0);

    const auto t = testsupport::parse_table_file(out);
    CHECK(t.meta("omega_over_vt") == "0.7");
    CHECK(t.meta("drive") == "pt-pt");
    REQUIRE(t.rows.size() == 40);
    const int cre = t.col("re_eps");
    const int cipr = t.col("ipr");
    const int cst = t.col("status");
    int zero_modes = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.cell(i, cst) == "OK");
        CHECK(t.num(i, cre) >= -0.35);
        CHECK(t.num(i, cre) < 0.35);
        if (std::abs(t.num(i, cre)) <= 1e-3) {
            ++zero_modes;
            CHECK(t.num(i, cipr) == doctest::Approx(0.98).epsilon(0.04));
        }
    }
    CHECK(zero_modes == 2);
}

TEST_CASE("dimer drive has no lattice spectrum") {
    const auto dir = testsupport::fresh_dir("flqdimer");
    CHECK(run_cli_quiet("floquet-spectrum --drive two-site --omega-over-vt 2 --out " + dir +
                        "/x.csv") == 1);
}

TEST_CASE("phase diagram table and resonance metadata") {
    const auto dir = testsupport::fresh_dir("phase");
    const std::string out = dir + "/grid.csv";
    REQUIRE(run_cli("phase-diagram --drive two-site --grid 5x5 --x-max 0.4"
                    " --omega-min 0.5 --omega-max 2.5 --out " +
                    out) == 0);

    const auto t = testsupport::parse_table_file(out);
    CHECK(t.meta("x_axis") == "gamma_over_vT");
    CHECK(t.meta("y_axis") == "omega_over_vT");
    CHECK(t.meta("resonance_omega_n1") == "2");
    CHECK(t.meta("resonance_omega_n3") == "0.6666666666666666");
    CHECK(t.meta("resonance_omega_n5") == "0.4");
    CHECK(t.columns == std::vector<std::string>{"x", "y", "max_im", "flag"});
    REQUIRE(t.rows.size() == 25);

    const int cx = t.col("x");
    const int cy = t.col("y");
    const int cmax = t.col("max_im");
    const int cflag = t.col("flag");
    bool broken_at_resonance = false;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string& flag = t.cell(i, cflag);
        CHECK((flag == "OK" || flag == "EXCEPTIONAL"));
        if (t.num(i, cx) == 0.0) CHECK(t.num(i, cmax) <= 1e-10);
        if (t.num(i, cx) == 0.1 && t.num(i, cy) == 2.0) {
            broken_at_resonance = t.num(i, cmax) > 1e-3;
        }
    }
    CHECK(broken_at_resonance);
}

TEST_CASE("edge state profiles of the driven chain") {
    const auto dir = testsupport::fresh_dir("edges");
    const std::string out = dir + "/edges.csv";
    REQUIRE(run_cli("edge-states --dimers 20 --v-over-vt 0.2 --gamma-over-vt 0.2"
                    " --omega-over-vt 0.7 --out " +
                    out) == 0);

    const auto t = testsupport::parse_table_file(out);
    CHECK(t.columns == std::vector<std::string>{"site_index", "sublattice", "psi_abs_1",
                                                "psi_abs_2", "psi_abs_bulk"});
    REQUIRE(t.rows.size() == 40);
    CHECK(t.cell(0, 0) == "1");
    CHECK(t.cell(39, 0) == "40");
    CHECK(t.cell(0, 1) == "A");
    CHECK(t.cell(1, 1) == "B");

    CHECK(std::stod(t.meta("state_1_ipr")) == doctest::Approx(0.88).epsilon(0.07));
    CHECK(std::stod(t.meta("state_2_ipr")) == doctest::Approx(0.88).epsilon(0.07));
    CHECK(std::stod(t.meta("state_1_left_weight")) > 0.9);
    CHECK(std::stod(t.meta("state_2_right_weight")) > 0.9);
    CHECK(std::stod(t.meta("bulk_ipr")) < 0.2);

    // The left-polarized profile decays into the chain.
    const int c1 = t.col("psi_abs_1");
    CHECK(t.num(0, c1) > 10.0 * t.num(20, c1));
}

TEST_CASE("edge state profiles of the fully dimerized chain") {
    const auto dir = testsupport::fresh_dir("edges0");
    const std::string out = dir + "/edges.csv";
    REQUIRE(run_cli("edge-states --dimers 20 --v-over-vt 0 --out " + out) == 0);

    const auto t = testsupport::parse_table_file(out);
    CHECK(t.meta("drive") == "static");
    CHECK(t.meta("state_1_ipr") == "1");
    CHECK(t.meta("state_2_ipr") == "1");
    const int c1 = t.col("psi_abs_1");
    const int c2 = t.col("psi_abs_2");
    CHECK(t.num(0, c1) == 1.0);
    CHECK(t.num(39, c2) == 1.0);
}

TEST_CASE("empty edge selection warns but still writes the bulk profile") {
    const auto dir = testsupport::fresh_dir("edgesempty");
    const std::string out = dir + "/edges.csv";
    REQUIRE(run_cli_quiet("edge-states --dimers 20 --v-over-vt 0.8 --gamma-over-vt 0.2"
                          " --omega-over-vt 0.7 --out " +
                          out) == 0);

    const auto t = testsupport::parse_table_file(out);
    REQUIRE(t.has_meta("warning"));
    CHECK(t.meta("warning").find("EmptySelection") == 0);
    CHECK(t.columns == std::vector<std::string>{"site_index", "sublattice", "psi_abs_bulk"});
    REQUIRE(t.rows.size() == 40);
}

TEST_CASE("oracle suite passes and reports per-family detail") {
    const auto dir = testsupport::fresh_dir("validate");
    const std::string out = dir + "/report.json";
    REQUIRE(run_cli("validate --families coefficient-reality --draws 200 --out " + out) == 0);

    const auto doc = nlohmann::json::parse(testsupport::read_file(out));
    CHECK(doc.at("tool") == "floqssh");
    CHECK(doc.at("pass") == true);
    const auto& fam = doc.at("families").at("coefficient-reality");
    CHECK(fam.at("pass") == true);
    CHECK(fam.at("samples") == 200);
    CHECK(fam.at("max_imaginary_part").get<double>() <= 1e-12);
}

TEST_CASE("oracle suite catches an injected fault") {
    const auto dir = testsupport::fresh_dir("validatefault");
    const std::string out = dir + "/report.json";
    CHECK(run_cli_quiet("validate --families coefficient-reality --draws 64"
                        " --inject-perturbation coefficient-reality --out " +
                        out) == 2);
    const auto doc = nlohmann::json::parse(testsupport::read_file(out));
    CHECK(doc.at("pass") == false);
}

TEST_CASE("oracle suite rejects bad family selections") {
    CHECK(run_cli_quiet("validate --families nonsense") == 1);
    CHECK(run_cli_quiet("validate --families \"\"") == 1);
}

TEST_CASE("repeated runs are byte-identical") {
    const auto dir = testsupport::fresh_dir("determinism");
    const std::string a = dir + "/a.csv";
    const std::string b = dir + "/b.csv";
    REQUIRE(run_cli("floquet-spectrum --dimers 4 --v-over-vt 0:1:3 --gamma-over-vt 0.2"
                    " --omega-over-vt 0.7 --out " +
                    a) == 0);
    REQUIRE(run_cli("floquet-spectrum --dimers 4 --v-over-vt 0:1:3 --gamma-over-vt 0.2"
                    " --omega-over-vt 0.7 --out " +
                    b) == 0);
    CHECK(testsupport::read_file(a) == testsupport::read_file(b));
}

TEST_CASE("config file values with flag precedence") {
    const auto dir = testsupport::fresh_dir("config");
    const std::string cfg = dir + "/run.cfg";
    const std::string out = dir + "/out.csv";
    testsupport::write_file(cfg, "dimers=4\nv-over-vt=0.5\n");
    REQUIRE(run_cli("ssh-bands --config " + cfg + " --dimers 6 --out " + out) == 0);

    const auto t = testsupport::parse_table_file(out);
    CHECK(t.meta("dimers") == "6");        // command line wins
    CHECK(t.meta("v_over_vt") == "0.5");   // config fills the rest
    CHECK(t.rows.size() == 12);
}

TEST_CASE("json output format") {
    const auto dir = testsupport::fresh_dir("jsonout");
    const std::string out = dir + "/bands.json";
    REQUIRE(run_cli("ssh-bands --dimers 4 --v-over-vt 0:1:3 --format json --out " + out) == 0);

    const auto doc = nlohmann::json::parse(testsupport::read_file(out));
    CHECK(doc.at("tool") == "floqssh");
    CHECK(doc.at("version") == "1.0.0");
    CHECK(doc.at("metadata").at("dimers") == "4");
    const auto& cols = doc.at("columns");
    REQUIRE(cols.at("re_E").size() == 3u * 8u);
    CHECK(cols.at("eig_index").size() == cols.at("re_E").size());
    CHECK(cols.at("ipr").size() == cols.at("re_E").size());
}

TEST_CASE("unwritable output exits with the io code") {
    CHECK(run_cli_quiet("ssh-bands --dimers 4 --v-over-vt 0.5 --out"
                        " /floqssh_no_such_dir/out.csv") == 3);
}

TEST_CASE("usage errors exit with the usage code") {
    CHECK(run_cli_quiet("") == 1);
    CHECK(run_cli_quiet("no-such-subcommand") == 1);
    CHECK(run_cli_quiet("ssh-bands") == 1);  // missing required --out
    CHECK(run_cli_quiet("ssh-bands --bogus-flag 1 --out /tmp/x.csv") == 1);
    CHECK(run_cli_quiet("floquet-spectrum --out /tmp/x.csv") == 1);  // missing --omega-over-vt
    CHECK(run_cli_quiet("ssh-bands --v-over-vt 0:1:2:3 --out /tmp/x.csv") == 1);
    CHECK(run_cli_quiet("ssh-bands --v-over-vt pear --out /tmp/x.csv") == 1);
    CHECK(run_cli_quiet("phase-diagram --grid 7 --out /tmp/x.csv") == 1);
    CHECK(run_cli_quiet("edge-states --v-over-vt 0:1:5 --out /tmp/x.csv") == 1);
}

TEST_CASE("version banner") {
    const auto dir = testsupport::fresh_dir("version");
    const std::string out = dir + "/v.txt";
    REQUIRE(testsupport::run_command(kCli + " --version > " + out) == 0);
    CHECK(testsupport::read_file(out).find("floqssh 1.0.0") != std::string::npos);
}

TEST_CASE("golden outputs are stable") {
    struct GoldenCase {
        std::string name;
        std::string args;
    };
    const std::vector<GoldenCase> cases = {
        {"ssh_bands.csv", "ssh-bands --dimers 4 --v-over-vt 0:1:5"},
        {"static_pt.csv", "static-pt --dimers 4 --v-over-vt 0.25 --gamma-over-vt 0.25"},
        {"floquet_spectrum.csv",
         "floquet-spectrum --dimers 4 --v-over-vt 0.25 --gamma-over-vt 0.2 --omega-over-vt 0.7"},
        {"phase_diagram.csv",
         "phase-diagram --drive two-site --grid 5x5 --x-max 0.4 --omega-min 0.5 --omega-max 2.5"},
        {"edge_states.csv", "edge-states --dimers 4 --v-over-vt 0"},
        {"validate.json", "validate --families coefficient-reality --draws 64"},
    };

    const bool update = std::getenv("FLOQSSH_UPDATE_GOLDEN") != nullptr;
    const auto dir = testsupport::fresh_dir("golden");
    if (update) std::filesystem::create_directories(kGoldenDir);

    for (const auto& c : cases) {
        CAPTURE(c.name);
        const std::string fresh = dir + "/" + c.name;
        REQUIRE(run_cli(c.args + " --out " + fresh) == 0);
        const std::string golden = kGoldenDir + "/" + c.name;
        if (update) {
            testsupport::write_file(golden, testsupport::read_file(fresh));
        } else {
            CHECK(testsupport::read_file(fresh) == testsupport::read_file(golden));
        }
    }
}

}  // TEST_SUITE
