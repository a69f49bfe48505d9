// cli.hpp -- command-line front end. Subcommands: ssh-bands, static-pt,
// floquet-spectrum, phase-diagram, edge-states, validate. All physical
// inputs are dimensionless ratios (v_T = v + w = 1 sets the energy unit)
// and every run is seed-free, so identical invocations produce
// byte-identical output files.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure (a validation
// family failed, or more than 10% of phase-grid cells are DEFECTIVE),
// 3 I/O error.
#pragma once

#include <string>
#include <utility>

#include "floqssh/floquet.hpp"
#include "floqssh/types.hpp"

namespace floqssh::cli {

// "0.25" -> one value; "0:1:101" -> 101 uniformly spaced values.
RealVector parse_scalar_or_range(const std::string& text);

// "201x151" -> {201, 151} (x-axis count, y-axis count).
std::pair<int, int> parse_grid(const std::string& text);

// pt-pt | pt-hermitian | two-site.
floquet::DriveKind parse_drive(const std::string& name);

int run(int argc, const char* const* argv);

}  // namespace floqssh::cli
