// cli.hpp — command-line front end: gamma tabulation, single-point bound
// evaluation, temperature sweeps, and CSV re-verification.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thermal_bound/brownian.hpp"

namespace thermal_bound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

enum class Format { csv, pretty };

struct CliConfig {
    std::string subcommand{};  // gamma | point | sweep | verify
    brownian::OscillatorModel model{};
    double beta = 1.0;
    double beta_min = 0.02;
    double beta_max = 50.0;
    int beta_points = 200;
    double rel_tol = 1e-10;
    std::string output{};  // empty = stdout
    Format format = Format::csv;
    bool emit_spectra = false;
    // gamma subcommand
    double x_min = 1e-4;
    double x_max = 1e4;
    int x_points = 200;
    // verify subcommand
    std::string input{};
    std::string config_path{};
};

// Flag list equivalent to the config (subcommand first); parsing it back
// reproduces the same configuration.
std::vector<std::string> serialize_flags(const CliConfig& config);

// Runs the CLI on the given arguments (program name excluded). Exit codes:
// 0 success, 1 I/O failure, 2 usage/domain error, 3 bound-chain violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermal_bound::cli
