#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "thermal_bound/cli.hpp"

using namespace thermal_bound;
namespace cli = thermal_bound::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "thermal_bound_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("cli gamma: tabulates Gamma on a log grid") {
    const fs::path file = temp_dir() / "gamma.csv";
    const auto r = run_cli({"gamma", "--x-min", "1e-3", "--x-max", "1e3",
                            "--points", "7", "--output", file.string()});
    CHECK(r.code == cli::kExitOk);

    const auto lines = split_lines(slurp(file));
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "x,gamma");
    double prev = 1e300;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto comma = lines[i].find(',');
        const double gamma = std::stod(lines[i].substr(comma + 1));
        CHECK(gamma > 1.0);
        CHECK(gamma <= prev);
        prev = gamma;
    }
    // the 7-point decade grid hits x = 1 in the middle
    const auto comma = lines[4].find(',');
    CHECK(std::stod(lines[4].substr(comma + 1)) ==
          doctest::Approx(1.5434046384182084).epsilon(1e-9));
    // large-x rows approach 1 from above
    const auto last = lines.back().find(',');
    CHECK(std::stod(lines.back().substr(last + 1)) < 1.0 + 1e-6);
}

TEST_CASE("cli gamma: usage and I/O errors") {
    CHECK(run_cli({"gamma", "--x-min", "-1", "--x-max", "10"}).code ==
          cli::kExitUsage);
    CHECK(run_cli({"gamma", "--x-min", "10", "--x-max", "1"}).code ==
          cli::kExitUsage);
    CHECK(run_cli({"gamma", "--points", "1"}).code == cli::kExitUsage);
    CHECK(run_cli({"gamma", "--output", "/nonexistent_dir/gamma.csv"}).code ==
          cli::kExitIo);
}

TEST_CASE("cli point: low-temperature coincidence of the two bounds") {
    const auto r = run_cli({"point", "--beta", "50", "--format", "pretty"});
    CHECK(r.code == cli::kExitOk);
    double boltzmann = 0.0, heisenberg = 0.0;
    for (const auto& line : split_lines(r.out)) {
        std::istringstream ss(line);
        std::string key;
        double value;
        if (ss >> key >> value) {
            if (key == "boltzmann_bound") boltzmann = value;
            if (key == "heisenberg_bound") heisenberg = value;
        }
    }
    CHECK(heisenberg == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(boltzmann - 0.5) < 0.01);
}

TEST_CASE("cli point: undamped closed form in CSV") {
    const auto r = run_cli({"point", "--beta", "1", "--eta", "1e-6"});
    CHECK(r.code == cli::kExitOk);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2);
    // product and boltzmann_bound columns
    std::vector<double> fields;
    std::istringstream row(lines[1]);
    std::string cell;
    while (std::getline(row, cell, ',')) fields.push_back(std::stod(cell));
    REQUIRE(fields.size() == 12);
    const double coth_form = 0.5 / std::tanh(0.5);
    CHECK(fields[4] == doctest::Approx(coth_form).epsilon(1e-4));
    CHECK(fields[6] == doctest::Approx(fields[4]).epsilon(1e-4));
}

TEST_CASE("cli point: invalid parameter names the offender") {
    const auto r = run_cli({"point", "--zeta", "-2"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("zeta") != std::string::npos);
}

TEST_CASE("cli sweep: writes CSV and a verification summary") {
    const fs::path file = temp_dir() / "sweep.csv";
    const auto r = run_cli({"sweep", "--beta-min", "0.5", "--beta-max", "5",
                            "--beta-points", "5", "--output", file.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("bound chain: PASS") != std::string::npos);
    const auto lines = split_lines(slurp(file));
    CHECK(lines.size() == 6);  // header + 5 rows
}

TEST_CASE("cli sweep: usage and I/O failures") {
    CHECK(run_cli({"sweep", "--beta-points", "0"}).code == cli::kExitUsage);
    CHECK(run_cli({"sweep", "--beta-min", "5", "--beta-max", "1"}).code ==
          cli::kExitUsage);
    CHECK(run_cli({"sweep", "--beta-points", "3", "--output",
                   "/nonexistent_dir/sweep.csv"})
              .code == cli::kExitIo);
    CHECK(run_cli({"sweep", "--unknown-flag", "1"}).code == cli::kExitUsage);
}

TEST_CASE("cli sweep: config file fills unset flags, flags win") {
    const fs::path dir = temp_dir();
    const fs::path cfg = dir / "sweep.cfg";
    {
        std::ofstream out(cfg);
        out << "# demo configuration\n";
        out << "eta = 1e-6\n";
        out << "beta-min = 0.5\n";
        out << "beta-max = 2.0\n";
        out << "beta-points = 3\n";
        out << "rel-tol = 1e-9\n";
    }
    const fs::path csv = dir / "cfg_sweep.csv";
    const auto r = run_cli({"sweep", "--config", cfg.string(), "--beta-points",
                            "4", "--output", csv.string()});
    CHECK(r.code == cli::kExitOk);
    const auto lines = split_lines(slurp(csv));
    CHECK(lines.size() == 5);  // flag value 4 beat the config's 3

    // eta = 1e-6 from the config: bound saturates the product
    std::vector<double> fields;
    std::istringstream row(lines[1]);
    std::string cell;
    while (std::getline(row, cell, ',')) fields.push_back(std::stod(cell));
    CHECK(fields[6] == doctest::Approx(fields[4]).epsilon(1e-4));
}

TEST_CASE("cli sweep: config file errors") {
    const fs::path dir = temp_dir();
    const fs::path bad = dir / "bad.cfg";
    {
        std::ofstream out(bad);
        out << "unknown-key = 1\n";
    }
    CHECK(run_cli({"sweep", "--config", bad.string()}).code == cli::kExitUsage);
    CHECK(run_cli({"sweep", "--config", (dir / "missing.cfg").string()}).code ==
          cli::kExitIo);
}

TEST_CASE("cli verify: accepts a fresh sweep and rejects a tampered one") {
    const fs::path dir = temp_dir();
    const fs::path csv = dir / "verify_me.csv";
    REQUIRE(run_cli({"sweep", "--beta-min", "0.5", "--beta-max", "5",
                     "--beta-points", "4", "--output", csv.string()})
                .code == cli::kExitOk);
    CHECK(run_cli({"verify", "--input", csv.string()}).code == cli::kExitOk);

    // lower one product below its bound
    auto lines = split_lines(slurp(csv));
    std::vector<std::string> cells;
    {
        std::istringstream row(lines[2]);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
    }
    cells[4] = "0.1";
    std::ostringstream rebuilt;
    rebuilt << lines[0] << '\n';
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (i == 2) {
            for (std::size_t j = 0; j < cells.size(); ++j)
                rebuilt << (j ? "," : "") << cells[j];
            rebuilt << '\n';
        } else {
            rebuilt << lines[i] << '\n';
        }
    }
    const fs::path tampered = dir / "tampered.csv";
    {
        std::ofstream out(tampered);
        out << rebuilt.str();
    }
    CHECK(run_cli({"verify", "--input", tampered.string()}).code ==
          cli::kExitVerification);
    CHECK(run_cli({"verify", "--input", (dir / "missing.csv").string()}).code ==
          cli::kExitIo);
}

TEST_CASE("cli: flag round trip through serialize_flags") {
    cli::CliConfig cfg;
    cfg.subcommand = "sweep";
    cfg.model = {2.0, 1.5, 4.0, 8.0};
    cfg.beta_min = 0.3;
    cfg.beta_max = 7.0;
    cfg.beta_points = 11;
    cfg.rel_tol = 1e-8;
    cfg.format = cli::Format::csv;
    cfg.emit_spectra = false;
    const fs::path csv = temp_dir() / "roundtrip.csv";
    cfg.output = csv.string();

    const auto flags = cli::serialize_flags(cfg);
    const auto first = run_cli(flags);
    CHECK(first.code == cli::kExitOk);
    const std::string produced = slurp(csv);

    // running the serialized flags again reproduces the output bit-exactly
    const auto second = run_cli(flags);
    CHECK(second.code == cli::kExitOk);
    CHECK(slurp(csv) == produced);
}

TEST_CASE("cli: help exits cleanly") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("thermal_bound") != std::string::npos);
}

TEST_CASE("cli sweep: emit-spectra writes per-temperature P and Q grids") {
    const fs::path dir = temp_dir();
    const fs::path csv = dir / "spectra_sweep.csv";
    const auto r = run_cli({"sweep", "--beta-min", "0.5", "--beta-max", "2",
                            "--beta-points", "2", "--output", csv.string(),
                            "--emit-spectra"});
    CHECK(r.code == cli::kExitOk);
    for (int i : {0, 1}) {
        const fs::path p = dir / ("spectra_sweep_P_" + std::to_string(i) + ".csv");
        const fs::path q = dir / ("spectra_sweep_Q_" + std::to_string(i) + ".csv");
        CHECK(fs::exists(p));
        CHECK(fs::exists(q));
        const auto lines = split_lines(slurp(p));
        CHECK(lines.size() == 2049);
        CHECK(lines[0] == "omega,value");
    }
    CHECK(run_cli({"sweep", "--beta-points", "3", "--emit-spectra"}).code ==
          cli::kExitUsage);
}
