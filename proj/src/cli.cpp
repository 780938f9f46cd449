#include "thermal_bound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "thermal_bound/format.hpp"
#include "thermal_bound/specfun.hpp"
#include "thermal_bound/sweep.hpp"

namespace thermal_bound::cli {

namespace {

std::string format_to_string(Format f) {
    return f == Format::csv ? "csv" : "pretty";
}

Format format_from_string(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "pretty") return Format::pretty;
    throw DomainError("format must be 'csv' or 'pretty'");
}

// Flat key=value config file; '#' starts a comment, blank lines ignored,
// unknown keys rejected.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    static const std::vector<std::string> known = {
        "mass",   "omega0",   "eta",        "zeta",    "beta",
        "beta-min", "beta-max", "beta-points", "rel-tol", "output",
        "format", "emit-spectra"};

    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string{};
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) +
                              ": expected key=value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw DomainError("config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        values[key] = value;
    }
    return values;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw DomainError("config key '" + key + "': invalid number '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw DomainError("config key '" + key + "': invalid integer '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw DomainError("config key '" + key + "': invalid boolean '" + value + "'");
}

// Applies config-file values underneath explicitly given flags.
void apply_config_file(CliConfig& cfg, const std::map<std::string, std::string>& file,
                       const std::map<std::string, bool>& flag_given) {
    const auto want = [&](const std::string& key) {
        const auto it = flag_given.find(key);
        const bool given = it != flag_given.end() && it->second;
        return file.count(key) > 0 && !given;
    };
    if (want("mass")) cfg.model.mass = parse_double("mass", file.at("mass"));
    if (want("omega0")) cfg.model.omega0 = parse_double("omega0", file.at("omega0"));
    if (want("eta")) cfg.model.eta = parse_double("eta", file.at("eta"));
    if (want("zeta")) cfg.model.zeta = parse_double("zeta", file.at("zeta"));
    if (want("beta")) cfg.beta = parse_double("beta", file.at("beta"));
    if (want("beta-min")) cfg.beta_min = parse_double("beta-min", file.at("beta-min"));
    if (want("beta-max")) cfg.beta_max = parse_double("beta-max", file.at("beta-max"));
    if (want("beta-points"))
        cfg.beta_points = parse_int("beta-points", file.at("beta-points"));
    if (want("rel-tol")) cfg.rel_tol = parse_double("rel-tol", file.at("rel-tol"));
    if (want("output")) cfg.output = file.at("output");
    if (want("format")) cfg.format = format_from_string(file.at("format"));
    if (want("emit-spectra"))
        cfg.emit_spectra = parse_bool("emit-spectra", file.at("emit-spectra"));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path);
}

std::string pretty_report(const sweep::BoundReport& r) {
    std::ostringstream os;
    const auto row = [&os](const char* name, double v) {
        os << name;
        for (std::size_t i = std::string(name).size(); i < 20; ++i) os << ' ';
        os << format_short(v) << '\n';
    };
    row("beta", r.beta);
    row("temperature", r.temperature);
    row("delta_x", r.delta_x);
    row("delta_p", r.delta_p);
    row("product", r.product);
    row("heisenberg_bound", r.heisenberg);
    row("boltzmann_bound", r.boltzmann);
    row("r", r.r);
    row("gamma_arg", r.gamma_arg);
    row("jensen_slack", r.jensen_slack);
    row("sumrule1", r.sumrule_residuals[0]);
    row("sumrule2", r.sumrule_residuals[1]);
    return os.str();
}

void print_summary(std::ostream& os, const sweep::VerificationSummary& s) {
    os << "bound chain: " << (s.passed ? "PASS" : "FAIL")
       << " (worst product slack " << format_short(s.worst_product_slack)
       << ", worst bound slack " << format_short(s.worst_bound_slack) << ")\n";
    os << "product monotone non-increasing in beta: "
       << (s.product_monotone ? "yes" : "no") << '\n';
}

int cmd_gamma(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!(cfg.x_min > 0.0) || !(cfg.x_max > cfg.x_min) || cfg.x_points < 2) {
        err << "gamma: need 0 < x-min < x-max and points >= 2\n";
        return kExitUsage;
    }
    std::ostringstream csv;
    csv << "x,gamma\n";
    const double span = std::log(cfg.x_max / cfg.x_min);
    for (int i = 0; i < cfg.x_points; ++i) {
        const double t = static_cast<double>(i) / (cfg.x_points - 1);
        const double x = cfg.x_min * std::exp(span * t);
        csv << format_full(x) << ',' << format_full(specfun::gamma_big(x).gamma)
            << '\n';
    }
    if (cfg.output.empty())
        out << csv.str();
    else
        write_text_file(cfg.output, csv.str());
    return kExitOk;
}

int cmd_point(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const sweep::BoundReport report =
        sweep::evaluate_point(cfg.model, UnitSystem{}, cfg.beta, cfg.rel_tol);

    std::string text;
    if (cfg.format == Format::pretty) {
        text = pretty_report(report);
    } else {
        std::vector<sweep::SweepPoint> single(1);
        single[0].beta = report.beta;
        single[0].report = report;
        text = sweep::to_csv(single);
    }
    if (cfg.output.empty())
        out << text;
    else
        write_text_file(cfg.output, text);

    const bool chain_ok =
        report.product >= report.boltzmann * (1.0 - 1e-9) &&
        report.boltzmann >= report.heisenberg;
    if (!chain_ok) {
        err << "bound chain violated beyond tolerance (numerics bug)\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    sweep::SweepConfig sc;
    sc.model = cfg.model;
    sc.rel_tol = cfg.rel_tol;
    sc.emit_spectra = cfg.emit_spectra;
    sc.beta_grid = sweep::SweepConfig::log_grid(cfg.beta_min, cfg.beta_max,
                                                cfg.beta_points);

    if (cfg.emit_spectra && cfg.output.empty()) {
        err << "sweep: --emit-spectra requires --output\n";
        return kExitUsage;
    }

    const std::vector<sweep::SweepPoint> points = sweep::run_sweep(sc);
    for (const sweep::SweepPoint& p : points)
        if (!p.report)
            err << "sweep: point beta=" << format_short(p.beta)
                << " failed: " << p.error << '\n';

    const std::string csv = sweep::to_csv(points);
    if (cfg.output.empty())
        out << csv;
    else
        write_text_file(cfg.output, csv);

    if (cfg.emit_spectra) {
        const std::string stem = cfg.output.substr(0, cfg.output.rfind('.'));
        const spectral::SusceptibilityModel sm =
            brownian::to_susceptibility_model(cfg.model);
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!points[i].report) continue;
            const ThermalState state{points[i].beta, UnitSystem{}};
            const spectral::PDensity p = spectral::build_p(sm, state, cfg.rel_tol);
            const spectral::SpectrumGrid q = spectral::build_q(p.grid, state);
            std::ostringstream pos, qos;
            spectral::write_csv(pos, p.grid);
            spectral::write_csv(qos, q);
            write_text_file(stem + "_P_" + std::to_string(i) + ".csv", pos.str());
            write_text_file(stem + "_Q_" + std::to_string(i) + ".csv", qos.str());
        }
    }

    const sweep::VerificationSummary summary =
        sweep::verify_chain(sweep::successful_reports(points));
    print_summary(cfg.output.empty() ? err : out, summary);
    return summary.passed ? kExitOk : kExitVerification;
}

// Reads a sweep CSV back into reports (columns as written by to_csv).
std::vector<sweep::BoundReport> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw DomainError("verify: empty CSV");
    if (header !=
        "beta,temperature,delta_x,delta_p,product,heisenberg_bound,"
        "boltzmann_bound,r,gamma_arg,jensen_slack,sumrule1,sumrule2")
        throw DomainError("verify: unrecognized CSV header");

    std::vector<sweep::BoundReport> reports;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> fields;
        while (std::getline(row, cell, ','))
            fields.push_back(parse_double("csv field", cell));
        if (fields.size() != 12) throw DomainError("verify: malformed CSV row");
        sweep::BoundReport r;
        r.beta = fields[0];
        r.temperature = fields[1];
        r.delta_x = fields[2];
        r.delta_p = fields[3];
        r.product = fields[4];
        r.heisenberg = fields[5];
        r.boltzmann = fields[6];
        r.r = fields[7];
        r.gamma_arg = fields[8];
        r.jensen_slack = fields[9];
        r.sumrule_residuals = {fields[10], fields[11]};
        reports.push_back(r);
    }
    return reports;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    const std::vector<sweep::BoundReport> reports = read_sweep_csv(cfg.input);
    const sweep::VerificationSummary summary = sweep::verify_chain(reports);
    print_summary(out, summary);
    return summary.passed ? kExitOk : kExitVerification;
}

}  // namespace

std::vector<std::string> serialize_flags(const CliConfig& cfg) {
    std::vector<std::string> flags;
    flags.push_back(cfg.subcommand);
    const auto add = [&flags](const std::string& name, const std::string& value) {
        flags.push_back(name);
        flags.push_back(value);
    };
    if (cfg.subcommand == "gamma") {
        add("--x-min", format_full(cfg.x_min));
        add("--x-max", format_full(cfg.x_max));
        add("--points", std::to_string(cfg.x_points));
        if (!cfg.output.empty()) add("--output", cfg.output);
        return flags;
    }
    if (cfg.subcommand == "verify") {
        add("--input", cfg.input);
        return flags;
    }
    add("--mass", format_full(cfg.model.mass));
    add("--omega0", format_full(cfg.model.omega0));
    add("--eta", format_full(cfg.model.eta));
    add("--zeta", format_full(cfg.model.zeta));
    add("--rel-tol", format_full(cfg.rel_tol));
    if (!cfg.output.empty()) add("--output", cfg.output);
    add("--format", format_to_string(cfg.format));
    if (cfg.subcommand == "point") {
        add("--beta", format_full(cfg.beta));
    } else {
        add("--beta-min", format_full(cfg.beta_min));
        add("--beta-max", format_full(cfg.beta_max));
        add("--beta-points", std::to_string(cfg.beta_points));
        if (cfg.emit_spectra) flags.push_back("--emit-spectra");
    }
    return flags;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    std::string format_str = "csv";

    CLI::App app{"Boltzmann lower bound on the thermal uncertainty product"};
    app.name("thermal_bound");
    app.require_subcommand(1);

    CLI::App* gamma = app.add_subcommand(
        "gamma", "Tabulate Gamma(x) on a log grid as CSV");
    gamma->add_option("--x-min", cfg.x_min, "smallest x");
    gamma->add_option("--x-max", cfg.x_max, "largest x");
    gamma->add_option("--points", cfg.x_points, "number of grid points");
    gamma->add_option("--output", cfg.output, "output file (default stdout)");

    const auto add_model_options = [&cfg](CLI::App* cmd) {
        cmd->add_option("--mass", cfg.model.mass, "oscillator mass");
        cmd->add_option("--omega0", cfg.model.omega0, "oscillator frequency");
        cmd->add_option("--eta", cfg.model.eta, "bath coupling strength");
        cmd->add_option("--zeta", cfg.model.zeta, "bath damping rate");
        cmd->add_option("--rel-tol", cfg.rel_tol, "relative tolerance");
        cmd->add_option("--output", cfg.output, "output file (default stdout)");
        cmd->add_option("--format", cfg.format, "csv or pretty")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, Format>{{"csv", Format::csv},
                                              {"pretty", Format::pretty}}));
        cmd->add_option("--config", cfg.config_path,
                        "flat key=value config file");
    };

    CLI::App* point = app.add_subcommand(
        "point", "Evaluate the bound report at one temperature");
    add_model_options(point);
    point->add_option("--beta", cfg.beta, "inverse temperature");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Temperature sweep: CSV of bound reports plus chain check");
    add_model_options(sweep_cmd);
    sweep_cmd->add_option("--beta-min", cfg.beta_min, "smallest beta");
    sweep_cmd->add_option("--beta-max", cfg.beta_max, "largest beta");
    sweep_cmd->add_option("--beta-points", cfg.beta_points, "grid size");
    sweep_cmd->add_flag("--emit-spectra", cfg.emit_spectra,
                        "also write P/Q spectrum CSVs per temperature");

    CLI::App* verify = app.add_subcommand(
        "verify", "Re-check the bound chain of an existing sweep CSV");
    verify->add_option("--input", cfg.input, "sweep CSV to verify")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        cfg.subcommand = active->get_name();

        if (!cfg.config_path.empty()) {
            const auto file = read_config_file(cfg.config_path);
            std::map<std::string, bool> given;
            for (const auto& name :
                 {"--mass", "--omega0", "--eta", "--zeta", "--beta", "--beta-min",
                  "--beta-max", "--beta-points", "--rel-tol", "--output",
                  "--format", "--emit-spectra"}) {
                const CLI::Option* opt =
                    active->get_option_no_throw(std::string(name));
                given[std::string(name).substr(2)] =
                    opt != nullptr && opt->count() > 0;
            }
            apply_config_file(cfg, file, given);
        }

        if (cfg.subcommand == "gamma") return cmd_gamma(cfg, out, err);
        if (cfg.subcommand == "point") return cmd_point(cfg, out, err);
        if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out, err);
        return cmd_verify(cfg, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace thermal_bound::cli
