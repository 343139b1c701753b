// ptq: command-line front end for simulations, sweeps and steady-state reports.
#include "ptq/errors.hpp"
#include "ptq/scenario.hpp"
#include "ptq/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::string config;
    std::string out;
    std::string format{"csv"};
    unsigned threads{1};
    bool no_noise{false};
    std::optional<std::string> log_base;
    std::optional<double> epsilon;
    std::optional<double> gamma;
};

int exit_code_for(ptq::ErrorCode code) {
    switch (code) {
        case ptq::ErrorCode::ConfigError:
        case ptq::ErrorCode::InvalidParams:
        case ptq::ErrorCode::InvalidBeta:
        case ptq::ErrorCode::NonPtParameters:
        case ptq::ErrorCode::GammaExceedsEpsilon:
        case ptq::ErrorCode::ExceptionalPointParams:
            return kExitConfig;
        default:
            return kExitNumerical;
    }
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ptq::Error(ptq::ErrorCode::ConfigError, "cannot open output file " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

ptq::ConfigFile load_config(const Options& o) {
    if (o.config.empty()) {
        return {};
    }
    return ptq::ConfigFile::load(o.config);
}

ptq::ScenarioConfig scenario(const ptq::ConfigFile& cfg, const Options& o) {
    ptq::ScenarioConfig c = ptq::scenario_from_config(cfg);
    if (o.no_noise) {
        c.noise = false;
    }
    if (o.log_base) {
        c.log_base = ptq::parse_log_base(*o.log_base);
    }
    return c;
}

std::vector<std::string> provenance(const Options& o, const ptq::ScenarioConfig& c) {
    std::vector<std::string> lines;
    if (!o.config.empty()) {
        lines.push_back("config: " + o.config);
    }
    for (auto& l : ptq::describe(c)) {
        lines.push_back(std::move(l));
    }
    return lines;
}

// Flattened key,value listing of a JSON report for --format csv.
void write_flat_csv(std::ostream& out, const nlohmann::json& j) {
    out << "key,value\n";
    const nlohmann::json flat = j.flatten();
    for (const auto& [key, value] : flat.items()) {
        out << key << ',';
        if (value.is_number()) {
            out << ptq::format_number(value.get<double>());
        } else if (value.is_string()) {
            out << value.get<std::string>();
        } else {
            out << value.dump();
        }
        out << '\n';
    }
}

int run_simulate(const Options& o) {
    const auto cfg = load_config(o);
    const auto c = scenario(cfg, o);
    cfg.require_all_consumed();
    const auto result = ptq::simulate(c);
    Output out(o.out);
    if (o.format == "json") {
        nlohmann::json j = ptq::time_series_json(result);
        j["config"] = provenance(o, c);
        out.stream() << j.dump(1) << '\n';
    } else {
        ptq::write_time_series_csv(out.stream(), result, provenance(o, c));
    }
    if (result.failure) {
        std::cerr << "ptq: " << *result.failure << " (partial output up to t = " << result.reached_time << ")\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_sweep(const Options& o) {
    const auto cfg = load_config(o);
    const auto c = scenario(cfg, o);
    const auto spec = ptq::sweep_from_config(cfg);
    cfg.require_all_consumed();
    const auto table = ptq::sweep(spec, c, o.threads);
    Output out(o.out);
    if (o.format == "json") {
        nlohmann::json j = ptq::sweep_json(table);
        j["reduction"] = ptq::to_string(spec.reduction);
        j["config"] = provenance(o, c);
        out.stream() << j.dump(1) << '\n';
    } else {
        auto header = provenance(o, c);
        header.push_back(std::string("sweep.reduction = ") + ptq::to_string(spec.reduction));
        ptq::write_sweep_csv(out.stream(), table, header);
    }
    return kExitOk;
}

int run_report(const Options& o, bool steady) {
    const auto cfg = load_config(o);
    const auto c = scenario(cfg, o);
    const nlohmann::json j = steady ? ptq::report_steady(c.params) : ptq::report_spectrum(c.params);
    Output out(o.out);
    if (o.format == "json") {
        out.stream() << j.dump(1) << '\n';
    } else {
        write_flat_csv(out.stream(), j);
    }
    return kExitOk;
}

int run_ep_kappa(const Options& o) {
    const auto cfg = load_config(o);
    const auto c = scenario(cfg, o);
    const double eps = o.epsilon.value_or(c.params.epsilon);
    const double gamma = o.gamma.value_or(c.params.gamma1);
    const double kappa = ptq::ep_kappa(eps, gamma);
    Output out(o.out);
    if (o.format == "json") {
        out.stream() << nlohmann::json{{"epsilon", eps}, {"gamma", gamma}, {"kappa", kappa}}.dump(1) << '\n';
    } else {
        out.stream() << "epsilon,gamma,kappa\n"
                     << ptq::format_number(eps) << ',' << ptq::format_number(gamma) << ','
                     << ptq::format_number(kappa) << '\n';
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "scenario file (key = value)");
    cmd->add_option("--out", o.out, "output path, stdout when omitted");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", o.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-noise", o.no_noise, "drop the Langevin noise terms");
    cmd->add_option("--log-base", o.log_base, "logarithm base for E_N")->check(CLI::IsMember({"2", "10", "e"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum fluctuations of two coupled gain/loss bosonic modes"};
    app.require_subcommand(1);
    Options o;

    auto* simulate = app.add_subcommand("simulate", "time series of amplitudes, moments and quantifiers");
    auto* sweep = app.add_subcommand("sweep", "parameter grid with a reduction per point");
    auto* steady = app.add_subcommand("steady", "steady states and their stability");
    auto* spectrum = app.add_subcommand("spectrum", "linear eigenfrequencies and eigenvectors");
    auto* ep = app.add_subcommand("ep-kappa", "down-conversion rate of the exceptional point");
    for (auto* cmd : {simulate, sweep, steady, spectrum, ep}) {
        add_common(cmd, o);
    }
    ep->add_option("--epsilon", o.epsilon, "exchange coupling (default from config or 1)");
    ep->add_option("--gamma", o.gamma, "gain/loss rate (default params.gamma1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*simulate) return run_simulate(o);
        if (*sweep) return run_sweep(o);
        if (*steady) return run_report(o, true);
        if (*spectrum) return run_report(o, false);
        if (*ep) return run_ep_kappa(o);
    } catch (const ptq::Error& e) {
        std::cerr << "ptq: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ptq: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}
