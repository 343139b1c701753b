// scenario.hpp: scenario runner and parameter sweeps behind the ptq CLI.
#pragma once

#include "ptq/classical.hpp"
#include "ptq/config.hpp"
#include "ptq/fluctuations.hpp"
#include "ptq/quantifiers.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ptq {

enum class InitialKind { Coherent, Amplitudes, SteadyFirst, SteadySecond, Trivial };

struct InitialCondition {
    InitialKind kind{InitialKind::Trivial};
    InitialStateSpec spec;     // Coherent
    AmplitudePair amplitudes;  // Amplitudes
};

struct ScenarioConfig {
    SystemParams params;
    InitialCondition initial;
    double t_end{10.0};
    double output_dt{0.01};
    bool noise{true};
    LogBase log_base{LogBase::Two};
    // Absolute and relative step tolerance. R divides by b1 + b2, which nearly vanishes
    // whenever the state returns close to vacuum, so it needs tight moments.
    double tol{1e-13};
};

// Reads params.*, initial.*, time.*, noise, log_base and integrator.tol.
ScenarioConfig scenario_from_config(const ConfigFile& cfg);

// Resolved key = value description of a scenario, used as the CSV provenance header.
std::vector<std::string> describe(const ScenarioConfig& config);

// Classical amplitudes at t = 0. Steady-state kinds throw NoSteadyState when that
// family does not exist for the parameters.
AmplitudePair resolve_initial(const ScenarioConfig& config);

struct TimeSeriesRow {
    double t{0.0};
    GaussianCoefficients coeffs;
    QuantifierSample quantifiers;
    double commutator1{1.0};
    double commutator2{1.0};
};

struct SimulationResult {
    std::vector<TimeSeriesRow> rows;
    std::optional<std::string> failure;  // set when the run stopped early
    double reached_time{0.0};
};

const std::vector<std::string>& time_series_columns();

// Co-propagates amplitudes and moments and evaluates every quantifier on the output grid.
// A StepFailure ends the run early; rows up to the failure are kept.
SimulationResult simulate(const ScenarioConfig& config);

void write_time_series_csv(std::ostream& out, const SimulationResult& result,
                           const std::vector<std::string>& header_lines);
nlohmann::json time_series_json(const SimulationResult& result);

enum class Reduction { TimeSeries, Extremes, StabilityMap, EpLine };

Reduction parse_reduction(const std::string& text);
const char* to_string(Reduction r) noexcept;

struct SweepAxis {
    std::string name;
    double min{0.0};
    double max{0.0};
    std::size_t count{2};
    bool log_spacing{false};

    std::vector<double> values() const;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;
    Reduction reduction{Reduction::Extremes};
    double window_begin{0.0};
    std::optional<double> window_end;  // defaults to the scenario t_end
    double scan_dt{1e-3};
};

// Reads sweep.reduction, sweep.axisN.{name,min,max,count,spacing}, sweep.window_*,
// sweep.scan_dt.
SweepSpec sweep_from_config(const ConfigFile& cfg);

// Sets a named sweep parameter on a scenario. Names: epsilon, kappa, gamma1, gamma2,
// gain (= -gamma2), gamma (gamma1 = gamma, gamma2 = -gamma), beta1, beta2, beta,
// beta_c, intensity, theta, phi, psi.
void apply_parameter(ScenarioConfig& config, const std::string& name, double value);

struct SweepTable {
    std::vector<std::string> columns;           // numeric columns, axes first
    std::vector<std::vector<double>> values;    // one row per grid point
    std::vector<std::vector<std::string>> labels;  // classification columns
    std::vector<std::string> label_columns;
    std::vector<std::string> errors;            // empty string when the point succeeded
};

// Grid points are evaluated on up to `threads` workers; row order follows the grid index
// with the last axis varying fastest.
SweepTable sweep(const SweepSpec& spec, const ScenarioConfig& base, unsigned threads = 1);

void write_sweep_csv(std::ostream& out, const SweepTable& table, const std::vector<std::string>& header_lines);
nlohmann::json sweep_json(const SweepTable& table);

// Both steady-state families, their stability spectra and classification.
nlohmann::json report_steady(const SystemParams& params);

// Linear spectrum summary: PT class, eigenfrequencies, EP coupling and, where defined,
// the closed-form eigenvectors.
nlohmann::json report_spectrum(const SystemParams& params);

// %.17g formatting used for every numeric output.
std::string format_number(double v);

}  // namespace ptq
