#include "ptq/scenario.hpp"

#include "ptq/errors.hpp"
#include "ptq/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace ptq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

InitialKind parse_initial_kind(const std::string& text) {
    if (text == "coherent") return InitialKind::Coherent;
    if (text == "amplitudes") return InitialKind::Amplitudes;
    if (text == "steady_first" || text == "first") return InitialKind::SteadyFirst;
    if (text == "steady_second" || text == "second") return InitialKind::SteadySecond;
    if (text == "trivial" || text == "vacuum") return InitialKind::Trivial;
    throw Error(ErrorCode::ConfigError, "unknown initial.kind '" + text + "'");
}

const char* to_string(InitialKind kind) {
    switch (kind) {
        case InitialKind::Coherent: return "coherent";
        case InitialKind::Amplitudes: return "amplitudes";
        case InitialKind::SteadyFirst: return "steady_first";
        case InitialKind::SteadySecond: return "steady_second";
        case InitialKind::Trivial: return "trivial";
    }
    return "?";
}

nlohmann::json number(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json complex_json(cplx z) {
    return nlohmann::json::array({number(z.real()), number(z.imag())});
}

nlohmann::json params_json(const SystemParams& p) {
    return {{"epsilon", p.epsilon}, {"kappa", p.kappa},   {"gamma1", p.gamma1}, {"gamma2", p.gamma2},
            {"beta1", p.beta1},     {"beta2", p.beta2}, {"beta_c", p.beta_c}};
}

nlohmann::json pt_json(const PtClass& pt) {
    nlohmann::json j{{"is_pt", pt.is_pt}};
    if (pt.is_pt) {
        j["gamma"] = pt.gamma;
        j["mu_squared"] = *pt.mu_squared;
        j["regime"] = to_string(*pt.regime);
    }
    return j;
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) return "0";  // also folds -0
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ScenarioConfig scenario_from_config(const ConfigFile& cfg) {
    ScenarioConfig c;
    auto& p = c.params;
    p.epsilon = cfg.get_double_or("params.epsilon", p.epsilon);
    p.kappa = cfg.get_double_or("params.kappa", p.kappa);
    // params.gamma and params.beta are PT shorthands; explicit per-mode keys override them.
    if (const auto g = cfg.get_double("params.gamma")) {
        p.gamma1 = *g;
        p.gamma2 = -*g;
    }
    if (const auto b = cfg.get_double("params.beta")) {
        p.beta1 = p.beta2 = *b;
    }
    p.gamma1 = cfg.get_double_or("params.gamma1", p.gamma1);
    p.gamma2 = cfg.get_double_or("params.gamma2", p.gamma2);
    p.beta1 = cfg.get_double_or("params.beta1", p.beta1);
    p.beta2 = cfg.get_double_or("params.beta2", p.beta2);
    p.beta_c = cfg.get_double_or("params.beta_c", p.beta_c);

    if (const auto kind = cfg.get_string("initial.kind")) {
        c.initial.kind = parse_initial_kind(*kind);
    }
    auto& s = c.initial.spec;
    s.total_intensity = cfg.get_double_or("initial.intensity", 0.0);
    s.theta = cfg.get_double_or("initial.theta", 0.0);
    s.phi = cfg.get_double_or("initial.phi", 0.0);
    s.psi = cfg.get_double_or("initial.psi", 0.0);
    auto& a = c.initial.amplitudes;
    a.alpha1 = {cfg.get_double_or("initial.alpha1_re", 0.0), cfg.get_double_or("initial.alpha1_im", 0.0)};
    a.alpha2 = {cfg.get_double_or("initial.alpha2_re", 0.0), cfg.get_double_or("initial.alpha2_im", 0.0)};

    c.t_end = cfg.get_double_or("time.t_end", c.t_end);
    c.output_dt = cfg.get_double_or("time.output_dt", c.output_dt);
    c.noise = cfg.get_bool("noise").value_or(c.noise);
    if (const auto base = cfg.get_string("log_base")) {
        c.log_base = parse_log_base(*base);
    }
    c.tol = cfg.get_double_or("integrator.tol", c.tol);

    if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) {
        throw Error(ErrorCode::ConfigError, "time.t_end must be a finite non-negative number");
    }
    if (!(c.output_dt > 0.0) || !std::isfinite(c.output_dt)) {
        throw Error(ErrorCode::ConfigError, "time.output_dt must be positive");
    }
    if (!(c.tol > 0.0)) {
        throw Error(ErrorCode::ConfigError, "integrator.tol must be positive");
    }
    if (s.total_intensity < 0.0) {
        throw Error(ErrorCode::ConfigError, "initial.intensity must be non-negative");
    }
    return c;
}

std::vector<std::string> describe(const ScenarioConfig& c) {
    const auto& p = c.params;
    std::vector<std::string> lines{
        "params.epsilon = " + format_number(p.epsilon),
        "params.kappa = " + format_number(p.kappa),
        "params.gamma1 = " + format_number(p.gamma1),
        "params.gamma2 = " + format_number(p.gamma2),
        "params.beta1 = " + format_number(p.beta1),
        "params.beta2 = " + format_number(p.beta2),
        "params.beta_c = " + format_number(p.beta_c),
        std::string("initial.kind = ") + to_string(c.initial.kind),
    };
    if (c.initial.kind == InitialKind::Coherent) {
        lines.push_back("initial.intensity = " + format_number(c.initial.spec.total_intensity));
        lines.push_back("initial.theta = " + format_number(c.initial.spec.theta));
        lines.push_back("initial.phi = " + format_number(c.initial.spec.phi));
        lines.push_back("initial.psi = " + format_number(c.initial.spec.psi));
    } else if (c.initial.kind == InitialKind::Amplitudes) {
        const auto& a = c.initial.amplitudes;
        lines.push_back("initial.alpha1_re = " + format_number(a.alpha1.real()));
        lines.push_back("initial.alpha1_im = " + format_number(a.alpha1.imag()));
        lines.push_back("initial.alpha2_re = " + format_number(a.alpha2.real()));
        lines.push_back("initial.alpha2_im = " + format_number(a.alpha2.imag()));
    }
    lines.push_back("time.t_end = " + format_number(c.t_end));
    lines.push_back("time.output_dt = " + format_number(c.output_dt));
    lines.push_back(std::string("noise = ") + (c.noise ? "true" : "false"));
    lines.push_back(std::string("log_base = ") + std::string(to_string(c.log_base)));
    lines.push_back("integrator.tol = " + format_number(c.tol));
    return lines;
}

AmplitudePair resolve_initial(const ScenarioConfig& c) {
    switch (c.initial.kind) {
        case InitialKind::Coherent: return to_amplitudes(c.initial.spec);
        case InitialKind::Amplitudes: return c.initial.amplitudes;
        case InitialKind::Trivial: return {};
        case InitialKind::SteadyFirst:
        case InitialKind::SteadySecond: {
            const SteadyStateSet set = steady_states(c.params);
            const bool first = c.initial.kind == InitialKind::SteadyFirst;
            const auto& st = first ? set.first : set.second;
            if (!st) {
                throw Error(ErrorCode::NoSteadyState,
                            std::string(first ? "first" : "second") + "-kind steady state does not exist");
            }
            return st->amplitudes(c.params);
        }
    }
    return {};
}

const std::vector<std::string>& time_series_columns() {
    static const std::vector<std::string> cols{
        "t",     "re_alpha1", "im_alpha1", "re_alpha2", "im_alpha2", "B1",      "B2",
        "re_C1", "im_C1",     "re_C2",     "im_C2",     "re_D",      "im_D",    "re_Dbar",
        "im_Dbar", "E_N",     "R",         "lambda1",   "lambda2",   "lambda",  "commutator1",
        "commutator2"};
    return cols;
}

namespace {

std::vector<double> row_values(const TimeSeriesRow& r) {
    const auto& k = r.coeffs;
    const auto& q = r.quantifiers;
    return {r.t,          k.alpha.alpha1.real(), k.alpha.alpha1.imag(), k.alpha.alpha2.real(),
            k.alpha.alpha2.imag(), k.B1,         k.B2,                  k.C1.real(),
            k.C1.imag(),  k.C2.real(),           k.C2.imag(),           k.D.real(),
            k.D.imag(),   k.Dbar.real(),         k.Dbar.imag(),         q.E_N,
            q.R,          q.lambda1,             q.lambda2,             q.lambda,
            r.commutator1, r.commutator2};
}

}  // namespace

SimulationResult simulate(const ScenarioConfig& c) {
    validate(c.params);
    const AmplitudePair alpha0 = resolve_initial(c);
    const std::vector<double> grid = uniform_grid(c.t_end, c.output_dt);
    const PhysicalityCheck check = c.noise ? PhysicalityCheck::Enforce : PhysicalityCheck::Skip;

    SimulationResult result;
    result.rows.reserve(grid.size());
    try {
        propagate_moments(alpha0, c.params, c.noise, grid, c.tol, initial_moments(), [&](const MomentSample& s) {
            TimeSeriesRow row;
            row.t = s.t;
            row.coeffs = extract_coefficients(s.moments, s.alpha);
            row.quantifiers = quantify(s.t, row.coeffs, c.log_base, check);
            row.commutator1 = s.moments.commutator1().real();
            row.commutator2 = s.moments.commutator2().real();
            result.rows.push_back(row);
            result.reached_time = s.t;
        });
    } catch (const StepFailure& e) {
        result.failure = e.what();
        result.reached_time = e.reached_time();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NonPhysicalCovariance) {
            throw;
        }
        result.failure = e.what();
    }
    return result;
}

void write_time_series_csv(std::ostream& out, const SimulationResult& result,
                           const std::vector<std::string>& header_lines) {
    for (const auto& line : header_lines) {
        out << "# " << line << '\n';
    }
    if (result.failure) {
        out << "# failure: " << *result.failure << '\n';
        out << "# reached_time = " << format_number(result.reached_time) << '\n';
    }
    const auto& cols = time_series_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto& row : result.rows) {
        const auto v = row_values(row);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out << (i ? "," : "") << format_number(v[i]);
        }
        out << '\n';
    }
}

nlohmann::json time_series_json(const SimulationResult& result) {
    nlohmann::json j;
    j["columns"] = time_series_columns();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row_values(row)) {
            r.push_back(number(v));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["failure"] = result.failure ? nlohmann::json(*result.failure) : nlohmann::json(nullptr);
    j["reached_time"] = result.reached_time;
    return j;
}

Reduction parse_reduction(const std::string& text) {
    if (text == "time_series" || text == "TimeSeries") return Reduction::TimeSeries;
    if (text == "extremes" || text == "Extremes") return Reduction::Extremes;
    if (text == "stability_map" || text == "StabilityMap") return Reduction::StabilityMap;
    if (text == "ep_line" || text == "EpLine") return Reduction::EpLine;
    throw Error(ErrorCode::ConfigError, "unknown sweep.reduction '" + text + "'");
}

const char* to_string(Reduction r) noexcept {
    switch (r) {
        case Reduction::TimeSeries: return "time_series";
        case Reduction::Extremes: return "extremes";
        case Reduction::StabilityMap: return "stability_map";
        case Reduction::EpLine: return "ep_line";
    }
    return "?";
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
        v[i] = log_spacing ? min * std::pow(max / min, f) : min + f * (max - min);
    }
    if (count > 1) {
        v.back() = max;  // exact endpoint regardless of rounding
    }
    return v;
}

namespace {

const std::vector<std::string> kParameterNames{"epsilon", "kappa", "gamma1", "gamma2", "gain",  "gamma", "beta1",
                                               "beta2",   "beta",  "beta_c", "intensity", "theta", "phi", "psi"};

}  // namespace

SweepSpec sweep_from_config(const ConfigFile& cfg) {
    SweepSpec spec;
    if (const auto r = cfg.get_string("sweep.reduction")) {
        spec.reduction = parse_reduction(*r);
    }
    for (int n = 1;; ++n) {
        const std::string prefix = "sweep.axis" + std::to_string(n) + ".";
        const auto name = cfg.get_string(prefix + "name");
        if (!name) {
            break;
        }
        if (std::find(kParameterNames.begin(), kParameterNames.end(), *name) == kParameterNames.end()) {
            throw Error(ErrorCode::ConfigError, prefix + "name: unknown parameter '" + *name + "'");
        }
        SweepAxis axis;
        axis.name = *name;
        const auto lo = cfg.get_double(prefix + "min");
        const auto hi = cfg.get_double(prefix + "max");
        if (!lo || !hi) {
            throw Error(ErrorCode::ConfigError, prefix + "min and " + prefix + "max are required");
        }
        axis.min = *lo;
        axis.max = *hi;
        const long count = cfg.get_int(prefix + "count").value_or(2);
        if (count < 2) {
            throw Error(ErrorCode::ConfigError, prefix + "count must be at least 2");
        }
        axis.count = static_cast<std::size_t>(count);
        const std::string spacing = cfg.get_string(prefix + "spacing").value_or("linear");
        if (spacing == "log") {
            axis.log_spacing = true;
            if (!(axis.min > 0.0 && axis.max > 0.0)) {
                throw Error(ErrorCode::ConfigError, prefix + "log spacing needs positive bounds");
            }
        } else if (spacing != "linear") {
            throw Error(ErrorCode::ConfigError, prefix + "spacing must be linear or log");
        }
        spec.axes.push_back(axis);
    }
    if (spec.axes.empty()) {
        throw Error(ErrorCode::ConfigError, "sweep needs at least sweep.axis1.name");
    }
    spec.window_begin = cfg.get_double_or("sweep.window_begin", spec.window_begin);
    spec.window_end = cfg.get_double("sweep.window_end");
    spec.scan_dt = cfg.get_double_or("sweep.scan_dt", spec.scan_dt);
    if (!(spec.scan_dt > 0.0)) {
        throw Error(ErrorCode::ConfigError, "sweep.scan_dt must be positive");
    }
    return spec;
}

void apply_parameter(ScenarioConfig& c, const std::string& name, double value) {
    auto& p = c.params;
    auto coherent = [&c]() -> InitialStateSpec& {
        c.initial.kind = InitialKind::Coherent;
        return c.initial.spec;
    };
    if (name == "epsilon") p.epsilon = value;
    else if (name == "kappa") p.kappa = value;
    else if (name == "gamma1") p.gamma1 = value;
    else if (name == "gamma2") p.gamma2 = value;
    else if (name == "gain") p.gamma2 = -value;
    else if (name == "gamma") { p.gamma1 = value; p.gamma2 = -value; }
    else if (name == "beta1") p.beta1 = value;
    else if (name == "beta2") p.beta2 = value;
    else if (name == "beta") p.beta1 = p.beta2 = value;
    else if (name == "beta_c") p.beta_c = value;
    else if (name == "intensity") coherent().total_intensity = value;
    else if (name == "theta") coherent().theta = value;
    else if (name == "phi") coherent().phi = value;
    else if (name == "psi") coherent().psi = value;
    else throw Error(ErrorCode::ConfigError, "unknown sweep parameter '" + name + "'");
}

namespace {

const std::vector<std::string> kExtremesColumns{"E_N_max", "R_min", "lambda1_min", "lambda2_min", "lambda_min"};

struct PointResult {
    std::vector<double> values;
    std::vector<std::string> labels;
    std::string error;
};

std::vector<double> extremes_values(const Extremes& e) {
    return {e.E_N_max, e.R_min, e.lambda1_min, e.lambda2_min, e.lambda_min};
}

// Omega = log10(1 + max|Re nu|), Gamma = sign(max Im nu) log10(1 + |max Im nu|).
std::pair<double, double> map_transforms(const StabilityReport& r) {
    const double re = r.max_abs_real();
    const double im = r.max_imag();
    const double sign = im > 0.0 ? 1.0 : (im < 0.0 ? -1.0 : 0.0);
    return {std::log10(1.0 + re), sign * std::log10(1.0 + std::abs(im))};
}

Extremes scan(const ScenarioConfig& base, const SweepSpec& spec) {
    ScenarioConfig c = base;
    c.output_dt = spec.scan_dt;
    const SimulationResult sim = simulate(c);
    if (sim.failure) {
        throw Error(ErrorCode::StepFailure, *sim.failure);
    }
    std::vector<QuantifierSample> q;
    q.reserve(sim.rows.size());
    for (const auto& row : sim.rows) {
        q.push_back(row.quantifiers);
    }
    return extremal_scan(q, spec.window_begin, spec.window_end.value_or(c.t_end));
}

PointResult evaluate_point(const SweepSpec& spec, ScenarioConfig c) {
    PointResult r;
    switch (spec.reduction) {
        case Reduction::TimeSeries: {
            const SimulationResult sim = simulate(c);
            if (sim.failure) {
                throw Error(ErrorCode::StepFailure, *sim.failure);
            }
            const auto& last = sim.rows.back();
            r.values = {last.t, last.quantifiers.E_N, last.quantifiers.R, last.quantifiers.lambda1,
                        last.quantifiers.lambda2, last.quantifiers.lambda};
            break;
        }
        case Reduction::Extremes: r.values = extremes_values(scan(c, spec)); break;
        case Reduction::EpLine: {
            c.params.kappa = ep_kappa(c.params.epsilon, c.params.gamma1);
            r.values = {c.params.kappa};
            const auto e = extremes_values(scan(c, spec));
            r.values.insert(r.values.end(), e.begin(), e.end());
            break;
        }
        case Reduction::StabilityMap: {
            const SteadyStateSet set = steady_states(c.params);
            for (const auto* st : {&set.first, &set.second}) {
                if (!*st) {
                    r.values.insert(r.values.end(), {kNaN, kNaN, kNaN, kNaN, kNaN});
                    r.labels.emplace_back("none");
                    continue;
                }
                const StabilityReport rep = stability_frequencies(**st, c.params);
                const auto [omega, gamma] = map_transforms(rep);
                r.values.insert(r.values.end(),
                                {(*st)->rho1_st, rep.max_abs_real(), rep.max_imag(), omega, gamma});
                r.labels.emplace_back(to_string(rep.classification));
            }
            break;
        }
    }
    return r;
}

std::vector<std::string> reduction_columns(Reduction red) {
    switch (red) {
        case Reduction::TimeSeries: return {"t", "E_N", "R", "lambda1", "lambda2", "lambda"};
        case Reduction::Extremes: return kExtremesColumns;
        case Reduction::EpLine: {
            std::vector<std::string> c{"kappa"};
            c.insert(c.end(), kExtremesColumns.begin(), kExtremesColumns.end());
            return c;
        }
        case Reduction::StabilityMap: {
            std::vector<std::string> c;
            for (const char* kind : {"first", "second"}) {
                for (const char* f : {"rho1", "max_abs_re_nu", "max_im_nu", "Omega", "Gamma"}) {
                    c.push_back(std::string(kind) + "_" + f);
                }
            }
            return c;
        }
    }
    return {};
}

}  // namespace

SweepTable sweep(const SweepSpec& spec, const ScenarioConfig& base, unsigned threads) {
    std::vector<std::vector<double>> axis_values;
    std::size_t total = 1;
    for (const auto& axis : spec.axes) {
        axis_values.push_back(axis.values());
        total *= axis_values.back().size();
    }

    SweepTable table;
    for (const auto& axis : spec.axes) {
        table.columns.push_back(axis.name);
    }
    const auto red_cols = reduction_columns(spec.reduction);
    table.columns.insert(table.columns.end(), red_cols.begin(), red_cols.end());
    if (spec.reduction == Reduction::StabilityMap) {
        table.label_columns = {"first_class", "second_class"};
    }
    table.values.resize(total);
    table.labels.resize(total);
    table.errors.resize(total);

    // Grid index -> per-axis coordinates, last axis fastest.
    auto coordinates = [&](std::size_t index) {
        std::vector<double> coords(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            const auto& vals = axis_values[a];
            coords[a] = vals[index % vals.size()];
            index /= vals.size();
        }
        return coords;
    };

    auto work = [&](std::size_t index) {
        const auto coords = coordinates(index);
        std::vector<double> row = coords;
        PointResult point;
        try {
            ScenarioConfig c = base;
            for (std::size_t a = 0; a < coords.size(); ++a) {
                apply_parameter(c, spec.axes[a].name, coords[a]);
            }
            point = evaluate_point(spec, c);
        } catch (const std::exception& e) {
            point.values.assign(red_cols.size(), kNaN);
            point.labels.assign(table.label_columns.size(), "none");
            point.error = e.what();
        }
        row.insert(row.end(), point.values.begin(), point.values.end());
        table.values[index] = std::move(row);
        table.labels[index] = std::move(point.labels);
        table.errors[index] = std::move(point.error);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    std::atomic<std::size_t> next{0};
    auto loop = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            work(i);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(loop);
    }
    loop();
    pool.clear();
    return table;
}

namespace {

// Errors go into a CSV cell; keep them on one line and free of separators.
std::string csv_safe(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char ch) { return ch == ',' || ch == '\n' || ch == '\r'; }, ';');
    return s;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepTable& table, const std::vector<std::string>& header_lines) {
    for (const auto& line : header_lines) {
        out << "# " << line << '\n';
    }
    bool first = true;
    auto cell = [&](const std::string& s) {
        out << (first ? "" : ",") << s;
        first = false;
    };
    for (const auto& c : table.columns) cell(c);
    for (const auto& c : table.label_columns) cell(c);
    cell("error");
    out << '\n';
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        first = true;
        for (double v : table.values[i]) cell(format_number(v));
        for (const auto& l : table.labels[i]) cell(l);
        cell(csv_safe(table.errors[i]));
        out << '\n';
    }
}

nlohmann::json sweep_json(const SweepTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        nlohmann::json r;
        for (std::size_t k = 0; k < table.columns.size(); ++k) {
            r[table.columns[k]] = number(table.values[i][k]);
        }
        for (std::size_t k = 0; k < table.label_columns.size(); ++k) {
            r[table.label_columns[k]] = table.labels[i][k];
        }
        r["error"] = table.errors[i].empty() ? nlohmann::json(nullptr) : nlohmann::json(table.errors[i]);
        rows.push_back(std::move(r));
    }
    return {{"columns", table.columns}, {"label_columns", table.label_columns}, {"rows", rows}};
}

nlohmann::json report_steady(const SystemParams& params) {
    const PtClass pt = validate(params);
    const SteadyStateSet set = steady_states(params);
    nlohmann::json j{{"params", params_json(params)},
                     {"pt", pt_json(pt)},
                     {"trivial", set.trivial},
                     {"nontrivial_coincides_with_trivial", set.nontrivial_coincides_with_trivial}};
    for (const auto* st : {&set.first, &set.second}) {
        if (!*st) {
            continue;
        }
        const SteadyState& s = **st;
        const AmplitudePair a = s.amplitudes(params);
        const StabilityReport rep = stability_frequencies(s, params);
        nlohmann::json freqs = nlohmann::json::array();
        for (const cplx& nu : rep.frequencies) freqs.push_back(complex_json(nu));
        nlohmann::json stab{{"frequencies", freqs},
                            {"classification", to_string(rep.classification)},
                            {"max_imag", rep.max_imag()},
                            {"max_abs_real", rep.max_abs_real()}};
        if (rep.analytic) {
            nlohmann::json an = nlohmann::json::array();
            for (const cplx& nu : *rep.analytic) an.push_back(complex_json(nu));
            stab["analytic"] = an;
        }
        const std::string key = s.kind == SteadyKind::First ? "first" : "second";
        j[key] = {{"kind", to_string(s.kind)},
                  {"rho1", s.rho1_st},
                  {"rho2", s.rho2_st},
                  {"phi_st", s.phi_st},
                  {"psi_st", s.psi_st},
                  {"phase_difference", s.phase_difference(params)},
                  {"phase_sum", s.phase_sum(params)},
                  {"c_epsilon", s.c_epsilon},
                  {"c_kappa", s.c_kappa},
                  {"beta12", s.beta12},
                  {"alpha1", complex_json(a.alpha1)},
                  {"alpha2", complex_json(a.alpha2)},
                  {"stability", stab}};
    }
    if (!j.contains("first")) j["first"] = nullptr;
    if (!j.contains("second")) j["second"] = nullptr;
    return j;
}

nlohmann::json report_spectrum(const SystemParams& params) {
    const PtClass pt = validate(params);
    const auto [nu1, nu2] = eigenfrequencies(params);
    nlohmann::json j{{"params", params_json(params)},
                     {"pt", pt_json(pt)},
                     {"eigenfrequencies", nlohmann::json::array({complex_json(nu1), complex_json(nu2)})}};
    nlohmann::json g = nlohmann::json::array();
    const Matrix4c m = dynamical_matrix(params);
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int col = 0; col < 4; ++col) row.push_back(complex_json(m(r, col)));
        g.push_back(row);
    }
    j["dynamical_matrix"] = g;
    j["ep_kappa"] = nullptr;
    if (pt.is_pt && pt.gamma <= params.epsilon) {
        j["ep_kappa"] = ep_kappa(params.epsilon, pt.gamma);
    }
    j["eigenvectors"] = nullptr;
    try {
        const LinearSpectrum s = eigenvectors(params);
        nlohmann::json vecs = nlohmann::json::object();
        const char* names[] = {"plus_nu1", "minus_nu1", "plus_nu2", "minus_nu2"};
        for (int k = 0; k < 4; ++k) {
            nlohmann::json v = nlohmann::json::array();
            for (int i = 0; i < 4; ++i) v.push_back(complex_json(s.eigvecs[k](i)));
            vecs[names[k]] = v;
        }
        j["eigenvectors"] = vecs;
        j["mu"] = complex_json(s.mu);
        j["xi"] = s.xi;
        j["condition"] = number(s.condition);
    } catch (const Error& e) {
        j["eigenvectors_unavailable"] = e.what();
    }
    return j;
}

}  // namespace ptq
