// mmthz-link: link budget sweeps for mm-wave / sub-THz point-to-point links
// with explicit transmitter-noise propagation. Emits CSV/JSON report files
// for plotting and regression testing.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mmthz/mmthz.hpp"

namespace fs = std::filesystem;
using namespace mmthz;

namespace {

struct Options {
    std::string config_path;
    std::string cond = "hot";
    double cond_temperature_k = std::numeric_limits<double>::quiet_NaN();
    double cond_pressure_pa = std::numeric_limits<double>::quiet_NaN();
    double cond_water_vapor_g_m3 = std::numeric_limits<double>::quiet_NaN();
    std::string tech = "cmos";
    std::string tx_noise_model = "output_referred";
    std::string components;
    std::string out;
    std::string format = "csv";
    int points = 1001;

    double fmin_ghz = 30.0;
    double fmax_ghz = 500.0;
    double step_ghz = 1.0;

    std::string preset;
    double distance_m = std::numeric_limits<double>::quiet_NaN();
    double frequency_ghz = std::numeric_limits<double>::quiet_NaN();
    double gain_dbi = std::numeric_limits<double>::quiet_NaN();
    double tx_gain_dbi = std::numeric_limits<double>::quiet_NaN();
    double rx_gain_dbi = std::numeric_limits<double>::quiet_NaN();
    std::string tx_power_mode;  // "fixed" | "psat"
    double tx_power_dbm = std::numeric_limits<double>::quiet_NaN();
    double fbw = std::numeric_limits<double>::quiet_NaN();

    std::string axis;  // sweep: "distance" | "frequency"
    double from = std::numeric_limits<double>::quiet_NaN();
    double to = std::numeric_limits<double>::quiet_NaN();
    int steps = 0;
    bool log_spacing = false;

    std::string axis1;  // dominance grid: "kind:from:to:steps"
    std::string axis2;
};

// Ties a CLI flag to a config-file key so file values fill in anything the
// command line did not set. Config keys are the flag names with dashes
// replaced by underscores.
struct Binder {
    struct Field {
        std::string key;
        CLI::Option* option;
        std::function<void(const std::string&)> set;
    };
    std::vector<Field> fields;

    void bind(CLI::Option* option, std::string key, std::function<void(const std::string&)> set) {
        fields.push_back({std::move(key), option, std::move(set)});
    }

    std::set<std::string> known_keys() const {
        std::set<std::string> keys;
        for (const auto& f : fields) keys.insert(f.key);
        return keys;
    }

    void apply(const ConfigMap& config, const std::string& origin) const {
        reject_unknown_keys(config, known_keys(), origin);
        for (const auto& f : fields) {
            const auto it = config.find(f.key);
            if (it == config.end()) continue;
            if (f.option != nullptr && f.option->count() > 0) continue;  // flags win
            try {
                f.set(it->second);
            } catch (const std::exception& e) {
                throw std::runtime_error(origin + ": key '" + f.key + "': " + e.what());
            }
        }
    }
};

double parse_double_value(const std::string& text) { return parse_number(text); }

int parse_int_value(const std::string& text) {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::runtime_error("not an integer: '" + text + "'");
    return v;
}

bool parse_bool_value(const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw std::runtime_error("not a boolean: '" + text + "'");
}

struct CommandContext {
    Options opt;
    AtmosphericConditions conditions;
    ComponentSet components;
    TechnologyProfile profile;
    TxNoiseModel noise_model = TxNoiseModel::output_referred;
};

AtmosphericConditions resolve_conditions(const Options& opt) {
    AtmosphericConditions cond;
    if (opt.cond == "hot" || opt.cond == "moderate" || opt.cond == "cold_dry") {
        cond = AtmosphericConditions::by_name(opt.cond);
    } else if (opt.cond == "custom") {
        // echoed form: the three numeric fields carry the whole state
        if (std::isnan(opt.cond_temperature_k) || std::isnan(opt.cond_pressure_pa) ||
            std::isnan(opt.cond_water_vapor_g_m3))
            throw std::runtime_error(
                "cond=custom needs cond_temperature_k, cond_pressure_pa and "
                "cond_water_vapor_g_m3");
    } else {
        // anything else is a path to a key=value / JSON file
        const ConfigMap file = load_config_file(opt.cond);
        reject_unknown_keys(file, {"temperature_k", "pressure_pa", "water_vapor_density_g_m3"},
                            opt.cond);
        if (!file.count("temperature_k") || !file.count("pressure_pa") ||
            !file.count("water_vapor_density_g_m3"))
            throw std::runtime_error(opt.cond +
                                     ": conditions file needs temperature_k, pressure_pa, "
                                     "water_vapor_density_g_m3");
        cond.temperature_k = parse_number(file.at("temperature_k"));
        cond.pressure_pa = parse_number(file.at("pressure_pa"));
        cond.water_vapor_density_g_m3 = parse_number(file.at("water_vapor_density_g_m3"));
    }
    if (!std::isnan(opt.cond_temperature_k)) cond.temperature_k = opt.cond_temperature_k;
    if (!std::isnan(opt.cond_pressure_pa)) cond.pressure_pa = opt.cond_pressure_pa;
    if (!std::isnan(opt.cond_water_vapor_g_m3))
        cond.water_vapor_density_g_m3 = opt.cond_water_vapor_g_m3;
    cond.validate();
    return cond;
}

CommandContext make_context(const Options& opt) {
    CommandContext ctx;
    ctx.opt = opt;
    ctx.conditions = resolve_conditions(opt);
    ctx.components = opt.components.empty() ? ComponentSet{}
                                            : load_component_table_csv(opt.components);
    if (opt.tech != "cmos" && opt.tech != "sige" && opt.tech != "both")
        throw std::runtime_error("unknown technology: " + opt.tech);
    ctx.profile = ctx.components.by_technology(
        technology_by_name(opt.tech == "both" ? "cmos" : opt.tech));
    ctx.profile.saturated_power = (ctx.profile.technology == Technology::cmos
                                       ? TechnologyProfile::cmos()
                                       : TechnologyProfile::sige())
                                      .saturated_power;
    ctx.noise_model = tx_noise_model_by_name(opt.tx_noise_model);
    return ctx;
}

LinkScenario make_scenario(const CommandContext& ctx) {
    LinkScenario s = ctx.opt.preset.empty() ? LinkScenario{} : LinkScenario::preset(ctx.opt.preset);
    s.conditions = ctx.conditions;
    s.technology = ctx.profile;
    s.tx_noise_model = ctx.noise_model;
    s.integration_points = ctx.opt.points;
    if (!std::isnan(ctx.opt.fbw)) s.fractional_bandwidth = ctx.opt.fbw;
    if (!std::isnan(ctx.opt.distance_m)) s.geometry.distance_m = ctx.opt.distance_m;
    if (!std::isnan(ctx.opt.frequency_ghz)) s.carrier_frequency_hz = ctx.opt.frequency_ghz * 1e9;
    if (!std::isnan(ctx.opt.gain_dbi)) {
        s.geometry.tx_antenna_gain_dbi = ctx.opt.gain_dbi;
        s.geometry.rx_antenna_gain_dbi = ctx.opt.gain_dbi;
    }
    if (!std::isnan(ctx.opt.tx_gain_dbi)) s.geometry.tx_antenna_gain_dbi = ctx.opt.tx_gain_dbi;
    if (!std::isnan(ctx.opt.rx_gain_dbi)) s.geometry.rx_antenna_gain_dbi = ctx.opt.rx_gain_dbi;
    if (!ctx.opt.tx_power_mode.empty()) {
        if (ctx.opt.tx_power_mode == "psat") s.tx_power = TxPowerMode::psat();
        else if (ctx.opt.tx_power_mode == "fixed")
            s.tx_power = TxPowerMode::fixed(std::isnan(ctx.opt.tx_power_dbm) ? 0.0
                                                                             : ctx.opt.tx_power_dbm);
        else throw std::runtime_error("unknown tx power mode: " + ctx.opt.tx_power_mode);
    } else if (!std::isnan(ctx.opt.tx_power_dbm)) {
        s.tx_power = TxPowerMode::fixed(ctx.opt.tx_power_dbm);
    }
    return s;
}

std::map<std::string, std::string> base_config_echo(const CommandContext& ctx) {
    std::map<std::string, std::string> config;
    const bool preset_cond =
        ctx.opt.cond == "hot" || ctx.opt.cond == "moderate" || ctx.opt.cond == "cold_dry";
    config["cond"] = preset_cond ? ctx.opt.cond : "custom";
    config["cond_temperature_k"] = format_number(ctx.conditions.temperature_k);
    config["cond_pressure_pa"] = format_number(ctx.conditions.pressure_pa);
    config["cond_water_vapor_g_m3"] = format_number(ctx.conditions.water_vapor_density_g_m3);
    config["tech"] = ctx.opt.tech;
    config["tx_noise_model"] = ctx.opt.tx_noise_model;
    config["components"] = ctx.opt.components.empty() ? "builtin" : ctx.opt.components;
    config["format"] = ctx.opt.format;
    config["points"] = std::to_string(ctx.opt.points);
    return config;
}

// Echo keys match the config-file keys, so a run can be reproduced from its
// own metadata block. Units: distance in m, freq in GHz.
void echo_scenario(std::map<std::string, std::string>& config, const LinkScenario& s) {
    config["distance"] = format_number(s.geometry.distance_m);
    config["freq"] = format_number(s.carrier_frequency_hz / 1e9);
    config["tx_gain_dbi"] = format_number(s.geometry.tx_antenna_gain_dbi);
    config["rx_gain_dbi"] = format_number(s.geometry.rx_antenna_gain_dbi);
    config["tx_power_mode"] =
        s.tx_power.kind == TxPowerMode::Kind::psat_model ? "psat" : "fixed";
    if (s.tx_power.kind == TxPowerMode::Kind::fixed_dbm)
        config["tx_power_dbm"] = format_number(s.tx_power.fixed_dbm);
    config["fbw"] = format_number(s.fractional_bandwidth);
}

ReportEnvelope make_envelope(const CommandContext& ctx, const std::string& command,
                             std::map<std::string, std::string> config, ReportTable payload) {
    ReportEnvelope envelope;
    envelope.command = command;
    envelope.tx_noise_model = ctx.opt.tx_noise_model;
    envelope.config = std::move(config);
    envelope.payload = std::move(payload);
    return envelope;
}

void emit(const CommandContext& ctx, const ReportEnvelope& envelope) {
    const std::string text = serialize(envelope, ctx.opt.format);
    if (ctx.opt.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_text_file(ctx.opt.out, text);
    }
}

std::string file_extension(const CommandContext& ctx) {
    return ctx.opt.format == "json" ? ".json" : ".csv";
}

void emit_into_dir(const CommandContext& ctx, const std::string& stem,
                   const ReportEnvelope& envelope) {
    if (ctx.opt.out.empty())
        throw std::runtime_error("this command writes multiple files; --out <dir> is required");
    fs::create_directories(ctx.opt.out);
    write_text_file((fs::path(ctx.opt.out) / (stem + file_extension(ctx))).string(),
                    serialize(envelope, ctx.opt.format));
}

std::vector<double> linear_range_ghz(double fmin, double fmax, double step) {
    if (!(fmin > 0.0) || fmax < fmin || !(step > 0.0))
        throw std::runtime_error("invalid frequency range");
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((fmax - fmin) / step + 0.5)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::min(fmin + static_cast<double>(i) * step, fmax));
    return out;
}

std::vector<double> log_spaced(double from, double to, int steps) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    const double l0 = std::log10(from), l1 = std::log10(to);
    for (int i = 0; i < steps; ++i)
        out.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (steps - 1)));
    return out;
}

// --- sweep payload -------------------------------------------------------

ReportTable sweep_table(const SweepResult& sweep) {
    ReportTable table;
    const bool by_distance = sweep.axis == SweepAxis::distance;
    table.columns = {by_distance ? "distance_m" : "frequency_ghz",
                     by_distance ? "frequency_ghz" : "distance_m",
                     "snr_thermal_only_db",
                     "snr_baseline_db",
                     "snr_baseline_plus_tx_db",
                     "capacity_thermal_only_bps",
                     "capacity_baseline_bps",
                     "capacity_baseline_plus_tx_bps",
                     "degradation_db",
                     "tier",
                     "p_rx_dbm",
                     "a_pl_db",
                     "a_pl_threshold_db",
                     "tx_baseline_ratio_db",
                     "tx_noise_dominated",
                     "near_field_warning"};
    for (const auto& row : sweep.rows) {
        const double axis_value = by_distance ? row.distance_m : row.frequency_hz / 1e9;
        const double other_value = by_distance ? row.frequency_hz / 1e9 : row.distance_m;
        table.add_row({axis_value, other_value, row.snr_thermal_only_db, row.snr_baseline_db,
                       row.snr_baseline_plus_tx_db, row.capacity_thermal_only_bps,
                       row.capacity_baseline_bps, row.capacity_baseline_plus_tx_bps,
                       row.degradation_db, std::string(tier_name(row.tier)), row.p_rx_dbm,
                       row.a_pl_db, row.a_pl_threshold_db, row.tx_baseline_ratio_db,
                       std::string(row.tx_noise_dominated ? "true" : "false"),
                       std::string(row.near_field ? "true" : "false")});
    }
    return table;
}

// --- subcommands ---------------------------------------------------------

void run_absorption(const CommandContext& ctx) {
    const auto freqs = linear_range_ghz(ctx.opt.fmin_ghz, ctx.opt.fmax_ghz, ctx.opt.step_ghz);
    GasAttenuationModel model(ctx.conditions);

    ReportTable table;
    table.columns = {"f_ghz",        "gamma_db_per_km", "a_abs_100m_db", "a_abs_1km_db",
                     "fspl_100m_db", "fspl_1km_db",     "total_100m_db", "total_1km_db"};
    for (double f_ghz : freqs) {
        const double f_hz = f_ghz * 1e9;
        const double gamma = model.specific_attenuation_db_per_km(f_hz);
        const double fspl100 = fspl_db(100.0, f_hz);
        const double fspl1k = fspl_db(1000.0, f_hz);
        table.add_row({f_ghz, gamma, gamma * 0.1, gamma * 1.0, fspl100, fspl1k,
                       fspl100 + gamma * 0.1, fspl1k + gamma * 1.0});
    }

    auto config = base_config_echo(ctx);
    config["fmin"] = format_number(ctx.opt.fmin_ghz);
    config["fmax"] = format_number(ctx.opt.fmax_ghz);
    config["step"] = format_number(ctx.opt.step_ghz);
    emit(ctx, make_envelope(ctx, "absorption", std::move(config), std::move(table)));
}

void run_txnf(const CommandContext& ctx) {
    const auto freqs = linear_range_ghz(ctx.opt.fmin_ghz, ctx.opt.fmax_ghz, ctx.opt.step_ghz);
    std::vector<Technology> techs;
    if (ctx.opt.tech == "both") techs = {Technology::cmos, Technology::sige};
    else techs = {technology_by_name(ctx.opt.tech)};

    ReportTable table;
    table.columns = {"technology", "f_ghz", "f_tx_db", "chain_gain_db", "psat_dbm"};
    for (Technology tech : techs) {
        TechnologyProfile profile = ctx.components.by_technology(tech);
        profile.saturated_power = (tech == Technology::cmos ? TechnologyProfile::cmos()
                                                            : TechnologyProfile::sige())
                                      .saturated_power;
        for (double f_ghz : freqs) {
            const double f_hz = f_ghz * 1e9;
            table.add_row({std::string(technology_name(tech)), f_ghz,
                           cascaded_tx_noise_figure_db(profile, f_hz),
                           chain_gain_db(profile, f_hz), tx_saturated_power_dbm(profile, f_hz)});
        }
    }

    auto config = base_config_echo(ctx);
    config["fmin"] = format_number(ctx.opt.fmin_ghz);
    config["fmax"] = format_number(ctx.opt.fmax_ghz);
    config["step"] = format_number(ctx.opt.step_ghz);
    emit(ctx, make_envelope(ctx, "txnf", std::move(config), std::move(table)));
}

void run_casestudy(const CommandContext& ctx) {
    if (ctx.opt.preset.empty()) throw std::runtime_error("casestudy: --preset is required");
    const auto freqs_ghz = linear_range_ghz(ctx.opt.fmin_ghz, ctx.opt.fmax_ghz, ctx.opt.step_ghz);
    std::vector<double> freqs_hz;
    freqs_hz.reserve(freqs_ghz.size());
    for (double f : freqs_ghz) freqs_hz.push_back(f * 1e9);

    const auto emit_sweep = [&](const std::string& stem, const SweepResult& sweep,
                                const LinkScenario& scenario, const std::string& axis) {
        auto config = base_config_echo(ctx);
        config["preset"] = ctx.opt.preset;
        if (axis == "frequency") {
            config["fmin"] = format_number(ctx.opt.fmin_ghz);
            config["fmax"] = format_number(ctx.opt.fmax_ghz);
            config["step"] = format_number(ctx.opt.step_ghz);
        }
        echo_scenario(config, scenario);
        emit_into_dir(ctx, stem,
                      make_envelope(ctx, "casestudy", std::move(config), sweep_table(sweep)));
    };

    if (ctx.opt.preset == "short") {
        LinkScenario base = make_scenario(ctx);

        const auto distances = log_spaced(0.001, 1.0, 61);
        emit_sweep("short_snr_vs_distance", sweep_distance(base, distances), base, "distance");

        for (const auto& [stem, d] :
             {std::pair<const char*, double>{"short_snr_vs_frequency_1mm", 0.001},
              std::pair<const char*, double>{"short_snr_vs_frequency_10mm", 0.01}}) {
            LinkScenario s = base;
            s.geometry.distance_m = d;
            emit_sweep(stem, sweep_frequency(s, freqs_hz), s, "frequency");
        }

        // degradation survey grid: four carriers x four decade distances
        SweepResult grid;
        grid.axis = SweepAxis::distance;
        grid.scenario = base;
        GasAttenuationModel atmosphere(base.conditions);
        for (double f_ghz : {60.0, 140.0, 250.0, 300.0}) {
            for (double d : {0.001, 0.01, 0.1, 1.0}) {
                LinkScenario s = base;
                s.carrier_frequency_hz = f_ghz * 1e9;
                s.geometry.distance_m = d;
                grid.rows.push_back(detail::evaluate_point(s, atmosphere));
            }
        }
        auto config = base_config_echo(ctx);
        config["preset"] = ctx.opt.preset;
        echo_scenario(config, base);
        emit_into_dir(ctx, "short_degradation_grid",
                      make_envelope(ctx, "casestudy", std::move(config), sweep_table(grid)));
        return;
    }

    LinkScenario base = make_scenario(ctx);
    const std::string stem = ctx.opt.preset + "_snr_vs_frequency";
    emit_sweep(stem, sweep_frequency(base, freqs_hz), base, "frequency");
}

void run_sensitivity(const CommandContext& ctx) {
    const auto freqs_ghz = linear_range_ghz(ctx.opt.fmin_ghz, ctx.opt.fmax_ghz, ctx.opt.step_ghz);
    std::vector<double> freqs_hz;
    freqs_hz.reserve(freqs_ghz.size());
    for (double f : freqs_ghz) freqs_hz.push_back(f * 1e9);

    for (const char* name : {"hot", "moderate", "cold_dry"}) {
        CommandContext per = ctx;
        per.opt.cond = name;
        per.opt.cond_temperature_k = std::numeric_limits<double>::quiet_NaN();
        per.opt.cond_pressure_pa = std::numeric_limits<double>::quiet_NaN();
        per.opt.cond_water_vapor_g_m3 = std::numeric_limits<double>::quiet_NaN();
        per.conditions = AtmosphericConditions::by_name(name);
        if (per.opt.preset.empty()) per.opt.preset = "long";
        LinkScenario scenario = make_scenario(per);

        auto config = base_config_echo(per);
        config["preset"] = per.opt.preset;
        config["fmin"] = format_number(ctx.opt.fmin_ghz);
        config["fmax"] = format_number(ctx.opt.fmax_ghz);
        config["step"] = format_number(ctx.opt.step_ghz);
        echo_scenario(config, scenario);
        emit_into_dir(per, std::string("sensitivity_") + name,
                      make_envelope(per, "sensitivity", std::move(config),
                                    sweep_table(sweep_frequency(scenario, freqs_hz))));
    }
}

GridAxis parse_grid_axis(const std::string& spec) {
    // kind:from:to:steps, frequency in GHz / distance in m / overrides in dB
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ':')) parts.push_back(token);
    if (parts.size() != 4)
        throw std::runtime_error("grid axis must be kind:from:to:steps, got '" + spec + "'");
    GridAxis axis;
    axis.kind = grid_axis_kind_by_name(parts[0]);
    axis.from = parse_number(parts[1]);
    axis.to = parse_number(parts[2]);
    axis.steps = parse_int_value(parts[3]);
    if (axis.kind == GridAxisKind::frequency) {
        axis.from *= 1e9;
        axis.to *= 1e9;
    }
    axis.validate();
    return axis;
}

std::string grid_axis_column(GridAxisKind kind) {
    switch (kind) {
        case GridAxisKind::nf_db_override: return "nf_db";
        case GridAxisKind::frequency: return "frequency_ghz";
        case GridAxisKind::total_pathloss_db_override: return "pathloss_db";
        case GridAxisKind::distance: return "distance_m";
    }
    return "axis";
}

void run_dominance(const CommandContext& ctx) {
    if (ctx.opt.axis1.empty() != ctx.opt.axis2.empty())
        throw std::runtime_error("dominance: grid mode needs both --axis1 and --axis2");

    if (!ctx.opt.axis1.empty()) {
        const GridAxis axis1 = parse_grid_axis(ctx.opt.axis1);
        const GridAxis axis2 = parse_grid_axis(ctx.opt.axis2);
        LinkScenario fixed = make_scenario(ctx);
        const GridResult grid = parametric_grid(axis1, axis2, fixed);

        ReportTable table;
        table.columns = {grid_axis_column(axis1.kind), grid_axis_column(axis2.kind),
                         "degradation_db", "tier"};
        for (const auto& cell : grid.cells) {
            const double v1 = axis1.kind == GridAxisKind::frequency ? cell.axis1_value / 1e9
                                                                    : cell.axis1_value;
            const double v2 = axis2.kind == GridAxisKind::frequency ? cell.axis2_value / 1e9
                                                                    : cell.axis2_value;
            table.add_row({v1, v2, cell.degradation_db, std::string(tier_name(cell.tier))});
        }
        auto config = base_config_echo(ctx);
        config["axis1"] = ctx.opt.axis1;
        config["axis2"] = ctx.opt.axis2;
        echo_scenario(config, fixed);
        emit(ctx, make_envelope(ctx, "dominance", std::move(config), std::move(table)));
        return;
    }

    // row mode: dominance report per frequency over the requested range
    LinkScenario base = make_scenario(ctx);
    const auto freqs_ghz = linear_range_ghz(ctx.opt.fmin_ghz, ctx.opt.fmax_ghz, ctx.opt.step_ghz);
    GasAttenuationModel atmosphere(base.conditions);

    ReportTable table;
    table.columns = {"frequency_ghz",
                     "distance_m",
                     "n_tx_carrier_dbm_per_hz",
                     "n_baseline_carrier_dbm_per_hz",
                     "a_pl_db",
                     "a_pl_threshold_db",
                     "tx_baseline_ratio_db",
                     "degradation_db",
                     "tier",
                     "tx_noise_dominated"};
    for (double f_ghz : freqs_ghz) {
        LinkScenario s = base;
        s.carrier_frequency_hz = f_ghz * 1e9;
        const ScenarioEvaluation row = detail::evaluate_point(s, atmosphere);
        const double f_chain = detail::clamp_chain_frequency_hz(s.carrier_frequency_hz);
        const double n_tx = tx_noise_psd_w_per_hz(s.technology, f_chain,
                                                  s.conditions.temperature_k, s.tx_noise_model);
        const double n_baseline = baseline_noise_psd_w_per_hz(
            s.geometry.distance_m, s.carrier_frequency_hz, atmosphere);
        table.add_row({f_ghz, row.distance_m, watts_to_dbm(n_tx), watts_to_dbm(n_baseline),
                       row.a_pl_db, row.a_pl_threshold_db, row.tx_baseline_ratio_db,
                       row.degradation_db, std::string(tier_name(row.tier)),
                       std::string(row.tx_noise_dominated ? "true" : "false")});
    }
    auto config = base_config_echo(ctx);
    config["fmin"] = format_number(ctx.opt.fmin_ghz);
    config["fmax"] = format_number(ctx.opt.fmax_ghz);
    config["step"] = format_number(ctx.opt.step_ghz);
    echo_scenario(config, base);
    emit(ctx, make_envelope(ctx, "dominance", std::move(config), std::move(table)));
}

void run_sweep(const CommandContext& ctx) {
    if (ctx.opt.axis != "distance" && ctx.opt.axis != "frequency")
        throw std::runtime_error("sweep: --axis must be distance or frequency");
    if (std::isnan(ctx.opt.from) || std::isnan(ctx.opt.to) || ctx.opt.steps < 1)
        throw std::runtime_error("sweep: --from, --to and --steps are required");
    if (!(ctx.opt.from > 0.0) || ctx.opt.to < ctx.opt.from)
        throw std::runtime_error("sweep: invalid axis range");
    if (ctx.opt.steps == 1 && ctx.opt.to != ctx.opt.from)
        throw std::runtime_error("sweep: one step needs from == to");

    std::vector<double> values;
    if (ctx.opt.steps == 1) {
        values.push_back(ctx.opt.from);
    } else if (ctx.opt.log_spacing) {
        values = log_spaced(ctx.opt.from, ctx.opt.to, ctx.opt.steps);
    } else {
        for (int i = 0; i < ctx.opt.steps; ++i)
            values.push_back(ctx.opt.from +
                             (ctx.opt.to - ctx.opt.from) * i / (ctx.opt.steps - 1));
    }

    LinkScenario base = make_scenario(ctx);
    SweepResult sweep;
    if (ctx.opt.axis == "distance") {
        sweep = sweep_distance(base, values);
    } else {
        for (double& v : values) v *= 1e9;  // GHz on the command line
        sweep = sweep_frequency(base, values);
    }

    auto config = base_config_echo(ctx);
    config["axis"] = ctx.opt.axis;
    config["from"] = format_number(ctx.opt.from);
    config["to"] = format_number(ctx.opt.to);
    config["steps"] = std::to_string(ctx.opt.steps);
    config["log"] = ctx.opt.log_spacing ? "true" : "false";
    echo_scenario(config, base);
    emit(ctx, make_envelope(ctx, "sweep", std::move(config), sweep_table(sweep)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"link budget engine for mm-wave / sub-THz links with TX noise propagation"};
    app.require_subcommand(1);

    Options opt;
    std::map<const CLI::App*, Binder> binders;
    std::map<const CLI::App*, std::function<void(const CommandContext&)>> handlers;

    const auto add_common = [&](CLI::App* cmd) {
        Binder& b = binders[cmd];
        cmd->add_option("--config", opt.config_path, "config file (key=value or JSON)");
        b.bind(cmd->add_option("--cond", opt.cond, "hot|moderate|cold_dry or conditions file"),
               "cond", [&](const std::string& v) { opt.cond = v; });
        b.bind(cmd->add_option("--cond-temperature-k", opt.cond_temperature_k, ""),
               "cond_temperature_k",
               [&](const std::string& v) { opt.cond_temperature_k = parse_double_value(v); });
        b.bind(cmd->add_option("--cond-pressure-pa", opt.cond_pressure_pa, ""),
               "cond_pressure_pa",
               [&](const std::string& v) { opt.cond_pressure_pa = parse_double_value(v); });
        b.bind(cmd->add_option("--cond-water-vapor-g-m3", opt.cond_water_vapor_g_m3, ""),
               "cond_water_vapor_g_m3",
               [&](const std::string& v) { opt.cond_water_vapor_g_m3 = parse_double_value(v); });
        b.bind(cmd->add_option("--tech", opt.tech, "cmos|sige"), "tech",
               [&](const std::string& v) { opt.tech = v; });
        b.bind(cmd->add_option("--tx-noise-model", opt.tx_noise_model,
                               "paper_eq2|output_referred"),
               "tx_noise_model", [&](const std::string& v) { opt.tx_noise_model = v; });
        b.bind(cmd->add_option("--components", opt.components, "component table CSV"),
               "components", [&](const std::string& v) { opt.components = v; });
        b.bind(cmd->add_option("--out", opt.out, "output path (default: stdout)"), "out",
               [&](const std::string& v) { opt.out = v; });
        b.bind(cmd->add_option("--format", opt.format, "csv|json"), "format",
               [&](const std::string& v) { opt.format = v; });
        b.bind(cmd->add_option("--points", opt.points, "noise integration points (odd, >= 3)"),
               "points", [&](const std::string& v) { opt.points = parse_int_value(v); });
        return &b;
    };
    const auto add_range = [&](CLI::App* cmd, Binder* b) {
        b->bind(cmd->add_option("--fmin", opt.fmin_ghz, "range start, GHz"), "fmin",
                [&](const std::string& v) { opt.fmin_ghz = parse_double_value(v); });
        b->bind(cmd->add_option("--fmax", opt.fmax_ghz, "range end, GHz"), "fmax",
                [&](const std::string& v) { opt.fmax_ghz = parse_double_value(v); });
        b->bind(cmd->add_option("--step", opt.step_ghz, "range step, GHz"), "step",
                [&](const std::string& v) { opt.step_ghz = parse_double_value(v); });
    };
    const auto add_scenario = [&](CLI::App* cmd, Binder* b) {
        b->bind(cmd->add_option("--preset", opt.preset, "short|medium|long"), "preset",
                [&](const std::string& v) { opt.preset = v; });
        b->bind(cmd->add_option("--distance", opt.distance_m, "link distance, m"), "distance",
                [&](const std::string& v) { opt.distance_m = parse_double_value(v); });
        b->bind(cmd->add_option("--freq", opt.frequency_ghz, "carrier frequency, GHz"), "freq",
                [&](const std::string& v) { opt.frequency_ghz = parse_double_value(v); });
        b->bind(cmd->add_option("--gain-dbi", opt.gain_dbi, "both antenna gains, dBi"),
                "gain_dbi", [&](const std::string& v) { opt.gain_dbi = parse_double_value(v); });
        b->bind(cmd->add_option("--tx-gain-dbi", opt.tx_gain_dbi, ""), "tx_gain_dbi",
                [&](const std::string& v) { opt.tx_gain_dbi = parse_double_value(v); });
        b->bind(cmd->add_option("--rx-gain-dbi", opt.rx_gain_dbi, ""), "rx_gain_dbi",
                [&](const std::string& v) { opt.rx_gain_dbi = parse_double_value(v); });
        b->bind(cmd->add_option("--tx-power-mode", opt.tx_power_mode, "fixed|psat"),
                "tx_power_mode", [&](const std::string& v) { opt.tx_power_mode = v; });
        b->bind(cmd->add_option("--tx-power-dbm", opt.tx_power_dbm, "fixed TX power, dBm"),
                "tx_power_dbm",
                [&](const std::string& v) { opt.tx_power_dbm = parse_double_value(v); });
        b->bind(cmd->add_option("--fbw", opt.fbw, "fractional bandwidth (0, 0.5]"), "fbw",
                [&](const std::string& v) { opt.fbw = parse_double_value(v); });
    };

    {
        CLI::App* cmd = app.add_subcommand("absorption", "specific attenuation and loss spectrum");
        Binder* b = add_common(cmd);
        add_range(cmd, b);
        handlers[cmd] = run_absorption;
    }
    {
        CLI::App* cmd = app.add_subcommand("txnf", "cascaded TX noise figure / gain / Psat table");
        Binder* b = add_common(cmd);
        add_range(cmd, b);
        handlers[cmd] = run_txnf;
    }
    {
        CLI::App* cmd = app.add_subcommand("casestudy", "distance-class case study sweeps");
        Binder* b = add_common(cmd);
        add_range(cmd, b);
        add_scenario(cmd, b);
        handlers[cmd] = run_casestudy;
    }
    {
        CLI::App* cmd = app.add_subcommand("sensitivity",
                                           "per-condition frequency sweeps (hot/moderate/cold_dry)");
        Binder* b = add_common(cmd);
        add_range(cmd, b);
        add_scenario(cmd, b);
        handlers[cmd] = run_sensitivity;
    }
    {
        CLI::App* cmd = app.add_subcommand("dominance", "TX-noise dominance report / design grid");
        Binder* b = add_common(cmd);
        add_range(cmd, b);
        add_scenario(cmd, b);
        b->bind(cmd->add_option("--axis1", opt.axis1, "grid axis kind:from:to:steps"), "axis1",
                [&](const std::string& v) { opt.axis1 = v; });
        b->bind(cmd->add_option("--axis2", opt.axis2, "grid axis kind:from:to:steps"), "axis2",
                [&](const std::string& v) { opt.axis2 = v; });
        handlers[cmd] = run_dominance;
    }
    {
        CLI::App* cmd = app.add_subcommand("sweep", "generic scenario sweep");
        Binder* b = add_common(cmd);
        add_scenario(cmd, b);
        b->bind(cmd->add_option("--axis", opt.axis, "distance|frequency"), "axis",
                [&](const std::string& v) { opt.axis = v; });
        b->bind(cmd->add_option("--from", opt.from, "axis start (m or GHz)"), "from",
                [&](const std::string& v) { opt.from = parse_double_value(v); });
        b->bind(cmd->add_option("--to", opt.to, "axis end (m or GHz)"), "to",
                [&](const std::string& v) { opt.to = parse_double_value(v); });
        b->bind(cmd->add_option("--steps", opt.steps, "number of axis points"), "steps",
                [&](const std::string& v) { opt.steps = parse_int_value(v); });
        b->bind(cmd->add_flag("--log", opt.log_spacing, "log-spaced axis"), "log",
                [&](const std::string& v) { opt.log_spacing = parse_bool_value(v); });
        handlers[cmd] = run_sweep;
    }

    try {
        app.parse(argc, argv);
        CLI::App* cmd = app.get_subcommands().at(0);
        if (!opt.config_path.empty())
            binders.at(cmd).apply(load_config_file(opt.config_path), opt.config_path);
        if (opt.format != "csv" && opt.format != "json")
            throw std::runtime_error("unknown output format: " + opt.format);
        handlers.at(cmd)(make_context(opt));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
