#ifndef MMTHZ_LINKBUDGET_HPP
#define MMTHZ_LINKBUDGET_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmthz/atmosphere.hpp"
#include "mmthz/channel.hpp"
#include "mmthz/noise.hpp"
#include "mmthz/txchain.hpp"
#include "mmthz/units.hpp"

// End-to-end scenario evaluation. Each evaluated point carries three noise
// scenarios:
//   thermal_only      - conventional link budget: free-space loss on the
//                       signal, k*T_env noise floor, no atmosphere at all;
//   baseline          - signal sees the full path loss (FSPL + molecular
//                       absorption), noise is thermal + atmospheric
//                       molecular emission integrated over the band;
//   baseline_plus_tx  - baseline plus propagated TX noise.
// Signal power is evaluated at the carrier; noise is integrated over the
// fractional band with all frequency-dependent terms re-evaluated per point.

namespace mmthz {

enum class NoiseScenario { thermal_only, baseline, baseline_plus_tx };

inline std::string_view noise_scenario_name(NoiseScenario s) {
    switch (s) {
        case NoiseScenario::thermal_only: return "thermal_only";
        case NoiseScenario::baseline: return "baseline";
        case NoiseScenario::baseline_plus_tx: return "baseline_plus_tx";
    }
    return "baseline";
}

struct TxPowerMode {
    enum class Kind { fixed_dbm, psat_model };
    Kind kind = Kind::fixed_dbm;
    double fixed_dbm = 0.0;

    static TxPowerMode fixed(double dbm) { return {Kind::fixed_dbm, dbm}; }
    static TxPowerMode psat() { return {Kind::psat_model, 0.0}; }
};

struct LinkScenario {
    LinkGeometry geometry;
    double carrier_frequency_hz = 300.0e9;
    AtmosphericConditions conditions = AtmosphericConditions::hot();
    TechnologyProfile technology = TechnologyProfile::cmos();
    TxPowerMode tx_power = TxPowerMode::fixed(0.0);
    TxNoiseModel tx_noise_model = TxNoiseModel::output_referred;
    double fractional_bandwidth = 0.25;
    int integration_points = 1001;

    double bandwidth_hz() const { return fractional_bandwidth * carrier_frequency_hz; }

    void validate() const {
        geometry.validate();
        conditions.validate();
        technology.validate();
        detail::require(std::isfinite(carrier_frequency_hz) && carrier_frequency_hz > 0.0,
                        "scenario: carrier frequency must be positive");
        detail::require(fractional_bandwidth > 0.0 && fractional_bandwidth <= 0.5,
                        "scenario: fractional bandwidth out of (0, 0.5]");
        detail::require(integration_points >= 3 && integration_points % 2 == 1,
                        "scenario: integration points must be odd and >= 3");
        const double f_lo = carrier_frequency_hz * (1.0 - fractional_bandwidth / 2.0);
        const double f_hi = carrier_frequency_hz * (1.0 + fractional_bandwidth / 2.0);
        detail::require(f_lo >= detail::min_model_frequency_hz &&
                            f_hi <= detail::max_model_frequency_hz,
                        "scenario: integration band leaves the [1, 1000] GHz absorption model range");
    }

    // Case-study presets. All default to the hot condition and CMOS.
    static LinkScenario short_range() {
        LinkScenario s;
        s.geometry = {0.001, 0.0, 0.0};
        s.tx_power = TxPowerMode::fixed(0.0);
        return s;
    }
    static LinkScenario medium_range() {
        LinkScenario s;
        s.geometry = {100.0, 40.0, 40.0};
        s.tx_power = TxPowerMode::psat();
        return s;
    }
    static LinkScenario long_range() {
        LinkScenario s;
        s.geometry = {1000.0, 56.0, 56.0};
        s.tx_power = TxPowerMode::psat();
        return s;
    }
    static LinkScenario preset(std::string_view name) {
        if (name == "short") return short_range();
        if (name == "medium") return medium_range();
        if (name == "long") return long_range();
        throw std::domain_error("unknown scenario preset: " + std::string(name));
    }
};

/// Band-integrated noise power, W, for the three noise scenarios.
struct IntegratedNoise {
    double thermal_only_w = 0.0;
    double baseline_w = 0.0;
    double tx_at_rx_w = 0.0;  // propagated TX noise alone

    double baseline_plus_tx_w() const { return baseline_w + tx_at_rx_w; }
};

/// Everything computed for one scenario point.
struct ScenarioEvaluation {
    double distance_m = 0.0;
    double frequency_hz = 0.0;

    double tx_power_dbm = 0.0;
    double p_rx_dbm = 0.0;               // signal with FSPL + absorption
    double p_rx_free_space_dbm = 0.0;    // signal with FSPL only (thermal_only row)
    double a_pl_db = 0.0;                // total path loss at the carrier
    IntegratedNoise noise;

    double snr_thermal_only_db = 0.0;
    double snr_baseline_db = 0.0;
    double snr_baseline_plus_tx_db = 0.0;
    double capacity_thermal_only_bps = 0.0;
    double capacity_baseline_bps = 0.0;
    double capacity_baseline_plus_tx_bps = 0.0;

    double degradation_db = 0.0;          // baseline SNR minus baseline+TX SNR
    double tx_baseline_ratio_db = 0.0;    // 10*log10(N_tx_int / N_baseline_int)
    double a_pl_threshold_db = 0.0;       // dominance threshold on the path loss
    bool tx_noise_dominated = false;      // degradation >= 1 dB
    bool near_field = false;
    Tier tier = Tier::negligible;

    double snr_db(NoiseScenario s) const {
        switch (s) {
            case NoiseScenario::thermal_only: return snr_thermal_only_db;
            case NoiseScenario::baseline: return snr_baseline_db;
            case NoiseScenario::baseline_plus_tx: return snr_baseline_plus_tx_db;
        }
        return snr_baseline_db;
    }
    double capacity_bps(NoiseScenario s) const {
        switch (s) {
            case NoiseScenario::thermal_only: return capacity_thermal_only_bps;
            case NoiseScenario::baseline: return capacity_baseline_bps;
            case NoiseScenario::baseline_plus_tx: return capacity_baseline_plus_tx_bps;
        }
        return capacity_baseline_bps;
    }
};

inline double tx_power_dbm(const LinkScenario& scenario) {
    return scenario.tx_power.kind == TxPowerMode::Kind::fixed_dbm
               ? scenario.tx_power.fixed_dbm
               : tx_saturated_power_dbm(scenario.technology, scenario.carrier_frequency_hz);
}

namespace detail {

// The component survey covers [30, 500] GHz; integration bands around
// carriers near the edges extend past it. Chain parameters are frozen at
// the nearest covered frequency there; the channel terms still use the true
// frequency.
inline double clamp_chain_frequency_hz(double f_hz) {
    return std::clamp(f_hz, chain_min_ghz * 1.0e9, chain_max_ghz * 1.0e9);
}

inline double shannon_capacity_bps(double bandwidth_hz, double snr_linear) {
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

inline ScenarioEvaluation evaluate_point(const LinkScenario& scenario,
                                         const GasAttenuationModel& atmosphere) {
    scenario.validate();
    const double d_m = scenario.geometry.distance_m;
    const double d_km = d_m / 1000.0;
    const double fc = scenario.carrier_frequency_hz;
    const double t_env = scenario.conditions.temperature_k;
    const double f_lo = fc * (1.0 - scenario.fractional_bandwidth / 2.0);
    const double f_hi = fc * (1.0 + scenario.fractional_bandwidth / 2.0);
    const int n = scenario.integration_points;
    const double h = (f_hi - f_lo) / (n - 1);
    const double gains_dbi =
        scenario.geometry.tx_antenna_gain_dbi + scenario.geometry.rx_antenna_gain_dbi;

    // Trapezoidal integration of the baseline and propagated-TX noise PSDs.
    // The TX term is assembled in the log domain first: near opaque
    // absorption lines the path loss reaches thousands of dB and the linear
    // loss would overflow.
    double baseline_sum = 0.0;
    double tx_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = f_lo + h * i;
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double gamma = atmosphere.specific_attenuation_db_per_km(f);
        const double emiss = 1.0 - std::pow(10.0, -gamma * d_km / 10.0);
        baseline_sum += w * constants::boltzmann_j_per_k * t_env * (1.0 + emiss);

        const double f_chain = clamp_chain_frequency_hz(f);
        double n_tx_db = cascaded_tx_noise_figure_db(scenario.technology, f_chain);
        if (scenario.tx_noise_model == TxNoiseModel::output_referred)
            n_tx_db += chain_gain_db(scenario.technology, f_chain);
        const double path_db = fspl_db(d_m, f) + gamma * d_km;
        const double exponent = (n_tx_db + gains_dbi - path_db) / 10.0;
        tx_sum += w * constants::boltzmann_j_per_k * t_env *
                  (exponent > -300.0 ? std::pow(10.0, exponent) : 0.0);
    }

    ScenarioEvaluation out;
    out.distance_m = d_m;
    out.frequency_hz = fc;
    out.noise.thermal_only_w = constants::boltzmann_j_per_k * t_env * (f_hi - f_lo);
    out.noise.baseline_w = baseline_sum * h;
    out.noise.tx_at_rx_w = tx_sum * h;

    out.tx_power_dbm = mmthz::tx_power_dbm(scenario);
    const double fspl_c = fspl_db(d_m, fc);
    const double abs_c = atmosphere.specific_attenuation_db_per_km(fc) * d_km;
    out.a_pl_db = fspl_c + abs_c;
    out.p_rx_dbm = out.tx_power_dbm - out.a_pl_db + gains_dbi;
    out.p_rx_free_space_dbm = out.tx_power_dbm - fspl_c + gains_dbi;

    const double p_rx_w = dbm_to_watts(out.p_rx_dbm);
    const double p_rx_fs_w = dbm_to_watts(out.p_rx_free_space_dbm);
    const double snr_thermal = p_rx_fs_w / out.noise.thermal_only_w;
    const double snr_baseline = p_rx_w / out.noise.baseline_w;
    const double snr_all = p_rx_w / out.noise.baseline_plus_tx_w();
    out.snr_thermal_only_db = 10.0 * std::log10(snr_thermal);
    out.snr_baseline_db = 10.0 * std::log10(snr_baseline);
    out.snr_baseline_plus_tx_db = 10.0 * std::log10(snr_all);

    const double bw = f_hi - f_lo;
    out.capacity_thermal_only_bps = shannon_capacity_bps(bw, snr_thermal);
    out.capacity_baseline_bps = shannon_capacity_bps(bw, snr_baseline);
    out.capacity_baseline_plus_tx_bps = shannon_capacity_bps(bw, snr_all);

    out.degradation_db = snr_degradation_db(out.noise.tx_at_rx_w, out.noise.baseline_w);
    out.tx_baseline_ratio_db =
        out.noise.tx_at_rx_w > 0.0
            ? 10.0 * std::log10(out.noise.tx_at_rx_w / out.noise.baseline_w)
            : -std::numeric_limits<double>::infinity();
    // Band-effective dominance threshold: actual path loss shifted by the
    // margin between the measured noise ratio and the 1 dB onset ratio, so
    // that (a_pl < a_pl_threshold) <=> (degradation >= 1 dB) holds exactly.
    out.a_pl_threshold_db = out.a_pl_db + out.tx_baseline_ratio_db - onset_threshold_db();
    out.tx_noise_dominated = out.tx_baseline_ratio_db >= onset_threshold_db();
    out.near_field = near_field_warning(d_m, fc);
    out.tier = classify_tier(out.degradation_db).label;
    return out;
}

}  // namespace detail

inline ScenarioEvaluation evaluate(const LinkScenario& scenario) {
    return detail::evaluate_point(scenario, GasAttenuationModel(scenario.conditions));
}

/// P_tx - A_pl(d, f_c) + G_tx + G_rx, with the full (FSPL + absorption)
/// path loss.
inline double received_power_dbm(const LinkScenario& scenario) {
    scenario.validate();
    GasAttenuationModel atmosphere(scenario.conditions);
    return tx_power_dbm(scenario) -
           total_path_loss_db(scenario.geometry.distance_m, scenario.carrier_frequency_hz,
                              atmosphere) +
           scenario.geometry.tx_antenna_gain_dbi + scenario.geometry.rx_antenna_gain_dbi;
}

inline IntegratedNoise integrated_noise_power_w(const LinkScenario& scenario) {
    return evaluate(scenario).noise;
}

enum class SweepAxis { distance, frequency };

inline std::string_view sweep_axis_name(SweepAxis a) {
    return a == SweepAxis::distance ? "distance" : "frequency";
}

struct SweepResult {
    SweepAxis axis = SweepAxis::distance;
    LinkScenario scenario;  // template the rows were derived from
    std::vector<ScenarioEvaluation> rows;
};

namespace detail {

template <typename Mutate>
inline SweepResult run_sweep(const LinkScenario& templ, SweepAxis axis,
                             std::span<const double> values, Mutate&& mutate) {
    require(!values.empty(), "sweep: empty axis value list");
    SweepResult result;
    result.axis = axis;
    result.scenario = templ;
    result.rows.reserve(values.size());
    GasAttenuationModel atmosphere(templ.conditions);
    for (std::size_t i = 0; i < values.size(); ++i) {
        LinkScenario row = templ;
        mutate(row, values[i]);
        try {
            result.rows.push_back(evaluate_point(row, atmosphere));
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep row " + std::to_string(i) + " (" +
                                     std::string(sweep_axis_name(axis)) + "=" +
                                     std::to_string(values[i]) + "): " + e.what());
        }
    }
    return result;
}

}  // namespace detail

inline SweepResult sweep_distance(const LinkScenario& templ, std::span<const double> distances_m) {
    return detail::run_sweep(templ, SweepAxis::distance, distances_m,
                             [](LinkScenario& s, double d) { s.geometry.distance_m = d; });
}

inline SweepResult sweep_frequency(const LinkScenario& templ,
                                   std::span<const double> frequencies_hz) {
    return detail::run_sweep(templ, SweepAxis::frequency, frequencies_hz,
                             [](LinkScenario& s, double f) { s.carrier_frequency_hz = f; });
}

// ---------------------------------------------------------------------------
// Parametric design grids (degradation over two swept parameters).

enum class GridAxisKind { nf_db_override, frequency, total_pathloss_db_override, distance };

inline std::string_view grid_axis_kind_name(GridAxisKind k) {
    switch (k) {
        case GridAxisKind::nf_db_override: return "nf_db_override";
        case GridAxisKind::frequency: return "frequency";
        case GridAxisKind::total_pathloss_db_override: return "total_pathloss_db_override";
        case GridAxisKind::distance: return "distance";
    }
    return "frequency";
}

inline GridAxisKind grid_axis_kind_by_name(std::string_view name) {
    if (name == "nf_db_override" || name == "nf") return GridAxisKind::nf_db_override;
    if (name == "frequency") return GridAxisKind::frequency;
    if (name == "total_pathloss_db_override" || name == "pathloss")
        return GridAxisKind::total_pathloss_db_override;
    if (name == "distance") return GridAxisKind::distance;
    throw std::domain_error("unknown grid axis kind: " + std::string(name));
}

/// Axis units: frequency in Hz, distance in m, nf and pathloss overrides in dB.
struct GridAxis {
    GridAxisKind kind = GridAxisKind::frequency;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;

    void validate() const {
        detail::require(std::isfinite(from) && std::isfinite(to) && from < to,
                        "grid axis: degenerate range");
        detail::require(steps >= 2, "grid axis: need at least 2 steps");
    }
    double value_at(int i) const {
        return from + (to - from) * static_cast<double>(i) / (steps - 1);
    }
};

struct GridCell {
    double axis1_value = 0.0;
    double axis2_value = 0.0;
    double degradation_db = 0.0;
    Tier tier = Tier::negligible;
};

struct GridResult {
    GridAxis axis1;
    GridAxis axis2;
    LinkScenario scenario;
    std::vector<GridCell> cells;  // row-major, axis1 outer
};

/// Degradation per cell evaluated per-Hz at the cell's carrier (no band
/// integration; these are design charts, not link budgets). When an
/// nf_db_override axis is present the swept figure replaces the cascaded
/// chain figure and the chain-gain term is disabled (the plain
/// k*T_env*F form). A total_pathloss_db_override axis replaces FSPL +
/// absorption in the TX-noise propagation term; the baseline atmospheric
/// state keeps the fixed scenario's distance.
inline GridResult parametric_grid(const GridAxis& axis1, const GridAxis& axis2,
                                  const LinkScenario& fixed) {
    axis1.validate();
    axis2.validate();
    fixed.validate();
    detail::require(axis1.kind != axis2.kind, "grid: axes must differ in kind");

    GridResult result;
    result.axis1 = axis1;
    result.axis2 = axis2;
    result.scenario = fixed;
    result.cells.reserve(static_cast<std::size_t>(axis1.steps) * axis2.steps);

    GasAttenuationModel atmosphere(fixed.conditions);
    const double t_env = fixed.conditions.temperature_k;
    const double gains_dbi =
        fixed.geometry.tx_antenna_gain_dbi + fixed.geometry.rx_antenna_gain_dbi;

    for (int i = 0; i < axis1.steps; ++i) {
        for (int j = 0; j < axis2.steps; ++j) {
            double f_hz = fixed.carrier_frequency_hz;
            double d_m = fixed.geometry.distance_m;
            double nf_override_db = std::numeric_limits<double>::quiet_NaN();
            double pathloss_override_db = std::numeric_limits<double>::quiet_NaN();
            const auto apply = [&](const GridAxis& axis, double v) {
                switch (axis.kind) {
                    case GridAxisKind::nf_db_override: nf_override_db = v; break;
                    case GridAxisKind::frequency: f_hz = v; break;
                    case GridAxisKind::total_pathloss_db_override:
                        pathloss_override_db = v;
                        break;
                    case GridAxisKind::distance: d_m = v; break;
                }
            };
            apply(axis1, axis1.value_at(i));
            apply(axis2, axis2.value_at(j));

            const double gamma = atmosphere.specific_attenuation_db_per_km(f_hz);
            const double emiss = 1.0 - std::pow(10.0, -gamma * (d_m / 1000.0) / 10.0);
            const double n_baseline =
                constants::boltzmann_j_per_k * t_env * (1.0 + emiss);

            double n_tx_db;
            if (!std::isnan(nf_override_db)) {
                n_tx_db = nf_override_db;
            } else {
                const double f_chain = detail::clamp_chain_frequency_hz(f_hz);
                n_tx_db = cascaded_tx_noise_figure_db(fixed.technology, f_chain);
                if (fixed.tx_noise_model == TxNoiseModel::output_referred)
                    n_tx_db += chain_gain_db(fixed.technology, f_chain);
            }
            const double path_db = !std::isnan(pathloss_override_db)
                                       ? pathloss_override_db
                                       : fspl_db(d_m, f_hz) + gamma * (d_m / 1000.0);
            const double exponent = (n_tx_db + gains_dbi - path_db) / 10.0;
            const double n_tx_rx = constants::boltzmann_j_per_k * t_env *
                                   (exponent > -300.0 ? std::pow(10.0, exponent) : 0.0);

            GridCell cell;
            cell.axis1_value = axis1.value_at(i);
            cell.axis2_value = axis2.value_at(j);
            cell.degradation_db = snr_degradation_db(n_tx_rx, n_baseline);
            cell.tier = classify_tier(cell.degradation_db).label;
            result.cells.push_back(cell);
        }
    }
    return result;
}

}  // namespace mmthz

#endif  // MMTHZ_LINKBUDGET_HPP
