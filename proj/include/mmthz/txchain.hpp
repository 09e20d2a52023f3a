#ifndef MMTHZ_TXCHAIN_HPP
#define MMTHZ_TXCHAIN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmthz/itu_lines.hpp"  // detail::split_csv_row / parse_strict_double
#include "mmthz/units.hpp"

namespace mmthz {

enum class Technology { cmos, sige };
enum class StageKind { mixer_plus_if, power_amplifier };
enum class TxNoiseModel { paper_eq2, output_referred };

inline std::string_view technology_name(Technology t) {
    return t == Technology::cmos ? "cmos" : "sige";
}

inline Technology technology_by_name(std::string_view name) {
    if (name == "cmos") return Technology::cmos;
    if (name == "sige") return Technology::sige;
    throw std::domain_error("unknown technology: " + std::string(name));
}

inline std::string_view stage_name(StageKind k) {
    return k == StageKind::mixer_plus_if ? "mixer_plus_if" : "power_amplifier";
}

inline std::string_view tx_noise_model_name(TxNoiseModel m) {
    return m == TxNoiseModel::paper_eq2 ? "paper_eq2" : "output_referred";
}

inline TxNoiseModel tx_noise_model_by_name(std::string_view name) {
    if (name == "paper_eq2") return TxNoiseModel::paper_eq2;
    if (name == "output_referred") return TxNoiseModel::output_referred;
    throw std::domain_error("unknown tx noise model: " + std::string(name));
}

/// Noise figure and gain of one component over one frequency band.
/// `provenance` records how the survey value was obtained; it never enters
/// any computation.
struct ComponentBand {
    double band_low_ghz = 0.0;
    double band_high_ghz = 0.0;
    double nf_db = 0.0;
    double gain_db = 0.0;
    std::string provenance;

    double center_ghz() const { return 0.5 * (band_low_ghz + band_high_ghz); }
};

struct ComponentBandSpec {
    StageKind kind = StageKind::mixer_plus_if;
    std::array<ComponentBand, 3> bands{};

    void validate() const {
        detail::require(bands[0].band_low_ghz == 30.0 && bands[2].band_high_ghz == 500.0,
                        "component bands must cover [30, 500] GHz");
        for (std::size_t i = 0; i < bands.size(); ++i) {
            detail::require(bands[i].band_low_ghz < bands[i].band_high_ghz,
                            "component band edges out of order");
            detail::require(bands[i].nf_db > 0.0, "component noise figure must be > 0 dB");
            if (i > 0)
                detail::require(bands[i].band_low_ghz == bands[i - 1].band_high_ghz,
                                "component bands must be contiguous");
        }
    }
};

/// Single-stage noise factor and gain, linear scale.
struct StageParams {
    double noise_factor = 1.0;  // >= 1
    double gain = 1.0;          // > 0

    void validate() const {
        detail::require(std::isfinite(noise_factor) && noise_factor >= 1.0,
                        "stage noise factor must be >= 1");
        detail::require(std::isfinite(gain) && gain > 0.0, "stage gain must be > 0");
    }
};

/// Saturated output power trendline P_sat(f) = intercept - slope * ln(f_GHz).
struct SaturatedPowerModel {
    double intercept_dbm = 0.0;
    double slope_dbm_per_ln_ghz = 0.0;

    double at_dbm(double f_ghz) const {
        return intercept_dbm - slope_dbm_per_ln_ghz * std::log(f_ghz);
    }

    static SaturatedPowerModel fit_through(double f1_ghz, double p1_dbm, double f2_ghz,
                                           double p2_dbm) {
        detail::require(f1_ghz > 0.0 && f2_ghz > 0.0 && f1_ghz != f2_ghz,
                        "saturated power fit needs two distinct positive frequencies");
        SaturatedPowerModel m;
        m.slope_dbm_per_ln_ghz = (p1_dbm - p2_dbm) / (std::log(f2_ghz) - std::log(f1_ghz));
        m.intercept_dbm = p1_dbm + m.slope_dbm_per_ln_ghz * std::log(f1_ghz);
        return m;
    }
};

/// Per-technology TX chain description: the upconversion mixer (with its
/// embedded IF/load stage) followed by the power amplifier, plus the
/// technology's saturated-power trendline.
struct TechnologyProfile {
    Technology technology = Technology::cmos;
    ComponentBandSpec mixer;
    ComponentBandSpec power_amplifier;
    SaturatedPowerModel saturated_power;

    void validate() const {
        detail::require(mixer.kind == StageKind::mixer_plus_if &&
                            power_amplifier.kind == StageKind::power_amplifier,
                        "profile stages out of order");
        mixer.validate();
        power_amplifier.validate();
    }

    const ComponentBandSpec& stage(StageKind k) const {
        return k == StageKind::mixer_plus_if ? mixer : power_amplifier;
    }

    static TechnologyProfile cmos();
    static TechnologyProfile sige();
    static TechnologyProfile by_name(std::string_view name) {
        return technology_by_name(name) == Technology::cmos ? cmos() : sige();
    }
};

namespace detail {

inline ComponentBandSpec make_stage(StageKind kind, std::array<double, 3> nf_db,
                                    std::array<double, 3> gain_db,
                                    std::array<const char*, 3> provenance) {
    ComponentBandSpec s;
    s.kind = kind;
    const double lows[3] = {30.0, 100.0, 200.0};
    const double highs[3] = {100.0, 200.0, 500.0};
    for (int i = 0; i < 3; ++i)
        s.bands[static_cast<std::size_t>(i)] = {lows[i], highs[i], nf_db[static_cast<std::size_t>(i)],
                                                gain_db[static_cast<std::size_t>(i)],
                                                provenance[static_cast<std::size_t>(i)]};
    return s;
}

inline constexpr const char* prov_pa = "lna baseline plus 3 dB large-signal penalty";
inline constexpr const char* prov_meas = "measured";
inline constexpr const char* prov_sim = "simulation-based";
inline constexpr const char* prov_rx_proxy = "derived from rx-side design";

}  // namespace detail

inline TechnologyProfile TechnologyProfile::cmos() {
    TechnologyProfile p;
    p.technology = Technology::cmos;
    p.mixer = detail::make_stage(StageKind::mixer_plus_if, {16.0, 14.5, 18.0},
                                 {-2.0, -5.0, 3.0},
                                 {detail::prov_meas, detail::prov_sim, detail::prov_rx_proxy});
    p.power_amplifier = detail::make_stage(StageKind::power_amplifier, {7.8, 7.9, 12.7},
                                           {15.4, 22.5, 28.0},
                                           {detail::prov_pa, detail::prov_pa, detail::prov_pa});
    p.saturated_power = {53.902, 7.815};
    return p;
}

inline TechnologyProfile TechnologyProfile::sige() {
    TechnologyProfile p;
    p.technology = Technology::sige;
    p.mixer = detail::make_stage(StageKind::mixer_plus_if, {11.2, 11.5, 13.2},
                                 {15.0, 18.0, 20.6},
                                 {detail::prov_meas, detail::prov_meas, detail::prov_rx_proxy});
    p.power_amplifier = detail::make_stage(StageKind::power_amplifier, {7.2, 9.0, 14.0},
                                           {17.0, 20.0, 23.0},
                                           {detail::prov_pa, detail::prov_pa, detail::prov_pa});
    // Trendline anchored at the survey's 25 dBm @ 30 GHz and 6 dBm @ 300 GHz.
    p.saturated_power = SaturatedPowerModel::fit_through(30.0, 25.0, 300.0, 6.0);
    return p;
}

namespace detail {
inline constexpr double chain_min_ghz = 30.0;
inline constexpr double chain_max_ghz = 500.0;

inline void require_chain_frequency(double f_ghz) {
    require(f_ghz >= chain_min_ghz && f_ghz <= chain_max_ghz,
            "tx chain: frequency out of [30, 500] GHz");
}

// Piecewise-linear value over frequency with anchors at the arithmetic band
// centers (65 / 150 / 350 GHz); the adjacent segment extends linearly below
// the first and above the last anchor.
inline double interpolate_band_value(const ComponentBandSpec& stage, double f_ghz, bool nf) {
    const double c0 = stage.bands[0].center_ghz();
    const double c1 = stage.bands[1].center_ghz();
    const double c2 = stage.bands[2].center_ghz();
    const auto value = [&](std::size_t i) {
        return nf ? stage.bands[i].nf_db : stage.bands[i].gain_db;
    };
    double lo_f, hi_f, lo_v, hi_v;
    if (f_ghz <= c1) {
        lo_f = c0; hi_f = c1; lo_v = value(0); hi_v = value(1);
    } else {
        lo_f = c1; hi_f = c2; lo_v = value(1); hi_v = value(2);
    }
    const double t = (f_ghz - lo_f) / (hi_f - lo_f);
    return lo_v + t * (hi_v - lo_v);
}
}  // namespace detail

/// (noise figure dB, gain dB) of one stage at frequency f.
inline std::pair<double, double> interpolate_stage(const TechnologyProfile& profile,
                                                   StageKind kind, double f_hz) {
    const double f_ghz = f_hz / 1.0e9;
    detail::require_chain_frequency(f_ghz);
    const ComponentBandSpec& stage = profile.stage(kind);
    return {detail::interpolate_band_value(stage, f_ghz, true),
            detail::interpolate_band_value(stage, f_ghz, false)};
}

/// Friis cascade over an ordered stage list:
/// F = F1 + (F2-1)/G1 + (F3-1)/(G1*G2) + ...
inline double cascaded_noise_factor(std::span<const StageParams> stages) {
    detail::require(!stages.empty(), "cascaded_noise_factor: empty stage list");
    double total = 0.0;
    double gain_product = 1.0;
    bool first = true;
    for (const StageParams& s : stages) {
        s.validate();
        total += first ? s.noise_factor : (s.noise_factor - 1.0) / gain_product;
        gain_product *= s.gain;
        first = false;
    }
    return total;
}

inline double cascaded_tx_noise_figure_db(const TechnologyProfile& profile, double f_hz) {
    const auto [mix_nf, mix_g] = interpolate_stage(profile, StageKind::mixer_plus_if, f_hz);
    const auto [pa_nf, pa_g] = interpolate_stage(profile, StageKind::power_amplifier, f_hz);
    const StageParams stages[2] = {{from_db(mix_nf), from_db(mix_g)},
                                   {from_db(pa_nf), from_db(pa_g)}};
    return to_db(cascaded_noise_factor(stages));
}

/// Total small-signal gain of the chain, dB.
inline double chain_gain_db(const TechnologyProfile& profile, double f_hz) {
    return interpolate_stage(profile, StageKind::mixer_plus_if, f_hz).second +
           interpolate_stage(profile, StageKind::power_amplifier, f_hz).second;
}

/// TX output noise PSD.
///   paper_eq2:       k * T_env * F_tx
///   output_referred: k * T_env * F_tx * G_chain
/// The output-referred variant additionally applies the chain gain the same
/// way the amplified noise floor appears at the antenna port.
inline double tx_noise_psd_w_per_hz(const TechnologyProfile& profile, double f_hz,
                                    double t_env_k, TxNoiseModel model) {
    detail::require(t_env_k > 0.0, "tx_noise_psd: temperature must be positive");
    double db = cascaded_tx_noise_figure_db(profile, f_hz);
    if (model == TxNoiseModel::output_referred) db += chain_gain_db(profile, f_hz);
    return constants::boltzmann_j_per_k * t_env_k * from_db(db);
}

inline double tx_saturated_power_dbm(const TechnologyProfile& profile, double f_hz) {
    const double f_ghz = f_hz / 1.0e9;
    detail::require_chain_frequency(f_ghz);
    return profile.saturated_power.at_dbm(f_ghz);
}

/// Both technology profiles, optionally rebuilt from a component CSV for
/// what-if studies.
struct ComponentSet {
    TechnologyProfile cmos = TechnologyProfile::cmos();
    TechnologyProfile sige = TechnologyProfile::sige();

    const TechnologyProfile& by_technology(Technology t) const {
        return t == Technology::cmos ? cmos : sige;
    }
};

/// Loads `technology,stage,band_low_ghz,band_high_ghz,nf_db,gain_db,provenance_note`
/// rows. Every (technology, stage, band) cell must be present exactly once.
inline ComponentSet load_component_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open component table: " + path);

    std::string row;
    if (!std::getline(in, row)) throw std::runtime_error("empty component table: " + path);
    if (!row.empty() && row.back() == '\r') row.pop_back();
    const std::string expected =
        "technology,stage,band_low_ghz,band_high_ghz,nf_db,gain_db,provenance_note";
    if (row != expected)
        throw std::runtime_error(path + ": unexpected header '" + row + "'");

    ComponentSet set;
    bool seen[2][2][3] = {};
    std::size_t line_no = 1;
    while (std::getline(in, row)) {
        ++line_no;
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.empty()) continue;
        const auto fields = detail::split_csv_row(row);
        const std::string ctx = path + ":" + std::to_string(line_no);
        if (fields.size() != 7)
            throw std::runtime_error(ctx + ": expected 7 fields, got " +
                                     std::to_string(fields.size()));

        const Technology tech = technology_by_name(fields[0]);
        StageKind kind;
        if (fields[1] == "mixer_plus_if") kind = StageKind::mixer_plus_if;
        else if (fields[1] == "power_amplifier") kind = StageKind::power_amplifier;
        else throw std::runtime_error(ctx + ": unknown stage '" + fields[1] + "'");

        ComponentBand band;
        band.band_low_ghz = detail::parse_strict_double(fields[2], ctx);
        band.band_high_ghz = detail::parse_strict_double(fields[3], ctx);
        band.nf_db = detail::parse_strict_double(fields[4], ctx);
        band.gain_db = detail::parse_strict_double(fields[5], ctx);
        band.provenance = fields[6];

        int slot = -1;
        if (band.band_low_ghz == 30.0 && band.band_high_ghz == 100.0) slot = 0;
        else if (band.band_low_ghz == 100.0 && band.band_high_ghz == 200.0) slot = 1;
        else if (band.band_low_ghz == 200.0 && band.band_high_ghz == 500.0) slot = 2;
        else throw std::runtime_error(ctx + ": unsupported band edges");

        bool& flag = seen[tech == Technology::cmos ? 0 : 1]
                         [kind == StageKind::mixer_plus_if ? 0 : 1][slot];
        if (flag) throw std::runtime_error(ctx + ": duplicate component row");
        flag = true;

        TechnologyProfile& profile = tech == Technology::cmos ? set.cmos : set.sige;
        ComponentBandSpec& stage =
            kind == StageKind::mixer_plus_if ? profile.mixer : profile.power_amplifier;
        stage.bands[static_cast<std::size_t>(slot)] = band;
    }
    for (const auto& t : seen)
        for (const auto& s : t)
            for (bool f : s)
                if (!f) throw std::runtime_error(path + ": missing component rows");
    set.cmos.validate();
    set.sige.validate();
    return set;
}

}  // namespace mmthz

#endif  // MMTHZ_TXCHAIN_HPP
