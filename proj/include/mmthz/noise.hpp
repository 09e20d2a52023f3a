#ifndef MMTHZ_NOISE_HPP
#define MMTHZ_NOISE_HPP

#include <cmath>
#include <limits>
#include <string_view>

#include "mmthz/atmosphere.hpp"
#include "mmthz/channel.hpp"
#include "mmthz/units.hpp"

// The receiver-input noise floor is assembled from three sources: thermal
// noise k*T_env, atmospheric molecular (re-emission) noise k*T_env*eps, and
// transmitter noise that survives the channel. This module also provides the
// dominance framework built on the 1 dB degradation criterion: the ratio
// N_tx_at_rx / N_baseline implied by a given SNR degradation, the equivalent
// path-loss threshold, and the severity tier ladder keyed to 1 / 3 / 5 dB.

namespace mmthz {

/// Per-frequency noise PSDs at the receiver input, W/Hz.
struct NoiseBreakdown {
    double frequency_hz = 0.0;
    double distance_m = 0.0;
    double thermal_psd_w_per_hz = 0.0;
    double atmospheric_psd_w_per_hz = 0.0;
    double tx_at_rx_psd_w_per_hz = 0.0;

    double baseline_psd_w_per_hz() const {
        return thermal_psd_w_per_hz + atmospheric_psd_w_per_hz;
    }
};

inline double thermal_noise_psd_w_per_hz(double t_env_k) {
    detail::require(std::isfinite(t_env_k) && t_env_k > 0.0,
                    "thermal_noise_psd: temperature must be positive");
    return constants::boltzmann_j_per_k * t_env_k;
}

/// Thermal + atmospheric molecular noise PSD, W/Hz.
inline double baseline_noise_psd_w_per_hz(double d_m, double f_hz,
                                          const GasAttenuationModel& model) {
    return thermal_noise_psd_w_per_hz(model.conditions().temperature_k) +
           model.atmospheric_noise_psd_w_per_hz(d_m, f_hz);
}

inline double baseline_noise_psd_w_per_hz(double d_m, double f_hz,
                                          const AtmosphericConditions& cond) {
    return baseline_noise_psd_w_per_hz(d_m, f_hz, GasAttenuationModel(cond));
}

/// TX noise PSD arriving at the RX input:
/// N_tx * G_tx_lin * G_rx_lin / L_path_lin.
inline double tx_noise_at_rx_psd_w_per_hz(double n_tx_w_per_hz, const LinkGeometry& geometry,
                                          double path_loss_db) {
    detail::require(std::isfinite(n_tx_w_per_hz) && n_tx_w_per_hz >= 0.0,
                    "tx_noise_at_rx: PSD must be non-negative");
    if (n_tx_w_per_hz == 0.0) return 0.0;
    const double net_db =
        geometry.tx_antenna_gain_dbi + geometry.rx_antenna_gain_dbi - path_loss_db;
    return n_tx_w_per_hz * from_db(net_db);
}

/// SNR degradation caused by added TX noise:
/// 10*log10(1 + N_tx_at_rx / N_baseline). The signal power cancels.
inline double snr_degradation_db(double n_tx_rx_w_per_hz, double n_baseline_w_per_hz) {
    detail::require(n_baseline_w_per_hz > 0.0, "snr_degradation: baseline must be positive");
    detail::require(n_tx_rx_w_per_hz >= 0.0, "snr_degradation: TX noise must be non-negative");
    return 10.0 * std::log10(1.0 + n_tx_rx_w_per_hz / n_baseline_w_per_hz);
}

/// The noise-ratio boundary, in dB, equivalent to a given SNR degradation:
/// 10*log10(10^(delta/10) - 1).
inline double degradation_to_threshold_db(double delta_snr_db) {
    detail::require(std::isfinite(delta_snr_db) && delta_snr_db > 0.0,
                    "degradation_to_threshold: degradation must be positive");
    return 10.0 * std::log10(std::pow(10.0, delta_snr_db / 10.0) - 1.0);
}

/// Exact 1 dB onset constant, 10*log10(10^0.1 - 1) = -5.8683 dB. Reports
/// quote the conventional rounded -5.9; all internal comparisons use this
/// unrounded value.
inline double onset_threshold_db() { return degradation_to_threshold_db(1.0); }

inline constexpr double report_onset_threshold_db = -5.9;

/// Path loss below which propagated TX noise degrades SNR by more than 1 dB:
/// A_pl_th = N_tx[dB] + G_tx + G_rx - N_baseline[dB] - onset_threshold.
/// Both PSDs must be expressed on the same dB reference.
inline double dominance_threshold_pathloss_db(double n_tx_db, double g_tx_dbi, double g_rx_dbi,
                                              double n_baseline_db) {
    return n_tx_db + g_tx_dbi + g_rx_dbi - n_baseline_db - onset_threshold_db();
}

enum class Tier {
    negligible,
    onset,
    margin_reduction,
    noise_doubled,
    severe,
    architectural,
};

inline std::string_view tier_name(Tier t) {
    switch (t) {
        case Tier::negligible: return "negligible";
        case Tier::onset: return "onset";
        case Tier::margin_reduction: return "margin_reduction";
        case Tier::noise_doubled: return "noise_doubled";
        case Tier::severe: return "severe";
        case Tier::architectural: return "architectural";
    }
    return "negligible";
}

struct DominanceTier {
    Tier label = Tier::negligible;
    double delta_snr_db = 0.0;
    double ratio = 0.0;         // N_tx_at_rx / N_baseline implied by delta
    double threshold_db = 0.0;  // 10*log10(ratio); -inf at delta == 0
};

/// Severity tier for a given SNR degradation. Boundary values (exactly
/// 1, 3 or 5 dB) belong to the more severe tier.
inline DominanceTier classify_tier(double delta_snr_db) {
    detail::require(std::isfinite(delta_snr_db) && delta_snr_db >= 0.0,
                    "classify_tier: degradation must be non-negative");
    DominanceTier out;
    out.delta_snr_db = delta_snr_db;
    out.ratio = std::pow(10.0, delta_snr_db / 10.0) - 1.0;
    out.threshold_db = out.ratio > 0.0 ? 10.0 * std::log10(out.ratio)
                                       : -std::numeric_limits<double>::infinity();
    if (delta_snr_db < 1.0) out.label = Tier::negligible;
    else if (delta_snr_db == 1.0) out.label = Tier::onset;
    else if (delta_snr_db < 3.0) out.label = Tier::margin_reduction;
    else if (delta_snr_db == 3.0) out.label = Tier::noise_doubled;
    else if (delta_snr_db < 5.0) out.label = Tier::severe;
    else out.label = Tier::architectural;
    return out;
}

}  // namespace mmthz

#endif  // MMTHZ_NOISE_HPP
