#ifndef MMTHZ_CHANNEL_HPP
#define MMTHZ_CHANNEL_HPP

#include <cmath>

#include "mmthz/atmosphere.hpp"
#include "mmthz/units.hpp"

namespace mmthz {

struct LinkGeometry {
    double distance_m = 1.0;
    double tx_antenna_gain_dbi = 0.0;
    double rx_antenna_gain_dbi = 0.0;

    void validate() const {
        detail::require(std::isfinite(distance_m) && distance_m > 0.0,
                        "geometry: distance must be positive");
        detail::require(tx_antenna_gain_dbi >= -10.0 && tx_antenna_gain_dbi <= 80.0,
                        "geometry: tx antenna gain out of [-10, 80] dBi");
        detail::require(rx_antenna_gain_dbi >= -10.0 && rx_antenna_gain_dbi <= 80.0,
                        "geometry: rx antenna gain out of [-10, 80] dBi");
    }
};

/// Free-space path loss 20*log10(4*pi*d*f/c). May be negative for
/// 4*pi*d*f/c < 1; the value is passed through unclamped.
inline double fspl_db(double d_m, double f_hz) {
    detail::require(d_m > 0.0 && f_hz > 0.0, "fspl: distance and frequency must be positive");
    return 20.0 *
           std::log10(4.0 * M_PI * d_m * f_hz / constants::speed_of_light_m_per_s);
}

/// Molecular absorption loss 10*log10(1/tau) = gamma(f) * d_km, dB.
inline double absorption_loss_db(double d_m, double f_hz, const GasAttenuationModel& model) {
    detail::require(d_m >= 0.0, "absorption_loss: distance must be non-negative");
    return model.specific_attenuation_db_per_km(f_hz) * (d_m / 1000.0);
}

inline double absorption_loss_db(double d_m, double f_hz, const AtmosphericConditions& cond) {
    return absorption_loss_db(d_m, f_hz, GasAttenuationModel(cond));
}

inline double total_path_loss_db(double d_m, double f_hz, const GasAttenuationModel& model) {
    return fspl_db(d_m, f_hz) + absorption_loss_db(d_m, f_hz, model);
}

inline double total_path_loss_db(double d_m, double f_hz, const AtmosphericConditions& cond) {
    return total_path_loss_db(d_m, f_hz, GasAttenuationModel(cond));
}

/// Courtesy diagnostic, never an error: true when d is inside the Fraunhofer
/// distance 2 D^2 f / c of a 0.1 m aperture. The far-field loss formula is
/// still applied there; it gives a conservative estimate of noise coupling.
inline bool near_field_warning(double d_m, double f_hz) {
    return d_m < 2.0 * 0.1 * 0.1 * f_hz / constants::speed_of_light_m_per_s;
}

}  // namespace mmthz

#endif  // MMTHZ_CHANNEL_HPP
