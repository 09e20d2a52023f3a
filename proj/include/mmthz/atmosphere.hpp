#ifndef MMTHZ_ATMOSPHERE_HPP
#define MMTHZ_ATMOSPHERE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmthz/itu_lines.hpp"
#include "mmthz/units.hpp"

namespace mmthz {

struct AtmosphericConditions {
    double temperature_k = 288.15;
    double pressure_pa = 101325.0;
    double water_vapor_density_g_m3 = 7.5;

    void validate() const {
        detail::require(temperature_k >= 150.0 && temperature_k <= 400.0,
                        "conditions: temperature out of [150, 400] K");
        detail::require(pressure_pa >= 1.0e3 && pressure_pa <= 2.0e5,
                        "conditions: pressure out of [1e3, 2e5] Pa");
        detail::require(water_vapor_density_g_m3 >= 0.0 && water_vapor_density_g_m3 <= 100.0,
                        "conditions: water vapor density out of [0, 100] g/m^3");
    }

    // Environmental presets: 35 C / 100% RH, 15 C temperate, -5 C dry winter.
    static AtmosphericConditions hot() { return {308.15, 101190.0, 39.6}; }
    static AtmosphericConditions moderate() { return {288.15, 101325.0, 12.8}; }
    static AtmosphericConditions cold_dry() { return {268.15, 102100.0, 3.4}; }

    static AtmosphericConditions by_name(std::string_view name) {
        if (name == "hot") return hot();
        if (name == "moderate") return moderate();
        if (name == "cold_dry") return cold_dry();
        throw std::domain_error("unknown conditions preset: " + std::string(name));
    }
};

namespace detail {
inline constexpr double min_model_frequency_hz = 1.0e9;
inline constexpr double max_model_frequency_hz = 1000.0e9;
}  // namespace detail

/// Gaseous specific attenuation per ITU-R P.676 Annex 1 (line-by-line
/// summation over the full oxygen and water-vapour tables plus the dry-air
/// continuum). Line strengths, widths and interference terms depend only on
/// the atmospheric state, so they are evaluated once per condition set;
/// per-frequency evaluation is then a cheap sum over line shapes.
class GasAttenuationModel {
public:
    explicit GasAttenuationModel(const AtmosphericConditions& cond,
                                 const LineCatalog& catalog = LineCatalog::builtin())
        : conditions_(cond) {
        cond.validate();
        const double t = cond.temperature_k;
        theta_ = 300.0 / t;
        vapor_pressure_hpa_ = cond.water_vapor_density_g_m3 * t / 216.7;
        dry_pressure_hpa_ = cond.pressure_pa / 100.0 - vapor_pressure_hpa_;
        detail::require(dry_pressure_hpa_ > 0.0,
                        "conditions: water vapor partial pressure exceeds total pressure");

        const double p = dry_pressure_hpa_;
        const double e = vapor_pressure_hpa_;
        const double theta3 = theta_ * theta_ * theta_;
        const double theta35 = theta3 * std::sqrt(theta_);
        const double theta08 = std::pow(theta_, 0.8);

        lines_.reserve(catalog.oxygen.size() + catalog.water.size());
        for (const auto& ln : catalog.oxygen) {
            Prepared pl{};
            pl.f0 = ln.f0_ghz;
            pl.strength = ln.c1 * 1.0e-7 * p * theta3 * std::exp(ln.c2 * (1.0 - theta_));
            double width = ln.c3 * 1.0e-4 *
                           (p * std::pow(theta_, 0.8 - ln.c4) + 1.1 * e * theta_);
            // Zeeman broadening floor
            pl.width = std::sqrt(width * width + 2.25e-6);
            pl.interference = (ln.c5 + ln.c6 * theta_) * 1.0e-4 * (p + e) * theta08;
            lines_.push_back(pl);
        }
        for (const auto& ln : catalog.water) {
            Prepared pl{};
            pl.f0 = ln.f0_ghz;
            pl.strength = ln.c1 * 1.0e-1 * e * theta35 * std::exp(ln.c2 * (1.0 - theta_));
            double width = ln.c3 * 1.0e-4 *
                           (p * std::pow(theta_, ln.c4) + ln.c5 * e * std::pow(theta_, ln.c6));
            // Doppler correction of the Lorentz width
            pl.width = 0.535 * width +
                       std::sqrt(0.217 * width * width + 2.1316e-12 * ln.f0_ghz * ln.f0_ghz / theta_);
            pl.interference = 0.0;
            lines_.push_back(pl);
        }
        debye_width_ = 5.6e-4 * (p + e) * theta08;
    }

    const AtmosphericConditions& conditions() const { return conditions_; }

    /// Specific attenuation gamma(f) in dB/km, valid for 1 GHz <= f <= 1000 GHz.
    double specific_attenuation_db_per_km(double f_hz) const {
        detail::require(f_hz >= detail::min_model_frequency_hz &&
                            f_hz <= detail::max_model_frequency_hz,
                        "specific_attenuation: frequency out of [1, 1000] GHz");
        const double f = f_hz / 1.0e9;

        double sum = 0.0;
        for (const auto& pl : lines_) {
            const double fd = pl.f0 - f;
            const double fs = pl.f0 + f;
            const double w2 = pl.width * pl.width;
            const double shape =
                (f / pl.f0) * ((pl.width - pl.interference * fd) / (fd * fd + w2) +
                               (pl.width - pl.interference * fs) / (fs * fs + w2));
            sum += pl.strength * shape;
        }

        // dry-air (non-resonant Debye + pressure-induced nitrogen) continuum
        const double p = dry_pressure_hpa_;
        const double fd_ratio = f / debye_width_;
        const double continuum =
            f * p * theta_ * theta_ *
            (6.14e-5 / (debye_width_ * (1.0 + fd_ratio * fd_ratio)) +
             1.4e-12 * p * std::pow(theta_, 1.5) / (1.0 + 1.9e-5 * std::pow(f, 1.5)));

        return 0.1820 * f * (sum + continuum);
    }

    /// Beer-Lambert transmittance over a path of d meters, in (0, 1].
    double transmittance(double d_m, double f_hz) const {
        detail::require(d_m >= 0.0, "transmittance: distance must be non-negative");
        const double gamma = specific_attenuation_db_per_km(f_hz);
        return std::pow(10.0, -gamma * (d_m / 1000.0) / 10.0);
    }

    double emissivity(double d_m, double f_hz) const {
        return 1.0 - transmittance(d_m, f_hz);
    }

    /// Equivalent molecular noise temperature T0 * emissivity, with T0 the
    /// ambient temperature of the absorbing medium.
    double molecular_noise_temperature_k(double d_m, double f_hz) const {
        return conditions_.temperature_k * emissivity(d_m, f_hz);
    }

    double atmospheric_noise_psd_w_per_hz(double d_m, double f_hz) const {
        return constants::boltzmann_j_per_k * molecular_noise_temperature_k(d_m, f_hz);
    }

private:
    struct Prepared {
        double f0;
        double strength;
        double width;
        double interference;
    };

    AtmosphericConditions conditions_;
    std::vector<Prepared> lines_;
    double theta_ = 1.0;
    double dry_pressure_hpa_ = 0.0;
    double vapor_pressure_hpa_ = 0.0;
    double debye_width_ = 0.0;
};

// Convenience single-shot forms; hot loops should hold a GasAttenuationModel.

inline double specific_attenuation_db_per_km(double f_hz, const AtmosphericConditions& cond) {
    return GasAttenuationModel(cond).specific_attenuation_db_per_km(f_hz);
}

inline double transmittance(double d_m, double f_hz, const AtmosphericConditions& cond) {
    return GasAttenuationModel(cond).transmittance(d_m, f_hz);
}

inline double emissivity(double d_m, double f_hz, const AtmosphericConditions& cond) {
    return GasAttenuationModel(cond).emissivity(d_m, f_hz);
}

inline double molecular_noise_temperature_k(double d_m, double f_hz,
                                            const AtmosphericConditions& cond) {
    return GasAttenuationModel(cond).molecular_noise_temperature_k(d_m, f_hz);
}

inline double atmospheric_noise_psd_w_per_hz(double d_m, double f_hz,
                                             const AtmosphericConditions& cond) {
    return GasAttenuationModel(cond).atmospheric_noise_psd_w_per_hz(d_m, f_hz);
}

/// Regularly sampled specific-attenuation spectrum.
struct AbsorptionSpectrum {
    std::vector<double> frequency_hz;
    std::vector<double> gamma_db_per_km;
};

inline AbsorptionSpectrum sample_absorption_spectrum(double f_lo_hz, double f_hi_hz,
                                                     double step_hz,
                                                     const AtmosphericConditions& cond) {
    detail::require(f_lo_hz <= f_hi_hz, "absorption spectrum: inverted frequency range");
    detail::require(step_hz > 0.0, "absorption spectrum: step must be positive");
    GasAttenuationModel model(cond);
    AbsorptionSpectrum spectrum;
    const auto n = static_cast<std::size_t>(std::floor((f_hi_hz - f_lo_hz) / step_hz + 0.5)) + 1;
    spectrum.frequency_hz.reserve(n);
    spectrum.gamma_db_per_km.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = std::min(f_lo_hz + static_cast<double>(i) * step_hz, f_hi_hz);
        spectrum.frequency_hz.push_back(f);
        spectrum.gamma_db_per_km.push_back(model.specific_attenuation_db_per_km(f));
    }
    return spectrum;
}

}  // namespace mmthz

#endif  // MMTHZ_ATMOSPHERE_HPP
