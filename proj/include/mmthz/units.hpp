#ifndef MMTHZ_UNITS_HPP
#define MMTHZ_UNITS_HPP

#include <cmath>
#include <stdexcept>

// Scalar unit conventions used throughout the library:
//   - all internal computation is in linear SI units (W, W/Hz, Hz, m, K);
//   - dB, dBm and dBi values appear only at API and serialization
//     boundaries and carry a _db / _dbm / _dbi suffix in the name.

namespace mmthz {

namespace constants {
inline constexpr double boltzmann_j_per_k = 1.380649e-23;
inline constexpr double speed_of_light_m_per_s = 2.99792458e8;
}  // namespace constants

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}
}  // namespace detail

/// 10*log10(x). Non-positive input is a domain error, never clamped.
inline double to_db(double linear) {
    detail::require(std::isfinite(linear) && linear > 0.0,
                    "to_db: argument must be finite and positive");
    return 10.0 * std::log10(linear);
}

/// 10^(x/10), inverse of to_db.
inline double from_db(double db) {
    detail::require(std::isfinite(db), "from_db: argument must be finite");
    return std::pow(10.0, db / 10.0);
}

inline double dbm_to_watts(double dbm) {
    detail::require(std::isfinite(dbm), "dbm_to_watts: argument must be finite");
    return 1.0e-3 * std::pow(10.0, dbm / 10.0);
}

inline double watts_to_dbm(double watts) {
    detail::require(std::isfinite(watts) && watts > 0.0,
                    "watts_to_dbm: argument must be finite and positive");
    return 10.0 * std::log10(watts) + 30.0;
}

}  // namespace mmthz

#endif  // MMTHZ_UNITS_HPP
