#ifndef MMTHZ_ITU_LINES_HPP
#define MMTHZ_ITU_LINES_HPP

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmthz {

/// One spectroscopic line of the ITU-R P.676 Annex 1 line-by-line model.
/// For oxygen the coefficients are the a1..a6 columns of the oxygen table,
/// for water vapour the b1..b6 columns (a5/a6 interference terms are zero
/// for water lines by construction of the model).
struct SpectroscopicLine {
    double f0_ghz;
    double c1, c2, c3, c4, c5, c6;
};

using LineTable = std::vector<SpectroscopicLine>;

namespace itu_data {

// Oxygen line data, ITU-R P.676 Annex 1.
inline constexpr std::array<SpectroscopicLine, 44> oxygen_lines = {{
    {50.474238, 0.94, 9.694, 8.90, 0.0, 2.400, 7.900},
    {50.987749, 2.46, 8.694, 9.10, 0.0, 2.200, 7.800},
    {51.503350, 6.08, 7.744, 9.40, 0.0, 1.970, 7.740},
    {52.021410, 14.14, 6.844, 9.70, 0.0, 1.660, 7.640},
    {52.542394, 31.02, 6.004, 9.90, 0.0, 1.360, 7.510},
    {53.066907, 64.10, 5.224, 10.20, 0.0, 1.310, 7.140},
    {53.595749, 124.70, 4.484, 10.50, 0.0, 2.300, 5.840},
    {54.130000, 228.00, 3.814, 10.70, 0.0, 3.350, 4.310},
    {54.671159, 391.80, 3.194, 11.00, 0.0, 3.740, 3.050},
    {55.221367, 631.60, 2.624, 11.30, 0.0, 2.580, 3.390},
    {55.783802, 953.50, 2.119, 11.70, 0.0, -1.660, 7.050},
    {56.264775, 548.90, 0.015, 17.30, 0.0, 3.900, -1.130},
    {56.363389, 1344.00, 1.660, 12.00, 0.0, -2.970, 7.530},
    {56.968206, 1763.00, 1.260, 12.40, 0.0, -4.160, 7.420},
    {57.612484, 2141.00, 0.915, 12.80, 0.0, -6.130, 6.970},
    {58.323877, 2386.00, 0.626, 13.30, 0.0, -2.050, 0.510},
    {58.446590, 1457.00, 0.084, 15.20, 0.0, 7.480, -1.460},
    {59.164207, 2404.00, 0.391, 13.90, 0.0, -7.220, 2.660},
    {59.590983, 2112.00, 0.212, 14.30, 0.0, 7.650, -0.900},
    {60.306061, 2124.00, 0.212, 14.50, 0.0, -7.050, 0.810},
    {60.434776, 2461.00, 0.391, 13.60, 0.0, 6.970, -3.240},
    {61.150560, 2504.00, 0.626, 13.10, 0.0, 1.040, -0.670},
    {61.800154, 2298.00, 0.915, 12.70, 0.0, 5.700, -7.610},
    {62.411215, 1933.00, 1.260, 12.30, 0.0, 3.600, -7.770},
    {62.486260, 1517.00, 0.083, 15.40, 0.0, -4.980, 0.970},
    {62.997977, 1503.00, 1.665, 12.00, 0.0, 2.390, -7.680},
    {63.568518, 1087.00, 2.115, 11.70, 0.0, 1.080, -7.060},
    {64.127767, 733.50, 2.620, 11.30, 0.0, -3.110, -3.320},
    {64.678903, 463.50, 3.195, 11.00, 0.0, -4.210, -2.980},
    {65.224071, 274.80, 3.815, 10.70, 0.0, -3.750, -4.230},
    {65.764772, 153.00, 4.485, 10.50, 0.0, -2.670, -5.750},
    {66.302091, 80.09, 5.225, 10.20, 0.0, -1.680, -7.000},
    {66.836830, 39.46, 6.005, 9.90, 0.0, -1.690, -7.350},
    {67.369598, 18.32, 6.845, 9.70, 0.0, -2.000, -7.440},
    {67.900867, 8.01, 7.745, 9.40, 0.0, -2.280, -7.530},
    {68.431005, 3.30, 8.695, 9.20, 0.0, -2.400, -7.600},
    {68.960311, 1.28, 9.695, 9.00, 0.0, -2.500, -7.650},
    {118.750343, 945.00, 0.009, 16.30, 0.0, -0.360, 0.090},
    {368.498350, 67.90, 0.049, 19.20, 0.6, 0.000, 0.000},
    {424.763124, 638.00, 0.044, 19.30, 0.6, 0.000, 0.000},
    {487.249370, 235.00, 0.049, 19.20, 0.6, 0.000, 0.000},
    {715.393150, 99.60, 0.145, 18.10, 0.6, 0.000, 0.000},
    {773.839675, 671.00, 0.130, 18.20, 0.6, 0.000, 0.000},
    {834.145330, 180.00, 0.147, 18.10, 0.6, 0.000, 0.000},
}};

// Water-vapour line data, ITU-R P.676 Annex 1. The 1780 GHz pseudo-line
// carries the water-vapour continuum.
inline constexpr std::array<SpectroscopicLine, 35> water_lines = {{
    {22.235080, 0.1130, 2.143, 28.11, 0.69, 4.800, 1.00},
    {67.803960, 0.0012, 8.735, 28.58, 0.69, 4.930, 0.82},
    {119.995940, 0.0008, 8.356, 29.48, 0.70, 4.780, 0.79},
    {183.310091, 2.4200, 0.668, 30.50, 0.64, 5.300, 0.85},
    {321.225644, 0.0483, 6.181, 23.03, 0.67, 4.690, 0.54},
    {325.152919, 1.4990, 1.540, 27.83, 0.68, 4.850, 0.74},
    {336.222601, 0.0011, 9.829, 26.93, 0.69, 4.740, 0.61},
    {380.197372, 11.5200, 1.048, 28.73, 0.54, 5.380, 0.89},
    {390.134508, 0.0046, 7.350, 21.52, 0.63, 4.810, 0.55},
    {437.346667, 0.0650, 5.050, 18.45, 0.60, 4.230, 0.48},
    {439.150812, 0.9218, 3.596, 21.00, 0.63, 4.290, 0.52},
    {443.018295, 0.1976, 5.050, 18.60, 0.60, 4.230, 0.50},
    {448.001075, 10.3200, 1.405, 26.32, 0.66, 4.840, 0.67},
    {470.888947, 0.3297, 3.599, 21.52, 0.66, 4.570, 0.65},
    {474.689127, 1.2620, 2.381, 23.55, 0.65, 4.650, 0.64},
    {488.491133, 0.2520, 2.853, 26.02, 0.69, 5.040, 0.72},
    {503.568532, 0.0390, 6.733, 16.12, 0.61, 3.980, 0.43},
    {504.482692, 0.0130, 6.733, 16.12, 0.61, 4.010, 0.45},
    {547.676440, 9.7010, 0.114, 26.00, 0.70, 4.500, 1.00},
    {552.020960, 14.7700, 0.114, 26.00, 0.70, 4.500, 1.00},
    {556.936002, 487.4000, 0.159, 32.10, 0.69, 4.110, 1.00},
    {620.700807, 5.0120, 2.200, 24.38, 0.71, 4.680, 0.68},
    {645.866155, 0.0713, 8.580, 18.00, 0.60, 4.000, 0.50},
    {658.005280, 0.3022, 7.820, 32.10, 0.69, 4.140, 1.00},
    {752.033227, 239.6000, 0.396, 30.60, 0.68, 4.090, 0.84},
    {841.053973, 0.0140, 8.180, 15.90, 0.33, 5.760, 0.45},
    {859.962313, 0.1472, 7.989, 30.60, 0.68, 4.090, 0.84},
    {899.306675, 0.0605, 7.917, 29.85, 0.68, 4.530, 0.90},
    {902.616173, 0.0426, 8.432, 28.65, 0.70, 5.100, 0.95},
    {906.207325, 0.1876, 5.111, 24.08, 0.70, 4.700, 0.53},
    {916.171582, 8.3400, 1.442, 26.70, 0.70, 4.780, 0.78},
    {923.118427, 0.0869, 10.220, 29.00, 0.70, 5.000, 0.80},
    {970.315022, 8.9720, 1.920, 25.50, 0.64, 4.940, 0.67},
    {987.926764, 132.1000, 0.258, 29.85, 0.68, 4.550, 0.90},
    {1780.000000, 22300.0000, 0.952, 176.20, 0.50, 30.500, 5.00},
}};

}  // namespace itu_data

enum class LineTableKind { oxygen, water_vapor };

namespace detail {

inline std::string line_csv_header(LineTableKind kind) {
    return kind == LineTableKind::oxygen ? "f0_ghz,a1,a2,a3,a4,a5,a6"
                                         : "f0_ghz,b1,b2,b3,b4,b5,b6";
}

inline std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(row);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!row.empty() && row.back() == ',') fields.emplace_back();
    return fields;
}

inline double parse_strict_double(const std::string& text, const std::string& context) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": not a number: '" + text + "'");
    }
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\r')) ++pos;
    if (pos != text.size())
        throw std::runtime_error(context + ": trailing characters in '" + text + "'");
    return value;
}

}  // namespace detail

/// Loads a spectroscopic line table from CSV: one header row
/// (`f0_ghz,a1,..,a6` for oxygen, `f0_ghz,b1,..,b6` for water vapour)
/// followed by one row per line. Malformed content is a load-time error.
inline LineTable load_line_table_csv(const std::string& path, LineTableKind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open line table: " + path);

    std::string row;
    if (!std::getline(in, row)) throw std::runtime_error("empty line table: " + path);
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row != detail::line_csv_header(kind))
        throw std::runtime_error(path + ": unexpected header '" + row + "', want '" +
                                 detail::line_csv_header(kind) + "'");

    LineTable table;
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
        SpectroscopicLine line{};
        line.f0_ghz = detail::parse_strict_double(fields[0], ctx);
        line.c1 = detail::parse_strict_double(fields[1], ctx);
        line.c2 = detail::parse_strict_double(fields[2], ctx);
        line.c3 = detail::parse_strict_double(fields[3], ctx);
        line.c4 = detail::parse_strict_double(fields[4], ctx);
        line.c5 = detail::parse_strict_double(fields[5], ctx);
        line.c6 = detail::parse_strict_double(fields[6], ctx);
        if (!(line.f0_ghz > 0.0))
            throw std::runtime_error(ctx + ": line center frequency must be positive");
        table.push_back(line);
    }
    if (table.empty()) throw std::runtime_error(path + ": no line entries");
    return table;
}

/// Oxygen and water-vapour tables used by the gas attenuation model.
struct LineCatalog {
    LineTable oxygen;
    LineTable water;

    static LineCatalog builtin() {
        LineCatalog c;
        c.oxygen.assign(itu_data::oxygen_lines.begin(), itu_data::oxygen_lines.end());
        c.water.assign(itu_data::water_lines.begin(), itu_data::water_lines.end());
        return c;
    }

    static LineCatalog from_csv(const std::string& oxygen_path, const std::string& water_path) {
        LineCatalog c;
        c.oxygen = load_line_table_csv(oxygen_path, LineTableKind::oxygen);
        c.water = load_line_table_csv(water_path, LineTableKind::water_vapor);
        return c;
    }
};

}  // namespace mmthz

#endif  // MMTHZ_ITU_LINES_HPP
