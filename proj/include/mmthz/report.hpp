#ifndef MMTHZ_REPORT_HPP
#define MMTHZ_REPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mmthz/noise.hpp"
#include "mmthz/units.hpp"

// Machine-readable run results. One envelope per output file, carrying the
// tool version, the fully resolved configuration, the physical constants the
// run used and a column/row payload. Numbers are canonicalized to 12
// significant digits at envelope construction so that CSV and JSON emissions
// of the same run agree digit-for-digit and reruns are byte-identical.

namespace mmthz {

inline constexpr const char* tool_version = "0.1.0";

/// Locale-independent %.12g rendering; non-finite values map to the tokens
/// "inf", "-inf" and "nan" in every format.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline double parse_number(const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::runtime_error("not a number: '" + text + "'");
    return v;
}

/// Round-trips a double through its 12-significant-digit rendering.
inline double canonical_number(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

using Cell = std::variant<double, std::string>;

struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size())
            throw std::runtime_error("report row width does not match columns");
        for (auto& cell : row)
            if (auto* num = std::get_if<double>(&cell)) *num = canonical_number(*num);
        rows.push_back(std::move(row));
    }
};

struct ConstantsBlock {
    double boltzmann_j_per_k = constants::boltzmann_j_per_k;
    double speed_of_light_m_per_s = constants::speed_of_light_m_per_s;
    double onset_threshold_db_exact = canonical_number(onset_threshold_db());
    double onset_threshold_db_report = report_onset_threshold_db;

    bool operator==(const ConstantsBlock&) const = default;
};

struct ReportEnvelope {
    std::string version = tool_version;
    std::string command;
    std::string tx_noise_model;
    std::map<std::string, std::string> config;  // resolved key -> value
    ConstantsBlock constants;
    ReportTable payload;
};

inline bool operator==(const ReportEnvelope& a, const ReportEnvelope& b) {
    return a.version == b.version && a.command == b.command &&
           a.tx_noise_model == b.tx_noise_model && a.config == b.config &&
           a.constants == b.constants && a.payload.columns == b.payload.columns &&
           a.payload.rows == b.payload.rows;
}

namespace detail {

inline std::string cell_to_string(const Cell& cell) {
    if (const auto* num = std::get_if<double>(&cell)) return format_number(*num);
    return std::get<std::string>(cell);
}

inline Cell cell_from_string(const std::string& text) {
    if (text == "nan" || text == "inf" || text == "-inf") return Cell{parse_number(text)};
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() && *end == '\0') return Cell{v};
    return Cell{text};
}

}  // namespace detail

// --- CSV ---------------------------------------------------------------
// Leading `# key=value` metadata lines, then a header row and data rows.
// UTF-8, comma separators, \n line endings.

inline std::string to_csv(const ReportEnvelope& envelope) {
    std::string out;
    const auto meta = [&out](const std::string& key, const std::string& value) {
        out += "# " + key + "=" + value + "\n";
    };
    meta("tool_version", envelope.version);
    meta("command", envelope.command);
    meta("tx_noise_model", envelope.tx_noise_model);
    meta("constant.boltzmann_j_per_k", format_number(envelope.constants.boltzmann_j_per_k));
    meta("constant.speed_of_light_m_per_s",
         format_number(envelope.constants.speed_of_light_m_per_s));
    meta("constant.onset_threshold_db_exact",
         format_number(envelope.constants.onset_threshold_db_exact));
    meta("constant.onset_threshold_db_report",
         format_number(envelope.constants.onset_threshold_db_report));
    for (const auto& [key, value] : envelope.config) meta("config." + key, value);

    for (std::size_t i = 0; i < envelope.payload.columns.size(); ++i) {
        if (i) out += ',';
        out += envelope.payload.columns[i];
    }
    out += '\n';
    for (const auto& row : envelope.payload.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += detail::cell_to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline ReportEnvelope from_csv(const std::string& text) {
    ReportEnvelope envelope;
    envelope.version.clear();
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("malformed metadata line: " + line);
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "tool_version") envelope.version = value;
            else if (key == "command") envelope.command = value;
            else if (key == "tx_noise_model") envelope.tx_noise_model = value;
            else if (key == "constant.boltzmann_j_per_k")
                envelope.constants.boltzmann_j_per_k = parse_number(value);
            else if (key == "constant.speed_of_light_m_per_s")
                envelope.constants.speed_of_light_m_per_s = parse_number(value);
            else if (key == "constant.onset_threshold_db_exact")
                envelope.constants.onset_threshold_db_exact = parse_number(value);
            else if (key == "constant.onset_threshold_db_report")
                envelope.constants.onset_threshold_db_report = parse_number(value);
            else if (key.rfind("config.", 0) == 0)
                envelope.config[key.substr(7)] = value;
            else
                throw std::runtime_error("unknown metadata key: " + key);
            continue;
        }
        auto fields = detail::split_csv_row(line);
        if (!have_header) {
            envelope.payload.columns = std::move(fields);
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& field : fields) row.push_back(detail::cell_from_string(field));
        if (row.size() != envelope.payload.columns.size())
            throw std::runtime_error("csv row width does not match header");
        envelope.payload.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("csv report has no header row");
    return envelope;
}

// --- JSON --------------------------------------------------------------

inline std::string to_json_string(const ReportEnvelope& envelope) {
    nlohmann::json j;
    j["tool_version"] = envelope.version;
    j["command"] = envelope.command;
    j["tx_noise_model"] = envelope.tx_noise_model;
    j["constants"] = {
        {"boltzmann_j_per_k", envelope.constants.boltzmann_j_per_k},
        {"speed_of_light_m_per_s", envelope.constants.speed_of_light_m_per_s},
        {"onset_threshold_db_exact", envelope.constants.onset_threshold_db_exact},
        {"onset_threshold_db_report", envelope.constants.onset_threshold_db_report},
    };
    j["config"] = envelope.config;
    j["payload"]["columns"] = envelope.payload.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : envelope.payload.rows) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& cell : row) {
            if (const auto* num = std::get_if<double>(&cell)) {
                if (std::isfinite(*num)) jrow.push_back(*num);
                else jrow.push_back(format_number(*num));  // JSON has no inf/nan
            } else {
                jrow.push_back(std::get<std::string>(cell));
            }
        }
        rows.push_back(std::move(jrow));
    }
    j["payload"]["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

inline ReportEnvelope from_json_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ReportEnvelope envelope;
    envelope.version = j.at("tool_version").get<std::string>();
    envelope.command = j.at("command").get<std::string>();
    envelope.tx_noise_model = j.at("tx_noise_model").get<std::string>();
    const auto& c = j.at("constants");
    envelope.constants.boltzmann_j_per_k = c.at("boltzmann_j_per_k").get<double>();
    envelope.constants.speed_of_light_m_per_s = c.at("speed_of_light_m_per_s").get<double>();
    envelope.constants.onset_threshold_db_exact = c.at("onset_threshold_db_exact").get<double>();
    envelope.constants.onset_threshold_db_report =
        c.at("onset_threshold_db_report").get<double>();
    envelope.config = j.at("config").get<std::map<std::string, std::string>>();
    envelope.payload.columns = j.at("payload").at("columns").get<std::vector<std::string>>();
    for (const auto& jrow : j.at("payload").at("rows")) {
        std::vector<Cell> row;
        row.reserve(jrow.size());
        for (const auto& jcell : jrow) {
            if (jcell.is_number()) row.push_back(Cell{jcell.get<double>()});
            else row.push_back(detail::cell_from_string(jcell.get<std::string>()));
        }
        if (row.size() != envelope.payload.columns.size())
            throw std::runtime_error("json row width does not match columns");
        envelope.payload.rows.push_back(std::move(row));
    }
    return envelope;
}

inline std::string serialize(const ReportEnvelope& envelope, const std::string& format) {
    if (format == "csv") return to_csv(envelope);
    if (format == "json") return to_json_string(envelope);
    throw std::domain_error("unknown output format: " + format);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output path: " + path);
}

}  // namespace mmthz

#endif  // MMTHZ_REPORT_HPP
