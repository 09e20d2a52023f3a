#ifndef MMTHZ_CONFIG_HPP
#define MMTHZ_CONFIG_HPP

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mmthz/report.hpp"

// Run configuration files: flat `key=value` lines (# comments allowed), or a
// single flat JSON object as an alternative. Keys mirror the CLI flag names.
// Unknown keys are rejected so that a typo in a sweep setup fails loudly
// instead of silently running with defaults.

namespace mmthz {

using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::string json_scalar_to_string(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    throw std::runtime_error("config key '" + key + "' must be a scalar");
}

}  // namespace detail

inline ConfigMap parse_config_text(const std::string& text, const std::string& origin) {
    ConfigMap config;
    const std::string body = detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const std::exception& e) {
            throw std::runtime_error(origin + ": invalid JSON: " + e.what());
        }
        if (!j.is_object()) throw std::runtime_error(origin + ": config JSON must be an object");
        for (const auto& [key, value] : j.items())
            config[key] = detail::json_scalar_to_string(value, key);
        return config;
    }

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": empty key");
        if (config.count(key))
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": duplicate key '" + key + "'");
        config[key] = value;
    }
    return config;
}

inline ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

inline void reject_unknown_keys(const ConfigMap& config, const std::set<std::string>& known,
                                const std::string& origin) {
    for (const auto& [key, value] : config) {
        (void)value;
        if (!known.count(key))
            throw std::runtime_error(origin + ": unknown config key '" + key + "'");
    }
}

}  // namespace mmthz

#endif  // MMTHZ_CONFIG_HPP
