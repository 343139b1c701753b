#include "ptq/config.hpp"

#include "ptq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ptq {

namespace {

std::string trim(const std::string& s) {
    const auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    const auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return begin < end ? std::string(begin, end) : std::string();
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(lineno) + ": unterminated section");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(lineno) + ": empty key");
        }
        if (!section.empty()) {
            key = section + "." + key;
        }
        if (cfg.entries_.count(key) != 0) {
            throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(lineno) + ": duplicate key " + key);
        }
        cfg.entries_[key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
    }
    return parse(in, path);
}

bool ConfigFile::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

void ConfigFile::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

std::optional<std::string> ConfigFile::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    consumed_.insert(key);
    return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& key) const {
    const auto text = get_string(key);
    if (!text) {
        return std::nullopt;
    }
    std::istringstream in(*text);
    double v = 0.0;
    in >> v;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw Error(ErrorCode::ConfigError, origin_ + ": " + key + " is not a number: '" + *text + "'");
    }
    return v;
}

std::optional<long> ConfigFile::get_int(const std::string& key) const {
    const auto text = get_string(key);
    if (!text) {
        return std::nullopt;
    }
    long v = 0;
    const auto* end = text->data() + text->size();
    const auto [ptr, ec] = std::from_chars(text->data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ConfigError, origin_ + ": " + key + " is not an integer: '" + *text + "'");
    }
    return v;
}

std::optional<bool> ConfigFile::get_bool(const std::string& key) const {
    const auto text = get_string(key);
    if (!text) {
        return std::nullopt;
    }
    const std::string v = lower(*text);
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "off" || v == "0") {
        return false;
    }
    throw Error(ErrorCode::ConfigError, origin_ + ": " + key + " is not a boolean: '" + *text + "'");
}

double ConfigFile::get_double_or(const std::string& key, double fallback) const {
    return get_double(key).value_or(fallback);
}

void ConfigFile::require_all_consumed() const {
    std::string unknown;
    for (const auto& [key, value] : entries_) {
        if (consumed_.count(key) == 0) {
            unknown += (unknown.empty() ? "" : ", ") + key;
        }
    }
    if (!unknown.empty()) {
        throw Error(ErrorCode::ConfigError, origin_ + ": unknown keys: " + unknown);
    }
}

}  // namespace ptq
