// config.hpp: flat "dotted.key = value" scenario files.
//
//   # comment
//   params.kappa = 0.5
//   [time]            # optional section header, prefixes following keys with "time."
//   t_end = 20
#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ptq {

class ConfigFile {
public:
    static ConfigFile parse(std::istream& in, const std::string& origin = "<stream>");
    static ConfigFile load(const std::string& path);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    // Typed lookups mark the key as consumed. Malformed values throw ConfigError.
    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long> get_int(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    double get_double_or(const std::string& key, double fallback) const;

    // Throws ConfigError listing keys never looked up (usually typos).
    void require_all_consumed() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
    mutable std::set<std::string> consumed_;
    std::string origin_;
};

}  // namespace ptq
