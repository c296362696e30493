// Flat `key = value` configuration files. Keys match the CLI flag names
// with dashes replaced by underscores; '#' starts a comment.

#pragma once

#include <map>
#include <optional>
#include <string>

namespace qfp {

class ConfigFile {
public:
    ConfigFile() = default;

    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text);

    std::optional<std::string> get(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long long> get_int(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    bool empty() const { return values_.empty(); }

private:
    std::map<std::string, std::string> values_;
};

} // namespace qfp
