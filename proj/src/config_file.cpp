#include "qfp/config_file.hpp"

#include "qfp/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace qfp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidParameterError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameterError("config line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw InvalidParameterError("config line " + std::to_string(lineno) +
                                        " has an empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& key) const {
    const auto v = get(key);
    if (!v)
        return std::nullopt;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("trailing junk");
        return d;
    } catch (const std::exception&) {
        throw InvalidParameterError("config key '" + key + "' is not a number: " + *v);
    }
}

std::optional<long long> ConfigFile::get_int(const std::string& key) const {
    const auto v = get(key);
    if (!v)
        return std::nullopt;
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("trailing junk");
        return i;
    } catch (const std::exception&) {
        throw InvalidParameterError("config key '" + key + "' is not an integer: " + *v);
    }
}

std::optional<bool> ConfigFile::get_bool(const std::string& key) const {
    const auto v = get(key);
    if (!v)
        return std::nullopt;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (s == "1" || s == "true" || s == "yes" || s == "on")
        return true;
    if (s == "0" || s == "false" || s == "no" || s == "off")
        return false;
    throw InvalidParameterError("config key '" + key + "' is not a boolean: " + *v);
}

} // namespace qfp
