#include "config.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace srsense {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_text(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (in '" + path + "')");
    }
}

Config Config::parse_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
        cfg.entries_[key] = value;
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

std::optional<std::string> Config::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

bool Config::has(const std::string& key) const {
    return entries_.count(key) > 0;
}

double Config::get_double(const std::string& key, double def) const {
    const auto v = get(key);
    if (!v)
        return def;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + *v + "'");
    }
}

std::size_t Config::get_size(const std::string& key, std::size_t def) const {
    const auto v = get(key);
    if (!v)
        return def;
    try {
        std::size_t pos = 0;
        const long long n = std::stoll(*v, &pos);
        if (pos != v->size() || n < 0)
            throw std::invalid_argument("");
        return static_cast<std::size_t>(n);
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects a nonnegative integer, got '" +
                          *v + "'");
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t def) const {
    const auto v = get(key);
    if (!v)
        return def;
    try {
        std::size_t pos = 0;
        const unsigned long long n = std::stoull(*v, &pos);
        if (pos != v->size())
            throw std::invalid_argument("");
        return static_cast<std::uint64_t>(n);
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects an unsigned integer, got '" +
                          *v + "'");
    }
}

bool Config::get_bool(const std::string& key, bool def) const {
    const auto v = get(key);
    if (!v)
        return def;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on")
        return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off")
        return false;
    throw ConfigError("config: key '" + key + "' expects a boolean, got '" + *v + "'");
}

std::string Config::get_string(const std::string& key, const std::string& def) const {
    return get(key).value_or(def);
}

std::vector<std::string> Config::get_string_list(
    const std::string& key, const std::vector<std::string>& def) const {
    const auto v = get(key);
    if (!v)
        return def;
    std::vector<std::string> out;
    std::istringstream in(*v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    if (out.empty())
        throw ConfigError("config: key '" + key + "' expects a comma-separated list");
    return out;
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& def) const {
    const auto v = get(key);
    if (!v)
        return def;
    std::vector<double> out;
    for (const auto& item : get_string_list(key, {})) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size())
                throw std::invalid_argument("");
        } catch (...) {
            throw ConfigError("config: key '" + key + "' has a non-numeric entry '" + item +
                              "'");
        }
    }
    return out;
}

}  // namespace srsense
