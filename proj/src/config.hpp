#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace srsense {

// Malformed config text or a value of the wrong type.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `key = value` configuration. Lines starting with '#' (or anything
// after a '#') are comments; blank lines are ignored. Dotted keys act as
// sections (sr.a = 1). Values are plain strings until a typed getter
// interprets them.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;
    bool has(const std::string& key) const;

    // Typed getters. The default is returned when the key is absent;
    // a present but unparseable value raises ConfigError naming the key.
    double get_double(const std::string& key, double def) const;
    std::size_t get_size(const std::string& key, std::size_t def) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t def) const;
    bool get_bool(const std::string& key, bool def) const;
    std::string get_string(const std::string& key, const std::string& def) const;
    // comma-separated numbers
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& def) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& def) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace srsense
