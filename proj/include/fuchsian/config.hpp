#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuchsian {

/// Malformed configuration; the CLI maps this to exit code 3.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar or (possibly nested) list value of the key = value config format.
struct ConfigValue {
    enum class Kind { Number, Boolean, String, List };
    Kind kind = Kind::Number;
    double number = 0;
    bool boolean = false;
    std::string str;
    std::vector<ConfigValue> list;
};

/// Plain nested key-value text: `[section]` headers, `key = value` lines,
/// `#` comments. Values: numbers (integer, decimal, or rational p/q),
/// true/false, "strings", and [a, b, ...] lists, which may nest one level
/// for matrices. Keys are addressed as "section.key".
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    const std::string& raw_text() const { return raw_; }

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer_or(const std::string& key, int fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;

    std::vector<double> number_list(const std::string& key) const;
    std::vector<int> integer_list(const std::string& key) const;
    std::vector<std::string> string_list(const std::string& key) const;
    /// List of numeric rows, e.g. generators = [[a, b, c, d], ...].
    std::vector<std::vector<double>> matrix_list(const std::string& key) const;

private:
    const ConfigValue& get(const std::string& key) const;
    std::map<std::string, ConfigValue> values_;
    std::string raw_;
};

}  // namespace fuchsian
