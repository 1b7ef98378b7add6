#include "fuchsian/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fuchsian {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line = 1;

    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    char take() {
        char c = s[i++];
        if (c == '\n') ++line;
        return c;
    }
    void skip_ws() {
        while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw config_error("config line " + std::to_string(line) + ": " + msg);
    }
};

bool is_bare_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-' ||
           c == '_' || c == '/' || c == 'e' || c == 'E';
}

ConfigValue parse_scalar_token(Cursor& cur, const std::string& tok) {
    ConfigValue v;
    if (tok == "true" || tok == "false") {
        v.kind = ConfigValue::Kind::Boolean;
        v.boolean = tok == "true";
        return v;
    }
    const auto slash = tok.find('/');
    try {
        std::size_t used = 0;
        if (slash != std::string::npos && slash > 0) {
            const double num = std::stod(tok.substr(0, slash), &used);
            if (used != slash) cur.fail("bad rational '" + tok + "'");
            const double den = std::stod(tok.substr(slash + 1), &used);
            if (used != tok.size() - slash - 1 || den == 0) cur.fail("bad rational '" + tok + "'");
            v.number = num / den;
        } else {
            v.number = std::stod(tok, &used);
            if (used != tok.size()) cur.fail("bad number '" + tok + "'");
        }
    } catch (const std::exception&) {
        cur.fail("cannot parse value '" + tok + "'");
    }
    v.kind = ConfigValue::Kind::Number;
    return v;
}

ConfigValue parse_value(Cursor& cur);

ConfigValue parse_list(Cursor& cur) {
    ConfigValue v;
    v.kind = ConfigValue::Kind::List;
    cur.take();  // '['
    for (;;) {
        cur.skip_ws();
        while (!cur.done() && (cur.peek() == '\n' || cur.peek() == '\r')) {
            cur.take();
            cur.skip_ws();
        }
        if (cur.done()) cur.fail("unterminated list");
        if (cur.peek() == ']') {
            cur.take();
            return v;
        }
        v.list.push_back(parse_value(cur));
        cur.skip_ws();
        while (!cur.done() && (cur.peek() == '\n' || cur.peek() == '\r')) {
            cur.take();
            cur.skip_ws();
        }
        if (cur.done()) cur.fail("unterminated list");
        if (cur.peek() == ',') {
            cur.take();
        } else if (cur.peek() != ']') {
            cur.fail("expected ',' or ']' in list");
        }
    }
}

ConfigValue parse_value(Cursor& cur) {
    cur.skip_ws();
    if (cur.done()) cur.fail("missing value");
    const char c = cur.peek();
    if (c == '[') return parse_list(cur);
    if (c == '"') {
        cur.take();
        ConfigValue v;
        v.kind = ConfigValue::Kind::String;
        while (!cur.done() && cur.peek() != '"') v.str.push_back(cur.take());
        if (cur.done()) cur.fail("unterminated string");
        cur.take();
        return v;
    }
    std::string tok;
    while (!cur.done() && is_bare_char(cur.peek())) tok.push_back(cur.take());
    if (tok.empty()) cur.fail("unexpected character");
    return parse_scalar_token(cur, tok);
}

std::string value_kind_name(ConfigValue::Kind k) {
    switch (k) {
        case ConfigValue::Kind::Number: return "number";
        case ConfigValue::Kind::Boolean: return "boolean";
        case ConfigValue::Kind::String: return "string";
        case ConfigValue::Kind::List: return "list";
    }
    return "?";
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
    Config cfg;
    cfg.raw_ = text;
    Cursor cur{text};
    std::string section;
    while (!cur.done()) {
        cur.skip_ws();
        if (cur.done()) break;
        const char c = cur.peek();
        if (c == '\n' || c == '\r') {
            cur.take();
            continue;
        }
        if (c == '#') {
            while (!cur.done() && cur.peek() != '\n') cur.take();
            continue;
        }
        if (c == '[') {
            cur.take();
            section.clear();
            while (!cur.done() && cur.peek() != ']') section.push_back(cur.take());
            if (cur.done()) cur.fail("unterminated section header");
            cur.take();
            continue;
        }
        std::string key;
        while (!cur.done() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                               cur.peek() == '_' || cur.peek() == '-'))
            key.push_back(cur.take());
        if (key.empty()) cur.fail("expected a key");
        cur.skip_ws();
        if (cur.done() || cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
        cur.take();
        ConfigValue v = parse_value(cur);
        cur.skip_ws();
        if (!cur.done() && cur.peek() == '#')
            while (!cur.done() && cur.peek() != '\n') cur.take();
        if (!cur.done() && cur.peek() != '\n' && cur.peek() != '\r')
            cur.fail("trailing characters after value for key '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        cfg.values_[full] = std::move(v);
    }
    return cfg;
}

const ConfigValue& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw config_error("missing config key: " + key);
    return it->second;
}

double Config::number(const std::string& key) const {
    const auto& v = get(key);
    if (v.kind != ConfigValue::Kind::Number)
        throw config_error("config key " + key + " is a " + value_kind_name(v.kind) + ", expected number");
    return v.number;
}

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

int Config::integer(const std::string& key) const {
    const double d = number(key);
    if (d != std::floor(d)) throw config_error("config key " + key + " must be an integer");
    return static_cast<int>(d);
}

int Config::integer_or(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool Config::boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = get(key);
    if (v.kind != ConfigValue::Kind::Boolean)
        throw config_error("config key " + key + " must be true or false");
    return v.boolean;
}

std::string Config::string_or(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = get(key);
    if (v.kind != ConfigValue::Kind::String)
        throw config_error("config key " + key + " must be a string");
    return v.str;
}

std::vector<double> Config::number_list(const std::string& key) const {
    const auto& v = get(key);
    if (v.kind != ConfigValue::Kind::List)
        throw config_error("config key " + key + " must be a list");
    std::vector<double> out;
    for (const auto& e : v.list) {
        if (e.kind != ConfigValue::Kind::Number)
            throw config_error("config key " + key + " must contain only numbers");
        out.push_back(e.number);
    }
    return out;
}

std::vector<int> Config::integer_list(const std::string& key) const {
    std::vector<int> out;
    for (double d : number_list(key)) {
        if (d != std::floor(d)) throw config_error("config key " + key + " must contain integers");
        out.push_back(static_cast<int>(d));
    }
    return out;
}

std::vector<std::string> Config::string_list(const std::string& key) const {
    const auto& v = get(key);
    if (v.kind != ConfigValue::Kind::List)
        throw config_error("config key " + key + " must be a list");
    std::vector<std::string> out;
    for (const auto& e : v.list) {
        if (e.kind != ConfigValue::Kind::String)
            throw config_error("config key " + key + " must contain only strings");
        out.push_back(e.str);
    }
    return out;
}

std::vector<std::vector<double>> Config::matrix_list(const std::string& key) const {
    const auto& v = get(key);
    if (v.kind != ConfigValue::Kind::List)
        throw config_error("config key " + key + " must be a list of rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : v.list) {
        if (row.kind != ConfigValue::Kind::List)
            throw config_error("config key " + key + " must contain list rows");
        std::vector<double> r;
        for (const auto& e : row.list) {
            if (e.kind != ConfigValue::Kind::Number)
                throw config_error("config key " + key + " rows must contain numbers");
            r.push_back(e.number);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace fuchsian
