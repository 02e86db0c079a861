#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace littoral {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what_) : std::runtime_error(what_) {}
};

/// Flat `key = value` file with `[section]` headers that prefix keys as
/// `section.key`. Repeated keys accumulate. Unknown keys are reported at
/// validation so typos do not silently fall back to defaults.
class KvConfig {
public:
    KvConfig() = default;

    static KvConfig parse_file(const std::filesystem::path& path) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config: " + path.string());
        std::ostringstream ss;
        ss << is.rdbuf();
        return parse_string(ss.str(), path.string());
    }

    static KvConfig parse_string(const std::string& text, const std::string& origin = "<string>") {
        KvConfig cfg;
        std::istringstream is(text);
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
            if (!section.empty()) key = section + "." + key;
            cfg.values_[key].push_back(value);
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        mark(key);
        return it->second.back();
    }

    std::string require_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing required config key: " + key);
        mark(key);
        return it->second.back();
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        mark(key);
        return parse_double(key, it->second.back());
    }

    int get_int(const std::string& key, int fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        mark(key);
        return parse_int(key, it->second.back());
    }

    std::uint64_t require_u64(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing required config key: " + key);
        mark(key);
        try {
            return std::stoull(it->second.back());
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": not an unsigned integer: '" +
                              it->second.back() + "'");
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        mark(key);
        const std::string& v = it->second.back();
        if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "off" || v == "no") return false;
        throw ConfigError("config key " + key + ": not a boolean: '" + v + "'");
    }

    /// All values of a repeated key.
    std::vector<std::string> get_list(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) return {};
        mark(key);
        return it->second;
    }

    /// Whitespace-separated doubles from a single value.
    static std::vector<double> split_doubles(const std::string& key, const std::string& value) {
        std::istringstream ss(value);
        std::vector<double> out;
        std::string tok;
        while (ss >> tok) out.push_back(parse_double(key, tok));
        return out;
    }

    /// Keys present in the file that nothing consumed; callers turn this into a
    /// hard error after reading all known keys.
    std::vector<std::string> unconsumed_keys() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : values_)
            if (!consumed_.count(k)) out.push_back(k);
        return out;
    }

    void expect_fully_consumed() const {
        auto leftover = unconsumed_keys();
        if (!leftover.empty()) {
            std::string msg = "unknown config key(s):";
            for (const auto& k : leftover) msg += " " + k;
            throw ConfigError(msg);
        }
    }

    void set(const std::string& key, const std::string& value) { values_[key] = {value}; }

private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    }
    static double parse_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": not a number: '" + v + "'");
        }
    }
    static int parse_int(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            int i = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return i;
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": not an integer: '" + v + "'");
        }
    }
    void mark(const std::string& key) const { consumed_.insert(key); }

    std::map<std::string, std::vector<std::string>> values_;
    mutable std::set<std::string> consumed_;
};

}  // namespace littoral
