#include "plcp/config.hpp"

#include "plcp/data.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace plcp {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
    ConfigFile config;
    config.origin_ = origin;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find_first_of("#;");
        const std::string stripped = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (stripped.empty()) continue;
        const std::string prefix = origin + ":" + std::to_string(line) + ": ";
        if (stripped.front() == '[') {
            if (stripped.back() != ']' || stripped.size() < 3) throw Error(prefix + "malformed section header");
            current = trim(stripped.substr(1, stripped.size() - 2));
            config.sections_[current];
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw Error(prefix + "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty()) throw Error(prefix + "missing key");
        auto& section = config.sections_[current];
        if (section.count(key) > 0) throw Error(prefix + "duplicate key '" + key + "'");
        section[key] = Entry{trim(stripped.substr(eq + 1)), line};
    }
    return config;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path.string());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

const std::map<std::string, ConfigFile::Entry>& ConfigFile::section(const std::string& section) const {
    static const std::map<std::string, Entry> empty;
    const auto it = sections_.find(section);
    return it == sections_.end() ? empty : it->second;
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& section, const std::string& key) const {
    return sections_.at(section).at(key);
}

std::string ConfigFile::where(const std::string& section, const std::string& key) const {
    if (!has(section, key)) return origin_ + ": [" + section + "] " + key + ": ";
    return origin_ + ":" + std::to_string(entry(section, key).line) + ": ";
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? entry(section, key).value : fallback;
}

double ConfigFile::get_real(const std::string& section, const std::string& key, double fallback) const {
    if (!has(section, key)) return fallback;
    return csv::parse_real(entry(section, key).value, where(section, key) + key);
}

long long ConfigFile::get_int(const std::string& section, const std::string& key, long long fallback) const {
    if (!has(section, key)) return fallback;
    return csv::parse_int(entry(section, key).value, where(section, key) + key);
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = lower(entry(section, key).value);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw Error(where(section, key) + key + ": expected a boolean, got '" + entry(section, key).value + "'");
}

std::vector<double> ConfigFile::get_real_list(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    if (!has(section, key)) return out;
    std::stringstream ss(entry(section, key).value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(csv::parse_real(trim(item), where(section, key) + key));
    if (out.empty()) throw Error(where(section, key) + key + ": empty list");
    return out;
}

void ConfigFile::require_known(const std::map<std::string, std::set<std::string>>& allowed) const {
    for (const auto& [name, entries] : sections_) {
        const auto it = allowed.find(name);
        if (it == allowed.end()) {
            throw Error(origin_ + ": unknown section [" + name + "]");
        }
        for (const auto& [key, e] : entries) {
            if (it->second.count(key) == 0) {
                throw Error(origin_ + ":" + std::to_string(e.line) + ": unknown key '" + key + "' in [" + name + "]");
            }
        }
    }
}

}  // namespace plcp
