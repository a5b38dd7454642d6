#ifndef PLCP_CONFIG_HPP
#define PLCP_CONFIG_HPP

#include "plcp/core.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

/**
 * @file config.hpp
 * @brief Sectioned `key = value` configuration files.
 *
 *     # comment
 *     [section]
 *     key = value
 *
 * Every value remembers its line so that errors can point at it.
 */

namespace plcp {

class ConfigFile {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static ConfigFile parse(const std::string& text, const std::string& origin = "<config>");
    static ConfigFile load(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }
    const std::map<std::string, Entry>& section(const std::string& section) const;

    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_real_list(const std::string& section, const std::string& key) const;

    /// Throws on sections or keys outside `allowed` (section -> keys).
    void require_known(const std::map<std::string, std::set<std::string>>& allowed) const;

    /// "origin:line: " prefix for diagnostics about an entry.
    std::string where(const std::string& section, const std::string& key) const;

    const std::string& origin() const { return origin_; }

private:
    const Entry& entry(const std::string& section, const std::string& key) const;

    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

}  // namespace plcp

#endif
