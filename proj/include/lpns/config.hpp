#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lpns/random_fields.hpp"
#include "lpns/report.hpp"
#include "lpns/snapshot.hpp"
#include "lpns/solver.hpp"

namespace lpns {

/// Flat `key = value` configuration with `#` comments. Unknown keys are
/// errors; every error message names the offending key.
///
/// Known keys: grid_n, box_length, viscosity, dt, t_end, init, seed,
/// output_stride, cfl_safety, criteria.logE_list, criteria.p_alpha_list,
/// criteria.m_beta_list, criteria.qp_list, criteria.gronwall_c.
class Config {
  public:
    static const std::vector<std::string>& known_keys() {
        static const std::vector<std::string> keys = {
            "grid_n",        "box_length",           "viscosity",
            "dt",            "t_end",                "init",
            "seed",          "output_stride",        "cfl_safety",
            "criteria.logE_list", "criteria.p_alpha_list", "criteria.m_beta_list",
            "criteria.qp_list",   "criteria.gronwall_c"};
        return keys;
    }

    static Config parse_text(const std::string& text) {
        Config cfg;
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const std::string stripped = strip(line);
            if (stripped.empty()) continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value, got '" + stripped + "'");
            const std::string key = strip(stripped.substr(0, eq));
            const std::string value = strip(stripped.substr(eq + 1));
            bool known = false;
            for (const auto& k : known_keys())
                if (k == key) known = true;
            if (!known) throw std::runtime_error("unknown config key '" + key + "'");
            if (cfg.values_.count(key))
                throw std::runtime_error("duplicate config key '" + key + "'");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open config file " + path);
        std::ostringstream ss;
        ss << is.rdbuf();
        Config cfg = parse_text(ss.str());
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    const std::string& get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw std::runtime_error("missing config key '" + key + "'");
        return it->second;
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key) const { return to_double(get(key), key); }
    double get_double_or(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }
    long get_long(const std::string& key) const {
        const std::string& v = get(key);
        char* end = nullptr;
        const long x = std::strtol(v.c_str(), &end, 10);
        if (end == nullptr || *end != '\0')
            throw std::runtime_error("config key '" + key + "': bad integer '" + v + "'");
        return x;
    }
    long get_long_or(const std::string& key, long fallback) const {
        return has(key) ? get_long(key) : fallback;
    }

    /// Canonical text: keys sorted, one per line. Hashing input.
    std::string canonical_text() const {
        std::string out;
        for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
        return out;
    }

    /// FNV-1a hash of the canonical text, as fixed-width hex.
    std::string hash() const { return fnv1a_hex(canonical_text()); }

    static double to_double(const std::string& v, const std::string& key) {
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        if (end == nullptr || *end != '\0')
            throw std::runtime_error("config key '" + key + "': bad number '" + v + "'");
        return x;
    }

    /// Comma-separated doubles: "1, 10, 100".
    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(get(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string s = strip(item);
            if (s.empty()) continue;
            out.push_back(to_double(s, key));
        }
        if (out.empty()) throw std::runtime_error("config key '" + key + "': empty list");
        return out;
    }

    /// Pair list: "(2,0.25), (4,0)".
    std::vector<std::pair<double, double>> get_pair_list(const std::string& key) const {
        std::vector<std::pair<double, double>> out;
        const std::string& v = get(key);
        std::size_t pos = 0;
        while (true) {
            const auto open = v.find('(', pos);
            if (open == std::string::npos) break;
            const auto comma = v.find(',', open);
            const auto close = v.find(')', open);
            if (comma == std::string::npos || close == std::string::npos || comma > close)
                throw std::runtime_error("config key '" + key + "': malformed pair list '" + v +
                                         "'");
            out.emplace_back(to_double(strip(v.substr(open + 1, comma - open - 1)), key),
                             to_double(strip(v.substr(comma + 1, close - comma - 1)), key));
            pos = close + 1;
        }
        if (out.empty()) throw std::runtime_error("config key '" + key + "': empty pair list");
        return out;
    }

    static std::string strip(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

  private:
    std::map<std::string, std::string> values_;
};

/// Initial data selector: taylor_green(A), random_divfree(seed, lo:hi, A),
/// file(path).
inline VectorField make_initial_data(const std::string& selector, const FourierGrid& grid) {
    const auto open = selector.find('(');
    const auto close = selector.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::runtime_error("config key 'init': malformed selector '" + selector + "'");
    const std::string name = Config::strip(selector.substr(0, open));
    const std::string args = selector.substr(open + 1, close - open - 1);

    if (name == "taylor_green") {
        return taylor_green(grid, Config::to_double(Config::strip(args), "init"));
    }
    if (name == "random_divfree") {
        std::vector<std::string> parts;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(Config::strip(item));
        if (parts.size() != 3)
            throw std::runtime_error("config key 'init': random_divfree needs (seed, lo:hi, amplitude)");
        const auto colon = parts[1].find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("config key 'init': band must be lo:hi");
        Band band{Config::to_double(parts[1].substr(0, colon), "init"),
                  Config::to_double(parts[1].substr(colon + 1), "init")};
        return random_divfree(grid, static_cast<std::uint64_t>(std::strtoull(parts[0].c_str(), nullptr, 10)),
                              band, Config::to_double(parts[2], "init"));
    }
    if (name == "file") {
        return snapshot::read_vector(Config::strip(args), grid);
    }
    throw std::runtime_error("config key 'init': unknown selector '" + name + "'");
}

struct SolverSetup {
    std::array<int, 3> n{32, 32, 32};
    double box_length = 1.0;
    RunParams params;
    std::string init = "taylor_green(1)";
    std::uint64_t seed = 0;
};

inline SolverSetup solver_setup_from_config(const Config& cfg) {
    SolverSetup s;
    if (cfg.has("grid_n")) {
        const long n = cfg.get_long("grid_n");
        s.n = {static_cast<int>(n), static_cast<int>(n), static_cast<int>(n)};
    }
    s.box_length = cfg.get_double_or("box_length", 1.0);
    s.params.nu = cfg.get_double_or("viscosity", 1.0);
    s.params.dt = cfg.get_double_or("dt", 1e-2);
    s.params.t_end = cfg.get_double_or("t_end", 1.0);
    s.params.output_stride = static_cast<int>(cfg.get_long_or("output_stride", 1));
    s.params.cfl_safety = cfg.get_double_or("cfl_safety", 0.5);
    s.init = cfg.get_or("init", "taylor_green(1)");
    s.seed = static_cast<std::uint64_t>(cfg.get_long_or("seed", 0));
    return s;
}

} // namespace lpns
