#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lpns/grid.hpp"

namespace lpns {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "lpns-report/1";

/// Domain notice embedded in every report header.
inline constexpr const char* kDomainNotice =
    "Domain is the periodic box [0, 2*pi*L)^3; all norms are torus analogues of their "
    "whole-space counterparts and low frequencies |xi| < 1/L are absent.";

/// Monitoring caveat embedded in criteria reports.
inline constexpr const char* kMonitorNotice =
    "Smooth periodic desk-scale runs do not approach a singular time; the series evidence the "
    "contrapositive direction (finite criterion integrals alongside bounded gradients), not "
    "blow-up itself.";

using json = nlohmann::ordered_json;

/// FNV-1a of arbitrary text as fixed-width hex; the config-hash primitive.
inline std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json grid_json(const FourierGrid& g) {
    return json{{"n", {g.n(0), g.n(1), g.n(2)}}, {"box_length", g.box_length()}};
}

inline json report_header(const std::string& kind, const FourierGrid& grid,
                          const std::string& config_hash) {
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = kind;
    j["version"] = kVersion;
    j["config_hash"] = config_hash;
    j["grid"] = grid_json(grid);
    j["domain_notice"] = kDomainNotice;
    return j;
}

/// Atomic JSON write (temp file + rename); no timestamps, so identical inputs
/// produce byte-identical files.
inline void write_json_atomic(const std::filesystem::path& path, const json& j) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        os << j.dump(2) << "\n";
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        os << text;
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace lpns
