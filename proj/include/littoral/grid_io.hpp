#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "littoral/types.hpp"

namespace littoral {

inline constexpr std::array<char, 4> kMapMagic = {'R', 'A', 'M', 'P'};
inline constexpr std::array<char, 4> kScoreMagic = {'S', 'M', 'A', 'P'};

namespace detail {

inline void write_u32le(std::ostream& os, std::uint32_t v) {
    std::array<unsigned char, 4> b = {static_cast<unsigned char>(v & 0xff),
                                      static_cast<unsigned char>((v >> 8) & 0xff),
                                      static_cast<unsigned char>((v >> 16) & 0xff),
                                      static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}

inline std::uint32_t read_u32le(std::istream& is) {
    std::array<unsigned char, 4> b{};
    is.read(reinterpret_cast<char*>(b.data()), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void write_grid(const std::filesystem::path& path, const Grid2D<float>& grid,
                       std::uint32_t scan_index, const std::array<char, 4>& magic) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os.write(magic.data(), 4);
    write_u32le(os, static_cast<std::uint32_t>(grid.n_az()));
    write_u32le(os, static_cast<std::uint32_t>(grid.n_rg()));
    write_u32le(os, scan_index);
    static_assert(sizeof(float) == 4);
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(grid.data().data()),
                 static_cast<std::streamsize>(grid.size() * 4));
    } else {
        for (float f : grid.data()) {
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            write_u32le(os, u);
        }
    }
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

inline Grid2D<float> read_grid(const std::filesystem::path& path, std::uint32_t& scan_index,
                               const std::array<char, 4>& magic) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path.string());
    std::array<char, 4> got{};
    is.read(got.data(), 4);
    if (!is || got != magic)
        throw std::runtime_error("bad magic in " + path.string());
    std::uint32_t n_az = read_u32le(is);
    std::uint32_t n_rg = read_u32le(is);
    scan_index = read_u32le(is);
    if (!is || n_az == 0 || n_rg == 0)
        throw std::runtime_error("bad header in " + path.string());
    Grid2D<float> grid(static_cast<int>(n_az), static_cast<int>(n_rg));
    if constexpr (std::endian::native == std::endian::little) {
        is.read(reinterpret_cast<char*>(grid.data().data()),
                static_cast<std::streamsize>(grid.size() * 4));
    } else {
        for (float& f : grid.data()) {
            std::uint32_t u = read_u32le(is);
            std::memcpy(&f, &u, 4);
        }
    }
    if (!is) throw std::runtime_error("truncated grid file: " + path.string());
    return grid;
}

}  // namespace detail

inline void write_map(const std::filesystem::path& path, const RangeAzimuthMap& map,
                      std::uint32_t scan_index) {
    detail::write_grid(path, map.cells, scan_index, kMapMagic);
}

inline RangeAzimuthMap read_map(const std::filesystem::path& path, std::uint32_t* scan_index = nullptr) {
    std::uint32_t idx = 0;
    RangeAzimuthMap m;
    m.cells = detail::read_grid(path, idx, kMapMagic);
    if (scan_index) *scan_index = idx;
    return m;
}

inline void write_score_map(const std::filesystem::path& path, const ScoreMap& sm,
                            std::uint32_t scan_index) {
    detail::write_grid(path, sm.scores, scan_index, kScoreMagic);
}

inline ScoreMap read_score_map(const std::filesystem::path& path, std::uint32_t* scan_index = nullptr) {
    std::uint32_t idx = 0;
    ScoreMap sm;
    sm.scores = detail::read_grid(path, idx, kScoreMagic);
    if (scan_index) *scan_index = idx;
    for (float v : sm.scores.data())
        if (v < 0.0f || v > 1.0f)
            throw std::runtime_error("score map values outside [0,1]: " + path.string());
    return sm;
}

inline std::string scan_file_name(const std::string& stem, int scan) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%05d.bin", scan);
    return stem + buf;
}

/// Ground-truth sidecar: per-scan true states with per-target SIR.
inline void write_truth_json(const std::filesystem::path& path,
                             const std::vector<std::vector<TargetState>>& truth,
                             const std::vector<double>& sir_db) {
    nlohmann::json j;
    j["n_scans"] = truth.size();
    j["sir_db"] = sir_db;
    nlohmann::json scans = nlohmann::json::array();
    for (const auto& per_scan : truth) {
        nlohmann::json states = nlohmann::json::array();
        for (const auto& s : per_scan)
            states.push_back({{"a", s.a()}, {"a_dot", s.a_dot()}, {"r", s.r()}, {"r_dot", s.r_dot()}});
        scans.push_back(states);
    }
    j["scans"] = scans;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os << j.dump(2) << "\n";
}

inline void read_truth_json(const std::filesystem::path& path,
                            std::vector<std::vector<TargetState>>& truth,
                            std::vector<double>& sir_db) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path.string());
    nlohmann::json j = nlohmann::json::parse(is);
    sir_db = j.at("sir_db").get<std::vector<double>>();
    truth.clear();
    for (const auto& scan : j.at("scans")) {
        std::vector<TargetState> states;
        for (const auto& s : scan)
            states.emplace_back(s.at("a").get<double>(), s.at("a_dot").get<double>(),
                                s.at("r").get<double>(), s.at("r_dot").get<double>());
        truth.push_back(std::move(states));
    }
}

}  // namespace littoral
