#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "littoral/types.hpp"

namespace littoral {

struct DetectionParseError : std::runtime_error {
    int line;
    DetectionParseError(int line_, const std::string& what_)
        : std::runtime_error("detections line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

/// Scan-indexed detections from a `scan,a,r,score` CSV. Header row required.
/// Malformed rows and out-of-range scores are reported with their line number.
inline std::map<int, std::vector<DetectionCell>> load_detections(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path.string());

    std::map<int, std::vector<DetectionCell>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "scan,a,r,score")
                throw DetectionParseError(1, "expected header 'scan,a,r,score', got '" + line + "'");
            continue;
        }
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 4)
            throw DetectionParseError(line_no, "expected 4 fields, got " +
                                                   std::to_string(fields.size()));
        try {
            std::size_t pos = 0;
            int scan = std::stoi(fields[0], &pos);
            if (pos != fields[0].size()) throw std::invalid_argument("scan");
            int a = std::stoi(fields[1], &pos);
            if (pos != fields[1].size()) throw std::invalid_argument("a");
            int r = std::stoi(fields[2], &pos);
            if (pos != fields[2].size()) throw std::invalid_argument("r");
            double score = std::stod(fields[3], &pos);
            if (pos != fields[3].size()) throw std::invalid_argument("score");
            if (scan < 0) throw DetectionParseError(line_no, "negative scan index");
            if (a < 0 || r < 0) throw DetectionParseError(line_no, "negative cell index");
            if (score < 0.0 || score > 1.0)
                throw DetectionParseError(line_no, "score outside [0,1]");
            out[scan].push_back({a, r, score});
        } catch (const DetectionParseError&) {
            throw;
        } catch (const std::exception&) {
            throw DetectionParseError(line_no, "malformed numeric field in '" + line + "'");
        }
    }
    return out;
}

inline void save_detections(std::ostream& os,
                            const std::vector<std::vector<DetectionCell>>& per_scan) {
    os << "scan,a,r,score\n";
    for (std::size_t k = 0; k < per_scan.size(); ++k)
        for (const auto& d : per_scan[k])
            os << k << "," << d.a << "," << d.r << "," << d.score << "\n";
}

}  // namespace littoral
