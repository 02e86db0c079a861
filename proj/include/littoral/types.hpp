#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace littoral {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat24 = Eigen::Matrix<double, 2, 4>;

/// Dense 2-D grid indexed by (azimuth cell, range cell), azimuth-major storage.
template <typename T>
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(int n_az, int n_rg, T fill = T{}) : n_az_(n_az), n_rg_(n_rg) {
        if (n_az <= 0 || n_rg <= 0)
            throw std::invalid_argument("Grid2D: dimensions must be positive");
        data_.assign(static_cast<std::size_t>(n_az) * n_rg, fill);
    }

    int n_az() const { return n_az_; }
    int n_rg() const { return n_rg_; }
    std::size_t size() const { return data_.size(); }

    T& at(int a, int r) { return data_[static_cast<std::size_t>(a) * n_rg_ + r]; }
    const T& at(int a, int r) const { return data_[static_cast<std::size_t>(a) * n_rg_ + r]; }

    bool in_bounds(int a, int r) const { return a >= 0 && a < n_az_ && r >= 0 && r < n_rg_; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

private:
    int n_az_ = 0;
    int n_rg_ = 0;
    std::vector<T> data_;
};

/// One radar scan: grid of non-negative amplitude moduli.
struct RangeAzimuthMap {
    Grid2D<float> cells;

    RangeAzimuthMap() = default;
    RangeAzimuthMap(int n_az, int n_rg, float fill = 0.0f) : cells(n_az, n_rg, fill) {}

    int n_az() const { return cells.n_az(); }
    int n_rg() const { return cells.n_rg(); }
    float& at(int a, int r) { return cells.at(a, r); }
    float at(int a, int r) const { return cells.at(a, r); }
};

/// Per-cell detection confidences in [0,1].
struct ScoreMap {
    Grid2D<float> scores;

    ScoreMap() = default;
    ScoreMap(int n_az, int n_rg, float fill = 0.0f) : scores(n_az, n_rg, fill) {}

    int n_az() const { return scores.n_az(); }
    int n_rg() const { return scores.n_rg(); }
    float& at(int a, int r) { return scores.at(a, r); }
    float at(int a, int r) const { return scores.at(a, r); }
};

/// A single cell that crossed the detection threshold.
struct DetectionCell {
    int a = 0;
    int r = 0;
    double score = 1.0;

    friend bool operator==(const DetectionCell&, const DetectionCell&) = default;
};

/// Equivalent point measurement: cluster centre plus confidence.
struct Measurement {
    double a = 0.0;
    double r = 0.0;
    double score = 1.0;

    Vec2 position() const { return {a, r}; }
};

/// Kinematic state, interleaved [a, a_dot, r, r_dot] in cell coordinates.
struct TargetState {
    Vec4 x = Vec4::Zero();

    TargetState() = default;
    explicit TargetState(const Vec4& v) : x(v) {}
    TargetState(double a, double a_dot, double r, double r_dot) : x(a, a_dot, r, r_dot) {}

    double a() const { return x[0]; }
    double a_dot() const { return x[1]; }
    double r() const { return x[2]; }
    double r_dot() const { return x[3]; }

    Vec2 position() const { return {x[0], x[2]}; }
};

/// Track label: unique (birth scan, index within scan) pair.
struct Label {
    int birth_scan = 0;
    int index = 0;

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

inline std::string to_string(const Label& l) {
    return std::to_string(l.birth_scan) + ":" + std::to_string(l.index);
}

}  // namespace littoral
