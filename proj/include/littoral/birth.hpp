#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "littoral/lmb.hpp"
#include "littoral/types.hpp"

namespace littoral {

enum class BirthMode { Ideal, MeasurementDriven };

struct IdealBirthComponent {
    double r_B = 0.03;
    Vec4 mean = Vec4::Zero();
};

struct BirthConfig {
    BirthMode mode = BirthMode::Ideal;
    std::vector<IdealBirthComponent> ideal_components;
    double r_B_max = 0.04;
    double t_d = 10.0;  // cells; measurements closer than this to a confirmed track spawn nothing
    Mat4 P_B = 100.0 * Mat4::Identity();
    bool normalize_scores_per_scan = false;

    BirthConfig() {
        ideal_components = {
            {0.03, Vec4(20.0, 0.0, 110.0, 0.0)},
            {0.03, Vec4(40.0, 0.0, 400.0, 0.0)},
            {0.03, Vec4(70.0, 0.0, 240.0, 0.0)},
        };
    }

    void validate() const {
        if (!(r_B_max >= 0.0 && r_B_max <= 1.0))
            throw std::invalid_argument("BirthConfig: r_B_max must lie in [0, 1]");
        if (!(t_d > 0.0)) throw std::invalid_argument("BirthConfig: t_d must be positive");
        for (const auto& c : ideal_components)
            if (!(c.r_B >= 0.0 && c.r_B <= 1.0))
                throw std::invalid_argument("BirthConfig: ideal r_B must lie in [0, 1]");
    }
};

/// Fixed a-priori multi-Bernoulli birth; labels are fresh per scan.
inline LmbDensity ideal_birth(const BirthConfig& cfg, int scan) {
    cfg.validate();
    LmbDensity out;
    int idx = 0;
    for (const auto& c : cfg.ideal_components) {
        BernoulliTrack t;
        t.label = {scan, idx++};
        t.r = c.r_B;
        t.mixture = {{1.0, c.mean, cfg.P_B}};
        out.tracks.push_back(std::move(t));
    }
    return out;
}

/// Birth components from previous-scan measurements that lie farther than t_d
/// from every confirmed track position. Existence scales with the detection
/// confidence, r_B = r_B_max * score; mean is the measurement with zero
/// velocity; weight and covariance are fixed at initialization.
inline LmbDensity measurement_driven_birth(const std::vector<Measurement>& prev_measurements,
                                           const std::vector<Vec2>& confirmed_positions,
                                           const BirthConfig& cfg, int scan) {
    cfg.validate();
    double score_norm = 1.0;
    if (cfg.normalize_scores_per_scan) {
        double mx = 0.0;
        for (const auto& z : prev_measurements) mx = std::max(mx, z.score);
        if (mx > 0.0) score_norm = mx;
    }

    LmbDensity out;
    int idx = 0;
    for (const auto& z : prev_measurements) {
        bool near_confirmed = false;
        for (const auto& x : confirmed_positions) {
            if ((z.position() - x).norm() <= cfg.t_d) {
                near_confirmed = true;
                break;
            }
        }
        if (near_confirmed) continue;

        double score = std::clamp(z.score / score_norm, 0.0, 1.0);
        BernoulliTrack t;
        t.label = {scan, idx++};
        t.r = std::clamp(cfg.r_B_max * score, 0.0, cfg.r_B_max);
        t.mixture = {{1.0, Vec4(z.a, 0.0, z.r, 0.0), cfg.P_B}};
        out.tracks.push_back(std::move(t));
    }
    return out;
}

}  // namespace littoral
