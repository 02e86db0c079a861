#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "littoral/types.hpp"

namespace littoral {

/// Cell-averaging CFAR window, counts are per side of the cell under test.
struct CfarConfig {
    int n_train_rg = 7;
    int n_train_az = 7;
    int n_guard_rg = 3;
    int n_guard_az = 6;
    double p_fa = 1e-3;

    void validate() const {
        if (n_train_rg < 0 || n_train_az < 0 || n_guard_rg < 0 || n_guard_az < 0)
            throw std::invalid_argument("CfarConfig: cell counts must be >= 0");
        if (n_train_rg + n_train_az == 0)
            throw std::invalid_argument("CfarConfig: training window is empty");
        if (!(p_fa > 0.0 && p_fa < 1.0))
            throw std::invalid_argument("CfarConfig: p_fa must lie in (0, 1)");
    }
};

/// Threshold multiplier that yields p_fa under exponentially distributed power
/// with an N-cell training average.
inline double cfar_alpha(int n_train, double p_fa) {
    return n_train * (std::pow(p_fa, -1.0 / n_train) - 1.0);
}

/// Cell-averaging CFAR on squared amplitudes. The training ring is the rectangular
/// window minus the guard rectangle (which always contains the cell under test);
/// at the edges the window is truncated and alpha recomputed for the reduced count.
/// Detections carry confidence 1.0.
inline std::vector<DetectionCell> ca_cfar(const RangeAzimuthMap& map, const CfarConfig& cfg) {
    cfg.validate();
    const int na = map.n_az();
    const int nr = map.n_rg();
    const int ha = cfg.n_guard_az + cfg.n_train_az;  // half window, azimuth
    const int hr = cfg.n_guard_rg + cfg.n_train_rg;
    if (2 * ha + 1 > na || 2 * hr + 1 > nr)
        throw std::invalid_argument("ca_cfar: window larger than map");

    // integral image of power, ii(a+1, r+1) = sum over [0..a] x [0..r]
    std::vector<double> ii(static_cast<std::size_t>(na + 1) * (nr + 1), 0.0);
    auto iat = [&](int a, int r) -> double& { return ii[static_cast<std::size_t>(a) * (nr + 1) + r]; };
    for (int a = 0; a < na; ++a) {
        double row = 0.0;
        for (int r = 0; r < nr; ++r) {
            double p = static_cast<double>(map.at(a, r)) * map.at(a, r);
            row += p;
            iat(a + 1, r + 1) = iat(a, r + 1) + row;
        }
    }
    auto rect_sum = [&](int a0, int a1, int r0, int r1) {  // inclusive bounds, clipped
        a0 = std::max(a0, 0); r0 = std::max(r0, 0);
        a1 = std::min(a1, na - 1); r1 = std::min(r1, nr - 1);
        return iat(a1 + 1, r1 + 1) - iat(a0, r1 + 1) - iat(a1 + 1, r0) + iat(a0, r0);
    };
    auto rect_count = [&](int a0, int a1, int r0, int r1) {
        a0 = std::max(a0, 0); r0 = std::max(r0, 0);
        a1 = std::min(a1, na - 1); r1 = std::min(r1, nr - 1);
        return (a1 - a0 + 1) * (r1 - r0 + 1);
    };

    std::vector<DetectionCell> out;
    for (int a = 0; a < na; ++a) {
        for (int r = 0; r < nr; ++r) {
            double outer = rect_sum(a - ha, a + ha, r - hr, r + hr);
            double guard = rect_sum(a - cfg.n_guard_az, a + cfg.n_guard_az,
                                    r - cfg.n_guard_rg, r + cfg.n_guard_rg);
            int n_train = rect_count(a - ha, a + ha, r - hr, r + hr) -
                          rect_count(a - cfg.n_guard_az, a + cfg.n_guard_az,
                                     r - cfg.n_guard_rg, r + cfg.n_guard_rg);
            double train_sum = outer - guard;
            double cell_power = static_cast<double>(map.at(a, r)) * map.at(a, r);
            double alpha = cfar_alpha(n_train, cfg.p_fa);
            if (cell_power * n_train > alpha * train_sum)
                out.push_back({a, r, 1.0});
        }
    }
    return out;
}

/// Cells with score strictly above t, carrying their scores.
inline std::vector<DetectionCell> threshold_score_map(const ScoreMap& sm, double t) {
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("threshold_score_map: threshold must lie in [0, 1]");
    std::vector<DetectionCell> out;
    for (int a = 0; a < sm.n_az(); ++a)
        for (int r = 0; r < sm.n_rg(); ++r)
            if (sm.at(a, r) > t) out.push_back({a, r, static_cast<double>(sm.at(a, r))});
    return out;
}

/// Nearest-neighbour expansion to larger dimensions; integer factors replicate blocks.
inline ScoreMap upsample_nearest(const ScoreMap& sm, int n_az, int n_rg) {
    if (n_az < sm.n_az() || n_rg < sm.n_rg())
        throw std::invalid_argument("upsample_nearest: target dims smaller than source");
    ScoreMap out(n_az, n_rg);
    for (int a = 0; a < n_az; ++a) {
        int sa = std::min(sm.n_az() - 1, static_cast<int>((a + 0.5) * sm.n_az() / n_az));
        for (int r = 0; r < n_rg; ++r) {
            int sr = std::min(sm.n_rg() - 1, static_cast<int>((r + 0.5) * sm.n_rg() / n_rg));
            out.at(a, r) = sm.at(sa, sr);
        }
    }
    return out;
}

}  // namespace littoral
