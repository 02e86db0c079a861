#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "littoral/rng.hpp"
#include "littoral/types.hpp"

namespace littoral {

/// Statistical stand-in for a learned detector's per-SIR behaviour on one target.
struct SurrogateProfile {
    double p_detect = 0.98;
    double pos_sigma = 0.5;     // centre perturbation (cells)
    double peak_alpha = 8.0;    // Beta parameters of the peak score
    double peak_beta = 2.0;
};

struct SurrogateConfig {
    std::map<int, SurrogateProfile> per_sir;  // keyed by rounded SIR (dB)
    double blob_sigma_az = 1.2;
    double blob_sigma_rg = 1.2;
    double lambda_false = 30.0;       // Poisson mean of false blobs per map
    double false_peak_alpha = 1.3;    // low-score Beta for false blobs
    double false_peak_beta = 5.0;
    double false_blob_sigma = 1.0;

    SurrogateConfig() {
        per_sir[8] = {0.98, 0.45, 8.0, 2.0};
        per_sir[5] = {0.93, 0.75, 6.0, 3.0};
        per_sir[3] = {0.85, 1.10, 5.0, 4.0};
    }

    const SurrogateProfile& profile_for(double sir_db) const {
        static const SurrogateProfile fallback{};
        if (per_sir.empty()) return fallback;
        auto best = per_sir.begin();
        double best_d = std::abs(best->first - sir_db);
        for (auto it = per_sir.begin(); it != per_sir.end(); ++it) {
            double d = std::abs(it->first - sir_db);
            if (d < best_d) { best = it; best_d = d; }
        }
        return best->second;
    }
};

struct ScoreMapSample {
    ScoreMap map;
    int n_true_emitted = 0;
    int n_false_blobs = 0;
};

inline double sample_beta(double alpha, double beta, Rng& rng) {
    std::gamma_distribution<double> ga(alpha, 1.0), gb(beta, 1.0);
    double x = ga(rng), y = gb(rng);
    double s = x + y;
    return s > 0.0 ? x / s : 0.5;
}

inline void add_score_blob(ScoreMap& sm, double a, double r, double peak,
                           double sig_a, double sig_r) {
    const int a_lo = std::max(0, static_cast<int>(std::floor(a - 3.0 * sig_a)));
    const int a_hi = std::min(sm.n_az() - 1, static_cast<int>(std::ceil(a + 3.0 * sig_a)));
    const int r_lo = std::max(0, static_cast<int>(std::floor(r - 3.0 * sig_r)));
    const int r_hi = std::min(sm.n_rg() - 1, static_cast<int>(std::ceil(r + 3.0 * sig_r)));
    for (int ia = a_lo; ia <= a_hi; ++ia) {
        double da = ia - a;
        for (int ir = r_lo; ir <= r_hi; ++ir) {
            double dr = ir - r;
            double v = peak * std::exp(-0.5 * (da * da / (sig_a * sig_a) +
                                               dr * dr / (sig_r * sig_r)));
            float& cell = sm.at(ia, ir);
            cell = static_cast<float>(std::clamp(static_cast<double>(cell) + v, 0.0, 1.0));
        }
    }
}

/// Builds a score map from the true states: per target a detection blob with
/// probability p_detect, plus Poisson(lambda_false) low-score false blobs at
/// uniform positions. Scores are clipped to [0,1].
inline ScoreMapSample synthesize_score_map(const std::vector<TargetState>& truth,
                                           const std::vector<double>& sir_db,
                                           int n_az, int n_rg,
                                           const SurrogateConfig& cfg, Rng& rng) {
    ScoreMapSample out;
    out.map = ScoreMap(n_az, n_rg);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> n01(0.0, 1.0);

    for (std::size_t i = 0; i < truth.size(); ++i) {
        const SurrogateProfile& prof =
            cfg.profile_for(i < sir_db.size() ? sir_db[i] : 8.0);
        if (u01(rng) >= prof.p_detect) continue;
        double a = truth[i].a() + prof.pos_sigma * n01(rng);
        double r = truth[i].r() + prof.pos_sigma * n01(rng);
        a = std::clamp(a, 0.0, static_cast<double>(n_az - 1));
        r = std::clamp(r, 0.0, static_cast<double>(n_rg - 1));
        double peak = sample_beta(prof.peak_alpha, prof.peak_beta, rng);
        add_score_blob(out.map, a, r, peak, cfg.blob_sigma_az, cfg.blob_sigma_rg);
        ++out.n_true_emitted;
    }

    std::poisson_distribution<int> pois(cfg.lambda_false);
    int n_false = cfg.lambda_false > 0.0 ? pois(rng) : 0;
    for (int f = 0; f < n_false; ++f) {
        double a = u01(rng) * (n_az - 1);
        double r = u01(rng) * (n_rg - 1);
        double peak = sample_beta(cfg.false_peak_alpha, cfg.false_peak_beta, rng);
        add_score_blob(out.map, a, r, peak, cfg.false_blob_sigma, cfg.false_blob_sigma);
    }
    out.n_false_blobs = n_false;
    return out;
}

}  // namespace littoral
