#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "littoral/clutter.hpp"
#include "littoral/motion.hpp"
#include "littoral/rng.hpp"
#include "littoral/types.hpp"

namespace littoral {

/// Gaussian point-spread target at a given signal-to-interference ratio.
struct TargetInjection {
    double sir_db = 8.0;
    double psf_sigma_az = 2.0;
    double psf_sigma_rg = 1.0;
};

/// Mean target amplitude chi for a given SIR in dB over clutter mean mu.
inline double sir_to_amplitude(double sir_db, double mu) {
    return mu * std::pow(10.0, sir_db / 10.0);
}

/// Adds a Gaussian amplitude blob at (a, r). With fluctuate, the per-scan peak is
/// Rayleigh with mean chi; otherwise exactly chi. PSF truncated at 3 sigma; a
/// zero-width PSF puts all energy into the nearest cell.
inline void inject_target(RangeAzimuthMap& map, double a, double r, const TargetInjection& inj,
                          double mu, bool fluctuate, Rng& rng) {
    if (a < 0.0 || a > map.n_az() - 1 || r < 0.0 || r > map.n_rg() - 1)
        throw std::out_of_range("inject_target: position outside map");

    const double chi = sir_to_amplitude(inj.sir_db, mu);
    double peak = chi;
    if (fluctuate) {
        // Rayleigh with mean chi: sigma = chi * sqrt(2/pi)
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double u = 1.0 - u01(rng);
        peak = chi * std::sqrt(2.0 / M_PI) * std::sqrt(-2.0 * std::log(u));
    }

    const double sa = inj.psf_sigma_az;
    const double sr = inj.psf_sigma_rg;
    if (sa <= 0.0 && sr <= 0.0) {
        map.at(static_cast<int>(std::lround(a)), static_cast<int>(std::lround(r))) +=
            static_cast<float>(peak);
        return;
    }

    const int a_lo = std::max(0, static_cast<int>(std::floor(a - 3.0 * sa)));
    const int a_hi = std::min(map.n_az() - 1, static_cast<int>(std::ceil(a + 3.0 * sa)));
    const int r_lo = std::max(0, static_cast<int>(std::floor(r - 3.0 * sr)));
    const int r_hi = std::min(map.n_rg() - 1, static_cast<int>(std::ceil(r + 3.0 * sr)));
    for (int ia = a_lo; ia <= a_hi; ++ia) {
        double da = ia - a;
        double ea = sa > 0.0 ? std::exp(-0.5 * da * da / (sa * sa)) : (std::lround(a) == ia ? 1.0 : 0.0);
        for (int ir = r_lo; ir <= r_hi; ++ir) {
            double dr = ir - r;
            double er = sr > 0.0 ? std::exp(-0.5 * dr * dr / (sr * sr)) : (std::lround(r) == ir ? 1.0 : 0.0);
            map.at(ia, ir) += static_cast<float>(peak * ea * er);
        }
    }
}

struct ScenarioTarget {
    double start_a = 0.0;
    double start_r = 0.0;
    double vel_a = 0.0;
    double vel_r = 0.0;
    double sir_db = 8.0;
};

struct ScenarioConfig {
    int n_az = 128;
    int n_rg = 512;
    int n_scans = 50;
    ClutterModel clutter;
    std::vector<ScenarioTarget> targets;
    double psf_sigma_az = 2.0;
    double psf_sigma_rg = 1.0;
    bool fluctuate = true;
    bool truth_process_noise = false;  // truth follows noise-free constant velocity by default
    double process_noise_q = 0.1;      // used only when truth_process_noise is set
    std::uint64_t seed = 1;

    /// The three-target setup used throughout the experiments.
    static ScenarioConfig default_three_targets(double sir_db = 8.0) {
        ScenarioConfig cfg;
        cfg.targets = {
            {20.0, 110.0, 0.3, 1.5, sir_db},
            {40.0, 400.0, 0.5, -2.0, sir_db},
            {70.0, 240.0, 0.4, 1.0, sir_db},
        };
        return cfg;
    }
};

struct Scenario {
    std::vector<RangeAzimuthMap> maps;               // one per scan
    std::vector<std::vector<TargetState>> truth;     // per scan, per target
    std::vector<double> target_sir_db;               // per target
};

/// Generates truth trajectories and the clutter+target map sequence.
/// A target leaving the map is an error, not a silent clip.
inline Scenario generate_scenario(const ScenarioConfig& cfg, Rng& rng) {
    cfg.clutter.validate();
    if (cfg.n_scans <= 0) throw std::invalid_argument("generate_scenario: n_scans must be positive");

    MotionModel mm = make_motion_model(1.0, cfg.truth_process_noise ? cfg.process_noise_q : 0.0);

    Scenario scn;
    scn.truth.assign(cfg.n_scans, {});
    scn.maps.reserve(cfg.n_scans);
    for (const auto& t : cfg.targets) scn.target_sir_db.push_back(t.sir_db);

    std::vector<TargetState> states;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const auto& t = cfg.targets[i];
        if (t.start_a < 0 || t.start_a > cfg.n_az - 1 || t.start_r < 0 || t.start_r > cfg.n_rg - 1)
            throw std::invalid_argument("generate_scenario: target " + std::to_string(i) +
                                        " starts outside the map");
        states.emplace_back(t.start_a, t.vel_a, t.start_r, t.vel_r);
    }

    for (int k = 0; k < cfg.n_scans; ++k) {
        if (k > 0)
            for (auto& s : states) s = propagate_state(s, mm, cfg.truth_process_noise, rng);
        for (std::size_t i = 0; i < states.size(); ++i) {
            const auto& s = states[i];
            if (s.a() < 0 || s.a() > cfg.n_az - 1 || s.r() < 0 || s.r() > cfg.n_rg - 1)
                throw std::runtime_error("generate_scenario: target " + std::to_string(i) +
                                         " left the map at scan " + std::to_string(k));
        }
        scn.truth[k] = states;

        RangeAzimuthMap map = sample_clutter(cfg.n_az, cfg.n_rg, cfg.clutter, rng);
        for (std::size_t i = 0; i < states.size(); ++i) {
            TargetInjection inj{cfg.targets[i].sir_db, cfg.psf_sigma_az, cfg.psf_sigma_rg};
            inject_target(map, states[i].a(), states[i].r(), inj, cfg.clutter.mu, cfg.fluctuate, rng);
        }
        scn.maps.push_back(std::move(map));
    }
    return scn;
}

}  // namespace littoral
