#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "littoral/assignment.hpp"
#include "littoral/gaussian.hpp"
#include "littoral/motion.hpp"
#include "littoral/types.hpp"

namespace littoral {

/// Labelled Bernoulli component: existence probability plus a Gaussian-mixture
/// spatial density whose weights sum to one.
struct BernoulliTrack {
    Label label;
    double r = 0.0;
    GaussianMixture mixture;
};

struct LmbDensity {
    std::vector<BernoulliTrack> tracks;
};

struct FilterParams {
    double p_S = 0.99;
    double p_D = 0.98;
    double p_G = 0.999;            // gate probability; >= 1 disables gating
    double lambda_c = 30.0;        // mean clutter points per scan
    double clutter_density = 1.0;  // c(z), uniform over the map: 1 / (n_az * n_rg)
    double sigma_a = std::sqrt(2.5);
    double sigma_r = std::sqrt(2.5);
    double existence_threshold = 0.5;

    int kbest_k = 100;             // ranked assignments kept beyond the exhaustive regime
    int exhaustive_max_tracks = 5;
    int exhaustive_max_meas = 8;

    Mat2 measurement_covariance() const {
        Mat2 R = Mat2::Zero();
        R(0, 0) = sigma_a * sigma_a;
        R(1, 1) = sigma_r * sigma_r;
        return R;
    }

    double clutter_intensity() const { return lambda_c * clutter_density; }

    void validate() const {
        auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!in01(p_S) || !in01(p_D) || !in01(p_G) || !in01(existence_threshold))
            throw std::invalid_argument("FilterParams: probabilities must lie in [0, 1]");
        if (!(clutter_intensity() > 0.0))
            throw std::invalid_argument("FilterParams: clutter intensity must be positive");
        if (!(sigma_a > 0.0 && sigma_r > 0.0))
            throw std::invalid_argument("FilterParams: measurement noise must be positive");
        if (kbest_k < 1) throw std::invalid_argument("FilterParams: kbest_k must be >= 1");
    }
};

/// Gaussian-mixture management thresholds.
struct GmConfig {
    double w_min = 1e-5;
    double merge_thresh = 4.0;  // squared Mahalanobis distance
    int n_max = 100;
    double r_min = 1e-3;        // tracks below this existence are dropped
};

/// chi-square quantile for 2 dof.
inline double chi2_gate_threshold(double p_G) {
    if (p_G >= 1.0) return std::numeric_limits<double>::infinity();
    return -2.0 * std::log(1.0 - p_G);
}

/// Survival prediction plus birth append. Birth labels must not collide.
inline LmbDensity predict(const LmbDensity& prior, const LmbDensity& birth,
                          const FilterParams& p, const MotionModel& mm) {
    std::set<Label> seen;
    for (const auto& t : prior.tracks) seen.insert(t.label);
    for (const auto& t : birth.tracks)
        if (!seen.insert(t.label).second)
            throw std::invalid_argument("predict: birth label collides with existing track " +
                                        to_string(t.label));

    LmbDensity out;
    out.tracks.reserve(prior.tracks.size() + birth.tracks.size());
    for (const auto& t : prior.tracks) {
        BernoulliTrack nt;
        nt.label = t.label;
        nt.r = p.p_S * t.r;
        nt.mixture.reserve(t.mixture.size());
        for (const auto& c : t.mixture) {
            GaussianComponent nc;
            nc.w = c.w;
            nc.m = mm.F * c.m;
            nc.P = mm.F * c.P * mm.F.transpose() + mm.Q;
            nc.P = 0.5 * (nc.P + nc.P.transpose().eval());
            nt.mixture.push_back(nc);
        }
        out.tracks.push_back(std::move(nt));
    }
    for (const auto& t : birth.tracks) out.tracks.push_back(t);
    return out;
}

inline bool measurement_gated(const BernoulliTrack& track, const Vec2& z, const Mat24& H,
                              const Mat2& R, double gate2) {
    if (!std::isfinite(gate2)) return true;
    for (const auto& c : track.mixture)
        if (innovation_mahalanobis2(c.m, c.P, z, H, R) <= gate2) return true;
    return false;
}

/// A set of tracks updated jointly against the measurements they gate. A group
/// with no tracks holds the residual measurements gated by nothing.
struct Group {
    std::vector<int> track_idx;
    std::vector<int> meas_idx;
};

/// Transitive closure of the track-measurement gate graph. Track order inside
/// groups follows the input density; groups are ordered by their first track.
inline std::vector<Group> gate_and_group(const LmbDensity& pred,
                                         const std::vector<Measurement>& Z,
                                         const FilterParams& p) {
    const int n = static_cast<int>(pred.tracks.size());
    const int m = static_cast<int>(Z.size());
    const Mat24 H = observation_matrix();
    const Mat2 R = p.measurement_covariance();
    const double gate2 = chi2_gate_threshold(p.p_G);

    std::vector<std::vector<int>> gated(n);
    std::vector<char> meas_used(m, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (measurement_gated(pred.tracks[i], Z[j].position(), H, R, gate2)) {
                gated[i].push_back(j);
                meas_used[j] = 1;
            }
        }
    }

    // union-find over tracks; measurements glue tracks together
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };
    std::vector<int> meas_owner(m, -1);
    for (int i = 0; i < n; ++i) {
        for (int j : gated[i]) {
            if (meas_owner[j] < 0) {
                meas_owner[j] = i;
            } else {
                int a = find(meas_owner[j]), b = find(i);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }

    std::vector<Group> groups;
    std::vector<int> root_to_group(n, -1);
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (root_to_group[root] < 0) {
            root_to_group[root] = static_cast<int>(groups.size());
            groups.push_back({});
        }
        groups[root_to_group[root]].track_idx.push_back(i);
    }
    for (int i = 0; i < n; ++i) {
        int g = root_to_group[find(i)];
        for (int j : gated[i]) {
            auto& mi = groups[g].meas_idx;
            if (std::find(mi.begin(), mi.end(), j) == mi.end()) mi.push_back(j);
        }
    }
    for (auto& g : groups) std::sort(g.meas_idx.begin(), g.meas_idx.end());

    std::vector<int> residual;
    for (int j = 0; j < m; ++j)
        if (!meas_used[j]) residual.push_back(j);
    if (!residual.empty()) groups.push_back({{}, std::move(residual)});
    return groups;
}

enum class HypothesisMode { Auto, Exhaustive, KBest };

struct GroupUpdateDiag {
    double weight_sum = 0.0;  // normalized hypothesis weights, should be 1
    std::size_t n_hypotheses = 0;
};

namespace detail {

struct HypothesisRecord {
    double log_w;
    std::vector<int> assoc;  // per track: -1 absent, 0 missed, j >= 1 measurement j-1
};

struct TrackLikelihood {
    std::vector<double> log_eta;                // per measurement, -inf when ungated
    std::vector<GaussianMixture> posterior;     // normalized mixture per measurement
    double log_r;
    double log_1mr;
    double log_qmiss;
};

}  // namespace detail

/// delta-GLMB update of one group, marginalized back to Bernoulli tracks.
/// Hypothesis enumeration is exhaustive within the configured bounds and falls
/// back to ranked assignment beyond them. Weight arithmetic stays in the log
/// domain so long miss streaks cannot underflow to silent zeros.
inline std::vector<BernoulliTrack> update_group(const std::vector<BernoulliTrack>& tracks,
                                                const std::vector<Measurement>& Z,
                                                const FilterParams& p,
                                                HypothesisMode mode = HypothesisMode::Auto,
                                                GroupUpdateDiag* diag = nullptr) {
    const int n = static_cast<int>(tracks.size());
    const int m = static_cast<int>(Z.size());
    if (n == 0) return {};
    p.validate();

    const Mat24 H = observation_matrix();
    const Mat2 R = p.measurement_covariance();
    const double gate2 = chi2_gate_threshold(p.p_G);
    const double log_kappa = std::log(p.clutter_intensity());
    const double q_miss = 1.0 - p.p_D * p.p_G;
    const double log_p_d = p.p_D > 0.0 ? std::log(p.p_D) : -std::numeric_limits<double>::infinity();
    const double neg_inf = -std::numeric_limits<double>::infinity();

    std::vector<detail::TrackLikelihood> lik(n);
    for (int i = 0; i < n; ++i) {
        const auto& t = tracks[i];
        auto& L = lik[i];
        L.log_r = t.r > 0.0 ? std::log(t.r) : neg_inf;
        L.log_1mr = t.r < 1.0 ? std::log1p(-t.r) : neg_inf;
        L.log_qmiss = q_miss > 0.0 ? std::log(q_miss) : neg_inf;
        L.log_eta.assign(m, neg_inf);
        L.posterior.assign(m, {});
        for (int j = 0; j < m; ++j) {
            if (!measurement_gated(t, Z[j].position(), H, R, gate2)) continue;
            std::vector<double> comp_log(t.mixture.size());
            GaussianMixture post(t.mixture.size());
            for (std::size_t c = 0; c < t.mixture.size(); ++c) {
                KalmanUpdate ku = kalman_update(t.mixture[c].m, t.mixture[c].P,
                                                Z[j].position(), H, R);
                comp_log[c] = std::log(std::max(t.mixture[c].w, 1e-300)) + ku.log_lik;
                post[c] = {0.0, ku.m, ku.P};
            }
            double lse = log_sum_exp(comp_log);
            if (!std::isfinite(lse)) continue;
            for (std::size_t c = 0; c < post.size(); ++c)
                post[c].w = std::exp(comp_log[c] - lse);
            L.log_eta[j] = log_p_d + lse - log_kappa;
            L.posterior[j] = std::move(post);
        }
    }

    // hypothesis generation
    std::vector<detail::HypothesisRecord> hyps;
    bool exhaustive = mode == HypothesisMode::Exhaustive ||
                      (mode == HypothesisMode::Auto && n <= p.exhaustive_max_tracks &&
                       m <= p.exhaustive_max_meas);
    if (exhaustive) {
        std::vector<int> assoc(n, -1);
        std::vector<char> used(m, 0);
        auto recurse = [&](auto&& self, int i, double log_w) -> void {
            if (i == n) {
                if (std::isfinite(log_w)) hyps.push_back({log_w, assoc});
                return;
            }
            const auto& L = lik[i];
            assoc[i] = -1;
            if (std::isfinite(L.log_1mr)) self(self, i + 1, log_w + L.log_1mr);
            if (std::isfinite(L.log_r)) {
                assoc[i] = 0;
                if (std::isfinite(L.log_qmiss))
                    self(self, i + 1, log_w + L.log_r + L.log_qmiss);
                for (int j = 0; j < m; ++j) {
                    if (used[j] || !std::isfinite(L.log_eta[j])) continue;
                    used[j] = 1;
                    assoc[i] = j + 1;
                    self(self, i + 1, log_w + L.log_r + L.log_eta[j]);
                    used[j] = 0;
                }
            }
            assoc[i] = -1;
        };
        recurse(recurse, 0, 0.0);
    } else {
        // columns: m shared measurements, then per-track miss, then per-track absence
        CostMatrix cm(n, m + 2 * n);
        for (auto& v : cm.c) v = kUnassignable;
        for (int i = 0; i < n; ++i) {
            const auto& L = lik[i];
            for (int j = 0; j < m; ++j)
                if (std::isfinite(L.log_eta[j]) && std::isfinite(L.log_r))
                    cm.at(i, j) = -(L.log_r + L.log_eta[j]);
            if (std::isfinite(L.log_r) && std::isfinite(L.log_qmiss))
                cm.at(i, m + i) = -(L.log_r + L.log_qmiss);
            if (std::isfinite(L.log_1mr)) cm.at(i, m + n + i) = -L.log_1mr;
        }
        for (const auto& sol : murty_kbest(cm, p.kbest_k)) {
            detail::HypothesisRecord h;
            h.log_w = -sol.cost;
            h.assoc.resize(n);
            for (int i = 0; i < n; ++i) {
                int col = sol.row_to_col[i];
                h.assoc[i] = col < m ? col + 1 : (col < m + n ? 0 : -1);
            }
            hyps.push_back(std::move(h));
        }
    }
    if (hyps.empty())
        throw std::runtime_error("update_group: no feasible association hypothesis");

    std::vector<double> log_ws(hyps.size());
    for (std::size_t h = 0; h < hyps.size(); ++h) log_ws[h] = hyps[h].log_w;
    double log_z = log_sum_exp(log_ws);
    if (!std::isfinite(log_z))
        throw std::runtime_error("update_group: hypothesis weights degenerate");

    std::vector<double> w(hyps.size());
    double w_sum = 0.0;
    for (std::size_t h = 0; h < hyps.size(); ++h) {
        w[h] = std::exp(log_ws[h] - log_z);
        w_sum += w[h];
    }
    if (diag) {
        diag->weight_sum = w_sum;
        diag->n_hypotheses = hyps.size();
    }

    // marginalize to per-track existence and association-mixture densities
    std::vector<BernoulliTrack> out(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> beta(m + 1, 0.0);  // [0] = missed, [j+1] = measurement j
        double r_new = 0.0;
        for (std::size_t h = 0; h < hyps.size(); ++h) {
            int a = hyps[h].assoc[i];
            if (a < 0) continue;
            r_new += w[h];
            beta[a] += w[h];
        }
        out[i].label = tracks[i].label;
        out[i].r = std::clamp(r_new, 0.0, 1.0);
        if (r_new <= 0.0) {
            out[i].mixture = tracks[i].mixture;  // dead track, density irrelevant
            continue;
        }
        GaussianMixture gm;
        if (beta[0] > 0.0)
            for (const auto& c : tracks[i].mixture)
                gm.push_back({beta[0] / r_new * c.w, c.m, c.P});
        for (int j = 0; j < m; ++j) {
            if (beta[j + 1] <= 0.0) continue;
            for (const auto& c : lik[i].posterior[j])
                gm.push_back({beta[j + 1] / r_new * c.w, c.m, c.P});
        }
        normalize_weights(gm);
        out[i].mixture = std::move(gm);
    }
    return out;
}

/// Mixture hygiene: weight floor, Mahalanobis merge onto the strongest
/// component, component cap, renormalize.
inline BernoulliTrack prune_and_merge(const BernoulliTrack& track, const GmConfig& cfg) {
    BernoulliTrack out;
    out.label = track.label;
    out.r = track.r;

    GaussianMixture keep;
    for (const auto& c : track.mixture)
        if (c.w >= cfg.w_min) keep.push_back(c);
    if (keep.empty() && !track.mixture.empty()) {
        auto best = std::max_element(track.mixture.begin(), track.mixture.end(),
                                     [](const auto& a, const auto& b) { return a.w < b.w; });
        keep.push_back(*best);
    }

    GaussianMixture merged;
    std::vector<char> absorbed(keep.size(), 0);
    while (true) {
        int best = -1;
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (!absorbed[i] && (best < 0 || keep[i].w > keep[best].w))
                best = static_cast<int>(i);
        if (best < 0) break;
        Mat4 Pinv = keep[best].P.inverse();
        GaussianMixture bucket;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (absorbed[i]) continue;
            Vec4 d = keep[i].m - keep[best].m;
            if (static_cast<int>(i) == best || d.dot(Pinv * d) <= cfg.merge_thresh) {
                bucket.push_back(keep[i]);
                absorbed[i] = 1;
            }
        }
        merged.push_back(bucket.size() == 1 ? bucket.front() : moment_match(bucket));
    }

    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.w > b.w; });
    if (static_cast<int>(merged.size()) > cfg.n_max) merged.resize(cfg.n_max);
    if (!merged.empty()) normalize_weights(merged);
    out.mixture = std::move(merged);
    return out;
}

/// Per-track mixture hygiene plus removal of near-dead tracks.
inline LmbDensity prune_density(const LmbDensity& density, const GmConfig& cfg) {
    LmbDensity out;
    for (const auto& t : density.tracks) {
        if (t.r < cfg.r_min) continue;
        out.tracks.push_back(prune_and_merge(t, cfg));
    }
    return out;
}

struct Estimate {
    Label label;
    double r = 0.0;
    Vec4 state = Vec4::Zero();

    Vec2 position() const { return {state[0], state[2]}; }
};

/// Tracks with existence above the threshold; state is the mean of the
/// highest-weight mixture component.
inline std::vector<Estimate> extract_tracks(const LmbDensity& density, double threshold) {
    std::vector<Estimate> out;
    for (const auto& t : density.tracks) {
        if (!(t.r > threshold) || t.mixture.empty()) continue;
        auto best = std::max_element(t.mixture.begin(), t.mixture.end(),
                                     [](const auto& a, const auto& b) { return a.w < b.w; });
        out.push_back({t.label, t.r, best->m});
    }
    return out;
}

/// Whole-scan update: gate, group, update each group, reassemble in input order.
inline LmbDensity update_density(const LmbDensity& pred, const std::vector<Measurement>& Z,
                                 const FilterParams& p, HypothesisMode mode = HypothesisMode::Auto,
                                 std::vector<GroupUpdateDiag>* diags = nullptr) {
    std::vector<Group> groups = gate_and_group(pred, Z, p);
    std::vector<BernoulliTrack> updated(pred.tracks.size());
    for (const auto& g : groups) {
        if (g.track_idx.empty()) continue;  // clutter-only residual
        std::vector<BernoulliTrack> gt;
        std::vector<Measurement> gz;
        for (int ti : g.track_idx) gt.push_back(pred.tracks[ti]);
        for (int mi : g.meas_idx) gz.push_back(Z[mi]);
        GroupUpdateDiag gd;
        auto res = update_group(gt, gz, p, mode, &gd);
        if (diags) diags->push_back(gd);
        for (std::size_t k = 0; k < g.track_idx.size(); ++k)
            updated[g.track_idx[k]] = std::move(res[k]);
    }
    LmbDensity out;
    out.tracks = std::move(updated);
    return out;
}

}  // namespace littoral
