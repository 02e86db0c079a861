#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "littoral/types.hpp"

namespace littoral {

struct GaussianComponent {
    double w = 1.0;
    Vec4 m = Vec4::Zero();
    Mat4 P = Mat4::Identity();
};

using GaussianMixture = std::vector<GaussianComponent>;

/// Observation matrix selecting [a, r] from [a, a_dot, r, r_dot].
inline Mat24 observation_matrix() {
    Mat24 H = Mat24::Zero();
    H(0, 0) = 1.0;
    H(1, 2) = 1.0;
    return H;
}

inline double log_gaussian2(const Vec2& x, const Vec2& mean, const Mat2& cov) {
    Eigen::LLT<Mat2> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("log_gaussian2: covariance not positive definite");
    Vec2 d = x - mean;
    Vec2 y = llt.matrixL().solve(d);
    double log_det = 2.0 * std::log(llt.matrixL()(0, 0)) + 2.0 * std::log(llt.matrixL()(1, 1));
    return -std::log(2.0 * M_PI) - 0.5 * log_det - 0.5 * y.squaredNorm();
}

struct KalmanUpdate {
    Vec4 m;
    Mat4 P;
    double log_lik;  // log N(z; Hm, HPH' + R)
};

/// Joseph-form measurement update; keeps P symmetric positive definite.
inline KalmanUpdate kalman_update(const Vec4& m, const Mat4& P, const Vec2& z,
                                  const Mat24& H, const Mat2& R) {
    Mat2 S = H * P * H.transpose() + R;
    S = 0.5 * (S + S.transpose().eval());
    Eigen::LLT<Mat2> llt(S);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("kalman_update: innovation covariance not positive definite");

    Vec2 innov = z - H * m;
    Eigen::Matrix<double, 4, 2> K = P * H.transpose() * S.inverse();
    Mat4 IKH = Mat4::Identity() - K * H;
    Mat4 Pn = IKH * P * IKH.transpose() + K * R * K.transpose();
    Pn = 0.5 * (Pn + Pn.transpose().eval());

    Vec2 y = llt.matrixL().solve(innov);
    double log_det = 2.0 * std::log(llt.matrixL()(0, 0)) + 2.0 * std::log(llt.matrixL()(1, 1));
    double ll = -std::log(2.0 * M_PI) - 0.5 * log_det - 0.5 * y.squaredNorm();
    return {m + K * innov, Pn, ll};
}

/// Squared Mahalanobis distance of z against the predicted measurement of (m, P).
inline double innovation_mahalanobis2(const Vec4& m, const Mat4& P, const Vec2& z,
                                      const Mat24& H, const Mat2& R) {
    Mat2 S = H * P * H.transpose() + R;
    Vec2 d = z - H * m;
    return d.dot(S.inverse() * d);
}

/// Weighted moment match of a set of components (weights need not be normalized).
inline GaussianComponent moment_match(const GaussianMixture& comps) {
    GaussianComponent out;
    out.w = 0.0;
    out.m.setZero();
    for (const auto& c : comps) {
        out.w += c.w;
        out.m += c.w * c.m;
    }
    if (out.w <= 0.0) throw std::invalid_argument("moment_match: total weight must be positive");
    out.m /= out.w;
    out.P.setZero();
    for (const auto& c : comps) {
        Vec4 d = c.m - out.m;
        out.P += (c.w / out.w) * (c.P + d * d.transpose());
    }
    out.P = 0.5 * (out.P + out.P.transpose().eval());
    return out;
}

inline void normalize_weights(GaussianMixture& gm) {
    double s = 0.0;
    for (const auto& c : gm) s += c.w;
    if (s <= 0.0) throw std::runtime_error("normalize_weights: non-positive weight sum");
    for (auto& c : gm) c.w /= s;
}

/// log(sum(exp(x))) with the usual max shift.
inline double log_sum_exp(const std::vector<double>& xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : xs) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

}  // namespace littoral
