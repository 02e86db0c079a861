#pragma once

#include <random>
#include <stdexcept>

#include "littoral/rng.hpp"
#include "littoral/types.hpp"

namespace littoral {

/// Constant-velocity model over interleaved [a, a_dot, r, r_dot].
struct MotionModel {
    double T = 1.0;   // sampling period (scans)
    double q = 0.0;   // process noise intensity
    Mat4 F = Mat4::Identity();
    Mat4 Q = Mat4::Zero();
};

/// F = blkdiag(Phi, Phi), Q = blkdiag(Psi, Psi) with the white-acceleration Psi.
inline MotionModel make_motion_model(double T, double q) {
    if (T <= 0.0)
        throw std::invalid_argument("make_motion_model: sampling period must be positive");
    if (q < 0.0)
        throw std::invalid_argument("make_motion_model: noise intensity must be non-negative");

    Mat2 phi;
    phi << 1.0, T,
           0.0, 1.0;
    Mat2 psi;
    psi << T * T * T / 3.0, T * T / 2.0,
           T * T / 2.0,     T;
    psi *= q;

    MotionModel m;
    m.T = T;
    m.q = q;
    m.F.setZero();
    m.F.block<2, 2>(0, 0) = phi;
    m.F.block<2, 2>(2, 2) = phi;
    m.Q.setZero();
    m.Q.block<2, 2>(0, 0) = psi;
    m.Q.block<2, 2>(2, 2) = psi;
    return m;
}

/// Draws from N(0, cov). Uses LDLT so positive semi-definite covariances are accepted.
inline Vec4 sample_mvn_zero(const Mat4& cov, Rng& rng) {
    Eigen::LDLT<Mat4> ldlt(cov);
    Vec4 d = ldlt.vectorD().cwiseMax(0.0);
    std::normal_distribution<double> n01(0.0, 1.0);
    Vec4 z;
    for (int i = 0; i < 4; ++i) z[i] = n01(rng);
    Vec4 y = d.cwiseSqrt().asDiagonal() * z;
    return ldlt.transpositionsP().transpose() * (Mat4(ldlt.matrixL()) * y);
}

/// One motion step; with noise, adds w ~ N(0, Q).
inline TargetState propagate_state(const TargetState& s, const MotionModel& m, bool noise, Rng& rng) {
    Vec4 next = m.F * s.x;
    if (noise && m.q > 0.0) next += sample_mvn_zero(m.Q, rng);
    return TargetState(next);
}

inline TargetState propagate_state(const TargetState& s, const MotionModel& m) {
    Rng dummy(0);
    return propagate_state(s, m, false, dummy);
}

}  // namespace littoral
