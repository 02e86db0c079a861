#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "littoral/rng.hpp"
#include "littoral/types.hpp"

namespace littoral {

/// K-distributed sea clutter: Gamma texture modulating Rayleigh speckle.
struct ClutterModel {
    double nu = 1.5;        // K-distribution shape (small = spiky)
    double mu = 1.0;        // mean clutter amplitude
    double corr_len = 3.0;  // texture correlation length (cells), 0 = uncorrelated

    void validate() const {
        if (!(nu > 0.0)) throw std::invalid_argument("ClutterModel: nu must be > 0");
        if (!(mu > 0.0)) throw std::invalid_argument("ClutterModel: mu must be > 0");
        if (corr_len < 0.0) throw std::invalid_argument("ClutterModel: corr_len must be >= 0");
    }
};

/// Texture scale theta such that sqrt(theta * Gamma(nu,1)) * Rayleigh(unit power)
/// has mean amplitude mu. E[A] = sqrt(theta) * Gamma(nu+1/2)/Gamma(nu) * sqrt(pi)/2.
inline double k_texture_scale(double nu, double mu) {
    double log_ratio = std::lgamma(nu + 0.5) - std::lgamma(nu);
    double mean_sqrt_tex = std::exp(log_ratio);        // E[sqrt(t)], t ~ Gamma(nu, 1)
    double mean_speckle = std::sqrt(M_PI) / 2.0;       // E[S], S^2 ~ Exp(1)
    double s = mu / (mean_sqrt_tex * mean_speckle);
    return s * s;
}

/// Separable Gaussian blur with reflective boundaries; kernel truncated at 3 sigma.
inline void gaussian_smooth_reflect(Grid2D<double>& field, double sigma) {
    if (sigma <= 0.0) return;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        ksum += kernel[i + radius];
    }
    for (double& k : kernel) k /= ksum;

    const int na = field.n_az();
    const int nr = field.n_rg();
    auto reflect = [](int i, int n) {
        // reflect-around-edge index; n == 1 collapses to 0
        if (n == 1) return 0;
        while (i < 0 || i >= n) {
            if (i < 0) i = -i - 1;
            if (i >= n) i = 2 * n - 1 - i;
        }
        return i;
    };

    Grid2D<double> tmp(na, nr);
    for (int a = 0; a < na; ++a) {
        for (int r = 0; r < nr; ++r) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += kernel[k + radius] * field.at(a, reflect(r + k, nr));
            tmp.at(a, r) = acc;
        }
    }
    for (int r = 0; r < nr; ++r) {
        for (int a = 0; a < na; ++a) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += kernel[k + radius] * tmp.at(reflect(a + k, na), r);
            field.at(a, r) = acc;
        }
    }
}

/// Draws one clutter map. Marginals are exactly K-distributed when corr_len == 0;
/// with corr_len > 0 the texture is blurred and the amplitude scale is re-fitted
/// from the realized sqrt-texture mean so the field mean stays at mu.
inline RangeAzimuthMap sample_clutter(int n_az, int n_rg, const ClutterModel& model, Rng& rng) {
    model.validate();
    if (n_az <= 0 || n_rg <= 0)
        throw std::invalid_argument("sample_clutter: dimensions must be positive");

    Grid2D<double> texture(n_az, n_rg);
    std::gamma_distribution<double> gamma(model.nu, 1.0);
    for (double& t : texture.data()) t = gamma(rng);

    double amp_scale;  // multiplies sqrt(texture)
    if (model.corr_len > 0.0) {
        gaussian_smooth_reflect(texture, model.corr_len);
        double mean_sqrt = 0.0;
        for (double t : texture.data()) mean_sqrt += std::sqrt(std::max(0.0, t));
        mean_sqrt /= static_cast<double>(texture.size());
        amp_scale = model.mu / (mean_sqrt * std::sqrt(M_PI) / 2.0);
    } else {
        amp_scale = std::sqrt(k_texture_scale(model.nu, model.mu));
    }

    RangeAzimuthMap map(n_az, n_rg);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto it = texture.data().begin();
    for (float& cell : map.cells.data()) {
        double u = 1.0 - u01(rng);                    // (0, 1]
        double speckle = std::sqrt(-std::log(u));      // Rayleigh with E[S^2] = 1
        cell = static_cast<float>(amp_scale * std::sqrt(std::max(0.0, *it++)) * speckle);
    }
    return map;
}

}  // namespace littoral
