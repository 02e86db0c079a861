#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "littoral/assignment.hpp"
#include "littoral/types.hpp"

namespace littoral {

struct OspaParams {
    double p_order = 1.0;
    double cutoff = 100.0;

    void validate() const {
        if (!(p_order >= 1.0)) throw std::invalid_argument("OspaParams: order must be >= 1");
        if (!(cutoff > 0.0)) throw std::invalid_argument("OspaParams: cutoff must be positive");
    }
};

/// Optimal sub-pattern assignment distance between two position sets.
/// Localization uses the exact min-cost assignment on cutoff distances;
/// unmatched cardinality costs the cutoff. Empty vs empty is zero.
inline double ospa(const std::vector<Vec2>& X, const std::vector<Vec2>& Y, const OspaParams& p) {
    p.validate();
    const std::vector<Vec2>* small = &X;
    const std::vector<Vec2>* big = &Y;
    if (small->size() > big->size()) std::swap(small, big);
    const std::size_t m = small->size();
    const std::size_t n = big->size();
    if (n == 0) return 0.0;

    double total = 0.0;
    if (m > 0) {
        CostMatrix cm(static_cast<int>(m), static_cast<int>(n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                cm.at(static_cast<int>(i), static_cast<int>(j)) =
                    std::pow(std::min(p.cutoff, ((*small)[i] - (*big)[j]).norm()), p.p_order);
        Assignment a = solve_assignment(cm);
        if (!a.feasible) throw std::runtime_error("ospa: assignment failed");
        total = a.cost;
    }
    total += std::pow(p.cutoff, p.p_order) * static_cast<double>(n - m);
    return std::pow(total / static_cast<double>(n), 1.0 / p.p_order);
}

}  // namespace littoral
