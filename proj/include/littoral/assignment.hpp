#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace littoral {

inline constexpr double kUnassignable = std::numeric_limits<double>::infinity();

/// Rectangular min-cost assignment, rows <= cols, every row assigned, each
/// column used at most once. Infinite entries are forbidden pairs.
struct CostMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> c;  // row-major

    CostMatrix() = default;
    CostMatrix(int r, int n) : rows(r), cols(n), c(static_cast<std::size_t>(r) * n, 0.0) {}
    double& at(int i, int j) { return c[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return c[static_cast<std::size_t>(i) * cols + j]; }
};

struct Assignment {
    std::vector<int> row_to_col;
    double cost = 0.0;
    bool feasible = false;
};

namespace detail {

/// Shortest-augmenting-path state with dual potentials. Supports incremental
/// augmentation of a single row, which Murty's partitioning relies on.
struct JvState {
    int rows = 0, cols = 0;
    std::vector<double> u, v;      // dual potentials
    std::vector<int> col_to_row;   // -1 = free
    std::vector<int> row_to_col;

    void init(int r, int n) {
        rows = r; cols = n;
        u.assign(r, 0.0);
        v.assign(n, 0.0);
        col_to_row.assign(n, -1);
        row_to_col.assign(r, -1);
    }

    /// Augments `row` along a shortest path under reduced costs. `cost(i, j)`
    /// must return +inf for forbidden pairs; `blocked(j)` marks columns that
    /// cannot participate (their matches are fixed). Returns false when no
    /// finite augmenting path exists.
    template <typename CostFn, typename BlockedFn>
    bool augment(int row, CostFn&& cost, BlockedFn&& blocked) {
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(cols, inf);
        std::vector<int> pred(cols, -1);     // previous column on the path
        std::vector<char> done(cols, 0);
        int sink = -1;
        double sink_dist = inf;
        int i = row;
        double path_to_i = 0.0;              // shortest distance to the row being scanned
        std::vector<int> scanned_cols;

        while (true) {
            for (int j = 0; j < cols; ++j) {
                if (done[j] || blocked(j)) continue;
                double cij = cost(i, j);
                if (!(cij < inf)) continue;
                double nd = path_to_i + cij - u[i] - v[j];
                if (nd < dist[j]) {
                    dist[j] = nd;
                    pred[j] = i;
                }
            }
            int jmin = -1;
            double dmin = inf;
            for (int j = 0; j < cols; ++j) {
                if (done[j] || blocked(j)) continue;
                if (dist[j] < dmin) { dmin = dist[j]; jmin = j; }
            }
            if (jmin < 0 || !(dmin < inf)) return false;
            done[jmin] = 1;
            scanned_cols.push_back(jmin);
            if (col_to_row[jmin] < 0) { sink = jmin; sink_dist = dmin; break; }
            i = col_to_row[jmin];
            path_to_i = dmin;
        }

        // dual update keeps reduced costs non-negative
        u[row] += sink_dist;
        for (int j : scanned_cols) {
            if (j == sink) continue;
            u[col_to_row[j]] += sink_dist - dist[j];
            v[j] -= sink_dist - dist[j];
        }
        // trace the alternating path back, flipping matches
        int j = sink;
        while (j >= 0) {
            int pi = pred[j];
            int pj = row_to_col[pi];  // column pi leaves (-1 when pi == row)
            col_to_row[j] = pi;
            row_to_col[pi] = j;
            j = pj;
        }
        return true;
    }
};

}  // namespace detail

/// Full solve from scratch.
template <typename CostFn>
Assignment solve_assignment(int rows, int cols, CostFn&& cost) {
    Assignment a;
    a.row_to_col.assign(rows, -1);
    if (rows == 0) { a.feasible = true; return a; }
    if (rows > cols) return a;

    detail::JvState st;
    st.init(rows, cols);
    auto never_blocked = [](int) { return false; };
    for (int i = 0; i < rows; ++i)
        if (!st.augment(i, cost, never_blocked)) return a;

    a.row_to_col = st.row_to_col;
    a.cost = 0.0;
    for (int i = 0; i < rows; ++i) a.cost += cost(i, st.row_to_col[i]);
    a.feasible = true;
    return a;
}

inline Assignment solve_assignment(const CostMatrix& m) {
    return solve_assignment(m.rows, m.cols, [&](int i, int j) { return m.at(i, j); });
}

namespace detail {

struct MurtyNode {
    std::vector<std::uint64_t> forbidden;  // (row << 32) | col, sorted
    std::vector<int> locked;               // per row: fixed column or -1
    JvState st;
    double cost = 0.0;

    bool is_forbidden(int i, int j) const {
        std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
        return std::binary_search(forbidden.begin(), forbidden.end(), key);
    }
    void forbid(int i, int j) {
        std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
        forbidden.insert(std::upper_bound(forbidden.begin(), forbidden.end(), key), key);
    }
};

struct MurtyNodeCmp {
    bool operator()(const MurtyNode& a, const MurtyNode& b) const { return a.cost > b.cost; }
};

}  // namespace detail

/// K best assignments in non-decreasing cost order (fewer if the problem admits
/// fewer feasible solutions). Children of each partition reuse the parent's
/// duals and matching: forbidding one matched edge only requires re-augmenting
/// the affected row.
inline std::vector<Assignment> murty_kbest(const CostMatrix& m, int k_best) {
    std::vector<Assignment> out;
    if (k_best <= 0 || m.rows == 0) {
        if (k_best > 0) {
            Assignment empty;
            empty.row_to_col.assign(m.rows, -1);
            empty.feasible = true;
            out.push_back(empty);
        }
        return out;
    }
    if (m.rows > m.cols) return out;

    auto base_cost = [&](const detail::MurtyNode& node) {
        return [&m, &node](int i, int j) {
            return node.is_forbidden(i, j) ? kUnassignable : m.at(i, j);
        };
    };
    auto node_total = [&](const detail::MurtyNode& node) {
        double c = 0.0;
        for (int i = 0; i < m.rows; ++i) c += m.at(i, node.st.row_to_col[i]);
        return c;
    };

    detail::MurtyNode root;
    root.locked.assign(m.rows, -1);
    root.st.init(m.rows, m.cols);
    {
        auto cost = base_cost(root);
        auto never_blocked = [](int) { return false; };
        for (int i = 0; i < m.rows; ++i)
            if (!root.st.augment(i, cost, never_blocked)) return out;
        root.cost = node_total(root);
    }

    std::priority_queue<detail::MurtyNode, std::vector<detail::MurtyNode>, detail::MurtyNodeCmp> pq;
    pq.push(std::move(root));

    while (!pq.empty() && static_cast<int>(out.size()) < k_best) {
        detail::MurtyNode node = pq.top();
        pq.pop();

        Assignment a;
        a.row_to_col = node.st.row_to_col;
        a.cost = node.cost;
        a.feasible = true;
        out.push_back(std::move(a));
        if (static_cast<int>(out.size()) == k_best) break;

        // partition on the free rows of this solution
        detail::MurtyNode proto = node;  // locks accumulate as we walk the rows
        for (int row = 0; row < m.rows; ++row) {
            if (node.locked[row] >= 0) continue;
            detail::MurtyNode child = proto;
            child.forbid(row, node.st.row_to_col[row]);

            int freed_col = child.st.row_to_col[row];
            child.st.row_to_col[row] = -1;
            child.st.col_to_row[freed_col] = -1;

            auto cost = base_cost(child);
            auto blocked = [&child](int j) {
                int r = child.st.col_to_row[j];
                return r >= 0 && child.locked[r] >= 0;
            };
            if (child.st.augment(row, cost, blocked)) {
                child.cost = node_total(child);
                pq.push(std::move(child));
            }
            proto.locked[row] = node.st.row_to_col[row];
        }
    }
    return out;
}

}  // namespace littoral
