#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "littoral/types.hpp"

namespace littoral {

struct DbscanParams {
    double eps = 1.0;
    int min_pts = 5;

    void validate() const {
        if (!(eps > 0.0)) throw std::invalid_argument("DbscanParams: eps must be > 0");
        if (min_pts < 1) throw std::invalid_argument("DbscanParams: min_pts must be >= 1");
    }
};

struct DbscanResult {
    std::vector<std::vector<int>> clusters;  // member indices into the input, sorted
    std::vector<int> noise;                  // indices classified as noise
};

/// DBSCAN over (a, r) with Euclidean distance. Core iff at least min_pts points
/// (itself included) within eps. Clusters are connected components of the
/// core-core eps graph; a border point joins the cluster of its row-major-first
/// core neighbour, which makes the partition independent of input order.
inline DbscanResult dbscan(const std::vector<DetectionCell>& points, const DbscanParams& p) {
    p.validate();
    const int n = static_cast<int>(points.size());
    DbscanResult res;
    if (n == 0) return res;

    // canonical processing order: row-major by (a, r), stable for duplicates
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (points[i].a != points[j].a) return points[i].a < points[j].a;
        return points[i].r < points[j].r;
    });

    const double eps2 = p.eps * p.eps;
    auto close = [&](int i, int j) {
        double da = points[i].a - points[j].a;
        double dr = points[i].r - points[j].r;
        return da * da + dr * dr <= eps2;
    };

    std::vector<char> is_core(n, 0);
    for (int i = 0; i < n; ++i) {
        int cnt = 0;
        for (int j = 0; j < n; ++j)
            if (close(i, j)) ++cnt;
        is_core[i] = cnt >= p.min_pts;
    }

    // union cores that are mutually reachable
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };
    for (int oi = 0; oi < n; ++oi) {
        int i = order[oi];
        if (!is_core[i]) continue;
        for (int oj = oi + 1; oj < n; ++oj) {
            int j = order[oj];
            if (is_core[j] && close(i, j)) {
                int ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
    }

    std::vector<int> cluster_of(n, -1);
    std::vector<int> root_to_cluster(n, -1);
    int n_clusters = 0;
    for (int oi = 0; oi < n; ++oi) {
        int i = order[oi];
        if (!is_core[i]) continue;
        int root = find(i);
        if (root_to_cluster[root] < 0) root_to_cluster[root] = n_clusters++;
        cluster_of[i] = root_to_cluster[root];
    }
    // border points: first core neighbour in canonical order decides
    for (int oi = 0; oi < n; ++oi) {
        int i = order[oi];
        if (is_core[i]) continue;
        for (int oj = 0; oj < n; ++oj) {
            int j = order[oj];
            if (is_core[j] && close(i, j)) { cluster_of[i] = cluster_of[j]; break; }
        }
    }

    res.clusters.assign(n_clusters, {});
    for (int oi = 0; oi < n; ++oi) {
        int i = order[oi];
        if (cluster_of[i] >= 0)
            res.clusters[cluster_of[i]].push_back(i);
        else
            res.noise.push_back(i);
    }
    return res;
}

enum class ClusterScoring { Max, Mean };

/// Cluster centroid plus confidence (max member score by default).
inline std::vector<Measurement> clusters_to_measurements(
    const std::vector<DetectionCell>& points, const DbscanResult& clustering,
    ClusterScoring scoring = ClusterScoring::Max) {
    std::vector<Measurement> out;
    out.reserve(clustering.clusters.size());
    for (const auto& members : clustering.clusters) {
        if (members.empty()) continue;
        double sa = 0.0, sr = 0.0, smax = 0.0, ssum = 0.0;
        for (int idx : members) {
            sa += points[idx].a;
            sr += points[idx].r;
            smax = std::max(smax, points[idx].score);
            ssum += points[idx].score;
        }
        double score = scoring == ClusterScoring::Max ? smax : ssum / members.size();
        out.push_back({sa / members.size(), sr / members.size(), score});
    }
    return out;
}

}  // namespace littoral
