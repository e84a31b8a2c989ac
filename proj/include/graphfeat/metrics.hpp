#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "graphfeat/graph.hpp"

namespace graphfeat {

namespace detail {

inline void require_nonempty(const Graph& g, const char* op) {
    if (g.node_count() == 0) throw std::invalid_argument(std::string(op) + ": empty graph");
}

}  // namespace detail

inline double average_degree(const Graph& g) {
    detail::require_nonempty(g, "average_degree");
    return 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
}

/// Exact diameter of the largest component (all-sources BFS). Ties between
/// equally large components go to the one containing the smallest node id.
/// A single-node component has diameter 0.
inline int diameter(const Graph& g) {
    detail::require_nonempty(g, "diameter");
    ComponentPartition part = connected_components(g);
    int best = 0;
    for (int c = 1; c < part.count(); ++c)
        if (part.component_sizes[static_cast<std::size_t>(c)] >
            part.component_sizes[static_cast<std::size_t>(best)])
            best = c;
    int max_dist = 0;
    for (int s = 0; s < g.node_count(); ++s) {
        if (part.component_of[static_cast<std::size_t>(s)] != best) continue;
        std::vector<int> dist = bfs_distances(g, s);
        for (int d : dist) max_dist = std::max(max_dist, d);
    }
    return max_dist;
}

/// Per-node closeness. Within a component of size r the score is
/// (r-1)/sum_dist scaled by (r-1)/(n-1); on a connected graph that is the
/// plain (n-1)/sum_dist. Nodes in singleton components score 0.
inline std::vector<double> closeness_centrality(const Graph& g) {
    const int n = g.node_count();
    std::vector<double> h(static_cast<std::size_t>(n), 0.0);
    if (n <= 1) return h;
    ComponentPartition part = connected_components(g);
    for (int i = 0; i < n; ++i) {
        int r = part.component_sizes[static_cast<std::size_t>(part.component_of[static_cast<std::size_t>(i)])];
        if (r < 2) continue;
        std::vector<int> dist = bfs_distances(g, i);
        long long sum = 0;
        for (int d : dist)
            if (d > 0) sum += d;
        h[static_cast<std::size_t>(i)] =
            (static_cast<double>(r - 1) / static_cast<double>(sum)) *
            (static_cast<double>(r - 1) / static_cast<double>(n - 1));
    }
    return h;
}

inline double average_closeness(const Graph& g) {
    detail::require_nonempty(g, "average_closeness");
    std::vector<double> h = closeness_centrality(g);
    double total = 0;
    for (double x : h) total += x;
    return total / static_cast<double>(g.node_count());
}

/// Per-node betweenness via Brandes' dependency accumulation, endpoints
/// excluded, each unordered pair counted once, normalized by (n-1)(n-2)/2.
/// Zero for n <= 2.
inline std::vector<double> betweenness_centrality(const Graph& g) {
    const int n = g.node_count();
    std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
    if (n <= 2) return bc;

    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<double> sigma(static_cast<std::size_t>(n));
    std::vector<double> delta(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> pred(static_cast<std::size_t>(n));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));

    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();

        dist[static_cast<std::size_t>(s)] = 0;
        sigma[static_cast<std::size_t>(s)] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            int u = order[head];
            for (int v : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    order.push_back(v);
                }
                if (dist[static_cast<std::size_t>(v)] == dist[static_cast<std::size_t>(u)] + 1) {
                    sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];
                    pred[static_cast<std::size_t>(v)].push_back(u);
                }
            }
        }
        for (std::size_t idx = order.size(); idx-- > 0;) {
            int w = order[idx];
            for (int u : pred[static_cast<std::size_t>(w)])
                delta[static_cast<std::size_t>(u)] +=
                    sigma[static_cast<std::size_t>(u)] / sigma[static_cast<std::size_t>(w)] *
                    (1.0 + delta[static_cast<std::size_t>(w)]);
            if (w != s) bc[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
            pred[static_cast<std::size_t>(w)].clear();
        }
    }
    // The source loop visits each unordered pair from both ends; folding the
    // factor 1/2 into the pair-count normalization gives 1/((n-1)(n-2)).
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& x : bc) x *= scale;
    return bc;
}

inline double average_betweenness(const Graph& g) {
    detail::require_nonempty(g, "average_betweenness");
    std::vector<double> bc = betweenness_centrality(g);
    double total = 0;
    for (double x : bc) total += x;
    return total / static_cast<double>(g.node_count());
}

/// Per-node local clustering coefficient; degree < 2 contributes 0.
/// Triangles are counted by sorted-neighbor-list intersection.
inline std::vector<double> local_clustering(const Graph& g) {
    const int n = g.node_count();
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        int k = g.degree(i);
        if (k < 2) continue;
        auto ni = g.neighbors(i);
        long long links2 = 0;  // each connected neighbor pair counted twice
        for (int j : ni) {
            auto nj = g.neighbors(j);
            auto a = ni.begin();
            auto b = nj.begin();
            while (a != ni.end() && b != nj.end()) {
                if (*a < *b)
                    ++a;
                else if (*b < *a)
                    ++b;
                else {
                    ++links2;
                    ++a;
                    ++b;
                }
            }
        }
        c[static_cast<std::size_t>(i)] =
            static_cast<double>(links2) / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return c;
}

inline double average_clustering(const Graph& g) {
    detail::require_nonempty(g, "average_clustering");
    std::vector<double> c = local_clustering(g);
    double total = 0;
    for (double x : c) total += x;
    return total / static_cast<double>(g.node_count());
}

}  // namespace graphfeat
