#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphfeat {

struct SimplifyCounts {
    long long self_loops = 0;
    long long duplicate_edges = 0;
};

/// Undirected simple graph with sorted per-node neighbor lists in CSR layout.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    /// Builds a graph from an edge list. Self-loops are dropped and repeated
    /// pairs (in either orientation) merged; counts of both land in `counts`
    /// when given.
    static Graph from_edges(int node_count, std::vector<std::pair<int, int>> edges,
                            SimplifyCounts* counts = nullptr) {
        if (node_count < 0) throw std::invalid_argument("graph: negative node count");
        SimplifyCounts local;
        std::vector<std::pair<int, int>> kept;
        kept.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u < 0 || u >= node_count || v < 0 || v >= node_count)
                throw std::invalid_argument("graph: edge endpoint out of range");
            if (u == v) {
                ++local.self_loops;
                continue;
            }
            kept.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(kept.begin(), kept.end());
        auto last = std::unique(kept.begin(), kept.end());
        local.duplicate_edges = static_cast<long long>(kept.end() - last);
        kept.erase(last, kept.end());
        if (counts) {
            counts->self_loops += local.self_loops;
            counts->duplicate_edges += local.duplicate_edges;
        }

        Graph g;
        g.n_ = node_count;
        g.m_ = static_cast<long long>(kept.size());
        std::vector<int> degree(static_cast<std::size_t>(node_count), 0);
        for (auto [u, v] : kept) {
            ++degree[static_cast<std::size_t>(u)];
            ++degree[static_cast<std::size_t>(v)];
        }
        g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
        for (int i = 0; i < node_count; ++i)
            g.offsets_[static_cast<std::size_t>(i) + 1] =
                g.offsets_[static_cast<std::size_t>(i)] + degree[static_cast<std::size_t>(i)];
        g.adj_.resize(static_cast<std::size_t>(g.offsets_.back()));
        std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : kept) {
            g.adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
            g.adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
        }
        for (int i = 0; i < node_count; ++i) {
            auto b = g.adj_.begin() + g.offsets_[static_cast<std::size_t>(i)];
            auto e = g.adj_.begin() + g.offsets_[static_cast<std::size_t>(i) + 1];
            std::sort(b, e);
        }
        return g;
    }

    int node_count() const { return n_; }
    long long edge_count() const { return m_; }

    int degree(int v) const {
        return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
    }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + offsets_[static_cast<std::size_t>(v)],
                static_cast<std::size_t>(degree(v))};
    }

    int max_degree() const {
        int k = 0;
        for (int v = 0; v < n_; ++v) k = std::max(k, degree(v));
        return k;
    }

    bool has_edge(int u, int v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// Unordered edge list, each pair once with first < second.
    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (int v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    int n_ = 0;
    long long m_ = 0;
    std::vector<int> offsets_;
    std::vector<int> adj_;
};

struct ComponentPartition {
    std::vector<int> component_of;  // per node, ids contiguous from 0
    std::vector<int> component_sizes;
    int count() const { return static_cast<int>(component_sizes.size()); }
};

/// BFS labeling; component ids are ordered by smallest contained node id.
inline ComponentPartition connected_components(const Graph& g) {
    const int n = g.node_count();
    ComponentPartition part;
    part.component_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (part.component_of[static_cast<std::size_t>(s)] >= 0) continue;
        int id = part.count();
        part.component_sizes.push_back(0);
        queue.assign(1, s);
        part.component_of[static_cast<std::size_t>(s)] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            ++part.component_sizes[static_cast<std::size_t>(id)];
            for (int v : g.neighbors(u)) {
                if (part.component_of[static_cast<std::size_t>(v)] < 0) {
                    part.component_of[static_cast<std::size_t>(v)] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    return part;
}

/// Induced subgraph on the largest component, node ids compacted. Ties go to
/// the component containing the smallest node id (= lowest component id).
inline Graph largest_component_subgraph(const Graph& g) {
    if (g.node_count() == 0) throw std::invalid_argument("largest_component_subgraph: no component");
    ComponentPartition part = connected_components(g);
    int best = 0;
    for (int c = 1; c < part.count(); ++c)
        if (part.component_sizes[static_cast<std::size_t>(c)] >
            part.component_sizes[static_cast<std::size_t>(best)])
            best = c;
    std::vector<int> local(static_cast<std::size_t>(g.node_count()), -1);
    int next = 0;
    for (int v = 0; v < g.node_count(); ++v)
        if (part.component_of[static_cast<std::size_t>(v)] == best) local[static_cast<std::size_t>(v)] = next++;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edge_list())
        if (part.component_of[static_cast<std::size_t>(u)] == best)
            edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
    return Graph::from_edges(next, std::move(edges));
}

/// Unweighted shortest-path distances from `source`; -1 where unreachable.
inline std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(static_cast<std::size_t>(g.node_count()), -1);
    std::vector<int> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

}  // namespace graphfeat
