#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphfeat/graph.hpp"

namespace graphfeat {

/// Raised when an expected input file is missing or unreadable.
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on malformed file content; the message carries file and line.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A labeled graph collection. Labels are remapped to contiguous 0..C-1 in
/// order of first appearance; `class_labels[c]` keeps the original value.
struct Dataset {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<int> labels;
    std::vector<long long> class_labels;
    SimplifyCounts simplified;

    int num_classes() const { return static_cast<int>(class_labels.size()); }
};

struct DatasetSummary {
    std::size_t graph_count = 0;
    double avg_nodes = 0, avg_edges = 0;
    int max_nodes = 0, min_nodes = 0;
    long long max_edges = 0, min_edges = 0;
    int num_classes = 0;
};

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IngestError("missing input file: " + file.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos)
        lines.pop_back();
    return lines;
}

inline bool parse_int_token(const char*& p, const char* end, long long& out) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == ',')) ++p;
    auto [next, ec] = std::from_chars(p, end, out);
    if (ec != std::errc() || next == p) return false;
    p = next;
    return true;
}

[[noreturn]] inline void format_fail(const std::filesystem::path& file, std::size_t line_no,
                                     const std::string& what) {
    throw FormatError(file.filename().string() + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace detail

/// Parses the standard three-file text layout: `{name}_A.txt` (edge list of
/// 1-indexed global node ids), `{name}_graph_indicator.txt` (graph id per
/// node) and `{name}_graph_labels.txt` (label per graph). Directed duplicate
/// pairs collapse to one undirected edge, self-loops are dropped, node ids
/// are renumbered 0..n-1 per graph. Attribute files are ignored.
inline Dataset parse_tudataset(const std::filesystem::path& directory, const std::string& name) {
    namespace fs = std::filesystem;
    const fs::path indicator_file = directory / (name + "_graph_indicator.txt");
    const fs::path edge_file = directory / (name + "_A.txt");
    const fs::path label_file = directory / (name + "_graph_labels.txt");

    const auto indicator_lines = detail::read_lines(indicator_file);
    const auto edge_lines = detail::read_lines(edge_file);
    const auto label_lines = detail::read_lines(label_file);
    if (indicator_lines.empty()) detail::format_fail(indicator_file, 1, "empty file");
    if (edge_lines.empty()) detail::format_fail(edge_file, 1, "empty file");
    if (label_lines.empty()) detail::format_fail(label_file, 1, "empty file");

    // Node -> graph assignment; graphs are 1-indexed in the file.
    std::vector<int> graph_of_node(indicator_lines.size());
    int graph_count = 0;
    for (std::size_t i = 0; i < indicator_lines.size(); ++i) {
        const char* p = indicator_lines[i].data();
        const char* end = p + indicator_lines[i].size();
        long long gid;
        if (!detail::parse_int_token(p, end, gid) || gid < 1)
            detail::format_fail(indicator_file, i + 1, "expected a positive graph id");
        graph_of_node[i] = static_cast<int>(gid - 1);
        graph_count = std::max(graph_count, static_cast<int>(gid));
    }

    // Local node numbering follows global node order within each graph.
    std::vector<int> node_count(static_cast<std::size_t>(graph_count), 0);
    std::vector<int> local_id(indicator_lines.size());
    for (std::size_t i = 0; i < indicator_lines.size(); ++i)
        local_id[i] = node_count[static_cast<std::size_t>(graph_of_node[i])]++;
    for (int gi = 0; gi < graph_count; ++gi)
        if (node_count[static_cast<std::size_t>(gi)] == 0)
            detail::format_fail(indicator_file, indicator_lines.size(),
                                "graph " + std::to_string(gi + 1) + " has no nodes");

    std::vector<std::vector<std::pair<int, int>>> edges(static_cast<std::size_t>(graph_count));
    const long long total_nodes = static_cast<long long>(indicator_lines.size());
    for (std::size_t ln = 0; ln < edge_lines.size(); ++ln) {
        if (edge_lines[ln].find_first_not_of(" \t") == std::string::npos)
            detail::format_fail(edge_file, ln + 1, "empty line");
        const char* p = edge_lines[ln].data();
        const char* end = p + edge_lines[ln].size();
        long long u, v;
        if (!detail::parse_int_token(p, end, u) || !detail::parse_int_token(p, end, v))
            detail::format_fail(edge_file, ln + 1, "expected two integers");
        if (u < 1 || u > total_nodes)
            detail::format_fail(edge_file, ln + 1,
                                "node id " + std::to_string(u) + " is not assigned to any graph");
        if (v < 1 || v > total_nodes)
            detail::format_fail(edge_file, ln + 1,
                                "node id " + std::to_string(v) + " is not assigned to any graph");
        int gu = graph_of_node[static_cast<std::size_t>(u - 1)];
        int gv = graph_of_node[static_cast<std::size_t>(v - 1)];
        if (gu != gv)
            detail::format_fail(edge_file, ln + 1,
                                "edge crosses graphs " + std::to_string(gu + 1) + " and " +
                                    std::to_string(gv + 1));
        edges[static_cast<std::size_t>(gu)].emplace_back(local_id[static_cast<std::size_t>(u - 1)],
                                                         local_id[static_cast<std::size_t>(v - 1)]);
    }

    if (label_lines.size() != static_cast<std::size_t>(graph_count))
        detail::format_fail(label_file, label_lines.size(),
                            "expected " + std::to_string(graph_count) + " labels, found " +
                                std::to_string(label_lines.size()));

    Dataset ds;
    ds.name = name;
    ds.graphs.reserve(static_cast<std::size_t>(graph_count));
    for (int gi = 0; gi < graph_count; ++gi) {
        auto& raw = edges[static_cast<std::size_t>(gi)];
        // Listing an edge in both directions is the convention, so only a
        // third occurrence of a pair counts as a genuine duplicate.
        std::vector<std::pair<int, int>> normalized;
        normalized.reserve(raw.size());
        for (auto [u, v] : raw) {
            if (u == v)
                ++ds.simplified.self_loops;
            else
                normalized.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(normalized.begin(), normalized.end());
        for (std::size_t i = 0; i < normalized.size();) {
            std::size_t j = i;
            while (j < normalized.size() && normalized[j] == normalized[i]) ++j;
            if (j - i > 2) ds.simplified.duplicate_edges += static_cast<long long>(j - i - 2);
            i = j;
        }
        ds.graphs.push_back(Graph::from_edges(node_count[static_cast<std::size_t>(gi)],
                                              std::move(raw), nullptr));
    }

    std::map<long long, int> label_map;
    ds.labels.reserve(label_lines.size());
    for (std::size_t i = 0; i < label_lines.size(); ++i) {
        const char* p = label_lines[i].data();
        const char* end = p + label_lines[i].size();
        long long raw;
        if (!detail::parse_int_token(p, end, raw))
            detail::format_fail(label_file, i + 1, "expected an integer label");
        auto it = label_map.find(raw);
        if (it == label_map.end()) {
            it = label_map.emplace(raw, ds.num_classes()).first;
            ds.class_labels.push_back(raw);
        }
        ds.labels.push_back(it->second);
    }
    return ds;
}

/// Writes a dataset back out in the same three-file layout (each undirected
/// edge emitted in both directions, as the convention has it).
inline void write_tudataset(const Dataset& ds, const std::filesystem::path& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    std::vector<long long> offset(ds.graphs.size() + 1, 0);
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi)
        offset[gi + 1] = offset[gi] + ds.graphs[gi].node_count();

    std::ofstream a(directory / (ds.name + "_A.txt"));
    std::ofstream ind(directory / (ds.name + "_graph_indicator.txt"));
    std::ofstream lab(directory / (ds.name + "_graph_labels.txt"));
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
        const Graph& g = ds.graphs[gi];
        for (auto [u, v] : g.edge_list()) {
            long long gu = offset[gi] + u + 1, gv = offset[gi] + v + 1;
            a << gu << ", " << gv << "\n" << gv << ", " << gu << "\n";
        }
        for (int v = 0; v < g.node_count(); ++v) ind << (gi + 1) << "\n";
        lab << ds.class_labels[static_cast<std::size_t>(ds.labels[gi])] << "\n";
    }
}

inline DatasetSummary summarize(const Dataset& ds) {
    DatasetSummary s;
    s.graph_count = ds.graphs.size();
    s.num_classes = ds.num_classes();
    if (ds.graphs.empty()) return s;
    s.min_nodes = std::numeric_limits<int>::max();
    s.min_edges = std::numeric_limits<long long>::max();
    double nodes = 0, edges = 0;
    for (const Graph& g : ds.graphs) {
        nodes += g.node_count();
        edges += static_cast<double>(g.edge_count());
        s.max_nodes = std::max(s.max_nodes, g.node_count());
        s.min_nodes = std::min(s.min_nodes, g.node_count());
        s.max_edges = std::max(s.max_edges, g.edge_count());
        s.min_edges = std::min(s.min_edges, g.edge_count());
    }
    s.avg_nodes = nodes / static_cast<double>(s.graph_count);
    s.avg_edges = edges / static_cast<double>(s.graph_count);
    return s;
}

}  // namespace graphfeat
