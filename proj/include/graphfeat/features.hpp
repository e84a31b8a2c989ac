#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphfeat/graph.hpp"
#include "graphfeat/metrics.hpp"
#include "graphfeat/parallel.hpp"
#include "graphfeat/spectral.hpp"
#include "graphfeat/tudataset.hpp"

namespace graphfeat {

inline constexpr int kFeatureCount = 9;
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "n",           "m",           "avg_degree",      "diameter",       "avg_closeness",
    "avg_betweenness", "avg_clustering", "spectral_radius", "laplacian_trace"};

/// The nine structural descriptors of one graph, in fixed column order.
struct FeatureVector {
    double n = 0;
    double m = 0;
    double avg_degree = 0;
    double diameter = 0;
    double avg_closeness = 0;
    double avg_betweenness = 0;
    double avg_clustering = 0;
    double spectral_radius = 0;
    double laplacian_trace = 0;

    std::array<double, kFeatureCount> to_array() const {
        return {n, m, avg_degree, diameter, avg_closeness, avg_betweenness, avg_clustering,
                spectral_radius, laplacian_trace};
    }
};

/// Row-per-graph feature matrix with labels. Width is 9 for freshly
/// extracted features and smaller for column-masked views.
struct FeatureMatrix {
    std::vector<std::string> names;
    std::vector<double> values;  // row-major, rows() x cols()
    std::vector<int> labels;
    std::vector<int> graph_ids;

    std::size_t rows() const { return labels.size(); }
    int cols() const { return static_cast<int>(names.size()); }

    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * static_cast<std::size_t>(cols()),
                static_cast<std::size_t>(cols())};
    }

    double at(std::size_t i, int j) const {
        return values[i * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(j)];
    }

    int num_classes() const {
        int c = 0;
        for (int l : labels) c = std::max(c, l + 1);
        return c;
    }

    void push_row(int graph_id, int label, std::span<const double> row_values) {
        graph_ids.push_back(graph_id);
        labels.push_back(label);
        values.insert(values.end(), row_values.begin(), row_values.end());
    }

    FeatureMatrix select_columns(const std::vector<int>& columns) const {
        FeatureMatrix out;
        for (int c : columns) out.names.push_back(names[static_cast<std::size_t>(c)]);
        out.labels = labels;
        out.graph_ids = graph_ids;
        out.values.reserve(rows() * columns.size());
        for (std::size_t i = 0; i < rows(); ++i)
            for (int c : columns) out.values.push_back(at(i, c));
        return out;
    }

    FeatureMatrix select_rows(const std::vector<std::size_t>& idx) const {
        FeatureMatrix out;
        out.names = names;
        out.values.reserve(idx.size() * static_cast<std::size_t>(cols()));
        for (std::size_t i : idx) {
            out.labels.push_back(labels[i]);
            out.graph_ids.push_back(graph_ids[i]);
            auto r = row(i);
            out.values.insert(out.values.end(), r.begin(), r.end());
        }
        return out;
    }
};

inline FeatureVector extract_features(const Graph& g, double spectral_tol = 1e-9,
                                      int spectral_max_iter = 0) {
    if (g.node_count() < 1) throw std::invalid_argument("extract_features: empty graph");
    FeatureVector f;
    f.n = static_cast<double>(g.node_count());
    f.m = static_cast<double>(g.edge_count());
    f.avg_degree = average_degree(g);
    f.diameter = static_cast<double>(diameter(g));
    f.avg_closeness = average_closeness(g);
    f.avg_betweenness = average_betweenness(g);
    f.avg_clustering = average_clustering(g);
    SpectralSummary s = laplacian_spectrum_summary(g, spectral_tol, spectral_max_iter);
    f.spectral_radius = s.spectral_radius;
    f.laplacian_trace = s.trace;
    return f;
}

/// Feature rows for every graph, in dataset order. Graphs fan out across
/// `jobs` threads into pre-assigned row slots, so the result does not depend
/// on the schedule. The first failing graph (lowest index) aborts the call.
inline FeatureMatrix extract_all(const Dataset& ds, int jobs = 1, double spectral_tol = 1e-9,
                                 int spectral_max_iter = 0) {
    if (ds.graphs.empty()) throw std::invalid_argument("extract_all: empty dataset");
    const std::size_t count = ds.graphs.size();
    std::vector<std::array<double, kFeatureCount>> rows(count);
    std::vector<std::string> errors(count);
    parallel_for(count, jobs, [&](std::size_t i) {
        try {
            rows[i] = extract_features(ds.graphs[i], spectral_tol, spectral_max_iter).to_array();
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < count; ++i)
        if (!errors[i].empty())
            throw std::runtime_error("extract_all: graph " + std::to_string(i) + ": " + errors[i]);

    FeatureMatrix fm;
    fm.names.assign(kFeatureNames.begin(), kFeatureNames.end());
    fm.values.reserve(count * kFeatureCount);
    for (std::size_t i = 0; i < count; ++i)
        fm.push_row(static_cast<int>(i), ds.labels[i], rows[i]);
    return fm;
}

/// Per-column z-scoring with population statistics fitted on training data;
/// constant columns (stdev 0) pass through unchanged.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stdev;

    static Standardizer fit(const FeatureMatrix& train) {
        if (train.rows() == 0) throw std::invalid_argument("Standardizer::fit: empty matrix");
        const int d = train.cols();
        const double inv_n = 1.0 / static_cast<double>(train.rows());
        Standardizer s;
        s.mean.assign(static_cast<std::size_t>(d), 0.0);
        s.stdev.assign(static_cast<std::size_t>(d), 0.0);
        for (std::size_t i = 0; i < train.rows(); ++i)
            for (int j = 0; j < d; ++j) s.mean[static_cast<std::size_t>(j)] += train.at(i, j);
        for (double& x : s.mean) x *= inv_n;
        for (std::size_t i = 0; i < train.rows(); ++i)
            for (int j = 0; j < d; ++j) {
                double dlt = train.at(i, j) - s.mean[static_cast<std::size_t>(j)];
                s.stdev[static_cast<std::size_t>(j)] += dlt * dlt;
            }
        for (double& x : s.stdev) x = std::sqrt(x * inv_n);
        return s;
    }

    FeatureMatrix apply(const FeatureMatrix& x) const {
        if (static_cast<std::size_t>(x.cols()) != mean.size())
            throw std::invalid_argument("Standardizer::apply: column mismatch");
        FeatureMatrix out = x;
        const int d = x.cols();
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (int j = 0; j < d; ++j) {
                double sd = stdev[static_cast<std::size_t>(j)];
                if (sd > 0.0)
                    out.values[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                        (x.at(i, j) - mean[static_cast<std::size_t>(j)]) / sd;
            }
        return out;
    }
};

/// 12 significant digits; enough to reproduce every feature bit-stably
/// through the CSV interchange.
inline std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& fm) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "graph_id,label";
    for (const auto& n : fm.names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < fm.rows(); ++i) {
        out << fm.graph_ids[i] << ',' << fm.labels[i];
        for (int j = 0; j < fm.cols(); ++j) out << ',' << format_real(fm.at(i, j));
        out << '\n';
    }
}

inline FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    FeatureMatrix fm;
    {
        std::stringstream header(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(header, field, ',')) fields.push_back(field);
        if (fields.size() < 3 || fields[0] != "graph_id" || fields[1] != "label")
            throw std::runtime_error(path.string() + ": expected header graph_id,label,<features>");
        fm.names.assign(fields.begin() + 2, fields.end());
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != fm.names.size() + 2)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": wrong field count");
        fm.graph_ids.push_back(std::stoi(fields[0]));
        fm.labels.push_back(std::stoi(fields[1]));
        for (std::size_t j = 2; j < fields.size(); ++j) fm.values.push_back(std::stod(fields[j]));
    }
    if (fm.rows() == 0) throw std::runtime_error(path.string() + ": no data rows");

    // Classifiers assume contiguous class ids.
    std::vector<char> seen(static_cast<std::size_t>(fm.num_classes()), 0);
    for (int l : fm.labels) {
        if (l < 0) throw std::runtime_error(path.string() + ": negative label");
        seen[static_cast<std::size_t>(l)] = 1;
    }
    for (char s : seen)
        if (!s) throw std::runtime_error(path.string() + ": labels are not contiguous 0..C-1");
    return fm;
}

}  // namespace graphfeat
