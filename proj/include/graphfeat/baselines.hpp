#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace graphfeat {

/// Published reference numbers for the ten standard benchmark datasets.
/// These are literature-sourced constants used for side-by-side report
/// columns and for acceptance bands; they are never recomputed here.

inline constexpr int kBenchmarkDatasetCount = 10;
inline constexpr std::array<const char*, kBenchmarkDatasetCount> kBenchmarkDatasets = {
    "COLLAB", "IMDB-B", "IMDB-M", "RDT-B", "RDT-M5K",
    "PROTEINS", "MUTAG", "NCI1", "NCI109", "PTC"};

/// Directory names the official archives unpack to, per dataset, in the
/// order of kBenchmarkDatasets. Aliases are tried in order.
inline constexpr std::array<std::array<const char*, 2>, kBenchmarkDatasetCount> kBenchmarkDirAliases = {{
    {"COLLAB", nullptr},
    {"IMDB-BINARY", "IMDB-B"},
    {"IMDB-MULTI", "IMDB-M"},
    {"REDDIT-BINARY", "RDT-B"},
    {"REDDIT-MULTI-5K", "RDT-M5K"},
    {"PROTEINS", nullptr},
    {"MUTAG", nullptr},
    {"NCI1", nullptr},
    {"NCI109", nullptr},
    {"PTC_MR", "PTC"},
}};

struct PublishedDatasetStats {
    const char* dataset;
    long long graphs;
    double avg_nodes;
    int max_nodes;
    int min_nodes;
    double avg_edges;
    long long max_edges;
    long long min_edges;
    int classes;
};

inline constexpr std::array<PublishedDatasetStats, kBenchmarkDatasetCount> kPublishedDatasetStats = {{
    {"COLLAB", 5000, 74.49, 492, 32, 2457.78, 40119, 60, 3},
    {"IMDB-B", 1000, 19.77, 136, 12, 96.53, 1249, 26, 2},
    {"IMDB-M", 1500, 13.00, 89, 7, 65.94, 1467, 12, 3},
    {"RDT-B", 2000, 429.63, 3782, 6, 497.75, 4071, 4, 2},
    {"RDT-M5K", 4999, 508.52, 3648, 22, 594.87, 4783, 21, 5},
    {"PROTEINS", 1113, 39.06, 620, 4, 72.82, 1049, 5, 2},
    {"MUTAG", 188, 17.93, 28, 10, 19.79, 33, 10, 2},
    {"NCI1", 4110, 29.87, 111, 3, 32.30, 119, 2, 2},
    {"NCI109", 4127, 29.68, 111, 4, 32.13, 119, 3, 2},
    {"PTC", 344, 14.29, 64, 2, 14.69, 71, 1, 2},
}};

inline constexpr double kNoResult = std::numeric_limits<double>::quiet_NaN();

struct PublishedAccuracy {
    const char* method;
    // Percent accuracy per dataset in kBenchmarkDatasets order; NaN = not reported.
    std::array<double, kBenchmarkDatasetCount> accuracy;
};

inline constexpr std::array<PublishedAccuracy, 14> kPublishedAccuracy = {{
    {"GK", {72.84, 65.87, 43.89, 78.00, 41.01, 71.67, 81.58, 69.18, 69.82, 55.65}},
    {"WL", {79.02, 73.40, 49.33, 81.10, 49.44, 74.68, 82.05, 80.13, 80.22, 57.97}},
    {"GCN", {81.72, 73.30, 51.20, 89.30, 56.81, 75.65, 87.20, 83.63, 72.50, kNoResult}},
    {"GAT", {75.80, 70.50, 47.80, kNoResult, kNoResult, 74.70, 89.40, 74.90, 75.80, kNoResult}},
    {"GraphSAGE", {79.70, 72.40, 49.90, 86.10, 50.00, 65.90, 79.80, 76.00, 70.30, 63.90}},
    {"GIN", {80.20, 75.10, 52.30, 92.40, 57.50, 76.20, 89.40, 82.70, 82.00, 64.60}},
    {"DGCNN", {73.76, 70.03, 47.83, 77.10, 48.70, 75.54, 85.83, 74.44, 75.03, 58.59}},
    {"CapsGNN", {79.62, 73.10, 50.27, kNoResult, 52.88, 76.28, 86.67, 78.35, kNoResult, kNoResult}},
    {"DSGC", {79.20, 73.20, 48.50, 92.20, kNoResult, 74.20, 86.70, 79.80, kNoResult, kNoResult}},
    {"GFN", {81.50, 73.00, 51.80, kNoResult, 57.59, 76.46, 90.84, 82.77, kNoResult, kNoResult}},
    {"GC-GSL", {kNoResult, 68.46, 46.39, kNoResult, kNoResult, 76.55, 83.86, 82.04, 81.86, 60.11}},
    {"k-NN", {73.25, 74.10, 50.67, 89.50, 52.80, 77.84, 89.66, 62.77, 68.89, 59.35}},
    {"SVM", {69.76, 74.50, 50.67, 89.53, 54.80, 79.64, 89.66, 65.21, 65.65, 68.61}},
    {"Random Forest", {76.90, 77.00, 54.44, 90.00, 57.15, 79.93, 93.10, 71.53, 74.68, 65.81}},
}};

inline int benchmark_dataset_index(const std::string& name) {
    for (int i = 0; i < kBenchmarkDatasetCount; ++i) {
        if (name == kBenchmarkDatasets[static_cast<std::size_t>(i)]) return i;
        for (const char* alias : kBenchmarkDirAliases[static_cast<std::size_t>(i)])
            if (alias && name == alias) return i;
    }
    return -1;
}

}  // namespace graphfeat
