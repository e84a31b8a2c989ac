#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "graphfeat/features.hpp"
#include "graphfeat/knn.hpp"
#include "graphfeat/random_forest.hpp"
#include "graphfeat/svm.hpp"

namespace graphfeat {

inline constexpr const char* kModelFormat = "graphfeat.model";
inline constexpr int kModelVersion = 1;

/// A trained classifier plus the standardizer it was fitted behind (if any),
/// so predictions on raw feature rows are self-contained.
struct SavedModel {
    std::variant<KnnModel, SvmModel, Forest> classifier;
    std::optional<Standardizer> scaler;

    int predict(std::span<const double> x) const {
        std::vector<double> scaled;
        if (scaler) {
            scaled.assign(x.begin(), x.end());
            for (std::size_t j = 0; j < scaled.size(); ++j)
                if (scaler->stdev[j] > 0) scaled[j] = (scaled[j] - scaler->mean[j]) / scaler->stdev[j];
            x = scaled;
        }
        if (const auto* knn = std::get_if<KnnModel>(&classifier)) return knn->predict(x);
        if (const auto* svm = std::get_if<SvmModel>(&classifier)) return svm_predict(*svm, x);
        return rf_predict(std::get<Forest>(classifier), x);
    }
};

namespace detail {

inline nlohmann::ordered_json matrix_to_json(const FeatureMatrix& fm) {
    nlohmann::ordered_json j;
    j["names"] = fm.names;
    j["labels"] = fm.labels;
    j["graph_ids"] = fm.graph_ids;
    j["values"] = fm.values;
    return j;
}

inline FeatureMatrix matrix_from_json(const nlohmann::json& j) {
    FeatureMatrix fm;
    fm.names = j.at("names").get<std::vector<std::string>>();
    fm.labels = j.at("labels").get<std::vector<int>>();
    fm.graph_ids = j.at("graph_ids").get<std::vector<int>>();
    fm.values = j.at("values").get<std::vector<double>>();
    return fm;
}

}  // namespace detail

inline nlohmann::ordered_json model_to_json(const SavedModel& model) {
    nlohmann::ordered_json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    if (const auto* knn = std::get_if<KnnModel>(&model.classifier)) {
        j["classifier"] = "knn";
        j["k"] = knn->cfg.k;
        j["train"] = detail::matrix_to_json(knn->train);
    } else if (const auto* svm = std::get_if<SvmModel>(&model.classifier)) {
        j["classifier"] = "svm";
        j["C"] = svm->c;
        j["num_classes"] = svm->num_classes;
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (const auto& p : svm->pairs) {
            nlohmann::ordered_json pj;
            pj["class_a"] = p.class_a;
            pj["class_b"] = p.class_b;
            pj["w"] = p.w;
            pj["bias"] = p.bias;
            pj["dual_objective"] = p.dual_objective;
            pj["iterations"] = p.iterations;
            pj["converged"] = p.converged;
            pairs.push_back(std::move(pj));
        }
        j["pairs"] = std::move(pairs);
    } else {
        const Forest& f = std::get<Forest>(model.classifier);
        j["classifier"] = "rf";
        j["num_classes"] = f.num_classes;
        j["feature_count"] = f.feature_count;
        j["max_depth"] = f.max_depth;
        j["seed"] = f.seed;
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const Tree& t : f.trees) {
            nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
            for (const TreeNode& nd : t.nodes) {
                nlohmann::ordered_json nj;
                nj["feature"] = nd.feature;
                nj["threshold"] = nd.threshold;
                nj["left"] = nd.left;
                nj["right"] = nd.right;
                nj["n"] = nd.n_samples;
                nj["impurity"] = nd.impurity;
                if (nd.is_leaf()) nj["counts"] = nd.class_counts;
                nodes.push_back(std::move(nj));
            }
            trees.push_back(nlohmann::ordered_json{{"nodes", std::move(nodes)}});
        }
        j["trees"] = std::move(trees);
    }
    if (model.scaler) {
        j["scaler"] = {{"mean", model.scaler->mean}, {"stdev", model.scaler->stdev}};
    }
    return j;
}

inline SavedModel model_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != kModelFormat)
        throw std::runtime_error("model file: unrecognized format");
    if (j.value("version", 0) != kModelVersion)
        throw std::runtime_error("model file: unsupported version");

    SavedModel model;
    const std::string kind = j.at("classifier").get<std::string>();
    if (kind == "knn") {
        KnnModel knn;
        knn.cfg.k = j.at("k").get<int>();
        knn.train = detail::matrix_from_json(j.at("train"));
        model.classifier = std::move(knn);
    } else if (kind == "svm") {
        SvmModel svm;
        svm.c = j.at("C").get<double>();
        svm.num_classes = j.at("num_classes").get<int>();
        for (const auto& pj : j.at("pairs")) {
            BinarySvm p;
            p.class_a = pj.at("class_a").get<int>();
            p.class_b = pj.at("class_b").get<int>();
            p.w = pj.at("w").get<std::vector<double>>();
            p.bias = pj.at("bias").get<double>();
            p.dual_objective = pj.at("dual_objective").get<double>();
            p.iterations = pj.at("iterations").get<int>();
            p.converged = pj.at("converged").get<bool>();
            svm.pairs.push_back(std::move(p));
        }
        model.classifier = std::move(svm);
    } else if (kind == "rf") {
        Forest f;
        f.num_classes = j.at("num_classes").get<int>();
        f.feature_count = j.at("feature_count").get<int>();
        f.max_depth = j.at("max_depth").get<int>();
        f.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& tj : j.at("trees")) {
            Tree t;
            for (const auto& nj : tj.at("nodes")) {
                TreeNode nd;
                nd.feature = nj.at("feature").get<int>();
                nd.threshold = nj.at("threshold").get<double>();
                nd.left = nj.at("left").get<int>();
                nd.right = nj.at("right").get<int>();
                nd.n_samples = nj.at("n").get<int>();
                nd.impurity = nj.at("impurity").get<double>();
                if (nd.is_leaf()) nd.class_counts = nj.at("counts").get<std::vector<int>>();
                t.nodes.push_back(std::move(nd));
            }
            f.trees.push_back(std::move(t));
        }
        model.classifier = std::move(f);
    } else {
        throw std::runtime_error("model file: unknown classifier '" + kind + "'");
    }
    if (j.contains("scaler")) {
        Standardizer s;
        s.mean = j.at("scaler").at("mean").get<std::vector<double>>();
        s.stdev = j.at("scaler").at("stdev").get<std::vector<double>>();
        model.scaler = std::move(s);
    }
    return model;
}

inline void save_model(const std::filesystem::path& path, const SavedModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << model_to_json(model).dump(2) << '\n';
}

inline SavedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    nlohmann::json j;
    in >> j;
    return model_from_json(j);
}

}  // namespace graphfeat
