// graphfeat: whole-graph classification from nine structural features.
// Subcommands cover the full pipeline: extract features from a TUDataset
// directory, cross-validate the three classifiers, emit PCA embeddings,
// random-forest feature importances, exhaustive feature-subset curves, and
// a report that lines reproduced accuracies up against published results.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <graphfeat/graphfeat.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
    std::string data;
    std::string name;
    std::string out = "out";
    std::uint64_t seed = 42;
    int folds = 5;
    std::string classifier = "all";
    int knn_k = 5;
    double svm_c = 10.0;
    int rf_trees = 200;
    int rf_depth = 5;
    bool no_scale = false;
    int jobs = 0;  // 0 = --jobs not given; falls back to GRAPHFEAT_JOBS, then all cores
    int subset_k = 0;  // subsets: single subset size; 0 = full range 1..9
    std::string model;
};

int resolve_jobs(const Options& opt) {
    if (opt.jobs > 0) return opt.jobs;
    if (const char* env = std::getenv("GRAPHFEAT_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return graphfeat::effective_jobs(0);
}

std::string dataset_name(const Options& opt) {
    if (!opt.name.empty()) return opt.name;
    fs::path p(opt.data);
    std::string base = p.filename().string();
    if (base.empty()) base = p.parent_path().filename().string();
    return base;
}

void add_common_flags(CLI::App* cmd, Options& opt, bool needs_data = true) {
    auto* data = cmd->add_option("--data", opt.data, "TUDataset directory");
    if (needs_data) data->required();
    cmd->add_option("--name", opt.name, "dataset name (defaults to the directory name)");
    cmd->add_option("--out", opt.out, "output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "master seed")->capture_default_str();
    cmd->add_option("--jobs", opt.jobs, "worker threads (default: GRAPHFEAT_JOBS or all cores)");
}

void add_learner_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--folds", opt.folds, "cross-validation folds")->capture_default_str();
    cmd->add_option("--k", opt.knn_k, "k-NN neighbor count")->capture_default_str();
    cmd->add_option("--C", opt.svm_c, "SVM regularization")->capture_default_str();
    cmd->add_option("--trees", opt.rf_trees, "forest size")->capture_default_str();
    cmd->add_option("--depth", opt.rf_depth, "maximum tree depth")->capture_default_str();
    cmd->add_flag("--no-scale", opt.no_scale, "skip z-scoring for k-NN and SVM");
}

graphfeat::ClassifierConfig make_config(const Options& opt, graphfeat::ClassifierKind kind) {
    graphfeat::ClassifierConfig cfg;
    cfg.kind = kind;
    cfg.knn_k = opt.knn_k;
    cfg.svm_c = opt.svm_c;
    cfg.rf_trees = opt.rf_trees;
    cfg.rf_max_depth = opt.rf_depth;
    cfg.seed = opt.seed;
    cfg.scale = !opt.no_scale;
    cfg.jobs = resolve_jobs(opt);
    return cfg;
}

fs::path features_csv_path(const Options& opt) {
    return fs::path(opt.out) / (dataset_name(opt) + "_features.csv");
}

void write_meta(const Options& opt, const std::string& command, const ordered_json& extra,
                const std::vector<std::string>& outputs) {
    ordered_json meta;
    meta["command"] = command;
    meta["version"] = kVersion;
    meta["dataset"] = opt.data.empty() ? "" : dataset_name(opt);
    meta["seed"] = opt.seed;
    meta["jobs"] = resolve_jobs(opt);
    for (auto& [k, v] : extra.items()) meta[k] = v;
    meta["outputs"] = outputs;
    fs::path path = fs::path(opt.out) / (std::string(meta["dataset"].get<std::string>().empty()
                                                          ? command
                                                          : meta["dataset"].get<std::string>() + "_" + command) +
                                         "_meta.json");
    std::ofstream out(path);
    out << meta.dump(2) << '\n';
}

void print_summary(const graphfeat::Dataset& ds) {
    auto s = graphfeat::summarize(ds);
    std::cout << ds.name << ": " << s.graph_count << " graphs, " << s.num_classes
              << " classes, avg nodes " << graphfeat::format_real(s.avg_nodes) << " (min "
              << s.min_nodes << ", max " << s.max_nodes << "), avg edges "
              << graphfeat::format_real(s.avg_edges) << " (min " << s.min_edges << ", max "
              << s.max_edges << ")\n";
    if (ds.simplified.self_loops > 0 || ds.simplified.duplicate_edges > 0)
        std::cout << "warning: simplified input (" << ds.simplified.self_loops << " self-loops, "
                  << ds.simplified.duplicate_edges << " duplicate edges dropped)\n";
}

/// Experiment commands read features from the CSV interchange file, building
/// it first if needed. Going through the 12-digit CSV both times makes a
/// cached run and a fresh run bit-identical.
graphfeat::FeatureMatrix load_or_extract(const Options& opt, bool print_stats = false) {
    fs::create_directories(opt.out);
    fs::path csv = features_csv_path(opt);
    if (!fs::exists(csv)) {
        graphfeat::Dataset ds = graphfeat::parse_tudataset(opt.data, dataset_name(opt));
        if (print_stats) print_summary(ds);
        graphfeat::FeatureMatrix fm = graphfeat::extract_all(ds, resolve_jobs(opt));
        graphfeat::write_feature_csv(csv, fm);
    } else if (print_stats) {
        std::cout << "using cached features: " << csv.string() << '\n';
    }
    return graphfeat::read_feature_csv(csv);
}

ordered_json cv_to_json(const graphfeat::CVResult& r, int folds) {
    ordered_json j;
    j["classifier"] = r.classifier;
    j["dataset"] = r.dataset;
    j["seed"] = r.seed;
    j["folds"] = folds;
    j["feature_mask"] = r.feature_mask;
    j["fold_accuracy"] = r.fold_accuracy;
    j["mean_accuracy_pct"] = r.mean_accuracy_pct;
    return j;
}

std::vector<std::string> mask_names(std::uint32_t mask, const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < names.size(); ++j)
        if (mask & (1u << j)) out.push_back(names[j]);
    return out;
}

int cmd_extract(const Options& opt) {
    fs::create_directories(opt.out);
    graphfeat::Dataset ds = graphfeat::parse_tudataset(opt.data, dataset_name(opt));
    print_summary(ds);
    graphfeat::FeatureMatrix fm = graphfeat::extract_all(ds, resolve_jobs(opt));
    fs::path csv = features_csv_path(opt);
    graphfeat::write_feature_csv(csv, fm);
    std::cout << "wrote " << csv.string() << " (" << fm.rows() << " rows)\n";
    write_meta(opt, "extract", {}, {csv.string()});
    return 0;
}

int cmd_cv(const Options& opt) {
    graphfeat::FeatureMatrix fm = load_or_extract(opt);
    graphfeat::FoldAssignment folds = graphfeat::stratified_folds(fm.labels, opt.folds, opt.seed);
    for (int c : folds.short_classes)
        std::cout << "warning: class " << c << " has fewer than " << opt.folds
                  << " rows; spread round-robin\n";

    std::vector<graphfeat::ClassifierKind> kinds;
    if (opt.classifier == "all")
        kinds = {graphfeat::ClassifierKind::knn, graphfeat::ClassifierKind::svm,
                 graphfeat::ClassifierKind::rf};
    else if (opt.classifier == "knn")
        kinds = {graphfeat::ClassifierKind::knn};
    else if (opt.classifier == "svm")
        kinds = {graphfeat::ClassifierKind::svm};
    else if (opt.classifier == "rf")
        kinds = {graphfeat::ClassifierKind::rf};
    else
        throw CLI::ValidationError("--classifier must be one of knn, svm, rf, all");

    ordered_json results = ordered_json::array();
    std::cout << "dataset=" << dataset_name(opt) << " seed=" << opt.seed << " folds=" << opt.folds
              << "\n\n";
    std::cout << std::left << std::setw(12) << "classifier";
    for (int f = 0; f < opt.folds; ++f) std::cout << std::setw(9) << ("fold" + std::to_string(f + 1));
    std::cout << "mean%\n";
    for (auto kind : kinds) {
        graphfeat::CVResult r =
            graphfeat::cross_validate(fm, make_config(opt, kind), folds, dataset_name(opt));
        std::cout << std::setw(12) << r.classifier;
        for (double a : r.fold_accuracy)
            std::cout << std::setw(9) << std::fixed << std::setprecision(4) << a;
        std::cout << std::fixed << std::setprecision(2) << r.mean_accuracy_pct << "\n";
        std::cout.unsetf(std::ios::fixed);
        std::cout << std::setprecision(6);
        results.push_back(cv_to_json(r, opt.folds));
    }

    ordered_json doc;
    doc["dataset"] = dataset_name(opt);
    doc["seed"] = opt.seed;
    doc["folds"] = opt.folds;
    doc["scaled"] = !opt.no_scale;
    doc["results"] = results;
    fs::path out_json = fs::path(opt.out) / (dataset_name(opt) + "_cv.json");
    std::ofstream(out_json) << doc.dump(2) << '\n';
    std::cout << "\nwrote " << out_json.string() << '\n';
    write_meta(opt, "cv",
               {{"folds", opt.folds}, {"classifier", opt.classifier}, {"scaled", !opt.no_scale}},
               {out_json.string()});
    return 0;
}

int cmd_pca(const Options& opt) {
    graphfeat::FeatureMatrix fm = load_or_extract(opt);
    graphfeat::Standardizer scaler = graphfeat::Standardizer::fit(fm);
    graphfeat::Embedding2D emb = graphfeat::pca2(scaler.apply(fm));

    fs::path csv = fs::path(opt.out) / (dataset_name(opt) + "_pca.csv");
    graphfeat::write_pca_csv(csv, fm, emb);

    ordered_json doc;
    doc["dataset"] = dataset_name(opt);
    doc["explained_variance"] = emb.explained_variance;
    doc["components"] = {{"pc1", emb.components[0]}, {"pc2", emb.components[1]}};
    doc["feature_names"] = fm.names;
    fs::path out_json = fs::path(opt.out) / (dataset_name(opt) + "_pca.json");
    std::ofstream(out_json) << doc.dump(2) << '\n';

    std::cout << "pc1 variance " << emb.explained_variance[0] << ", pc2 variance "
              << emb.explained_variance[1] << '\n';
    std::cout << "wrote " << csv.string() << " (" << fm.rows() << " rows) and " << out_json.string()
              << '\n';
    write_meta(opt, "pca", {}, {csv.string(), out_json.string()});
    return 0;
}

int cmd_importance(const Options& opt) {
    graphfeat::FeatureMatrix fm = load_or_extract(opt);
    graphfeat::RfConfig rc;
    rc.trees = opt.rf_trees;
    rc.max_depth = opt.rf_depth;
    rc.seed = opt.seed;
    rc.jobs = resolve_jobs(opt);
    graphfeat::Forest forest = graphfeat::rf_train(fm, rc);
    std::vector<double> imp = graphfeat::rf_feature_importance(forest);

    std::cout << "feature importance (" << dataset_name(opt) << ", " << opt.rf_trees
              << " trees, depth " << opt.rf_depth << ")\n";
    for (std::size_t j = 0; j < imp.size(); ++j)
        std::cout << "  " << std::left << std::setw(18) << fm.names[j] << graphfeat::format_real(imp[j])
                  << '\n';

    ordered_json doc;
    doc["dataset"] = dataset_name(opt);
    doc["seed"] = opt.seed;
    doc["trees"] = opt.rf_trees;
    doc["depth"] = opt.rf_depth;
    doc["feature_names"] = fm.names;
    doc["importance"] = imp;
    fs::path out_json = fs::path(opt.out) / (dataset_name(opt) + "_importance.json");
    std::ofstream(out_json) << doc.dump(2) << '\n';
    std::cout << "wrote " << out_json.string() << '\n';
    write_meta(opt, "importance", {{"trees", opt.rf_trees}, {"depth", opt.rf_depth}},
               {out_json.string()});
    return 0;
}

int cmd_subsets(const Options& opt) {
    graphfeat::FeatureMatrix fm = load_or_extract(opt);
    graphfeat::FoldAssignment folds = graphfeat::stratified_folds(fm.labels, opt.folds, opt.seed);
    int k_min = opt.subset_k > 0 ? opt.subset_k : 1;
    int k_max = opt.subset_k > 0 ? opt.subset_k : fm.cols();
    graphfeat::ClassifierConfig cfg = make_config(opt, graphfeat::ClassifierKind::rf);
    std::vector<graphfeat::SubsetBest> best = graphfeat::subset_search(
        fm, k_min, k_max, cfg, folds, dataset_name(opt), resolve_jobs(opt));

    ordered_json arr = ordered_json::array();
    std::cout << std::left << std::setw(4) << "k" << std::setw(14) << "evaluations"
              << std::setw(10) << "mean%" << "best subset\n";
    for (const auto& sb : best) {
        auto names = mask_names(sb.mask, fm.names);
        std::cout << std::setw(4) << sb.k << std::setw(14) << sb.evaluations << std::setw(10)
                  << std::fixed << std::setprecision(2) << sb.result.mean_accuracy_pct;
        std::cout.unsetf(std::ios::fixed);
        std::cout << std::setprecision(6);
        for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? "," : "") << names[i];
        std::cout << '\n';

        ordered_json j;
        j["k"] = sb.k;
        j["evaluations"] = sb.evaluations;
        j["best_mask"] = sb.mask;
        j["best_features"] = names;
        j["result"] = cv_to_json(sb.result, folds.k);
        arr.push_back(std::move(j));
    }

    ordered_json doc;
    doc["dataset"] = dataset_name(opt);
    doc["seed"] = opt.seed;
    doc["folds"] = opt.folds;
    doc["per_k"] = arr;
    fs::path out_json = fs::path(opt.out) / (dataset_name(opt) + "_subsets.json");
    std::ofstream(out_json) << doc.dump(2) << '\n';
    std::cout << "wrote " << out_json.string() << '\n';
    write_meta(opt, "subsets", {{"folds", opt.folds}, {"k", opt.subset_k}}, {out_json.string()});
    return 0;
}

int cmd_report(const Options& opt) {
    // Published accuracies plus whatever <name>_cv.json files earlier runs
    // left in the output directory.
    std::map<std::string, std::map<std::string, double>> reproduced;  // dataset -> classifier -> pct
    if (fs::exists(opt.out)) {
        for (const auto& entry : fs::directory_iterator(opt.out)) {
            std::string fname = entry.path().filename().string();
            if (fname.size() <= 8 || fname.substr(fname.size() - 8) != "_cv.json") continue;
            std::ifstream in(entry.path());
            nlohmann::json doc;
            try {
                in >> doc;
            } catch (...) {
                continue;
            }
            std::string ds = doc.value("dataset", "");
            if (ds.empty()) continue;
            for (const auto& r : doc.value("results", nlohmann::json::array()))
                reproduced[ds][r.value("classifier", "?")] = r.value("mean_accuracy_pct", 0.0);
        }
    }

    const char* repro_rows[3] = {"knn", "svm", "rf"};
    std::cout << "accuracy (%) per dataset; published numbers marked *, reproduced unmarked\n\n";
    std::cout << std::left << std::setw(16) << "method";
    for (const char* ds : graphfeat::kBenchmarkDatasets) std::cout << std::setw(10) << ds;
    std::cout << '\n';
    ordered_json table = ordered_json::array();
    for (const auto& row : graphfeat::kPublishedAccuracy) {
        std::cout << std::setw(16) << row.method;
        ordered_json cells = ordered_json::array();
        for (double a : row.accuracy) {
            if (std::isnan(a)) {
                std::cout << std::setw(10) << "N/A";
                cells.push_back(nullptr);
            } else {
                std::ostringstream cell;
                cell << std::fixed << std::setprecision(2) << a << '*';
                std::cout << std::setw(10) << cell.str();
                cells.push_back(a);
            }
        }
        std::cout << '\n';
        table.push_back({{"method", row.method}, {"source", "published"}, {"accuracy", cells}});
    }
    for (const char* clf : repro_rows) {
        std::cout << std::setw(16) << (std::string(clf) + " (this)");
        ordered_json cells = ordered_json::array();
        for (int d = 0; d < graphfeat::kBenchmarkDatasetCount; ++d) {
            double val = std::numeric_limits<double>::quiet_NaN();
            for (const auto& [ds, per_clf] : reproduced) {
                if (graphfeat::benchmark_dataset_index(ds) != d) continue;
                auto it = per_clf.find(clf);
                if (it != per_clf.end()) val = it->second;
            }
            if (std::isnan(val)) {
                std::cout << std::setw(10) << "-";
                cells.push_back(nullptr);
            } else {
                std::ostringstream cell;
                cell << std::fixed << std::setprecision(2) << val;
                std::cout << std::setw(10) << cell.str();
                cells.push_back(val);
            }
        }
        std::cout << '\n';
        table.push_back({{"method", clf}, {"source", "reproduced"}, {"accuracy", cells}});
    }

    fs::create_directories(opt.out);
    ordered_json doc;
    doc["datasets"] = graphfeat::kBenchmarkDatasets;
    doc["rows"] = table;
    fs::path out_json = fs::path(opt.out) / "report.json";
    std::ofstream(out_json) << doc.dump(2) << '\n';
    std::cout << "\nwrote " << out_json.string() << '\n';
    write_meta(opt, "report", {}, {out_json.string()});
    return 0;
}

int cmd_train(const Options& opt) {
    graphfeat::FeatureMatrix fm = load_or_extract(opt);
    graphfeat::SavedModel model;
    std::string clf = opt.classifier == "all" ? "rf" : opt.classifier;
    if (clf == "knn") {
        graphfeat::KnnModel knn;
        knn.cfg.k = opt.knn_k;
        if (!opt.no_scale) {
            model.scaler = graphfeat::Standardizer::fit(fm);
            knn.train = model.scaler->apply(fm);
        } else {
            knn.train = fm;
        }
        model.classifier = std::move(knn);
    } else if (clf == "svm") {
        graphfeat::FeatureMatrix train = fm;
        if (!opt.no_scale) {
            model.scaler = graphfeat::Standardizer::fit(fm);
            train = model.scaler->apply(fm);
        }
        model.classifier = graphfeat::svm_train(train, opt.svm_c);
    } else if (clf == "rf") {
        graphfeat::RfConfig rc;
        rc.trees = opt.rf_trees;
        rc.max_depth = opt.rf_depth;
        rc.seed = opt.seed;
        rc.jobs = resolve_jobs(opt);
        model.classifier = graphfeat::rf_train(fm, rc);
    } else {
        throw CLI::ValidationError("--classifier must be one of knn, svm, rf");
    }
    fs::path path = fs::path(opt.out) / (dataset_name(opt) + "_model_" + clf + ".json");
    graphfeat::save_model(path, model);
    std::cout << "wrote " << path.string() << '\n';
    write_meta(opt, "train", {{"classifier", clf}}, {path.string()});
    return 0;
}

int cmd_predict(const Options& opt) {
    graphfeat::SavedModel model = graphfeat::load_model(opt.model);
    graphfeat::FeatureMatrix fm = load_or_extract(opt);
    fs::path path = fs::path(opt.out) / (dataset_name(opt) + "_predictions.csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "graph_id,label,predicted\n";
    std::size_t correct = 0;
    for (std::size_t i = 0; i < fm.rows(); ++i) {
        int pred = model.predict(fm.row(i));
        if (pred == fm.labels[i]) ++correct;
        out << fm.graph_ids[i] << ',' << fm.labels[i] << ',' << pred << '\n';
    }
    std::cout << "accuracy " << std::fixed << std::setprecision(2)
              << 100.0 * static_cast<double>(correct) / static_cast<double>(fm.rows()) << "% over "
              << fm.rows() << " graphs\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << "wrote " << path.string() << '\n';
    write_meta(opt, "predict", {{"model", opt.model}}, {path.string()});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"whole-graph classification from nine structural features"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Options opt;
    auto* extract = app.add_subcommand("extract", "parse a dataset and write the feature CSV");
    add_common_flags(extract, opt);

    auto* cv = app.add_subcommand("cv", "cross-validate classifiers on one dataset");
    add_common_flags(cv, opt);
    add_learner_flags(cv, opt);
    cv->add_option("--classifier", opt.classifier, "knn, svm, rf or all")->capture_default_str();

    auto* pca = app.add_subcommand("pca", "two-component embedding of the feature rows");
    add_common_flags(pca, opt);

    auto* importance = app.add_subcommand("importance", "random-forest feature importances");
    add_common_flags(importance, opt);
    importance->add_option("--trees", opt.rf_trees, "forest size")->capture_default_str();
    importance->add_option("--depth", opt.rf_depth, "maximum tree depth")->capture_default_str();

    auto* subsets = app.add_subcommand("subsets", "exhaustive best-feature-subset search");
    add_common_flags(subsets, opt);
    subsets->add_option("--folds", opt.folds, "cross-validation folds")->capture_default_str();
    subsets->add_option("--k", opt.subset_k, "evaluate only this subset size (default: 1..9)");
    subsets->add_option("--trees", opt.rf_trees, "forest size")->capture_default_str();
    subsets->add_option("--depth", opt.rf_depth, "maximum tree depth")->capture_default_str();

    auto* report = app.add_subcommand("report", "merge reproduced accuracies with published results");
    report->add_option("--out", opt.out, "output directory holding *_cv.json files")
        ->capture_default_str();
    report->add_option("--seed", opt.seed, "recorded in run metadata")->capture_default_str();

    auto* train = app.add_subcommand("train", "fit one classifier and save it as JSON");
    add_common_flags(train, opt);
    add_learner_flags(train, opt);
    train->add_option("--classifier", opt.classifier, "knn, svm or rf")->capture_default_str();

    auto* predict = app.add_subcommand("predict", "classify a dataset with a saved model");
    add_common_flags(predict, opt);
    predict->add_option("--model", opt.model, "model JSON written by train")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return cmd_extract(opt);
        if (cv->parsed()) return cmd_cv(opt);
        if (pca->parsed()) return cmd_pca(opt);
        if (importance->parsed()) return cmd_importance(opt);
        if (subsets->parsed()) return cmd_subsets(opt);
        if (report->parsed()) return cmd_report(opt);
        if (train->parsed()) return cmd_train(opt);
        if (predict->parsed()) return cmd_predict(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
