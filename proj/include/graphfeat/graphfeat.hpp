#pragma once

/// Umbrella header: whole-graph classification from nine structural
/// features, with k-NN / linear-SVM / random-forest classifiers and the
/// cross-validation, PCA, feature-importance and subset-search experiment
/// harness on top.

#include "graphfeat/graph.hpp"
#include "graphfeat/tudataset.hpp"
#include "graphfeat/metrics.hpp"
#include "graphfeat/spectral.hpp"
#include "graphfeat/features.hpp"
#include "graphfeat/knn.hpp"
#include "graphfeat/svm.hpp"
#include "graphfeat/random_forest.hpp"
#include "graphfeat/model_io.hpp"
#include "graphfeat/folds.hpp"
#include "graphfeat/cross_validation.hpp"
#include "graphfeat/pca.hpp"
#include "graphfeat/stats.hpp"
#include "graphfeat/baselines.hpp"
