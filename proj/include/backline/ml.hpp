#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "backline/aggregate.hpp"

namespace backline {

struct MlDataset {
    std::vector<FeatureArray> X;
    std::vector<int> y;  // 0/1
    std::vector<std::string> ids;

    std::size_t size() const { return y.size(); }
    std::size_t positives() const;
    MlDataset subset(std::span<const std::size_t> indices) const;
};

// Rows of one team, standardized columns by default.
MlDataset dataset_from_features(std::span<const FeatureVector> rows, const std::string& team,
                                bool use_standardized = true);

enum class ClassWeighting { balanced, scale_pos_weight_auto, none, upsample };

const char* to_string(ClassWeighting w);

struct ModelConfig {
    enum class Algorithm { gbdt, random_forest };

    Algorithm algorithm = Algorithm::gbdt;
    int n_estimators = 300;
    double learning_rate = 0.05;  // gbdt
    int max_depth = 3;            // gbdt; rf trees grow unrestricted
    double l2_leaf_reg = 1.0;     // gbdt
    int min_samples_split = 5;    // rf
    ClassWeighting class_weighting = ClassWeighting::scale_pos_weight_auto;
    std::uint64_t seed = 42;

    void validate() const;
};

// Binary tree stored as parallel-indexed nodes; feature < 0 marks a leaf.
// Routing: x[feature] < threshold goes left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(const FeatureArray& x) const;
};

class Model {
public:
    virtual ~Model() = default;
    // Ranking score: log-odds margin for gbdt, averaged probability for rf.
    virtual double predict_score(const FeatureArray& x) const = 0;
    virtual double predict_proba(const FeatureArray& x) const = 0;
    virtual const FeatureArray& total_gain() const = 0;
    virtual const char* algorithm() const = 0;
};

struct GbdtModel final : Model {
    double base_score = 0.0;  // log-odds prior
    double learning_rate = 0.05;
    std::vector<Tree> trees;
    FeatureArray gain{};

    // Margin after the first n_rounds trees (all by default).
    double predict_margin(const FeatureArray& x,
                          std::size_t n_rounds = static_cast<std::size_t>(-1)) const;
    double predict_score(const FeatureArray& x) const override { return predict_margin(x); }
    double predict_proba(const FeatureArray& x) const override;
    const FeatureArray& total_gain() const override { return gain; }
    const char* algorithm() const override { return "gbdt"; }
};

struct ForestModel final : Model {
    std::vector<Tree> trees;
    FeatureArray gain{};

    double predict_score(const FeatureArray& x) const override { return predict_proba(x); }
    double predict_proba(const FeatureArray& x) const override;
    const FeatureArray& total_gain() const override { return gain; }
    const char* algorithm() const override { return "random_forest"; }
};

GbdtModel train_gbdt(const MlDataset& train, const ModelConfig& cfg);
ForestModel train_random_forest(const MlDataset& train, const ModelConfig& cfg);
std::unique_ptr<Model> train_model(const MlDataset& train, const ModelConfig& cfg);

// Deterministic stratified split; per-class test counts are floored so
// tiny minorities round toward train.
std::pair<MlDataset, MlDataset> stratified_split(const MlDataset& data, double test_fraction,
                                                 std::uint64_t seed);

// Minority class topped up by resampling with replacement to the majority
// count; originals retained. Balanced input returns unchanged.
MlDataset upsample_minority(const MlDataset& train, std::uint64_t seed);

// Stratified fold membership, values in [0, k).
std::vector<int> stratified_folds(std::span<const int> y, int k, std::uint64_t seed);

struct EvalReport {
    double roc_auc = 0.0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double cv_mean = 0.0;  // filled by cross-validation
    double cv_std = 0.0;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// Mann-Whitney rank AUC with midrank tie correction. Degenerate single-class
// inputs score 0.5.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

EvalReport evaluate(const Model& model, const MlDataset& test, double threshold = 0.5);

struct CvResult {
    std::vector<EvalReport> folds;
    double auc_mean = 0.0;
    double auc_std = 0.0;
};

CvResult cross_validate(const MlDataset& train, const ModelConfig& cfg, int k = 5);

using ScoreFn = std::function<double(const FeatureArray&)>;

// Exact interventional Shapley values over all 2^5 coalitions; absent
// features are marginalized over the background rows.
FeatureArray shapley_attribution(const ScoreFn& f, const FeatureArray& x,
                                 std::span<const FeatureArray> background);
FeatureArray shapley_attribution(const Model& model, const FeatureArray& x,
                                 std::span<const FeatureArray> background);

struct Attribution {
    FeatureArray shap_mean_abs{};
    FeatureArray builtin_importance{};  // normalized gain share
    std::vector<FeatureArray> phi;      // per instance
    double baseline = 0.0;              // mean background score
    double spearman_rank_agreement = 0.0;
};

Attribution importance_comparison(const Model& model, const MlDataset& instances,
                                  std::span<const FeatureArray> background);

// Deterministic background sample of up to `count` rows.
std::vector<FeatureArray> sample_background(const MlDataset& train, std::size_t count,
                                            std::uint64_t seed);

std::string model_to_json(const Model& model);
std::unique_ptr<Model> model_from_json(const std::string& text);

// Stable per-purpose seed derivation (splitmix64 over seed + tag).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

double spearman_rank_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace backline
