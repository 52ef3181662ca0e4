#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "backline/errors.hpp"
#include "backline/ml.hpp"

namespace backline {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::size_t MlDataset::positives() const {
    return static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
}

MlDataset MlDataset::subset(std::span<const std::size_t> indices) const {
    MlDataset out;
    out.X.reserve(indices.size());
    out.y.reserve(indices.size());
    out.ids.reserve(indices.size());
    for (std::size_t i : indices) {
        out.X.push_back(X[i]);
        out.y.push_back(y[i]);
        out.ids.push_back(ids[i]);
    }
    return out;
}

MlDataset dataset_from_features(std::span<const FeatureVector> rows, const std::string& team,
                                bool use_standardized) {
    MlDataset out;
    for (const auto& row : rows) {
        if (!team.empty() && row.team != team) continue;
        out.X.push_back(use_standardized ? row.z : row.raw);
        out.y.push_back(row.outcome);
        out.ids.push_back(row.seq_id);
    }
    return out;
}

const char* to_string(ClassWeighting w) {
    switch (w) {
        case ClassWeighting::balanced: return "balanced";
        case ClassWeighting::scale_pos_weight_auto: return "scale_pos_weight";
        case ClassWeighting::none: return "none";
        case ClassWeighting::upsample: return "upsample";
    }
    return "none";
}

void ModelConfig::validate() const {
    if (n_estimators <= 0) throw ConfigError("ml: n_estimators must be positive");
    if (learning_rate <= 0.0) throw ConfigError("ml: learning_rate must be positive");
    if (max_depth <= 0) throw ConfigError("ml: max_depth must be positive");
    if (l2_leaf_reg < 0.0) throw ConfigError("ml: l2_leaf_reg must be non-negative");
    if (min_samples_split < 2) throw ConfigError("ml: min_samples_split must be at least 2");
}

double Tree::predict(const FeatureArray& x) const {
    int i = 0;
    while (nodes[i].feature >= 0) {
        i = x[static_cast<std::size_t>(nodes[i].feature)] < nodes[i].threshold ? nodes[i].left
                                                                               : nodes[i].right;
    }
    return nodes[i].value;
}

std::pair<MlDataset, MlDataset> stratified_split(const MlDataset& data, double test_fraction,
                                                 std::uint64_t seed) {
    if (test_fraction <= 0.0 || test_fraction >= 1.0) {
        throw ConfigError("split: test_fraction must be in (0,1)");
    }
    std::vector<std::size_t> train_idx, test_idx;
    for (int cls : {0, 1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data.y[i] == cls) members.push_back(i);
        }
        std::mt19937_64 rng(derive_seed(seed, 101 + static_cast<std::uint64_t>(cls)));
        std::shuffle(members.begin(), members.end(), rng);
        const std::size_t n_test =
            static_cast<std::size_t>(test_fraction * static_cast<double>(members.size()));
        for (std::size_t i = 0; i < members.size(); ++i) {
            (i < n_test ? test_idx : train_idx).push_back(members[i]);
        }
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {data.subset(train_idx), data.subset(test_idx)};
}

MlDataset upsample_minority(const MlDataset& train, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < train.size(); ++i) {
        (train.y[i] == 1 ? pos : neg).push_back(i);
    }
    if (pos.size() == neg.size()) return train;

    const auto& minority = pos.size() < neg.size() ? pos : neg;
    const std::size_t target = std::max(pos.size(), neg.size());
    if (minority.empty()) throw NumericalError("upsample: single-class training set");

    std::vector<std::size_t> indices(train.size());
    std::iota(indices.begin(), indices.end(), 0);
    std::mt19937_64 rng(derive_seed(seed, 202));
    std::uniform_int_distribution<std::size_t> pick(0, minority.size() - 1);
    for (std::size_t i = minority.size(); i < target; ++i) {
        indices.push_back(minority[pick(rng)]);
    }
    return train.subset(indices);
}

std::vector<int> stratified_folds(std::span<const int> y, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("cv: need at least 2 folds");
    std::vector<int> fold(y.size(), -1);
    for (int cls : {0, 1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == cls) members.push_back(i);
        }
        std::mt19937_64 rng(derive_seed(seed, 303 + static_cast<std::uint64_t>(cls)));
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t i = 0; i < members.size(); ++i) {
            fold[members[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
        }
    }
    return fold;
}

CvResult cross_validate(const MlDataset& train, const ModelConfig& cfg, int k) {
    cfg.validate();
    if (train.size() < static_cast<std::size_t>(k)) {
        throw NumericalError("cv: fewer rows than folds");
    }
    auto fold = stratified_folds(train.y, k, derive_seed(cfg.seed, 404));

    CvResult result;
    for (int f = 0; f < k; ++f) {
        std::vector<std::size_t> fit_idx, hold_idx;
        for (std::size_t i = 0; i < train.size(); ++i) {
            (fold[i] == f ? hold_idx : fit_idx).push_back(i);
        }
        if (hold_idx.empty() || fit_idx.empty()) continue;
        auto model = train_model(train.subset(fit_idx), cfg);
        result.folds.push_back(evaluate(*model, train.subset(hold_idx)));
    }
    if (result.folds.empty()) throw NumericalError("cv: no usable folds");

    double sum = 0.0;
    for (const auto& r : result.folds) sum += r.roc_auc;
    result.auc_mean = sum / static_cast<double>(result.folds.size());
    double ss = 0.0;
    for (const auto& r : result.folds) {
        ss += (r.roc_auc - result.auc_mean) * (r.roc_auc - result.auc_mean);
    }
    result.auc_std = std::sqrt(ss / static_cast<double>(result.folds.size()));
    return result;
}

std::unique_ptr<Model> train_model(const MlDataset& train, const ModelConfig& cfg) {
    if (cfg.algorithm == ModelConfig::Algorithm::gbdt) {
        return std::make_unique<GbdtModel>(train_gbdt(train, cfg));
    }
    return std::make_unique<ForestModel>(train_random_forest(train, cfg));
}

std::vector<FeatureArray> sample_background(const MlDataset& train, std::size_t count,
                                            std::uint64_t seed) {
    if (train.size() == 0) throw NumericalError("background: empty training set");
    std::vector<std::size_t> indices(train.size());
    std::iota(indices.begin(), indices.end(), 0);
    std::mt19937_64 rng(derive_seed(seed, 505));
    std::shuffle(indices.begin(), indices.end(), rng);
    if (indices.size() > count) indices.resize(count);
    std::sort(indices.begin(), indices.end());

    std::vector<FeatureArray> rows;
    rows.reserve(indices.size());
    for (std::size_t i : indices) rows.push_back(train.X[i]);
    return rows;
}

}  // namespace backline
