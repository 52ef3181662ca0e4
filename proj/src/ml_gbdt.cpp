#include <algorithm>
#include <cmath>
#include <numeric>

#include "backline/errors.hpp"
#include "backline/ml.hpp"

namespace backline {

namespace {

struct GradientStats {
    std::vector<double> g;
    std::vector<double> h;
    const std::vector<FeatureArray>* X = nullptr;
};

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

constexpr double kMinGain = 1e-12;

// Best (gain, lowest feature, lowest threshold) split over midpoints of
// consecutive distinct values.
SplitChoice best_split(const GradientStats& stats, const std::vector<std::size_t>& idx,
                       double l2) {
    double g_total = 0.0, h_total = 0.0;
    for (std::size_t i : idx) {
        g_total += stats.g[i];
        h_total += stats.h[i];
    }
    const double parent_score = g_total * g_total / (h_total + l2);

    // Strict improvement keeps the first candidate on ties, giving the
    // lowest feature index, then the lowest threshold.
    SplitChoice best;
    best.gain = kMinGain;
    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return (*stats.X)[a][f] < (*stats.X)[b][f];
        });
        double g_left = 0.0, h_left = 0.0;
        for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
            g_left += stats.g[order[pos]];
            h_left += stats.h[order[pos]];
            const double v = (*stats.X)[order[pos]][f];
            const double v_next = (*stats.X)[order[pos + 1]][f];
            if (v == v_next) continue;
            const double g_right = g_total - g_left;
            const double h_right = h_total - h_left;
            const double gain = 0.5 * (g_left * g_left / (h_left + l2) +
                                       g_right * g_right / (h_right + l2) - parent_score);
            if (gain > best.gain) {
                best.gain = gain;
                best.feature = static_cast<int>(f);
                best.threshold = (v + v_next) / 2.0;
            }
        }
    }
    return best;
}

int build_node(const GradientStats& stats, std::vector<std::size_t>& idx, int depth,
               int max_depth, double l2, Tree& tree, FeatureArray& gain_accum) {
    double g = 0.0, h = 0.0;
    for (std::size_t i : idx) {
        g += stats.g[i];
        h += stats.h[i];
    }

    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes[node_id].value = -g / (h + l2);

    if (depth >= max_depth || idx.size() < 2) return node_id;

    SplitChoice split = best_split(stats, idx, l2);
    if (split.feature < 0) return node_id;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
        ((*stats.X)[i][static_cast<std::size_t>(split.feature)] < split.threshold ? left_idx
                                                                                  : right_idx)
            .push_back(i);
    }
    gain_accum[static_cast<std::size_t>(split.feature)] += split.gain;

    tree.nodes[node_id].feature = split.feature;
    tree.nodes[node_id].threshold = split.threshold;
    const int left = build_node(stats, left_idx, depth + 1, max_depth, l2, tree, gain_accum);
    tree.nodes[node_id].left = left;
    const int right = build_node(stats, right_idx, depth + 1, max_depth, l2, tree, gain_accum);
    tree.nodes[node_id].right = right;
    return node_id;
}

std::vector<double> sample_weights(const MlDataset& data, ClassWeighting weighting) {
    const double n = static_cast<double>(data.size());
    const double n_pos = static_cast<double>(data.positives());
    const double n_neg = n - n_pos;

    std::vector<double> w(data.size(), 1.0);
    switch (weighting) {
        case ClassWeighting::scale_pos_weight_auto: {
            const double spw = n_neg / n_pos;  // standard imbalance heuristic
            for (std::size_t i = 0; i < data.size(); ++i) {
                if (data.y[i] == 1) w[i] = spw;
            }
            break;
        }
        case ClassWeighting::balanced: {
            const double w_pos = n / (2.0 * n_pos);
            const double w_neg = n / (2.0 * n_neg);
            for (std::size_t i = 0; i < data.size(); ++i) {
                w[i] = data.y[i] == 1 ? w_pos : w_neg;
            }
            break;
        }
        case ClassWeighting::none:
        case ClassWeighting::upsample:
            break;
    }
    return w;
}

}  // namespace

double GbdtModel::predict_margin(const FeatureArray& x, std::size_t n_rounds) const {
    double margin = base_score;
    const std::size_t rounds = std::min(n_rounds, trees.size());
    for (std::size_t t = 0; t < rounds; ++t) margin += learning_rate * trees[t].predict(x);
    return margin;
}

double GbdtModel::predict_proba(const FeatureArray& x) const {
    return 1.0 / (1.0 + std::exp(-predict_margin(x)));
}

GbdtModel train_gbdt(const MlDataset& train, const ModelConfig& cfg) {
    cfg.validate();
    if (train.size() < 2) throw NumericalError("gbdt: need at least 2 training rows");
    const std::size_t n_pos = train.positives();
    if (n_pos == 0 || n_pos == train.size()) {
        throw NumericalError("gbdt: training set has a single class");
    }

    MlDataset resampled;
    const MlDataset* data = &train;
    if (cfg.class_weighting == ClassWeighting::upsample) {
        resampled = upsample_minority(train, derive_seed(cfg.seed, 606));
        data = &resampled;
    }
    const std::size_t n = data->size();
    const std::vector<double> w = sample_weights(*data, cfg.class_weighting);

    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        (data->y[i] == 1 ? w_pos : w_neg) += w[i];
    }

    GbdtModel model;
    model.learning_rate = cfg.learning_rate;
    model.base_score = std::log(w_pos / w_neg);

    std::vector<double> margin(n, model.base_score);
    GradientStats stats;
    stats.X = &data->X;
    stats.g.resize(n);
    stats.h.resize(n);

    std::vector<std::size_t> root(n);
    std::iota(root.begin(), root.end(), 0);

    model.trees.reserve(static_cast<std::size_t>(cfg.n_estimators));
    for (int round = 0; round < cfg.n_estimators; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = 1.0 / (1.0 + std::exp(-margin[i]));
            stats.g[i] = (p - static_cast<double>(data->y[i])) * w[i];
            stats.h[i] = std::max(p * (1.0 - p) * w[i], 1e-16);
        }
        Tree tree;
        std::vector<std::size_t> idx = root;
        build_node(stats, idx, 0, cfg.max_depth, cfg.l2_leaf_reg, tree, model.gain);
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += cfg.learning_rate * tree.predict(data->X[i]);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace backline
