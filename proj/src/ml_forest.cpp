#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "backline/errors.hpp"
#include "backline/ml.hpp"

namespace backline {

namespace {

constexpr double kMinGain = 1e-12;

struct ForestContext {
    const std::vector<FeatureArray>* X = nullptr;
    const std::vector<int>* y = nullptr;
    std::vector<double> w;
    int min_samples_split = 5;
    std::size_t features_per_node = 3;  // ceil(sqrt(5))
    double root_weight = 0.0;
};

double gini(double w1, double w_total) {
    if (w_total <= 0.0) return 0.0;
    const double p1 = w1 / w_total;
    const double p0 = 1.0 - p1;
    return 1.0 - p1 * p1 - p0 * p0;
}

std::vector<std::size_t> sample_features(std::mt19937_64& rng, std::size_t count) {
    std::array<std::size_t, kFeatureCount> pool;
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, kFeatureCount - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<long>(count));
    std::sort(chosen.begin(), chosen.end());  // tie-break by lowest feature index
    return chosen;
}

int build_node(ForestContext& ctx, std::vector<std::size_t>& idx, Tree& tree,
               FeatureArray& gain_accum, std::mt19937_64& rng) {
    double w_total = 0.0, w_pos = 0.0;
    for (std::size_t i : idx) {
        w_total += ctx.w[i];
        if ((*ctx.y)[i] == 1) w_pos += ctx.w[i];
    }

    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes[node_id].value = w_total > 0.0 ? w_pos / w_total : 0.5;

    const bool pure = w_pos <= 0.0 || w_pos >= w_total;
    if (idx.size() < static_cast<std::size_t>(ctx.min_samples_split) || pure) return node_id;

    const double parent_impurity = gini(w_pos, w_total);
    const auto features = sample_features(rng, ctx.features_per_node);

    double best_gain = kMinGain;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order(idx);
    for (std::size_t f : features) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return (*ctx.X)[a][f] < (*ctx.X)[b][f];
        });
        double wl = 0.0, wl_pos = 0.0;
        for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
            wl += ctx.w[order[pos]];
            if ((*ctx.y)[order[pos]] == 1) wl_pos += ctx.w[order[pos]];
            const double v = (*ctx.X)[order[pos]][f];
            const double v_next = (*ctx.X)[order[pos + 1]][f];
            if (v == v_next) continue;
            const double wr = w_total - wl;
            const double wr_pos = w_pos - wl_pos;
            const double gain = parent_impurity - (wl / w_total) * gini(wl_pos, wl) -
                                (wr / w_total) * gini(wr_pos, wr);
            if (gain > best_gain) {
                best_gain = gain;
                best_feature = static_cast<int>(f);
                best_threshold = (v + v_next) / 2.0;
            }
        }
    }
    if (best_feature < 0) return node_id;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
        ((*ctx.X)[i][static_cast<std::size_t>(best_feature)] < best_threshold ? left_idx
                                                                              : right_idx)
            .push_back(i);
    }
    // Mean decrease in impurity, weighted by the node's share of the tree.
    gain_accum[static_cast<std::size_t>(best_feature)] +=
        (w_total / ctx.root_weight) * best_gain;

    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    const int left = build_node(ctx, left_idx, tree, gain_accum, rng);
    tree.nodes[node_id].left = left;
    const int right = build_node(ctx, right_idx, tree, gain_accum, rng);
    tree.nodes[node_id].right = right;
    return node_id;
}

}  // namespace

double ForestModel::predict_proba(const FeatureArray& x) const {
    double sum = 0.0;
    for (const auto& t : trees) sum += t.predict(x);
    return trees.empty() ? 0.5 : sum / static_cast<double>(trees.size());
}

ForestModel train_random_forest(const MlDataset& train, const ModelConfig& cfg) {
    cfg.validate();
    if (train.size() < 2) throw NumericalError("random_forest: need at least 2 training rows");
    const std::size_t n_pos = train.positives();
    if (n_pos == 0 || n_pos == train.size()) {
        throw NumericalError("random_forest: training set has a single class");
    }

    MlDataset resampled;
    const MlDataset* data = &train;
    if (cfg.class_weighting == ClassWeighting::upsample) {
        resampled = upsample_minority(train, derive_seed(cfg.seed, 606));
        data = &resampled;
    }
    const std::size_t n = data->size();

    ForestContext ctx;
    ctx.X = &data->X;
    ctx.y = &data->y;
    ctx.min_samples_split = cfg.min_samples_split;
    ctx.features_per_node = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(kFeatureCount))));

    // Class weights are fit on the training labels, then carried onto each
    // bootstrap copy.
    const double pos = static_cast<double>(data->positives());
    const double neg = static_cast<double>(n) - pos;
    double w_pos = 1.0, w_neg = 1.0;
    switch (cfg.class_weighting) {
        case ClassWeighting::balanced:
            w_pos = static_cast<double>(n) / (2.0 * pos);
            w_neg = static_cast<double>(n) / (2.0 * neg);
            break;
        case ClassWeighting::scale_pos_weight_auto:
            w_pos = neg / pos;
            break;
        case ClassWeighting::none:
        case ClassWeighting::upsample:
            break;
    }

    ForestModel model;
    model.trees.reserve(static_cast<std::size_t>(cfg.n_estimators));
    FeatureArray gain_total{};

    ctx.w.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) ctx.w[i] = (*ctx.y)[i] == 1 ? w_pos : w_neg;

    for (int t = 0; t < cfg.n_estimators; ++t) {
        std::mt19937_64 rng(derive_seed(cfg.seed, 707 + static_cast<std::uint64_t>(t)));
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);

        // Bootstrap draws; multiplicity stays in the index list so node
        // sizes count samples the usual way.
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = pick(rng);
        ctx.root_weight = 0.0;
        for (std::size_t i : idx) ctx.root_weight += ctx.w[i];

        Tree tree;
        build_node(ctx, idx, tree, gain_total, rng);
        model.trees.push_back(std::move(tree));
    }

    double total = 0.0;
    for (double g : gain_total) total += g;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        model.gain[f] = total > 0.0 ? gain_total[f] / total : 0.0;
    }
    return model;
}

}  // namespace backline
