#include <cmath>

#include "backline/errors.hpp"
#include "backline/ml.hpp"

namespace backline {

namespace {

constexpr std::size_t kCoalitions = std::size_t{1} << kFeatureCount;

// s! (n-1-s)! / n! for n = 5.
double shapley_weight(std::size_t coalition_size) {
    static const double factorial[] = {1, 1, 2, 6, 24, 120};
    return factorial[coalition_size] * factorial[kFeatureCount - 1 - coalition_size] /
           factorial[kFeatureCount];
}

}  // namespace

FeatureArray shapley_attribution(const ScoreFn& f, const FeatureArray& x,
                                 std::span<const FeatureArray> background) {
    if (background.empty()) throw NumericalError("shapley: empty background sample");

    // v(S) = mean over background rows of f with features in S taken from x.
    std::array<double, kCoalitions> value{};
    for (std::size_t mask = 0; mask < kCoalitions; ++mask) {
        double sum = 0.0;
        for (const auto& b : background) {
            FeatureArray mixed = b;
            for (std::size_t i = 0; i < kFeatureCount; ++i) {
                if (mask & (std::size_t{1} << i)) mixed[i] = x[i];
            }
            sum += f(mixed);
        }
        value[mask] = sum / static_cast<double>(background.size());
    }

    FeatureArray phi{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t mask = 0; mask < kCoalitions; ++mask) {
            if (mask & bit) continue;
            const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
            phi[i] += shapley_weight(size) * (value[mask | bit] - value[mask]);
        }
    }
    return phi;
}

FeatureArray shapley_attribution(const Model& model, const FeatureArray& x,
                                 std::span<const FeatureArray> background) {
    return shapley_attribution(
        [&model](const FeatureArray& row) { return model.predict_score(row); }, x, background);
}

Attribution importance_comparison(const Model& model, const MlDataset& instances,
                                  std::span<const FeatureArray> background) {
    if (instances.size() == 0) throw NumericalError("attribution: no instances");
    Attribution out;

    double baseline = 0.0;
    for (const auto& b : background) baseline += model.predict_score(b);
    out.baseline = baseline / static_cast<double>(background.size());

    out.phi.reserve(instances.size());
    for (const auto& x : instances.X) {
        FeatureArray phi = shapley_attribution(model, x, background);
        for (std::size_t i = 0; i < kFeatureCount; ++i) out.shap_mean_abs[i] += std::abs(phi[i]);
        out.phi.push_back(phi);
    }
    for (auto& v : out.shap_mean_abs) v /= static_cast<double>(instances.size());

    const FeatureArray& gain = model.total_gain();
    double gain_total = 0.0;
    for (double g : gain) gain_total += g;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        out.builtin_importance[i] = gain_total > 0.0 ? gain[i] / gain_total : 0.0;
    }

    out.spearman_rank_agreement =
        spearman_rank_correlation(out.shap_mean_abs, out.builtin_importance);
    return out;
}

}  // namespace backline
