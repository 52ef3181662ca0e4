#include <algorithm>
#include <cmath>
#include <numeric>

#include "backline/errors.hpp"
#include "backline/ml.hpp"

namespace backline {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ValidationError("auc: length mismatch");
    const std::size_t n = scores.size();

    double n_pos = 0.0;
    for (int l : labels) n_pos += l == 1 ? 1.0 : 0.0;
    const double n_neg = static_cast<double>(n) - n_pos;
    if (n_pos == 0.0 || n_neg == 0.0) return 0.5;  // degenerate fold

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tied scores.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) rank_sum_pos += midrank;
        }
        i = j + 1;
    }
    return (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

EvalReport evaluate(const Model& model, const MlDataset& test, double threshold) {
    if (test.size() == 0) throw NumericalError("evaluate: empty test set");

    std::vector<double> scores(test.size());
    EvalReport r;
    for (std::size_t i = 0; i < test.size(); ++i) {
        scores[i] = model.predict_score(test.X[i]);
        const bool predicted_pos = model.predict_proba(test.X[i]) >= threshold;
        const bool actual_pos = test.y[i] == 1;
        if (predicted_pos && actual_pos) ++r.tp;
        else if (predicted_pos) ++r.fp;
        else if (actual_pos) ++r.fn;
        else ++r.tn;
    }

    r.roc_auc = roc_auc(scores, test.y);
    const double n = static_cast<double>(test.size());
    r.accuracy = static_cast<double>(r.tp + r.tn) / n;
    const double predicted_pos = static_cast<double>(r.tp + r.fp);
    const double actual_pos = static_cast<double>(r.tp + r.fn);
    r.precision = predicted_pos > 0.0 ? static_cast<double>(r.tp) / predicted_pos : 0.0;
    r.recall = actual_pos > 0.0 ? static_cast<double>(r.tp) / actual_pos : 0.0;
    r.f1 = (r.precision + r.recall) > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

double spearman_rank_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw ValidationError("spearman: bad input");
    const std::size_t n = a.size();

    auto midranks = [n](std::span<const double> v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
        std::vector<double> rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
            i = j + 1;
        }
        return rank;
    };

    const auto ra = midranks(a);
    const auto rb = midranks(b);
    double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (ra[i] - mean) * (rb[i] - mean);
        va += (ra[i] - mean) * (ra[i] - mean);
        vb += (rb[i] - mean) * (rb[i] - mean);
    }
    const double denom = std::sqrt(va * vb);
    return denom > 0.0 ? cov / denom : 0.0;
}

}  // namespace backline
