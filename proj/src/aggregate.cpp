#include "backline/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "backline/errors.hpp"

namespace backline {

namespace {

FeatureArray indicator_values(const FrameIndicators& f) {
    return {f.stretch_index, static_cast<double>(f.pressure_index), f.space_score,
            f.line_height_abs, f.line_height_rel};
}

double column_mean(std::span<const FeatureVector> data, std::size_t k) {
    double sum = 0.0;
    for (const auto& row : data) sum += row.raw[k];
    return sum / static_cast<double>(data.size());
}

double column_sample_sd(std::span<const FeatureVector> data, std::size_t k, double mean) {
    double ss = 0.0;
    for (const auto& row : data) {
        double d = row.raw[k] - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(data.size() - 1));
}

}  // namespace

FeatureArray aggregate_means(std::span<const FrameIndicators> frames) {
    if (frames.empty()) throw EmptySequenceError("aggregate_means: sequence has no frames");
    FeatureArray sums{};
    for (const auto& f : frames) {
        FeatureArray v = indicator_values(f);
        for (std::size_t k = 0; k < kFeatureCount; ++k) sums[k] += v[k];
    }
    for (auto& s : sums) s /= static_cast<double>(frames.size());
    return sums;
}

void Standardizer::fit(std::span<const FeatureVector> data) {
    if (data.size() < 2) throw NumericalError("standardize: need at least 2 rows");
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
        mean[k] = column_mean(data, k);
        stddev[k] = column_sample_sd(data, k, mean[k]);
        if (stddev[k] == 0.0 || !std::isfinite(stddev[k])) {
            throw ZeroVarianceError(std::string("standardize: zero variance in feature ") +
                                    kFeatureNames[k]);
        }
    }
}

FeatureArray Standardizer::transform(const FeatureArray& raw) const {
    FeatureArray z{};
    for (std::size_t k = 0; k < kFeatureCount; ++k) z[k] = (raw[k] - mean[k]) / stddev[k];
    return z;
}

Standardizer standardize(std::vector<FeatureVector>& data) {
    Standardizer s;
    s.fit(data);
    for (auto& row : data) row.z = s.transform(row.raw);
    return s;
}

namespace {

// Type-7 quantile: linear interpolation at h = (n-1)p over sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double h = static_cast<double>(n - 1) * p;
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo >= n - 1) return sorted[n - 1];
    double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

Quartiles quartiles_and_fences(std::vector<double> values) {
    if (values.empty()) throw NumericalError("quartiles: empty input");
    std::sort(values.begin(), values.end());
    Quartiles q;
    q.q1 = quantile_sorted(values, 0.25);
    q.median = quantile_sorted(values, 0.50);
    q.q3 = quantile_sorted(values, 0.75);
    double iqr = q.q3 - q.q1;
    q.lower_fence = q.q1 - 1.5 * iqr;
    q.upper_fence = q.q3 + 1.5 * iqr;
    return q;
}

OutlierReport describe(std::span<const FeatureVector> data, double z_threshold) {
    if (data.size() < 2) throw NumericalError("describe: need at least 2 rows");
    OutlierReport report;
    report.n = data.size();
    report.z_threshold = z_threshold;

    for (std::size_t k = 0; k < kFeatureCount; ++k) {
        std::vector<double> col;
        col.reserve(data.size());
        for (const auto& row : data) col.push_back(row.raw[k]);

        FeatureDescriptives& d = report.per_feature[k];
        d.mean = column_mean(data, k);
        d.sd = column_sample_sd(data, k, d.mean);

        Quartiles q = quartiles_and_fences(col);
        d.q1 = q.q1;
        d.median = q.median;
        d.q3 = q.q3;
        d.lower_fence = q.lower_fence;
        d.upper_fence = q.upper_fence;
        d.min = *std::min_element(col.begin(), col.end());
        d.max = *std::max_element(col.begin(), col.end());
        d.range = d.max - d.min;

        for (double v : col) {
            if (d.sd > 0.0 && std::abs((v - d.mean) / d.sd) > z_threshold) ++d.z_outliers;
            if (v < d.lower_fence || v > d.upper_fence) ++d.iqr_outliers;
        }
    }
    return report;
}

CorrelationMatrix correlation_matrix(std::span<const FeatureVector> data) {
    if (data.size() < 2) throw NumericalError("correlation: need at least 2 rows");
    FeatureArray means{};
    for (std::size_t k = 0; k < kFeatureCount; ++k) means[k] = column_mean(data, k);

    CorrelationMatrix m{};
    std::array<double, kFeatureCount> ss{};
    for (const auto& row : data) {
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            double dk = row.raw[k] - means[k];
            ss[k] += dk * dk;
        }
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        for (std::size_t j = i; j < kFeatureCount; ++j) {
            double cov = 0.0;
            for (const auto& row : data) {
                cov += (row.raw[i] - means[i]) * (row.raw[j] - means[j]);
            }
            double denom = std::sqrt(ss[i] * ss[j]);
            double r = denom > 0.0 ? cov / denom : 0.0;
            m[i][j] = r;
            m[j][i] = r;
        }
        m[i][i] = 1.0;
    }
    return m;
}

}  // namespace backline
