#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "backline/indicators.hpp"

namespace backline {

inline constexpr std::size_t kFeatureCount = 5;
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "stretch_index", "pressure_index", "space_score", "line_height_abs", "line_height_rel"};
inline constexpr std::array<const char*, kFeatureCount> kFeatureTitles = {
    "Stretch Index", "Pressure Index", "Space Score", "Line Height (Absolute)",
    "Line Height (Relative)"};

using FeatureArray = std::array<double, kFeatureCount>;

struct FeatureVector {
    std::string seq_id;
    std::string team;  // label factor: "A" or "B"
    int outcome = 1;   // 1 success, 0 failure
    FeatureArray raw{};
    FeatureArray z{};
};

// Arithmetic mean per indicator over the sequence frames.
// Throws EmptySequenceError for an empty span.
FeatureArray aggregate_means(std::span<const FrameIndicators> frames);

struct Standardizer {
    FeatureArray mean{};
    FeatureArray stddev{};  // sample std, n-1 denominator

    void fit(std::span<const FeatureVector> data);
    FeatureArray transform(const FeatureArray& raw) const;
};

// Fits on the dataset and fills each row's z columns.
Standardizer standardize(std::vector<FeatureVector>& data);

struct Quartiles {
    double q1 = 0, median = 0, q3 = 0;
    double lower_fence = 0, upper_fence = 0;  // 1.5 * IQR beyond the quartiles
};

// Type-7 linear-interpolation quantiles.
Quartiles quartiles_and_fences(std::vector<double> values);

struct FeatureDescriptives {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0, sd = 0, range = 0;
    double lower_fence = 0, upper_fence = 0;
    std::size_t z_outliers = 0;    // |z| > threshold, sample std
    std::size_t iqr_outliers = 0;  // outside the fences
};

struct OutlierReport {
    std::array<FeatureDescriptives, kFeatureCount> per_feature{};
    std::size_t n = 0;
    double z_threshold = 3.0;
};

OutlierReport describe(std::span<const FeatureVector> data, double z_threshold = 3.0);

using CorrelationMatrix = std::array<std::array<double, kFeatureCount>, kFeatureCount>;
CorrelationMatrix correlation_matrix(std::span<const FeatureVector> data);

}  // namespace backline
