#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace backline {

// Regularized incomplete beta I_x(a,b) via Lentz continued fraction;
// absolute error <= 1e-10 for x in [0,1], a,b > 0.
double reg_inc_beta(double x, double a, double b);

// Upper tail P(F > f) for the F(df1, df2) distribution.
double f_survival(double f, double df1, double df2);

// Student t CDF and two-sided tail probability.
double t_cdf(double t, double df);
double t_two_sided_p(double t, double df);

struct AnovaRow {
    std::string feature;
    std::string source;  // "Team", "Outcome", "Team x Outcome"
    double ss = 0.0;
    double df_effect = 0.0;
    double df_residual = 0.0;
    double F = 0.0;
    double p_unc = 1.0;
    double partial_eta_sq = 0.0;
};

// Two-way ANOVA with effect coding and Type II sums of squares: each main
// effect adjusted for the other main effect, interaction adjusted for both.
// team/outcome hold 0/1 level codes per observation.
std::array<AnovaRow, 3> anova_two_way(std::span<const double> values, std::span<const int> team,
                                      std::span<const int> outcome,
                                      const std::string& feature_name);

struct OneWayAnova {
    double F = 0.0;
    double p = 1.0;
    double df1 = 0.0;
    double df2 = 0.0;
};

// Single-factor two-level reduction used for the F = t^2 correspondence.
OneWayAnova anova_one_way(std::span<const double> values, std::span<const int> group);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
};

// Welch's t by default; pooled Student variant behind the flag.
TTestResult ttest_independent(std::span<const double> a, std::span<const double> b,
                              bool welch = true);

// p_adj = min(1, m * p).
std::vector<double> bonferroni(std::span<const double> p_values, double m);

struct PosthocRow {
    std::string team;
    std::string feature;
    double t = 0.0;
    double df = 0.0;
    double p_orig = 1.0;
    double p_bonf = 1.0;
    double m = 4.0;
};

}  // namespace backline
