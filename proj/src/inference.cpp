#include "backline/inference.hpp"

#include <algorithm>
#include <cmath>

#include "backline/errors.hpp"

namespace backline {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double x, double a, double b) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    return h;  // working precision reached for all practical (a, b)
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw NumericalError("reg_inc_beta: a, b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw NumericalError("reg_inc_beta: x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(x, a, b) / a;
    }
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double f_survival(double f, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) {
        throw NumericalError("f_survival: degrees of freedom must be positive");
    }
    if (f <= 0.0) return 1.0;
    return reg_inc_beta(df2 / (df2 + df1 * f), df2 / 2.0, df1 / 2.0);
}

double t_cdf(double t, double df) {
    if (df <= 0.0) throw NumericalError("t_cdf: df must be positive");
    if (t == 0.0) return 0.5;
    const double tail = 0.5 * reg_inc_beta(df / (df + t * t), df / 2.0, 0.5);
    return t > 0.0 ? 1.0 - tail : tail;
}

double t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw NumericalError("t_two_sided_p: df must be positive");
    if (t == 0.0) return 1.0;
    return reg_inc_beta(df / (df + t * t), df / 2.0, 0.5);
}

namespace {

// Least squares on effect-coded design columns selected by `cols`:
// 0 intercept, 1 team, 2 outcome, 3 interaction. Returns the residual
// sum of squares.
double model_rss(std::span<const double> y, std::span<const double> t_code,
                 std::span<const double> o_code, std::span<const int> cols) {
    const std::size_t n = y.size();
    const std::size_t k = cols.size();

    auto column = [&](int c, std::size_t i) -> double {
        switch (c) {
            case 0: return 1.0;
            case 1: return t_code[i];
            case 2: return o_code[i];
            default: return t_code[i] * o_code[i];
        }
    };

    double xtx[4][4] = {};
    double xty[4] = {};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < k; ++r) {
            const double xr = column(cols[r], i);
            xty[r] += xr * y[i];
            for (std::size_t c = r; c < k; ++c) xtx[r][c] += xr * column(cols[c], i);
        }
    }
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < r; ++c) xtx[r][c] = xtx[c][r];
    }

    // Gaussian elimination with partial pivoting.
    double a[4][5];
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r][c] = xtx[r][c];
        a[r][k] = xty[r];
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            throw DegenerateDesignError("anova: singular design matrix");
        }
        for (std::size_t c = 0; c <= k; ++c) std::swap(a[col][c], a[pivot][c]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    double beta[4] = {};
    for (std::size_t r = k; r-- > 0;) {
        double v = a[r][k];
        for (std::size_t c = r + 1; c < k; ++c) v -= a[r][c] * beta[c];
        beta[r] = v / a[r][r];
    }

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t r = 0; r < k; ++r) fit += beta[r] * column(cols[r], i);
        const double resid = y[i] - fit;
        rss += resid * resid;
    }
    return rss;
}

}  // namespace

std::array<AnovaRow, 3> anova_two_way(std::span<const double> values, std::span<const int> team,
                                      std::span<const int> outcome,
                                      const std::string& feature_name) {
    const std::size_t n = values.size();
    if (team.size() != n || outcome.size() != n) {
        throw ValidationError("anova: factor columns must match the value column length");
    }
    if (n < 8) throw DegenerateDesignError("anova: need at least 8 observations");

    std::size_t cell_count[2][2] = {};
    std::vector<double> t_code(n), o_code(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((team[i] != 0 && team[i] != 1) || (outcome[i] != 0 && outcome[i] != 1)) {
            throw ValidationError("anova: factor levels must be 0/1");
        }
        ++cell_count[team[i]][outcome[i]];
        t_code[i] = team[i] == 0 ? -1.0 : 1.0;
        o_code[i] = outcome[i] == 0 ? -1.0 : 1.0;
    }
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (cell_count[a][b] < 2) {
                throw DegenerateDesignError("anova: cell (" + std::to_string(a) + "," +
                                            std::to_string(b) + ") has fewer than 2 observations");
            }
        }
    }

    const int kNoTeam[] = {0, 2};
    const int kNoOutcome[] = {0, 1};
    const int kMains[] = {0, 1, 2};
    const int kFull[] = {0, 1, 2, 3};

    const double rss_no_team = model_rss(values, t_code, o_code, kNoTeam);
    const double rss_no_outcome = model_rss(values, t_code, o_code, kNoOutcome);
    const double rss_mains = model_rss(values, t_code, o_code, kMains);
    const double rss_full = model_rss(values, t_code, o_code, kFull);

    const double df_res = static_cast<double>(n) - 4.0;
    if (rss_full <= 1e-12 * static_cast<double>(n)) {
        throw DegenerateDesignError("anova: zero residual variance for feature " + feature_name);
    }
    const double ms_res = rss_full / df_res;

    auto make_row = [&](const char* source, double ss) {
        AnovaRow row;
        row.feature = feature_name;
        row.source = source;
        row.ss = std::max(ss, 0.0);
        row.df_effect = 1.0;
        row.df_residual = df_res;
        row.F = row.ss / ms_res;
        row.p_unc = f_survival(row.F, 1.0, df_res);
        row.partial_eta_sq = row.ss / (row.ss + rss_full);
        return row;
    };

    return {make_row("Team", rss_no_team - rss_mains),
            make_row("Outcome", rss_no_outcome - rss_mains),
            make_row("Team x Outcome", rss_mains - rss_full)};
}

OneWayAnova anova_one_way(std::span<const double> values, std::span<const int> group) {
    const std::size_t n = values.size();
    if (group.size() != n) throw ValidationError("anova_one_way: length mismatch");

    double sum[2] = {};
    double count[2] = {};
    for (std::size_t i = 0; i < n; ++i) {
        if (group[i] != 0 && group[i] != 1) {
            throw ValidationError("anova_one_way: levels must be 0/1");
        }
        sum[group[i]] += values[i];
        count[group[i]] += 1.0;
    }
    if (count[0] < 2 || count[1] < 2) {
        throw DegenerateDesignError("anova_one_way: a level has fewer than 2 observations");
    }

    const double grand = (sum[0] + sum[1]) / static_cast<double>(n);
    const double mean0 = sum[0] / count[0];
    const double mean1 = sum[1] / count[1];

    const double ss_between = count[0] * (mean0 - grand) * (mean0 - grand) +
                              count[1] * (mean1 - grand) * (mean1 - grand);
    double ss_within = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = group[i] == 0 ? mean0 : mean1;
        ss_within += (values[i] - m) * (values[i] - m);
    }
    if (ss_within <= 0.0) throw DegenerateDesignError("anova_one_way: zero within-group variance");

    OneWayAnova out;
    out.df1 = 1.0;
    out.df2 = static_cast<double>(n) - 2.0;
    out.F = ss_between / (ss_within / out.df2);
    out.p = f_survival(out.F, out.df1, out.df2);
    return out;
}

TTestResult ttest_independent(std::span<const double> a, std::span<const double> b, bool welch) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    if (a.size() < 2 || b.size() < 2) {
        throw NumericalError("ttest: each group needs at least 2 observations");
    }

    double mean_a = 0.0, mean_b = 0.0;
    for (double v : a) mean_a += v;
    for (double v : b) mean_b += v;
    mean_a /= na;
    mean_b /= nb;

    double var_a = 0.0, var_b = 0.0;
    for (double v : a) var_a += (v - mean_a) * (v - mean_a);
    for (double v : b) var_b += (v - mean_b) * (v - mean_b);
    var_a /= na - 1.0;
    var_b /= nb - 1.0;

    TTestResult r;
    if (welch) {
        const double se2 = var_a / na + var_b / nb;
        if (se2 <= 0.0) throw ZeroVarianceError("ttest: both groups have zero variance");
        r.t = (mean_a - mean_b) / std::sqrt(se2);
        const double num = se2 * se2;
        const double den = (var_a / na) * (var_a / na) / (na - 1.0) +
                           (var_b / nb) * (var_b / nb) / (nb - 1.0);
        r.df = num / den;
    } else {
        const double pooled = ((na - 1.0) * var_a + (nb - 1.0) * var_b) / (na + nb - 2.0);
        if (pooled <= 0.0) throw ZeroVarianceError("ttest: zero pooled variance");
        r.t = (mean_a - mean_b) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
        r.df = na + nb - 2.0;
    }
    r.p = t_two_sided_p(r.t, r.df);
    return r;
}

std::vector<double> bonferroni(std::span<const double> p_values, double m) {
    if (m < 1.0) throw ValidationError("bonferroni: divisor must be >= 1");
    std::vector<double> adjusted;
    adjusted.reserve(p_values.size());
    for (double p : p_values) adjusted.push_back(std::min(1.0, m * p));
    return adjusted;
}

}  // namespace backline
