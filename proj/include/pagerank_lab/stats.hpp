#ifndef PAGERANK_LAB_STATS_HPP
#define PAGERANK_LAB_STATS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pagerank_lab {

enum class MeanKind { Arithmetic, Geometric, Harmonic };

/// AM, GM or HM of a non-empty list of positive values. The geometric
/// mean goes through the mean of logarithms so products spanning many
/// orders of magnitude cannot overflow.
inline double mean(MeanKind kind, std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty input");
    for (const double x : xs)
        if (!(x > 0.0))
            throw std::invalid_argument("mean: values must be positive, got " +
                                        std::to_string(x));
    switch (kind) {
    case MeanKind::Arithmetic: {
        long double sum = 0.0L;
        for (const double x : xs) sum += x;
        return static_cast<double>(sum / xs.size());
    }
    case MeanKind::Geometric: {
        long double log_sum = 0.0L;
        for (const double x : xs) log_sum += std::log(x);
        return static_cast<double>(std::exp(log_sum / xs.size()));
    }
    case MeanKind::Harmonic: {
        long double inv_sum = 0.0L;
        for (const double x : xs) inv_sum += 1.0L / x;
        return static_cast<double>(xs.size() / inv_sum);
    }
    }
    throw std::logic_error("mean: unreachable");
}

/// Positive measurements indexed [approach][case]; fully populated.
struct MeasurementMatrix {
    std::vector<std::string> approaches;
    std::vector<std::string> cases;
    std::vector<double> values; // row-major, approaches.size() * cases.size()

    double value(std::size_t approach, std::size_t test_case) const {
        return values[approach * cases.size() + test_case];
    }

    std::span<const double> row(std::size_t approach) const {
        return {values.data() + approach * cases.size(), cases.size()};
    }

    void validate() const {
        if (approaches.empty() || cases.empty())
            throw std::invalid_argument("measurement matrix: no approaches or cases");
        if (values.size() != approaches.size() * cases.size())
            throw std::invalid_argument("measurement matrix: not fully populated");
        for (const double v : values)
            if (!(v > 0.0))
                throw std::invalid_argument("measurement matrix: non-positive value " +
                                            std::to_string(v));
    }

    std::size_t approach_index(std::string_view label) const {
        const auto it = std::find(approaches.begin(), approaches.end(), label);
        if (it == approaches.end())
            throw std::invalid_argument("unknown baseline approach '" +
                                        std::string(label) + "'");
        return static_cast<std::size_t>(it - approaches.begin());
    }
};

/// The six composite relative-performance ratio methods. The ratio-*
/// family forms per-case ratios against the baseline first and then
/// averages them; the *-ratio family averages each approach first and
/// then takes the ratio of means.
enum class RatioMethod { RatioAm, RatioGm, RatioHm, AmRatio, GmRatio, HmRatio };

inline constexpr std::array<RatioMethod, 6> all_ratio_methods = {
    RatioMethod::AmRatio, RatioMethod::GmRatio, RatioMethod::HmRatio,
    RatioMethod::RatioAm, RatioMethod::RatioGm, RatioMethod::RatioHm};

constexpr std::string_view ratio_method_name(RatioMethod m) {
    switch (m) {
    case RatioMethod::RatioAm: return "ratio-am";
    case RatioMethod::RatioGm: return "ratio-gm";
    case RatioMethod::RatioHm: return "ratio-hm";
    case RatioMethod::AmRatio: return "am-ratio";
    case RatioMethod::GmRatio: return "gm-ratio";
    case RatioMethod::HmRatio: return "hm-ratio";
    }
    return "?";
}

inline std::optional<RatioMethod> parse_ratio_method(std::string_view token) {
    for (const RatioMethod m : all_ratio_methods)
        if (token == ratio_method_name(m)) return m;
    return std::nullopt;
}

constexpr MeanKind mean_kind_of(RatioMethod m) {
    switch (m) {
    case RatioMethod::RatioAm:
    case RatioMethod::AmRatio: return MeanKind::Arithmetic;
    case RatioMethod::RatioGm:
    case RatioMethod::GmRatio: return MeanKind::Geometric;
    case RatioMethod::RatioHm:
    case RatioMethod::HmRatio: return MeanKind::Harmonic;
    }
    return MeanKind::Arithmetic;
}

constexpr bool is_mean_then_ratio(RatioMethod m) {
    return m == RatioMethod::AmRatio || m == RatioMethod::GmRatio ||
           m == RatioMethod::HmRatio;
}

/// Per-approach means and composite ratios under one method and
/// baseline. `means` holds the per-approach mean of the raw values
/// under the method's mean kind; for the ratio-then-mean family the
/// composite lives entirely in `ratios`.
struct RatioTable {
    RatioMethod method{};
    std::string baseline;
    std::vector<std::string> approaches;
    std::vector<double> means;
    std::vector<double> ratios;

    double ratio_of(std::string_view approach) const {
        for (std::size_t i = 0; i < approaches.size(); ++i)
            if (approaches[i] == approach) return ratios[i];
        throw std::invalid_argument("unknown approach '" + std::string(approach) + "'");
    }
};

/// RATIO-AM / RATIO-GM / RATIO-HM: per-case ratios against the
/// baseline, averaged per approach.
inline RatioTable ratio_then_mean(const MeasurementMatrix& m, std::string_view baseline,
                                  MeanKind kind) {
    m.validate();
    const std::size_t base = m.approach_index(baseline);

    RatioTable table;
    table.method = kind == MeanKind::Arithmetic  ? RatioMethod::RatioAm
                   : kind == MeanKind::Geometric ? RatioMethod::RatioGm
                                                 : RatioMethod::RatioHm;
    table.baseline = std::string(baseline);
    table.approaches = m.approaches;

    std::vector<double> case_ratios(m.cases.size());
    for (std::size_t a = 0; a < m.approaches.size(); ++a) {
        for (std::size_t c = 0; c < m.cases.size(); ++c)
            case_ratios[c] = m.value(a, c) / m.value(base, c);
        table.ratios.push_back(a == base ? 1.0 : mean(kind, case_ratios));
        table.means.push_back(mean(kind, m.row(a)));
    }
    return table;
}

/// AM-RATIO / GM-RATIO / HM-RATIO: per-approach means first, then the
/// ratio of each mean to the baseline's. Baseline choice only rescales
/// the table, it cannot reorder it.
inline RatioTable mean_then_ratio(const MeasurementMatrix& m, std::string_view baseline,
                                  MeanKind kind) {
    m.validate();
    const std::size_t base = m.approach_index(baseline);

    RatioTable table;
    table.method = kind == MeanKind::Arithmetic  ? RatioMethod::AmRatio
                   : kind == MeanKind::Geometric ? RatioMethod::GmRatio
                                                 : RatioMethod::HmRatio;
    table.baseline = std::string(baseline);
    table.approaches = m.approaches;

    for (std::size_t a = 0; a < m.approaches.size(); ++a)
        table.means.push_back(mean(kind, m.row(a)));
    for (std::size_t a = 0; a < m.approaches.size(); ++a)
        table.ratios.push_back(a == base ? 1.0 : table.means[a] / table.means[base]);
    return table;
}

inline RatioTable compute_ratio_table(const MeasurementMatrix& m,
                                      std::string_view baseline, RatioMethod method) {
    return is_mean_then_ratio(method) ? mean_then_ratio(m, baseline, mean_kind_of(method))
                                      : ratio_then_mean(m, baseline, mean_kind_of(method));
}

} // namespace pagerank_lab

#endif
