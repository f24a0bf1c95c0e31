#ifndef PAGERANK_LAB_NORMS_HPP
#define PAGERANK_LAB_NORMS_HPP

#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pagerank_lab {

/// Error functions usable as a convergence check between successive
/// rank vectors.
enum class NormKind { L1, L2, LInf };

inline constexpr std::array<NormKind, 3> all_norms = {NormKind::L1, NormKind::L2,
                                                      NormKind::LInf};

constexpr std::string_view norm_name(NormKind kind) {
    switch (kind) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LInf: return "linf";
    }
    return "?";
}

/// Accepts the CLI tokens l1 | l2 | linf, case-insensitively.
inline std::optional<NormKind> parse_norm(std::string_view token) {
    std::string lower(token);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "l1") return NormKind::L1;
    if (lower == "l2") return NormKind::L2;
    if (lower == "linf") return NormKind::LInf;
    return std::nullopt;
}

/// Distance between two equal-length vectors under the chosen norm:
/// sum of absolute differences (L1), euclidean distance (L2), or
/// maximum absolute difference (LInf).
///
/// Accumulation runs in vertex-id order in the widest native floating
/// type so repeated runs produce identical values.
inline double error_norm(NormKind kind, std::span<const double> r,
                         std::span<const double> s) {
    if (r.size() != s.size())
        throw std::invalid_argument("error_norm: vector lengths differ (" +
                                    std::to_string(r.size()) + " vs " +
                                    std::to_string(s.size()) + ")");
    if (r.empty()) throw std::invalid_argument("error_norm: empty vectors");

    switch (kind) {
    case NormKind::L1: {
        long double sum = 0.0L;
        for (std::size_t i = 0; i < r.size(); ++i) sum += std::fabs(r[i] - s[i]);
        return static_cast<double>(sum);
    }
    case NormKind::L2: {
        long double sum = 0.0L;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const long double d = r[i] - s[i];
            sum += d * d;
        }
        return static_cast<double>(std::sqrt(sum));
    }
    case NormKind::LInf: {
        double max = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            max = std::max(max, std::fabs(r[i] - s[i]));
        return max;
    }
    }
    throw std::logic_error("error_norm: unreachable");
}

} // namespace pagerank_lab

#endif
