#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "idiorec/error.hpp"
#include "idiorec/profile.hpp"
#include "idiorec/tree_address.hpp"

namespace idiorec {

enum class MatchFunction { linear, quadratic };

/// Denominator of the tree similarity. `pair_count` divides the unweighted
/// double sum by n*m; `vote_sum` weights each pair by its votes and divides
/// by the total vote count of both profiles.
enum class Normalization { pair_count, vote_sum };

/// What counts as a profile's size for the disparity factor.
enum class SizeBasis { categories, bookmarks };

enum class Measure { tree, pearson };

struct SimilarityParams {
    MatchFunction match_fn = MatchFunction::quadratic;
    int ml_cutoff = 8;
    double disparity_a = 0.6;
    Normalization normalization = Normalization::vote_sum;
    bool disparity_enabled = true;
    SizeBasis size_basis = SizeBasis::categories;
    Measure measure = Measure::tree;
    bool pearson_disparity = false;

    void validate() const {
        if (ml_cutoff < 2 || ml_cutoff > static_cast<int>(kMaxDepth)) throw UsageError("ml_cutoff must be in [2, 16]");
        if (!(disparity_a >= 0.0 && disparity_a < 1.0)) throw UsageError("disparity_a must be in [0, 1)");
    }
};

struct SimilarityScore {
    double value = 0.0;     // in [0, 1]
    double raw_core = 0.0;  // before clamping and disparity
    double disparity = 1.0;
    bool empty_profile = false;
};

struct PearsonResult {
    double correlation = 0.0;
    std::size_t common = 0;
};

/// min(1, (L-1)/(ML-1)): zero at the root, saturating at the cutoff level.
[[nodiscard]] inline double linear_match(std::size_t level, int cutoff) {
    if (level < 1 || level > kMaxDepth) throw UsageError("matching level out of range");
    if (cutoff < 2) throw UsageError("ml_cutoff must be at least 2");
    return std::min(1.0, static_cast<double>(level - 1) / static_cast<double>(cutoff - 1));
}

/// -(l^2 - 33 l + 32) / 240: zero at level 1, exactly 1 at level 16, strictly
/// increasing in between.
[[nodiscard]] inline double quadratic_match(std::size_t level) {
    if (level < 1 || level > kMaxDepth) throw UsageError("matching level out of range");
    auto l = static_cast<double>(level);
    return (33.0 * l - l * l - 32.0) / 240.0;  // written this way so level 1 gives +0
}

[[nodiscard]] inline double match_value(std::size_t level, const SimilarityParams& params) {
    return params.match_fn == MatchFunction::linear ? linear_match(level, params.ml_cutoff) : quadratic_match(level);
}

/// a + (1-a) * (n/m) * ((n+m)/200) with n <= m, both capped at 100.
/// Rewards profiles of similar and large size. Zero-size input yields the floor a.
[[nodiscard]] inline double disparity_factor(std::size_t n, std::size_t m, double a) {
    n = std::min(n, kProfileSizeCap);
    m = std::min(m, kProfileSizeCap);
    if (n > m) std::swap(n, m);
    if (n == 0) return a;
    auto nd = static_cast<double>(n);
    auto md = static_cast<double>(m);
    return a + (1.0 - a) * (nd / md) * ((nd + md) / (2.0 * static_cast<double>(kProfileSizeCap)));
}

/// (1/ed) * match(l) for one category pair, without vote weighting.
[[nodiscard]] inline double pair_weight(const TreeAddress& a, const TreeAddress& b, const SimilarityParams& params) {
    auto level = matching_level(a, b);
    return match_value(level, params) / static_cast<double>(edge_distance(a, b));
}

/// (1/ed) * match(l) * (vote_a + vote_b).
[[nodiscard]] inline double pair_contribution(const TreeAddress& a, const TreeAddress& b, std::uint64_t vote_a,
                                              std::uint64_t vote_b, const SimilarityParams& params) {
    return pair_weight(a, b, params) * static_cast<double>(vote_a + vote_b);
}

[[nodiscard]] inline std::size_t disparity_size(const WebProfile& p, SizeBasis basis) {
    if (basis == SizeBasis::categories) return effective_size(p);
    return static_cast<std::size_t>(std::min<std::uint64_t>(kProfileSizeCap, p.vote_total()));
}

namespace detail {

// Total order on profile contents used to fix the summation order, so that
// swapping the arguments reproduces the same floating-point result.
inline bool entries_less(const WebProfile& a, const WebProfile& b) {
    return std::lexicographical_compare(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                                        [](const ProfileEntry& x, const ProfileEntry& y) {
                                            if (x.address != y.address) return x.address < y.address;
                                            return x.votes < y.votes;
                                        });
}

} // namespace detail

/// Tree-structured similarity between two profiles. Symmetric exactly.
[[nodiscard]] inline SimilarityScore similarity_tree(const WebProfile& p_in, const WebProfile& q_in,
                                                     const SimilarityParams& params) {
    SimilarityScore score;
    if (p_in.empty() || q_in.empty()) {
        score.empty_profile = true;
        score.disparity = params.disparity_enabled ? params.disparity_a : 1.0;
        return score;
    }
    const bool swap = detail::entries_less(q_in, p_in);
    const WebProfile& p = swap ? q_in : p_in;
    const WebProfile& q = swap ? p_in : q_in;

    double numerator = 0.0;
    for (const auto& a : p.entries) {
        for (const auto& b : q.entries) {
            numerator += params.normalization == Normalization::vote_sum
                             ? pair_contribution(a.address, b.address, a.votes, b.votes, params)
                             : pair_weight(a.address, b.address, params);
        }
    }
    double denominator = params.normalization == Normalization::vote_sum
                             ? static_cast<double>(p.vote_total() + q.vote_total())
                             : static_cast<double>(p.entries.size() * q.entries.size());
    score.raw_core = denominator > 0.0 ? numerator / denominator : 0.0;
    score.disparity = params.disparity_enabled ? disparity_factor(disparity_size(p, params.size_basis),
                                                                  disparity_size(q, params.size_basis),
                                                                  params.disparity_a)
                                               : 1.0;
    score.value = std::min(1.0, score.raw_core) * score.disparity;
    return score;
}

/// Pearson correlation of vote counts over the categories both profiles hold.
/// Fewer than two common categories or a constant vector gives 0.
[[nodiscard]] inline PearsonResult pearson_flat(const WebProfile& p, const WebProfile& q) {
    std::vector<double> xs, ys;
    auto i = p.entries.begin();
    auto j = q.entries.begin();
    while (i != p.entries.end() && j != q.entries.end()) {
        if (i->address < j->address) ++i;
        else if (j->address < i->address) ++j;
        else {
            xs.push_back(static_cast<double>(i->votes));
            ys.push_back(static_cast<double>(j->votes));
            ++i;
            ++j;
        }
    }
    PearsonResult out;
    out.common = xs.size();
    if (out.common < 2) return out;
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(ys.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return out;
    out.correlation = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return out;
}

/// Matching score in [0, 1] for the configured measure. Negative correlations
/// count as no match.
[[nodiscard]] inline double matching_score(const WebProfile& p, const WebProfile& q, const SimilarityParams& params) {
    if (params.measure == Measure::tree) return similarity_tree(p, q, params).value;
    double r = std::max(0.0, pearson_flat(p, q).correlation);
    if (params.pearson_disparity) {
        r *= disparity_factor(disparity_size(p, params.size_basis), disparity_size(q, params.size_basis),
                              params.disparity_a);
    }
    return r;
}

/// One row of the per-pair breakdown.
struct PairTerm {
    TreeAddress a, b;
    std::uint64_t vote_a = 0, vote_b = 0;
    std::size_t level = 0;
    std::size_t edges = 0;
    double match = 0.0;
    double contribution = 0.0;
};

[[nodiscard]] inline std::vector<PairTerm> pair_terms(const WebProfile& p, const WebProfile& q,
                                                      const SimilarityParams& params) {
    std::vector<PairTerm> out;
    for (const auto& a : p.entries) {
        for (const auto& b : q.entries) {
            PairTerm t{a.address, b.address, a.votes, b.votes, matching_level(a.address, b.address),
                       edge_distance(a.address, b.address), 0.0, 0.0};
            t.match = match_value(t.level, params);
            t.contribution = params.normalization == Normalization::vote_sum
                                 ? pair_contribution(a.address, b.address, a.votes, b.votes, params)
                                 : pair_weight(a.address, b.address, params);
            out.push_back(std::move(t));
        }
    }
    return out;
}

[[nodiscard]] inline MatchFunction parse_match_function(std::string_view s) {
    if (s == "linear") return MatchFunction::linear;
    if (s == "quadratic") return MatchFunction::quadratic;
    throw UsageError("unknown match function '" + std::string(s) + "'");
}

[[nodiscard]] inline Normalization parse_normalization(std::string_view s) {
    if (s == "pair-count" || s == "pair_count") return Normalization::pair_count;
    if (s == "vote-sum" || s == "vote_sum") return Normalization::vote_sum;
    throw UsageError("unknown normalization '" + std::string(s) + "'");
}

[[nodiscard]] inline SizeBasis parse_size_basis(std::string_view s) {
    if (s == "categories") return SizeBasis::categories;
    if (s == "bookmarks") return SizeBasis::bookmarks;
    throw UsageError("unknown size basis '" + std::string(s) + "'");
}

[[nodiscard]] inline Measure parse_measure(std::string_view s) {
    if (s == "tree") return Measure::tree;
    if (s == "pearson") return Measure::pearson;
    throw UsageError("unknown measure '" + std::string(s) + "'");
}

} // namespace idiorec
