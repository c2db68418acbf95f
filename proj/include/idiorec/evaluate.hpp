#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "idiorec/ais.hpp"
#include "idiorec/error.hpp"
#include "idiorec/profile.hpp"
#include "idiorec/rng.hpp"
#include "idiorec/similarity.hpp"

namespace idiorec {

struct EvalOptions {
    double holdout = 0.3;  // fraction of the target's categories hidden
    std::size_t top_n = 10;
    std::size_t seeds = 20;
    std::uint64_t base_seed = 1;

    void validate() const {
        if (!(holdout > 0.0)) throw UsageError("holdout fraction must be positive");
        if (holdout >= 1.0) throw UsageError("holdout fraction 1.0 leaves an empty antigen");
        if (top_n == 0) throw UsageError("top-n must be positive");
        if (seeds == 0) throw UsageError("need at least one seed");
    }
};

/// A target user split into the visible antigen and the hidden categories.
struct HoldoutFold {
    WebProfile antigen;
    std::vector<TreeAddress> hidden;
};

struct FoldResult {
    std::string user_id;
    std::uint64_t seed = 0;
    std::size_t hidden = 0;
    std::size_t hits = 0;
    std::size_t recommended = 0;
    double precision = 0.0;
    double random_precision = 0.0;
    Termination termination = Termination::running;
    std::size_t iterations = 0;
};

struct EvalReport {
    std::vector<FoldResult> folds;
    double mean_precision = 0.0;
    double mean_random_precision = 0.0;
    double mean_coverage = 0.0;  // mean mapped fraction over profiles that carry bookmark counts
    std::size_t profiles = 0;
    std::vector<std::uint64_t> seeds;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> warnings;
};

/// Number of categories hidden for a profile with `entries` categories.
[[nodiscard]] inline std::size_t hidden_count(std::size_t entries, double holdout) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(holdout * static_cast<double>(entries))));
}

/// Hides a random subset of the target's categories. The antigen keeps only
/// the remaining entries, so nothing hidden can leak into it.
[[nodiscard]] inline HoldoutFold make_fold(const WebProfile& target, double holdout, Rng& rng) {
    auto h = hidden_count(target.entries.size(), holdout);
    if (h >= target.entries.size()) throw DataError("profile " + target.user_id + " too small to hold out categories");
    std::vector<std::size_t> idx(target.entries.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
    std::vector<bool> hide(idx.size(), false);
    for (std::size_t k = 0; k < h; ++k) hide[idx[k]] = true;

    HoldoutFold fold;
    fold.antigen.user_id = target.user_id;
    for (std::size_t i = 0; i < target.entries.size(); ++i) {
        if (hide[i]) fold.hidden.push_back(target.entries[i].address);
        else fold.antigen.entries.push_back(target.entries[i]);
    }
    fold.antigen.mapped = static_cast<std::size_t>(fold.antigen.vote_total());
    fold.antigen.total_bookmarks = fold.antigen.mapped;
    return fold;
}

/// Expected precision@N of drawing N categories uniformly from `universe`.
[[nodiscard]] inline double random_precision(std::size_t universe, std::size_t relevant_in_universe, std::size_t n) {
    if (universe == 0 || n == 0) return 0.0;
    double drawn = static_cast<double>(std::min(n, universe));
    return drawn * static_cast<double>(relevant_in_universe) / static_cast<double>(universe) / static_cast<double>(n);
}

[[nodiscard]] inline std::map<std::string, std::string> describe(const SimilarityParams& s, const AisParams& a) {
    auto num = [](double v) {
        std::ostringstream o;
        o.precision(17);
        o << v;
        return o.str();
    };
    std::map<std::string, std::string> out;
    out["match_fn"] = s.match_fn == MatchFunction::linear ? "linear" : "quadratic";
    out["ml_cutoff"] = std::to_string(s.ml_cutoff);
    out["disparity_a"] = num(s.disparity_a);
    out["normalization"] = s.normalization == Normalization::vote_sum ? "vote-sum" : "pair-count";
    out["disparity_enabled"] = s.disparity_enabled ? "true" : "false";
    out["size_basis"] = s.size_basis == SizeBasis::categories ? "categories" : "bookmarks";
    out["measure"] = s.measure == Measure::tree ? "tree" : "pearson";
    out["pearson_disparity"] = s.pearson_disparity ? "true" : "false";
    out["k0"] = num(a.k0);
    out["k1"] = num(a.k1);
    out["k2"] = num(a.k2);
    out["k3"] = num(a.k3);
    out["c"] = num(a.c);
    out["dt"] = num(a.dt);
    out["pool_size"] = std::to_string(a.pool_size);
    out["y"] = num(a.y);
    out["init_concentration"] = num(a.init_concentration);
    out["concentration_max"] = num(a.concentration_max);
    out["death_threshold"] = num(a.death_level());
    out["stabilization_window"] = std::to_string(a.stabilization_window);
    out["max_iterations"] = std::to_string(a.max_iterations);
    out["stability_mode"] = a.stability_mode == StabilityMode::membership ? "membership" : "concentration";
    out["stability_epsilon"] = num(a.stability_epsilon);
    out["renormalize"] = a.renormalize ? "true" : "false";
    return out;
}

/// Leave-one-out harness: for every seed and every user (in user-id order),
/// hide part of the user's categories, run the immune network on the rest
/// against all other users, and score the top-N list against the hidden set.
[[nodiscard]] inline EvalReport evaluate(const std::vector<WebProfile>& db, const SimilarityParams& sim,
                                         const AisParams& ais, const EvalOptions& options) {
    options.validate();
    sim.validate();
    ais.validate();
    if (db.size() < 3) throw DataError("evaluation needs at least 3 profiles");

    EvalReport report;
    report.profiles = db.size();
    report.parameters = describe(sim, ais);
    report.parameters["holdout"] = std::to_string(options.holdout);
    report.parameters["top_n"] = std::to_string(options.top_n);

    bool all_identical = std::all_of(db.begin(), db.end(), [&](const WebProfile& p) {
        if (p.entries.size() != db.front().entries.size()) return false;
        for (std::size_t i = 0; i < p.entries.size(); ++i) {
            if (p.entries[i].address != db.front().entries[i].address || p.entries[i].votes != db.front().entries[i].votes)
                return false;
        }
        return true;
    });
    if (all_identical) report.warnings.push_back("degenerate database: all profiles are identical");

    double coverage_sum = 0.0;
    std::size_t coverage_n = 0;
    for (const auto& p : db) {
        if (p.total_bookmarks > 0) {
            coverage_sum += static_cast<double>(p.mapped) / static_cast<double>(p.total_bookmarks);
            ++coverage_n;
        }
    }
    report.mean_coverage = coverage_n ? coverage_sum / static_cast<double>(coverage_n) : 0.0;

    std::set<std::string> skipped;
    for (std::size_t s = 0; s < options.seeds; ++s) {
        const auto seed = options.base_seed + s;
        report.seeds.push_back(seed);
        for (std::size_t t = 0; t < db.size(); ++t) {
            const auto& target = db[t];
            auto rng = Rng::stream(seed, t);
            if (hidden_count(target.entries.size(), options.holdout) >= target.entries.size()) {
                if (skipped.insert(target.user_id).second)
                    report.warnings.push_back("skipped " + target.user_id + ": too few categories to hold out");
                continue;
            }
            auto fold = make_fold(target, options.holdout, rng);

            std::vector<WebProfile> candidates;
            std::set<TreeAddress> universe;
            for (std::size_t u = 0; u < db.size(); ++u) {
                if (u == t) continue;
                candidates.push_back(db[u]);
                for (const auto& e : db[u].entries) {
                    if (!fold.antigen.find(e.address)) universe.insert(e.address);
                }
            }
            rng.shuffle(candidates);

            auto state = run(fold.antigen, std::move(candidates), ais, sim);
            auto recs = recommend(state, static_cast<int>(options.top_n));

            std::set<TreeAddress> hidden(fold.hidden.begin(), fold.hidden.end());
            FoldResult r;
            r.user_id = target.user_id;
            r.seed = seed;
            r.hidden = hidden.size();
            r.recommended = recs.items.size();
            for (const auto& item : recs.items) r.hits += hidden.count(item.address);
            r.precision = static_cast<double>(r.hits) / static_cast<double>(options.top_n);
            std::size_t relevant = 0;
            for (const auto& h : hidden) relevant += universe.count(h);
            r.random_precision = random_precision(universe.size(), relevant, options.top_n);
            r.termination = state.termination;
            r.iterations = state.iterations_run;
            report.folds.push_back(std::move(r));
        }
    }
    if (report.folds.empty()) throw DataError("no profile large enough to evaluate");
    for (const auto& f : report.folds) {
        report.mean_precision += f.precision;
        report.mean_random_precision += f.random_precision;
    }
    report.mean_precision /= static_cast<double>(report.folds.size());
    report.mean_random_precision /= static_cast<double>(report.folds.size());
    return report;
}

} // namespace idiorec
