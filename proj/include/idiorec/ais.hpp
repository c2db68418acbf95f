#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "idiorec/error.hpp"
#include "idiorec/ontology.hpp"
#include "idiorec/profile.hpp"
#include "idiorec/similarity.hpp"

namespace idiorec {

enum class StabilityMode {
    membership,     // pool membership unchanged
    concentration,  // membership unchanged and no concentration moved more than epsilon
};

/// Idiotypic network parameters. k0 rewards being recognised by other
/// antibodies, k1 suppresses similar antibodies, k2 stimulates on antigen
/// match and k3 is the death rate.
struct AisParams {
    double k0 = 0.0;
    double k1 = 0.2;
    double k2 = 4.0;
    double k3 = 3.0;
    double c = 5.0;
    double dt = 0.1;
    std::size_t pool_size = 10;
    double y = 1.0;  // antigen concentration
    double init_concentration = 10.0;
    double concentration_max = 100.0;
    std::optional<double> death_threshold;  // defaults to 5% of init_concentration
    std::size_t stabilization_window = 10;
    std::size_t max_iterations = 1000;
    StabilityMode stability_mode = StabilityMode::membership;
    double stability_epsilon = 1e-3;
    bool renormalize = false;  // rescale total concentration to pool size * init after each step

    [[nodiscard]] double death_level() const { return death_threshold.value_or(0.05 * init_concentration); }

    void validate() const {
        if (!(dt > 0.0)) throw UsageError("dt must be positive");
        if (pool_size < 2) throw UsageError("pool_size must be at least 2");
        if (stabilization_window < 1) throw UsageError("stabilization_window must be at least 1");
        if (!(concentration_max > 0.0)) throw UsageError("concentration_max must be positive");
        if (init_concentration < 0.0 || init_concentration > concentration_max)
            throw UsageError("init_concentration must lie in [0, concentration_max]");
        if (death_level() < 0.0) throw UsageError("death_threshold must be non-negative");
    }
};

struct Antibody {
    WebProfile profile;
    double concentration = 0.0;
    double antigen_match = 0.0;
    std::size_t age = 0;
};

enum class Termination { running, stabilized, max_iterations, exhausted };

[[nodiscard]] inline std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::running: return "running";
    case Termination::stabilized: return "stabilized";
    case Termination::max_iterations: return "max-iterations";
    case Termination::exhausted: return "exhausted";
    }
    return "unknown";
}

struct AisState {
    WebProfile antigen;
    std::vector<Antibody> pool;
    std::vector<std::vector<double>> correlations;  // symmetric, diagonal unused
    std::vector<WebProfile> candidates;
    std::size_t next_candidate = 0;
    std::size_t iterations_run = 0;
    std::size_t stable_streak = 0;
    SimilarityParams sim;
    AisParams params;
    Termination termination = Termination::running;

    [[nodiscard]] std::size_t queue_size() const noexcept { return candidates.size() - next_candidate; }
    [[nodiscard]] bool has_more_data() const noexcept { return next_candidate < candidates.size(); }

    [[nodiscard]] std::set<std::string> membership() const {
        std::set<std::string> ids;
        for (const auto& ab : pool) ids.insert(ab.profile.user_id);
        return ids;
    }
};

/// Encodes the antigen and queues the candidate users in the given order.
[[nodiscard]] inline AisState init(WebProfile antigen, std::vector<WebProfile> candidates, const AisParams& params,
                                   const SimilarityParams& sim) {
    params.validate();
    sim.validate();
    if (candidates.empty()) throw DataError("no candidate users");
    for (const auto& c : candidates) {
        if (c.user_id == antigen.user_id) throw DataError("antigen user " + antigen.user_id + " is among the candidates");
    }
    AisState state;
    state.antigen = std::move(antigen);
    state.candidates = std::move(candidates);
    state.sim = sim;
    state.params = params;
    return state;
}

/// Moves the next queued user into the pool at the initial concentration and
/// scores it against the antigen and every pool member. Returns false when the
/// queue is empty.
inline bool add_antibody(AisState& state) {
    if (!state.has_more_data()) return false;
    if (state.pool.size() >= state.params.pool_size) throw UsageError("pool is full");

    Antibody ab;
    ab.profile = state.candidates[state.next_candidate++];
    ab.concentration = state.params.init_concentration;
    ab.antigen_match = matching_score(ab.profile, state.antigen, state.sim);

    std::vector<double> row(state.pool.size() + 1, 0.0);
    for (std::size_t j = 0; j < state.pool.size(); ++j) {
        row[j] = matching_score(ab.profile, state.pool[j].profile, state.sim);
        state.correlations[j].push_back(row[j]);
    }
    state.correlations.push_back(std::move(row));
    state.pool.push_back(std::move(ab));
    state.stable_streak = 0;
    return true;
}

namespace detail {

inline void remove_antibody(AisState& state, std::size_t index) {
    state.pool.erase(state.pool.begin() + static_cast<std::ptrdiff_t>(index));
    state.correlations.erase(state.correlations.begin() + static_cast<std::ptrdiff_t>(index));
    for (auto& row : state.correlations) row.erase(row.begin() + static_cast<std::ptrdiff_t>(index));
}

} // namespace detail

/// One explicit Euler step of
///   dx_i/dt = c [k0 sum_j m_ji x_j - k1 sum_j m_ij x_j + k2 m_i y] - k3 x_i
/// applied to every antibody from the pre-step values, clamped to
/// [0, concentration_max]. Antibodies below the death threshold leave the pool
/// and are replaced from the queue.
inline void iterate(AisState& state, const AisParams& params) {
    if (state.pool.empty()) throw UsageError("iterate on an empty pool");
    const auto n = state.pool.size();
    const auto before = state.membership();

    // Sum neighbours in user-id order so the result does not depend on pool order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return state.pool[a].profile.user_id < state.pool[b].profile.user_id;
    });

    std::vector<double> next(n);
    double max_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double recognised = 0.0;  // sum_j m_ji x_j
        double suppressed = 0.0;  // sum_j m_ij x_j
        for (auto j : order) {
            if (j == i) continue;
            recognised += state.correlations[j][i] * state.pool[j].concentration;
            suppressed += state.correlations[i][j] * state.pool[j].concentration;
        }
        const auto& ab = state.pool[i];
        double drive = params.c * (params.k0 * recognised - params.k1 * suppressed +
                                   params.k2 * ab.antigen_match * params.y) -
                       params.k3 * ab.concentration;
        next[i] = std::clamp(ab.concentration + params.dt * drive, 0.0, params.concentration_max);
    }
    if (params.renormalize) {
        double total = 0.0;
        for (auto j : order) total += next[j];
        if (total > 0.0) {
            double scale = static_cast<double>(n) * params.init_concentration / total;
            for (auto& x : next) x = std::min(params.concentration_max, x * scale);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        max_change = std::max(max_change, std::abs(next[i] - state.pool[i].concentration));
        state.pool[i].concentration = next[i];
        ++state.pool[i].age;
    }

    for (std::size_t i = n; i-- > 0;) {
        if (state.pool[i].concentration < params.death_level()) detail::remove_antibody(state, i);
    }
    while (state.pool.size() < params.pool_size && state.has_more_data()) add_antibody(state);

    ++state.iterations_run;
    bool unchanged = state.membership() == before;
    if (params.stability_mode == StabilityMode::concentration) unchanged = unchanged && max_change < params.stability_epsilon;
    state.stable_streak = unchanged ? state.stable_streak + 1 : 0;
}

/// True once the pool has been unchanged for the stabilization window.
[[nodiscard]] inline bool is_stable(const AisState& state, const AisParams& params) noexcept {
    return state.stable_streak >= params.stabilization_window;
}

using AisObserver = std::function<void(const AisState&)>;

/// Main loop: add users until the pool is full and iterate the full pool until
/// it stabilizes. A death reopens a slot for the next user; when a slot opens
/// and no users remain, the run ends as exhausted. `observer` sees the state
/// after every iterate.
[[nodiscard]] inline AisState run(WebProfile antigen, std::vector<WebProfile> candidates, const AisParams& params,
                                  const SimilarityParams& sim, const AisObserver& observer = {}) {
    auto state = init(std::move(antigen), std::move(candidates), params, sim);
    while (true) {
        if (is_stable(state, params)) {
            state.termination = Termination::stabilized;
            break;
        }
        if (state.iterations_run >= params.max_iterations) {
            state.termination = Termination::max_iterations;
            break;
        }
        if (state.pool.size() < params.pool_size) {
            if (add_antibody(state)) continue;
            state.termination = Termination::exhausted;
            break;
        }
        iterate(state, params);
        if (observer) observer(state);
    }
    return state;
}

struct RatingPrediction {
    double rating = 0.0;
    std::size_t support = 0;
};

/// Weighted mean of the votes pool members give a category, each weighted by
/// concentration times antigen match.
[[nodiscard]] inline RatingPrediction predict_rating(const AisState& state, const TreeAddress& target) {
    RatingPrediction out;
    double weighted = 0.0;
    double weights = 0.0;
    for (const auto& ab : state.pool) {
        const auto* entry = ab.profile.find(target);
        if (!entry) continue;
        double w = ab.concentration * ab.antigen_match;
        weighted += w * static_cast<double>(entry->votes);
        weights += w;
        ++out.support;
    }
    if (weights > 0.0) out.rating = weighted / weights;
    return out;
}

[[nodiscard]] inline RatingPrediction predict_rating(const AisState& state, CategoryId target) {
    for (const auto& ab : state.pool) {
        for (const auto& e : ab.profile.entries) {
            if (e.catid == target) return predict_rating(state, e.address);
        }
    }
    return {};
}

struct RecommendedItem {
    TreeAddress address;
    std::optional<CategoryId> catid;
    double score = 0.0;
    double predicted = 0.0;
    std::size_t support = 0;
    std::vector<std::string> urls;          // representative sites
    std::vector<std::string> contributors;  // pool user ids holding the category
};

struct Recommendation {
    std::vector<RecommendedItem> items;
};

inline constexpr std::size_t kUrlsPerRecommendation = 3;

/// Ranks every category held by the pool but not by the antigen by predicted
/// rating times support. Ties break by catid (address when unknown).
[[nodiscard]] inline Recommendation recommend(const AisState& state, int n, const OntologyIndex* index = nullptr) {
    if (n <= 0) throw UsageError("number of recommendations must be positive");

    std::unordered_set<std::string> antigen_urls;
    for (const auto& e : state.antigen.entries) antigen_urls.insert(e.urls.begin(), e.urls.end());

    std::map<TreeAddress, RecommendedItem> items;
    for (const auto& ab : state.pool) {
        for (const auto& e : ab.profile.entries) {
            if (state.antigen.find(e.address)) continue;
            auto& item = items[e.address];
            item.address = e.address;
            if (e.catid) item.catid = e.catid;
            item.contributors.push_back(ab.profile.user_id);
            for (const auto& u : e.urls) {
                if (!antigen_urls.count(u)) item.urls.push_back(u);
            }
        }
    }

    std::vector<RecommendedItem> ranked;
    ranked.reserve(items.size());
    for (auto& [address, item] : items) {
        auto prediction = predict_rating(state, address);
        item.predicted = prediction.rating;
        item.support = prediction.support;
        item.score = prediction.rating * static_cast<double>(prediction.support);
        if (!item.catid && index) {
            if (const auto* node = index->find(address)) item.catid = node->catid;
        }
        if (item.urls.empty() && index && item.catid) {
            for (const auto& u : index->urls_of(*item.catid)) {
                if (!antigen_urls.count(u)) item.urls.push_back(u);
            }
        }
        std::sort(item.urls.begin(), item.urls.end());
        item.urls.erase(std::unique(item.urls.begin(), item.urls.end()), item.urls.end());
        if (item.urls.size() > kUrlsPerRecommendation) item.urls.resize(kUrlsPerRecommendation);
        std::sort(item.contributors.begin(), item.contributors.end());
        ranked.push_back(std::move(item));
    }

    std::sort(ranked.begin(), ranked.end(), [](const RecommendedItem& a, const RecommendedItem& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.catid && b.catid && *a.catid != *b.catid) return *a.catid < *b.catid;
        return a.address < b.address;
    });
    if (ranked.size() > static_cast<std::size_t>(n)) ranked.resize(static_cast<std::size_t>(n));
    return Recommendation{std::move(ranked)};
}

/// Mean pairwise matching score among pool members (0 for fewer than two).
[[nodiscard]] inline double mean_pairwise_similarity(const AisState& state) {
    const auto n = state.pool.size();
    if (n < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) total += state.correlations[i][j];
    }
    return total / static_cast<double>(n * (n - 1) / 2);
}

} // namespace idiorec
