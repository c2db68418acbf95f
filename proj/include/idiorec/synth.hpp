#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "idiorec/error.hpp"
#include "idiorec/ontology.hpp"
#include "idiorec/profile.hpp"
#include "idiorec/rng.hpp"

namespace idiorec {

/// Shape of a generated corpus: a complete tree of the given depth and
/// branching, and users grouped into clusters that each favour one depth-2
/// subtree and a small set of planted "hot" categories inside it.
struct SyntheticCorpusSpec {
    std::size_t clusters = 2;
    std::size_t users_per_cluster = 20;
    std::size_t categories_per_user = 12;
    std::uint64_t vote_min = 1;
    std::uint64_t vote_max = 5;
    std::size_t depth = 5;
    std::size_t branching = 4;
    double noise = 0.1;              // chance a category is drawn from the whole tree
    std::size_t hot_categories = 8;  // planted per cluster
    double hot_fraction = 0.6;       // chance a non-noise category comes from the hot set
    std::size_t urls_per_category = 2;
    std::size_t near_duplicates = 0;  // perturbed copies of every user
    std::uint64_t seed = 1;

    void validate() const {
        if (clusters == 0 || users_per_cluster == 0 || categories_per_user == 0 || urls_per_category == 0)
            throw UsageError("synthetic corpus counts must be positive");
        if (vote_min == 0 || vote_max < vote_min) throw UsageError("vote range must satisfy 1 <= min <= max");
        if (depth < 3 || depth > kMaxDepth) throw UsageError("tree depth must be in [3, 16]");
        if (branching < 1) throw UsageError("branching must be positive");
        if (clusters > branching) throw UsageError("need at least one depth-2 subtree per cluster");
        if (!(noise >= 0.0 && noise <= 1.0)) throw UsageError("noise must be in [0, 1]");
        if (!(hot_fraction >= 0.0 && hot_fraction <= 1.0)) throw UsageError("hot_fraction must be in [0, 1]");
        double nodes = 1, level = 1;
        for (std::size_t d = 1; d < depth; ++d) {
            level *= static_cast<double>(branching);
            nodes += level;
        }
        if (nodes > 2e6) throw UsageError("synthetic tree too large");
        // Each cluster subtree below depth 2 must hold enough categories for one user.
        double per_cluster = nodes / static_cast<double>(branching) - 1;
        if (per_cluster < static_cast<double>(categories_per_user))
            throw UsageError("cluster subtree smaller than categories_per_user");
    }
};

struct SyntheticCorpus {
    OntologyIndex index;
    std::vector<WebProfile> profiles;       // sorted by user id
    std::vector<std::size_t> cluster_of;    // parallel to profiles
    std::vector<std::vector<TreeAddress>> hot;  // planted categories per cluster
};

namespace detail {

inline std::string synthetic_url(CategoryId id, std::size_t page) {
    return "http://cat" + std::to_string(id) + ".test/page" + std::to_string(page) + "/";
}

inline std::string pad(std::size_t v, std::size_t width) {
    auto s = std::to_string(v);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

} // namespace detail

[[nodiscard]] inline SyntheticCorpus generate_corpus(const SyntheticCorpusSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    // Complete tree, catids in breadth-first order starting at 1.
    OntologyIndex::Builder builder;
    std::vector<std::pair<TreeAddress, CategoryId>> nodes{{TreeAddress{1}, 1}};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [address, id] = nodes[i];
        builder.add_category(id, address, "Category " + std::to_string(id));
        for (std::size_t k = 0; k < spec.urls_per_category; ++k) builder.add_url(detail::synthetic_url(id, k + 1), id);
        if (address.depth() < spec.depth) {
            for (std::size_t b = 1; b <= spec.branching; ++b) {
                nodes.emplace_back(address.child(static_cast<std::uint32_t>(b)), static_cast<CategoryId>(nodes.size() + 1));
            }
        }
    }
    SyntheticCorpus corpus;
    corpus.index = std::move(builder).build();

    std::vector<TreeAddress> everything;
    for (const auto& [address, id] : nodes) {
        if (address.depth() > 1) everything.push_back(address);
    }

    std::vector<std::uint32_t> homes(spec.branching);
    for (std::size_t b = 0; b < spec.branching; ++b) homes[b] = static_cast<std::uint32_t>(b + 1);
    rng.shuffle(homes);

    auto make_user = [&](std::string id, std::size_t cluster, const std::vector<TreeAddress>& pool,
                         const std::vector<TreeAddress>& hot) {
        std::set<TreeAddress> chosen;
        std::size_t guard = 0;
        while (chosen.size() < spec.categories_per_user && guard++ < 100000) {
            const std::vector<TreeAddress>* source = &pool;
            if (rng.unit() < spec.noise) source = &everything;
            else if (rng.unit() < spec.hot_fraction) source = &hot;
            chosen.insert((*source)[rng.index(source->size())]);
        }
        WebProfile p;
        p.user_id = std::move(id);
        for (const auto& address : chosen) {
            ProfileEntry e;
            e.address = address;
            e.catid = corpus.index.at(address).catid;
            e.votes = rng.between(spec.vote_min, spec.vote_max);
            for (std::uint64_t v = 0; v < e.votes; ++v) {
                auto base = detail::synthetic_url(*e.catid, 1 + rng.index(spec.urls_per_category));
                e.urls.push_back(v == 0 ? base : base + "item" + std::to_string(v) + ".html");
            }
            p.entries.push_back(std::move(e));
        }
        canonicalize(p);
        p.mapped = static_cast<std::size_t>(p.vote_total());
        p.total_bookmarks = p.mapped;
        corpus.profiles.push_back(std::move(p));
        corpus.cluster_of.push_back(cluster);
    };

    for (std::size_t c = 0; c < spec.clusters; ++c) {
        std::vector<TreeAddress> pool;
        for (const auto& address : everything) {
            if (address.depth() >= 3 && address.components()[1] == homes[c]) pool.push_back(address);
        }
        auto shuffled = pool;
        rng.shuffle(shuffled);
        std::vector<TreeAddress> hot(shuffled.begin(),
                                     shuffled.begin() + static_cast<std::ptrdiff_t>(std::min(spec.hot_categories, shuffled.size())));
        if (hot.empty()) hot = pool;
        std::sort(hot.begin(), hot.end());
        corpus.hot.push_back(hot);

        auto first = corpus.profiles.size();
        for (std::size_t u = 0; u < spec.users_per_cluster; ++u) {
            make_user("c" + detail::pad(c, 2) + "_u" + detail::pad(u, 3), c, pool, hot);
        }
        // Near duplicates: copies of each cluster member with one vote changed.
        auto originals = corpus.profiles.size();
        for (auto src = first; src < originals; ++src) {
            for (std::size_t d = 0; d < spec.near_duplicates; ++d) {
                auto copy = corpus.profiles[src];
                copy.user_id += "_d" + detail::pad(d, 2);
                auto& e = copy.entries[rng.index(copy.entries.size())];
                e.votes = e.votes == spec.vote_min ? e.votes + 1 : e.votes - 1;
                if (e.votes > e.urls.size()) e.urls.push_back(e.urls.front() + "dup.html");
                else e.urls.pop_back();
                copy.mapped = static_cast<std::size_t>(copy.vote_total());
                copy.total_bookmarks = copy.mapped;
                corpus.profiles.push_back(std::move(copy));
                corpus.cluster_of.push_back(c);
            }
        }
    }

    // Sort by user id, keeping cluster labels aligned.
    std::vector<std::size_t> order(corpus.profiles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return corpus.profiles[a].user_id < corpus.profiles[b].user_id; });
    std::vector<WebProfile> profiles;
    std::vector<std::size_t> clusters;
    for (auto i : order) {
        profiles.push_back(std::move(corpus.profiles[i]));
        clusters.push_back(corpus.cluster_of[i]);
    }
    corpus.profiles = std::move(profiles);
    corpus.cluster_of = std::move(clusters);
    return corpus;
}

/// Writes `index.idx`, `clusters.tsv` and `profiles/<user>.profile` under `dir`.
inline void write_corpus(const SyntheticCorpus& corpus, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "profiles");
    corpus.index.save((fs::path(dir) / "index.idx").string());
    std::ofstream clusters(fs::path(dir) / "clusters.tsv", std::ios::binary);
    if (!clusters) throw DataError("cannot write " + dir + "/clusters.tsv");
    clusters << "user_id\tcluster\n";
    for (std::size_t i = 0; i < corpus.profiles.size(); ++i) {
        const auto& p = corpus.profiles[i];
        write_profile_file((fs::path(dir) / "profiles" / (p.user_id + ".profile")).string(), p, ProfileEncoding::tree);
        clusters << p.user_id << '\t' << corpus.cluster_of[i] << '\n';
    }
    for (std::size_t c = 0; c < corpus.hot.size(); ++c) {
        for (const auto& a : corpus.hot[c]) clusters << "#hot\t" << c << '\t' << a.to_string() << '\n';
    }
}

} // namespace idiorec
