#pragma once

// Independent reference implementations used as oracles by the unit and
// acceptance tests. They work on plain strings and vectors and share no code
// with the library beyond the profile container.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "idiorec/profile.hpp"

#ifndef IDIOREC_TEST_DATA
#define IDIOREC_TEST_DATA "tests/data"
#endif

namespace idiorec::testkit {

inline std::string data_path(const std::string& name) { return std::string(IDIOREC_TEST_DATA) + "/" + name; }

inline std::vector<int> components(const std::string& dotted) {
    std::vector<int> out;
    std::stringstream in(dotted);
    std::string piece;
    while (std::getline(in, piece, '.')) out.push_back(std::stoi(piece));
    return out;
}

inline int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    int l = 0;
    while (l < static_cast<int>(a.size()) && l < static_cast<int>(b.size()) && a[l] == b[l]) ++l;
    return l;
}

struct OracleParams {
    bool quadratic = true;
    int ml = 8;
    double a = 0.6;
    bool vote_sum = true;
    bool disparity = true;
    bool size_by_bookmarks = false;
};

/// Double sum over every category pair, evaluated straight from the formula.
inline double oracle_similarity(const WebProfile& p, const WebProfile& q, const OracleParams& o) {
    if (p.entries.empty() || q.entries.empty()) return 0.0;
    double num = 0.0;
    double votes_p = 0.0, votes_q = 0.0;
    for (const auto& e : p.entries) votes_p += static_cast<double>(e.votes);
    for (const auto& e : q.entries) votes_q += static_cast<double>(e.votes);
    for (const auto& ei : p.entries) {
        for (const auto& ej : q.entries) {
            auto ci = components(ei.address.to_string());
            auto cj = components(ej.address.to_string());
            int l = common_prefix(ci, cj);
            int ed = static_cast<int>(ci.size() + cj.size()) - 2 * l;
            if (ed == 0) ed = 1;
            double match = o.quadratic ? -(l * l - 33.0 * l + 32.0) / 240.0
                                       : std::min(1.0, (l - 1.0) / (o.ml - 1.0));
            double term = match / ed;
            if (o.vote_sum) term *= static_cast<double>(ei.votes + ej.votes);
            num += term;
        }
    }
    double den = o.vote_sum ? votes_p + votes_q
                            : static_cast<double>(p.entries.size()) * static_cast<double>(q.entries.size());
    double core = std::min(1.0, num / den);
    if (!o.disparity) return core;
    double n = o.size_by_bookmarks ? votes_p : static_cast<double>(p.entries.size());
    double m = o.size_by_bookmarks ? votes_q : static_cast<double>(q.entries.size());
    n = std::min(n, 100.0);
    m = std::min(m, 100.0);
    if (n > m) std::swap(n, m);
    return core * (o.a + (1 - o.a) * n * (n + m) / (200.0 * m));
}

/// Linear scan for the indexed URL sharing the most leading characters with
/// the query; ties go to the smallest URL. Misses when the host is not covered.
inline std::optional<std::string> oracle_prefix(const std::vector<std::string>& indexed, const std::string& query) {
    auto host_end = query.find('/', query.find("://") + 3);
    std::optional<std::string> best;
    std::size_t best_len = 0;
    for (const auto& u : indexed) {
        std::size_t k = 0;
        while (k < u.size() && k < query.size() && u[k] == query[k]) ++k;
        if (!best || k > best_len || (k == best_len && u < *best)) {
            best = u;
            best_len = k;
        }
    }
    if (!best || best_len < host_end + 1) return std::nullopt;
    return best;
}

/// All addresses of a random tree rooted at 1.
inline std::vector<TreeAddress> random_tree(std::mt19937_64& rng, std::size_t nodes, std::size_t max_depth) {
    std::vector<TreeAddress> out{TreeAddress{1}};
    std::vector<std::uint32_t> kids{0};
    while (out.size() < nodes) {
        auto p = std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng);
        if (out[p].depth() >= max_depth) continue;
        out.push_back(out[p].child(++kids[p]));
        kids.push_back(0);
    }
    return out;
}

inline WebProfile random_profile(std::mt19937_64& rng, const std::vector<TreeAddress>& tree, std::size_t max_entries,
                                 std::uint64_t max_votes, const std::string& id = "u") {
    WebProfile p;
    p.user_id = id;
    auto n = std::uniform_int_distribution<std::size_t>(1, max_entries)(rng);
    std::vector<TreeAddress> chosen;
    while (chosen.size() < n) {
        const auto& a = tree[std::uniform_int_distribution<std::size_t>(0, tree.size() - 1)(rng)];
        if (std::find(chosen.begin(), chosen.end(), a) == chosen.end()) chosen.push_back(a);
    }
    for (const auto& a : chosen) {
        ProfileEntry e;
        e.address = a;
        e.votes = std::uniform_int_distribution<std::uint64_t>(1, max_votes)(rng);
        p.entries.push_back(e);
    }
    canonicalize(p);
    p.mapped = static_cast<std::size_t>(p.vote_total());
    p.total_bookmarks = p.mapped;
    return p;
}

inline WebProfile make_profile(const std::string& id, std::vector<std::pair<std::string, std::uint64_t>> entries) {
    WebProfile p;
    p.user_id = id;
    for (auto& [address, votes] : entries) {
        ProfileEntry e;
        e.address = TreeAddress::parse(address);
        e.votes = votes;
        p.entries.push_back(e);
    }
    canonicalize(p);
    p.mapped = static_cast<std::size_t>(p.vote_total());
    p.total_bookmarks = p.mapped;
    return p;
}

} // namespace idiorec::testkit
