#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "idiorec/similarity.hpp"
#include "support.hpp"

using namespace idiorec;
using idiorec::testkit::make_profile;

namespace {

struct DisparityRow {
    std::size_t n, m;
    double printed;
};

// n, m and the rounded factor for a = 0.6.
const DisparityRow kDisparityTable[] = {
    {100, 100, 1.00}, {80, 100, 0.89}, {60, 100, 0.79}, {40, 100, 0.71}, {20, 100, 0.65}, {80, 80, 0.92},
    {60, 80, 0.81},   {40, 80, 0.72},  {20, 80, 0.65},  {60, 60, 0.84},  {40, 60, 0.73},  {20, 60, 0.65},
    {40, 40, 0.76},   {20, 40, 0.66},  {20, 20, 0.68},  {10, 20, 0.63},  {10, 10, 0.64},  {5, 100, 0.61},
    {1, 100, 0.60},
};

double round2(double x) { return std::round(x * 100.0) / 100.0; }

SimilarityParams params_for(const testkit::OracleParams& o) {
    SimilarityParams p;
    p.match_fn = o.quadratic ? MatchFunction::quadratic : MatchFunction::linear;
    p.ml_cutoff = o.ml;
    p.disparity_a = o.a;
    p.normalization = o.vote_sum ? Normalization::vote_sum : Normalization::pair_count;
    p.disparity_enabled = o.disparity;
    p.size_basis = o.size_by_bookmarks ? SizeBasis::bookmarks : SizeBasis::categories;
    return p;
}

} // namespace

TEST(Match, LinearAnchors) {
    EXPECT_EQ(linear_match(1, 8), 0.0);
    EXPECT_DOUBLE_EQ(linear_match(4, 8), 3.0 / 7.0);
    for (std::size_t l = 8; l <= 16; ++l) EXPECT_EQ(linear_match(l, 8), 1.0);
    EXPECT_EQ(linear_match(2, 2), 1.0);
    EXPECT_THROW((void)linear_match(0, 8), UsageError);
    EXPECT_THROW((void)linear_match(3, 1), UsageError);
}

TEST(Match, QuadraticAnchors) {
    EXPECT_EQ(quadratic_match(1), 0.0);
    EXPECT_EQ(quadratic_match(16), 1.0);
    EXPECT_NEAR(quadratic_match(8), 0.7, 1e-15);
    EXPECT_NEAR(quadratic_match(5), 0.45, 1e-15);
    for (std::size_t l = 2; l <= 16; ++l) EXPECT_GT(quadratic_match(l), quadratic_match(l - 1));
    EXPECT_THROW((void)quadratic_match(17), UsageError);
}

TEST(Disparity, ReproducesPrintedTable) {
    for (const auto& row : kDisparityTable) {
        EXPECT_DOUBLE_EQ(round2(disparity_factor(row.n, row.m, 0.6)), row.printed) << row.n << "/" << row.m;
        EXPECT_DOUBLE_EQ(disparity_factor(row.n, row.m, 0.6), disparity_factor(row.m, row.n, 0.6));
    }
}

TEST(Disparity, CapsAndFloor) {
    EXPECT_DOUBLE_EQ(disparity_factor(250, 400, 0.6), 1.0);
    EXPECT_DOUBLE_EQ(disparity_factor(40, 250, 0.6), disparity_factor(40, 100, 0.6));
    EXPECT_DOUBLE_EQ(disparity_factor(0, 10, 0.6), 0.6);
    for (std::size_t n = 1; n <= 120; n += 7)
        for (std::size_t m = 1; m <= 120; m += 11) {
            double d = disparity_factor(n, m, 0.3);
            EXPECT_GE(d, 0.3);
            EXPECT_LE(d, 1.0);
        }
}

TEST(PairContribution, Examples) {
    SimilarityParams p;
    auto a = TreeAddress::parse("1.13.12.1.5");
    EXPECT_NEAR(pair_contribution(a, a, 5, 3, p), 0.45 * 8, 1e-12);
    EXPECT_NEAR(pair_contribution(a, TreeAddress::parse("1.13.12.1.6"), 1, 1, p), 0.5 * 0.35 * 2, 1e-12);
    EXPECT_EQ(pair_contribution(a, TreeAddress::parse("1.18.1.2"), 4, 4, p), 0.0);
}

TEST(Similarity, SingleCategoryHundredVotes) {
    SimilarityParams params;
    params.size_basis = SizeBasis::bookmarks;
    for (const char* addr : {"1.2.3.4.5", "1.2.3.4.5.6.7.8.9.10.11.12.13.14.15.16"}) {
        auto p = make_profile("p", {{addr, 100}});
        auto s = similarity_tree(p, p, params);
        auto depth = TreeAddress::parse(addr).depth();
        EXPECT_NEAR(s.raw_core, quadratic_match(depth), 1e-12);
        EXPECT_DOUBLE_EQ(s.disparity, 1.0);
    }
    auto deep = make_profile("p", {{"1.2.3.4.5.6.7.8.9.10.11.12.13.14.15.16", 100}});
    EXPECT_DOUBLE_EQ(similarity_tree(deep, deep, params).value, 1.0);
    // With distinct categories as the size, one entry per side sits near the floor.
    EXPECT_NEAR(similarity_tree(deep, deep, SimilarityParams{}).disparity, 0.6 + 0.4 * 0.01, 1e-12);
}

TEST(Similarity, DisjointAndEmpty) {
    auto p = make_profile("p", {{"1.2.3", 2}});
    auto q = make_profile("q", {{"1.4.5", 3}});
    auto s = similarity_tree(p, q, SimilarityParams{});
    EXPECT_EQ(s.value, 0.0);
    EXPECT_EQ(s.raw_core, 0.0);
    auto e = similarity_tree(p, WebProfile{}, SimilarityParams{});
    EXPECT_TRUE(e.empty_profile);
    EXPECT_EQ(e.value, 0.0);
}

TEST(Similarity, MatchesBruteForceOracle) {
    std::mt19937_64 rng(2024);
    auto tree = testkit::random_tree(rng, 150, 12);
    for (int i = 0; i < 1000; ++i) {
        auto p = testkit::random_profile(rng, tree, 6, 9, "p");
        auto q = testkit::random_profile(rng, tree, 6, 9, "q");
        for (bool vote_sum : {true, false}) {
            for (bool quadratic : {true, false}) {
                testkit::OracleParams o;
                o.vote_sum = vote_sum;
                o.quadratic = quadratic;
                o.ml = 2 + i % 10;
                auto params = params_for(o);
                auto pq = similarity_tree(p, q, params).value;
                EXPECT_NEAR(pq, testkit::oracle_similarity(p, q, o), 1e-9);
                EXPECT_EQ(pq, similarity_tree(q, p, params).value);
                EXPECT_GE(pq, 0.0);
                EXPECT_LE(pq, 1.0);
            }
        }
    }
}

TEST(Similarity, BookmarkSizeBasisMatchesOracle) {
    std::mt19937_64 rng(5);
    auto tree = testkit::random_tree(rng, 80, 8);
    testkit::OracleParams o;
    o.size_by_bookmarks = true;
    for (int i = 0; i < 200; ++i) {
        auto p = testkit::random_profile(rng, tree, 8, 40);
        auto q = testkit::random_profile(rng, tree, 8, 40);
        EXPECT_NEAR(similarity_tree(p, q, params_for(o)).value, testkit::oracle_similarity(p, q, o), 1e-9);
    }
}

TEST(Similarity, DeeperSharedPathScoresHigher) {
    SimilarityParams params;
    params.disparity_enabled = false;
    TreeAddress a{1};
    TreeAddress b{1};
    double last = -1.0;
    for (std::uint32_t depth = 2; depth <= 16; ++depth) {
        a = a.child(depth == 16 ? 1 : 2);
        b = TreeAddress(a).parent().child(3);
        auto p = make_profile("p", {{a.to_string(), 1}});
        auto q = make_profile("q", {{b.to_string(), 1}});
        double s = similarity_tree(p, q, params).value;
        EXPECT_GT(s, last) << depth;
        last = s;
    }
}

TEST(Similarity, ValueIsClampedCoreTimesDisparity) {
    std::mt19937_64 rng(9);
    auto tree = testkit::random_tree(rng, 40, 5);
    SimilarityParams params;
    for (int i = 0; i < 300; ++i) {
        auto p = testkit::random_profile(rng, tree, 12, 20);
        auto q = testkit::random_profile(rng, tree, 12, 20);
        auto s = similarity_tree(p, q, params);
        EXPECT_DOUBLE_EQ(s.value, std::min(1.0, s.raw_core) * s.disparity);
        EXPECT_DOUBLE_EQ(s.disparity, disparity_factor(p.entries.size(), q.entries.size(), 0.6));
    }
}

TEST(Similarity, PairTermsSumToNumerator) {
    auto p = make_profile("p", {{"1.13.12.1.5", 5}, {"1.13.12.1.6", 3}, {"1.16.3.2.11.5", 1}, {"1.18.1.2", 1}});
    auto q = make_profile("q", {{"1.13.12.1.5", 2}, {"1.18.1.3", 4}});
    SimilarityParams params;
    double sum = 0.0;
    auto terms = pair_terms(p, q, params);
    EXPECT_EQ(terms.size(), 8u);
    for (const auto& t : terms) sum += t.contribution;
    EXPECT_NEAR(sum / static_cast<double>(p.vote_total() + q.vote_total()), similarity_tree(p, q, params).raw_core, 1e-12);
}

TEST(Pearson, Examples) {
    auto p = make_profile("p", {{"1.2", 1}, {"1.3", 2}, {"1.4", 3}, {"1.5", 9}});
    auto q = make_profile("q", {{"1.2", 2}, {"1.3", 4}, {"1.4", 6}, {"1.6", 1}});
    auto r = pearson_flat(p, q);
    EXPECT_EQ(r.common, 3u);
    EXPECT_NEAR(r.correlation, 1.0, 1e-12);

    auto inverse = make_profile("i", {{"1.2", 3}, {"1.3", 2}, {"1.4", 1}});
    EXPECT_NEAR(pearson_flat(p, inverse).correlation, -1.0, 1e-12);
    SimilarityParams params;
    params.measure = Measure::pearson;
    EXPECT_EQ(matching_score(p, inverse, params), 0.0);
    EXPECT_NEAR(matching_score(p, q, params), 1.0, 1e-12);

    EXPECT_EQ(pearson_flat(p, make_profile("x", {{"1.2", 5}})).correlation, 0.0);
    EXPECT_EQ(pearson_flat(p, make_profile("c", {{"1.2", 5}, {"1.3", 5}})).correlation, 0.0);
}

TEST(Params, Validation) {
    SimilarityParams p;
    EXPECT_NO_THROW(p.validate());
    p.ml_cutoff = 1;
    EXPECT_THROW(p.validate(), UsageError);
    p.ml_cutoff = 8;
    p.disparity_a = 1.0;
    EXPECT_THROW(p.validate(), UsageError);
    EXPECT_THROW((void)parse_match_function("cubic"), UsageError);
    EXPECT_EQ(parse_normalization("pair-count"), Normalization::pair_count);
}
