#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "idiorec/ontology.hpp"
#include "support.hpp"

using namespace idiorec;
using idiorec::testkit::data_path;

namespace {

OntologyIndex load_tsv(const std::string& name) { return parse_ontology(read_file(data_path(name)), OntologyFormat::tsv); }

} // namespace

TEST(Ontology, DirectorySampleRecords) {
    auto index = parse_ontology(read_file(data_path("directory_sample.rdf")), OntologyFormat::rdf_subset);
    EXPECT_EQ(index.parse_stats().topics, 2u);
    EXPECT_EQ(index.parse_stats().implicit_nodes, 2u);
    EXPECT_EQ(index.parse_stats().malformed, 0u);

    const auto& arts = index.at(CategoryId{2});
    EXPECT_EQ(arts.address.depth(), 2u);
    EXPECT_EQ(arts.title, "Arts");
    EXPECT_EQ(arts.address.to_string(), "1.1");

    const auto& pre = index.at(CategoryId{468769});
    EXPECT_EQ(pre.address.to_string(), "1.2.1");
    EXPECT_EQ(pre.url_count, 3u);
    EXPECT_EQ(index.at(pre.address.parent()).title, "Kids and Teens");
    EXPECT_EQ(index.at(TreeAddress{1}).title, "Top");

    auto hit = index.lookup_url("http://www.coolplays.com/");
    ASSERT_TRUE(hit.category);
    EXPECT_EQ(*hit.category, 468769u);
    EXPECT_EQ(index.parse_stats().duplicate_urls, 0u);
}

TEST(Ontology, UnclosedLinkTagsAsPrinted) {
    // Record shapes exactly as a raw dump prints them, with elided content.
    std::string text =
        "<Topic r:ID=\"Top/Arts\">\n<tag catid=\"2\"/>\n<d:Title>Arts</d:Title>\n"
        "<narrow r:resource=\"Top/Arts/Books\"/>\n[...]\n"
        "<Topic r:ID=\"Top/Kids_and_Teens/Pre-School\">\n<catid>468769</catid>\n"
        "<link r:resource=\"http://www.coolplays.com/\">\n"
        "<link r:resource=\"http://kayleigh.tierranet.com/\">\n";
    auto index = parse_ontology(text, OntologyFormat::rdf_subset);
    EXPECT_EQ(index.parse_stats().topics, 2u);
    EXPECT_EQ(index.at(CategoryId{2}).title, "Arts");
    EXPECT_EQ(index.at(CategoryId{468769}).url_count, 2u);
}

TEST(Ontology, SingleRootRecord) {
    auto index = parse_ontology("<Topic r:ID=\"Top\">\n<catid>1</catid>\n</Topic>\n", OntologyFormat::rdf_subset);
    EXPECT_EQ(index.category_count(), 1u);
    auto h = index.level_histogram();
    EXPECT_EQ(h[0], 1u);
    for (std::size_t d = 1; d < h.size(); ++d) EXPECT_EQ(h[d], 0u);
}

TEST(Ontology, FiftyCategoryHistogramMatchesRecount) {
    auto index = load_tsv("fifty.tsv");
    EXPECT_EQ(index.category_count(), 50u);
    EXPECT_EQ(index.url_count(), 200u);
    // Recounted from the fixture with an independent line-counting script.
    const std::array<std::size_t, 16> expected{1, 7, 18, 19, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    EXPECT_EQ(index.level_histogram(), expected);

    std::array<std::size_t, 16> brute{};
    for (const auto& [id, node] : index.nodes()) ++brute[node.address.depth() - 1];
    EXPECT_EQ(index.level_histogram(), brute);
}

TEST(Ontology, IndexInvariants) {
    auto index = load_tsv("fifty.tsv");
    std::size_t total = 0;
    for (auto c : index.level_histogram()) total += c;
    EXPECT_EQ(total, index.category_count());
    for (const auto& [id, node] : index.nodes()) {
        EXPECT_EQ(node.catid, id);
        EXPECT_EQ(index.find(node.address), &node);
        if (node.address.depth() > 1) {
            EXPECT_NE(index.find(node.address.parent()), nullptr);
        }
    }
    for (const auto& [url, id] : index.urls()) {
        EXPECT_NE(index.find(id), nullptr);
        EXPECT_EQ(normalize_url(url), url);
    }
}

TEST(Ontology, ExactLookupForEveryIndexedUrl) {
    auto index = load_tsv("fifty.tsv");
    for (const auto& [url, id] : index.urls()) {
        auto m = index.lookup_url(url);
        ASSERT_TRUE(m.category);
        EXPECT_EQ(*m.category, id);
        EXPECT_EQ(m.truncation_depth, 0u);
    }
}

TEST(Ontology, ReverseTruncationExamples) {
    auto index = load_tsv("news.tsv");
    auto m = index.lookup_url(normalize_url("www.bbc.co.uk/sport/english/football/default.stm"));
    ASSERT_TRUE(m.category);
    EXPECT_EQ(*m.category, 22u);
    EXPECT_EQ(m.truncation_depth, 1u);
    EXPECT_EQ(m.matched, "http://www.bbc.co.uk/sport/english/football/");

    auto deep = index.lookup_url("http://www.bbc.co.uk/news/world/story.html");
    ASSERT_TRUE(deep.category);
    EXPECT_EQ(*deep.category, 11u);
    EXPECT_EQ(deep.truncation_depth, 3u);

    EXPECT_FALSE(index.lookup_url("http://www.example.org/").category);
    EXPECT_FALSE(index.lookup_url("http://www.bbc.com/sport/english/football/").category);
}

TEST(Ontology, TruncationHitsAreSlashBoundaryPrefixes) {
    auto index = load_tsv("fifty.tsv");
    std::mt19937_64 rng(11);
    std::vector<std::string> urls;
    for (const auto& [u, id] : index.urls()) urls.push_back(u);
    const char* tails[] = {"", "x.html", "alpha/", "beta/gamma.html", "q?x=1", "Zeta/Omega/"};
    for (int i = 0; i < 3000; ++i) {
        auto base = urls[std::uniform_int_distribution<std::size_t>(0, urls.size() - 1)(rng)];
        auto cut = std::uniform_int_distribution<std::size_t>(host_prefix_length(base), base.size())(rng);
        auto query = base.substr(0, cut) + tails[i % 6];
        auto m = index.lookup_url(query);
        if (!m.category) continue;
        ASSERT_EQ(query.compare(0, m.matched.size(), m.matched), 0) << query;
        EXPECT_TRUE(m.matched == query || m.matched.back() == '/') << query;
        EXPECT_EQ(index.urls().at(m.matched), *m.category);
    }
}

TEST(Ontology, PrefixLookupExamples) {
    auto index = load_tsv("news.tsv");
    EXPECT_EQ(index.lookup_url_prefix("http://www.guardian.co.uk/"), std::optional<CategoryId>(12));
    EXPECT_EQ(index.lookup_url_prefix("http://www.bbc.co.uk/sport/english/football/en/default.stm"),
              std::optional<CategoryId>(22));
    EXPECT_FALSE(index.lookup_url_prefix("http://www.example.org/sport/"));
    EXPECT_FALSE(index.lookup_url_prefix("http://www.bbc.com/"));
}

TEST(Ontology, PrefixLookupTieGoesToSmallerUrl) {
    auto index = parse_ontology(
        "C\t1\t1\tTop\nC\t2\t1.1\tA\nC\t3\t1.2\tB\n"
        "U\thttp://a.test/ab/y\t2\nU\thttp://a.test/ab/x\t3\n",
        OntologyFormat::tsv);
    // Both indexed URLs share "http://a.test/ab/" with the query.
    EXPECT_EQ(index.lookup_url_prefix("http://a.test/ab/z"), std::optional<CategoryId>(3));
    EXPECT_EQ(index.lookup_url_prefix("http://a.test/ab/yy"), std::optional<CategoryId>(2));
}

TEST(Ontology, PrefixLookupMatchesBruteForce) {
    auto index = load_tsv("fifty.tsv");
    std::vector<std::string> urls;
    for (const auto& [u, id] : index.urls()) urls.push_back(u);
    std::mt19937_64 rng(5);
    const std::string words[] = {"alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa", "lambda", "theta", "zeta", "a", "z"};
    auto word = [&] { return words[std::uniform_int_distribution<int>(0, 11)(rng)]; };
    for (int i = 0; i < 5000; ++i) {
        std::string q = "http://" + word() + std::to_string(std::uniform_int_distribution<int>(0, 45)(rng)) + ".test/";
        int segs = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int s = 0; s < segs; ++s) q += word() + (s + 1 < segs || i % 2 ? "/" : "");
        auto expected = testkit::oracle_prefix(urls, q);
        auto got = index.lookup_url_prefix(q);
        if (!expected) {
            EXPECT_FALSE(got) << q;
        } else {
            ASSERT_TRUE(got) << q;
            EXPECT_EQ(*got, index.urls().at(*expected)) << q;
        }
    }
}

TEST(Ontology, TreeDistanceQueries) {
    auto index = parse_ontology(read_file(data_path("encodings.tsv")), OntologyFormat::tsv);
    EXPECT_EQ(index.tree_distance(TreeAddress::parse("1.13.12.1.5"), TreeAddress::parse("1.13.12.1.6")), 2u);
    EXPECT_EQ(index.tree_distance(TreeAddress::parse("1.18.1.2"), TreeAddress::parse("1.18.1.2")), 1u);
    EXPECT_EQ(index.tree_distance(TreeAddress::parse("1.16.3.2.11.5"), TreeAddress::parse("1.18.1.2")), 8u);
    EXPECT_THROW((void)index.tree_distance(TreeAddress::parse("1.99"), TreeAddress::parse("1.18")), DataError);
}

TEST(Ontology, ParseErrors) {
    EXPECT_THROW((void)parse_ontology("", OntologyFormat::tsv), DataError);
    EXPECT_THROW((void)parse_ontology("# only a comment\nX\tjunk\n", OntologyFormat::tsv), DataError);
    EXPECT_THROW((void)parse_ontology("C\t1\t1\tTop\nC\t2\t1.1\tA\nC\t2\t1.2\tB\n", OntologyFormat::tsv), DataError);
    EXPECT_THROW((void)parse_ontology("C\t1\t1\tTop\nC\t2\t2\tOther\n", OntologyFormat::tsv), DataError);
    EXPECT_THROW((void)parse_ontology("<Topic r:ID=\"Elsewhere/A\"><catid>3</catid></Topic>", OntologyFormat::rdf_subset),
                 DataError);
    std::istringstream bad;
    bad.setstate(std::ios::failbit);
    EXPECT_THROW((void)parse_ontology(bad, OntologyFormat::tsv), DataError);
    EXPECT_THROW((void)parse_ontology_format("xml"), UsageError);
}

TEST(Ontology, MalformedRecordsAreCounted) {
    auto index = parse_ontology(
        "C\t1\t1\tTop\n"
        "C\t2\t1.1\tA\n"
        "C\tx\t1.2\tBad id\n"
        "C\t3\t1.0\tBad address\n"
        "C\t4\t1.5.1\tOrphan\n"
        "C\t5\t1.1\tTaken address\n"
        "U\tnot a url\t2\n"
        "U\thttp://a.test/\t99\n"
        "U\thttp://b.test/\t2\n"
        "U\thttp://b.test/\t1\n"
        "garbage line\n",
        OntologyFormat::tsv);
    EXPECT_EQ(index.category_count(), 2u);
    EXPECT_EQ(index.url_count(), 1u);
    EXPECT_EQ(index.parse_stats().duplicate_urls, 1u);
    EXPECT_EQ(index.parse_stats().malformed, 7u);
}

TEST(Ontology, PersistedIndexRoundTrips) {
    auto index = load_tsv("fifty.tsv");
    std::ostringstream out;
    index.write(out);
    EXPECT_EQ(out.str().rfind("IDIOREC-INDEX v1\n", 0), 0u);
    auto back = read_index(out.str());
    EXPECT_EQ(back.urls(), index.urls());
    ASSERT_EQ(back.category_count(), index.category_count());
    for (const auto& [id, node] : index.nodes()) {
        const auto& other = back.at(id);
        EXPECT_EQ(other.address, node.address);
        EXPECT_EQ(other.title, node.title);
        EXPECT_EQ(other.child_count, node.child_count);
        EXPECT_EQ(other.url_count, node.url_count);
    }
    std::ostringstream again;
    back.write(again);
    EXPECT_EQ(again.str(), out.str());
    EXPECT_THROW((void)read_index("C\t1\t1\tTop\n"), ParseError);
}
