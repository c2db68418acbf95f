// idiorec command-line front end.
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "idiorec/idiorec.hpp"

namespace fs = std::filesystem;
using namespace idiorec;

namespace {

struct Globals {
    std::string config_path;
    std::uint64_t seed = 1;
    bool csv = false;
    bool verbose = false;
};

// Parameter flags are collected as config keys so that a flag simply
// overrides the same key from --config.
struct ParamFlags {
    KeyValueConfig cli;

    static std::string number(double v) {
        std::ostringstream o;
        o.precision(17);
        o << v;
        return o.str();
    }

    void real(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        cmd->add_option_function<double>(flag, [this, key](const double& v) { cli.set(key, number(v)); }, help);
    }
    void count(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        cmd->add_option_function<std::size_t>(flag, [this, key](const std::size_t& v) { cli.set(key, std::to_string(v)); },
                                              help);
    }
    void word(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        cmd->add_option_function<std::string>(flag, [this, key](const std::string& v) { cli.set(key, v); }, help);
    }

    void similarity(CLI::App* cmd) {
        word(cmd, "--measure", "measure", "tree or pearson");
        word(cmd, "--match-fn", "match_fn", "linear or quadratic");
        count(cmd, "--ml-cutoff", "ml_cutoff", "level at which the linear match saturates");
        real(cmd, "--disparity-a", "disparity_a", "floor of the disparity factor");
        word(cmd, "--normalization", "normalization", "vote-sum or pair-count");
        word(cmd, "--size-basis", "size_basis", "profile size for disparity: categories or bookmarks");
        cmd->add_flag_callback("--no-disparity", [this] { cli.set("disparity_enabled", "false"); },
                               "disable the disparity correction");
    }

    void ais(CLI::App* cmd) {
        real(cmd, "--k0", "k0", "antibody recognition weight");
        real(cmd, "--k1", "k1", "suppression weight");
        real(cmd, "--k2", "k2", "antigen stimulation weight");
        real(cmd, "--k3", "k3", "death rate");
        real(cmd, "--c", "c", "rate constant");
        real(cmd, "--dt", "dt", "Euler step");
        count(cmd, "--pool-size", "pool_size", "antibodies in the pool");
        real(cmd, "--init-concentration", "init_concentration", "concentration of a new antibody");
        real(cmd, "--death-threshold", "death_threshold", "concentration below which an antibody dies");
        count(cmd, "--window", "stabilization_window", "iterations without membership change");
        count(cmd, "--max-iterations", "max_iterations", "iteration cap");
    }
};

struct Settings {
    SimilarityParams sim;
    AisParams ais;
};

Settings resolve(const Globals& g, const ParamFlags& flags) {
    KeyValueConfig cfg;
    if (!g.config_path.empty()) cfg = KeyValueConfig::load(g.config_path);
    for (const auto& [k, v] : flags.cli.values()) cfg.set(k, v);
    cfg.check_known();
    Settings s;
    cfg.apply(s.sim);
    cfg.apply(s.ais);
    s.sim.validate();
    s.ais.validate();
    return s;
}

std::string fixed(double v, int digits = 3) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(digits) << v;
    return o.str();
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::optional<OntologyIndex> maybe_index(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return load_index(path);
}

void print_kv(const Globals& g, const std::vector<std::pair<std::string, std::string>>& rows) {
    if (g.csv) {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << k << ',' << v << '\n';
    } else {
        for (const auto& [k, v] : rows) std::cout << std::left << std::setw(18) << k << ' ' << v << '\n';
    }
}

// build-index

struct BuildIndexArgs {
    std::string input, format = "tsv", out;
};

int cmd_build_index(const Globals& g, const BuildIndexArgs& a) {
    auto index = parse_ontology(read_file(a.input), parse_ontology_format(a.format));
    if (!a.out.empty()) index.save(a.out);
    const auto& st = index.parse_stats();
    auto hist = index.level_histogram();
    if (g.csv) {
        std::cout << "level,categories\n";
        for (std::size_t d = 0; d < hist.size(); ++d) std::cout << d + 1 << ',' << hist[d] << '\n';
        return 0;
    }
    print_kv(g, {{"categories", std::to_string(index.category_count())},
                 {"urls", std::to_string(index.url_count())},
                 {"topics", std::to_string(st.topics)},
                 {"implicit_nodes", std::to_string(st.implicit_nodes)},
                 {"malformed", std::to_string(st.malformed)},
                 {"duplicate_urls", std::to_string(st.duplicate_urls)}});
    std::size_t deepest = 0;
    for (std::size_t d = 0; d < hist.size(); ++d)
        if (hist[d]) deepest = d + 1;
    std::cout << "level histogram:\n";
    for (std::size_t d = 0; d < deepest; ++d) std::cout << "  " << std::setw(2) << d + 1 << "  " << hist[d] << '\n';
    if (!a.out.empty() && g.verbose) std::cerr << "wrote " << a.out << '\n';
    return 0;
}

// ingest

struct IngestArgs {
    std::string input, format = "plain", index, user, out, lookup = "truncation", stoplist, encoding = "tree";
};

int cmd_ingest(const Globals& g, const IngestArgs& a) {
    auto format = parse_bookmark_format(a.format);
    auto mode = parse_lookup_mode(a.lookup);
    auto encoding = parse_encoding(a.encoding);
    auto index = load_index(a.index);
    std::unordered_set<std::string> stop;
    if (!a.stoplist.empty()) stop = parse_stoplist(read_file(a.stoplist));

    auto parsed = parse_bookmarks(read_file(a.input), format);
    auto cleaned = clean(parsed.bookmarks, stop);
    auto user = a.user.empty() ? fs::path(a.input).stem().string() : a.user;
    auto build = build_profile(user, cleaned, index, mode);
    if (!a.out.empty()) write_profile_file(a.out, build.profile, encoding);

    const auto& cov = build.coverage;
    std::vector<std::pair<std::string, std::string>> rows = {
        {"user", user},
        {"records", std::to_string(parsed.bookmarks.size() + parsed.discarded)},
        {"no_url", std::to_string(parsed.discarded)},
        {"duplicates", std::to_string(cleaned.duplicates_removed)},
        {"discarded", std::to_string(cleaned.discarded)},
        {"stoplisted", std::to_string(cleaned.stoplisted)},
        {"urls", std::to_string(cov.total)},
        {"mapped", std::to_string(cov.mapped)},
        {"unmapped", std::to_string(cov.unmapped)},
        {"mapped_fraction", fixed(cov.mapped_fraction)},
        {"categories", std::to_string(build.profile.entries.size())},
    };
    if (mode == LookupMode::prefix) {
        rows.emplace_back("prefix_hits", std::to_string(cov.prefix_hits));
    } else {
        for (std::size_t d = 0; d < cov.per_truncation_depth.size(); ++d)
            rows.emplace_back("hits_truncated_" + std::to_string(d), std::to_string(cov.per_truncation_depth[d]));
    }
    print_kv(g, rows);
    if (cov.mapped == 0) std::cerr << "warning: no bookmark of " << user << " resolved to a category\n";
    if (g.verbose) {
        for (const auto& e : build.profile.entries)
            for (const auto& u : e.urls) std::cerr << e.address.to_string() << '\t' << u << '\n';
    }
    return 0;
}

// similarity

struct SimilarityArgs {
    std::string a, b, index;
};

int cmd_similarity(const Globals& g, const SimilarityArgs& a, const Settings& s) {
    auto index = maybe_index(a.index);
    const OntologyIndex* idx = index ? &*index : nullptr;
    auto p = read_profile_file(a.a, idx);
    auto q = read_profile_file(a.b, idx);

    if (s.sim.measure == Measure::pearson) {
        auto r = pearson_flat(p, q);
        print_kv(g, {{"correlation", fixed(r.correlation, 6)},
                     {"common", std::to_string(r.common)},
                     {"score", fixed(matching_score(p, q, s.sim), 6)}});
        return 0;
    }

    auto score = similarity_tree(p, q, s.sim);
    auto terms = pair_terms(p, q, s.sim);
    if (g.csv) {
        std::cout << "a,b,vote_a,vote_b,level,edges,match,contribution\n";
        for (const auto& t : terms) {
            std::cout << t.a.to_string() << ',' << t.b.to_string() << ',' << t.vote_a << ',' << t.vote_b << ',' << t.level
                      << ',' << t.edges << ',' << ParamFlags::number(t.match) << ',' << ParamFlags::number(t.contribution)
                      << '\n';
        }
        std::cout << "value,,,,,,," << ParamFlags::number(score.value) << '\n';
        std::cout << "raw_core,,,,,,," << ParamFlags::number(score.raw_core) << '\n';
        std::cout << "disparity,,,,,,," << ParamFlags::number(score.disparity) << '\n';
        return 0;
    }
    std::cout << "value      " << fixed(score.value) << '\n';
    std::cout << "raw_core   " << fixed(score.raw_core, 6) << '\n';
    std::cout << "disparity  " << fixed(score.disparity, 6) << '\n';
    if (score.empty_profile) std::cout << "(one profile is empty)\n";
    if (!terms.empty()) {
        std::cout << '\n' << std::left << std::setw(22) << "a" << std::setw(22) << "b" << std::right << std::setw(6)
                  << "l" << std::setw(6) << "ed" << std::setw(10) << "match" << std::setw(14) << "contribution\n";
        for (const auto& t : terms) {
            std::cout << std::left << std::setw(22) << t.a.to_string() << std::setw(22) << t.b.to_string() << std::right
                      << std::setw(6) << t.level << std::setw(6) << t.edges << std::setw(10) << fixed(t.match, 4)
                      << std::setw(13) << fixed(t.contribution, 4) << '\n';
        }
    }
    return 0;
}

// recommend

struct RecommendArgs {
    std::string target, db, index, trace;
    int top_n = 10;
};

int cmd_recommend(const Globals& g, const RecommendArgs& a, const Settings& s) {
    if (a.top_n <= 0) throw UsageError("--top-n must be positive");
    auto index = maybe_index(a.index);
    const OntologyIndex* idx = index ? &*index : nullptr;
    auto target = read_profile_file(a.target, idx);
    auto db = load_profile_db(a.db, idx);

    std::vector<WebProfile> candidates;
    for (auto& p : db)
        if (p.user_id != target.user_id) candidates.push_back(std::move(p));
    if (candidates.size() < s.ais.pool_size) {
        throw DataError("insufficient candidates: " + std::to_string(candidates.size()) + " users for a pool of " +
                        std::to_string(s.ais.pool_size));
    }
    Rng(g.seed).shuffle(candidates);

    std::ofstream trace;
    if (!a.trace.empty()) {
        trace.open(a.trace, std::ios::binary);
        if (!trace) throw DataError("cannot write trace " + a.trace);
        trace << "iteration,antibody_id,concentration\n";
    }
    AisObserver observer;
    if (trace.is_open()) {
        observer = [&](const AisState& st) {
            for (const auto& ab : st.pool)
                trace << st.iterations_run << ',' << ab.profile.user_id << ',' << ParamFlags::number(ab.concentration)
                      << '\n';
        };
    }
    auto state = run(target, std::move(candidates), s.ais, s.sim, observer);
    auto recs = recommend(state, a.top_n, idx);

    if (g.csv) {
        std::cout << "rank,catid,address,score,predicted,support,urls,contributors\n";
        for (std::size_t i = 0; i < recs.items.size(); ++i) {
            const auto& it = recs.items[i];
            std::cout << i + 1 << ',' << (it.catid ? std::to_string(*it.catid) : "") << ',' << it.address.to_string()
                      << ',' << ParamFlags::number(it.score) << ',' << ParamFlags::number(it.predicted) << ','
                      << it.support << ',' << join(it.urls, ';') << ',' << join(it.contributors, ';') << '\n';
        }
        return 0;
    }
    std::cout << "termination  " << to_string(state.termination) << '\n';
    std::cout << "iterations   " << state.iterations_run << '\n';
    std::cout << "pool         " << state.pool.size() << '\n';
    if (g.verbose) {
        for (const auto& ab : state.pool)
            std::cout << "  " << ab.profile.user_id << "  x=" << fixed(ab.concentration, 4)
                      << "  m=" << fixed(ab.antigen_match, 4) << '\n';
    }
    std::cout << '\n';
    for (std::size_t i = 0; i < recs.items.size(); ++i) {
        const auto& it = recs.items[i];
        std::cout << std::setw(3) << i + 1 << ".  " << std::left << std::setw(18) << it.address.to_string() << std::right;
        if (it.catid) std::cout << "  catid " << std::setw(8) << *it.catid;
        std::cout << "  score " << fixed(it.score, 4) << "  support " << it.support << '\n';
        if (idx && it.catid) {
            if (const auto* node = idx->find(*it.catid)) std::cout << "       " << node->title << '\n';
        }
        for (const auto& u : it.urls) std::cout << "       " << u << '\n';
        std::cout << "       from " << join(it.contributors, ' ') << '\n';
    }
    if (recs.items.empty()) std::cout << "no unseen categories in the final pool\n";
    return 0;
}

// evaluate

struct EvaluateArgs {
    std::string db, index;
    double holdout = 0.3;
    std::size_t top_n = 10;
    std::size_t seeds = 20;
};

int cmd_evaluate(const Globals& g, const EvaluateArgs& a, const Settings& s) {
    auto index = maybe_index(a.index);
    auto db = load_profile_db(a.db, index ? &*index : nullptr);
    EvalOptions opts;
    opts.holdout = a.holdout;
    opts.top_n = a.top_n;
    opts.seeds = a.seeds;
    opts.base_seed = g.seed;
    auto report = evaluate(db, s.sim, s.ais, opts);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

    if (g.csv) {
        std::cout << "seed,user_id,hidden,hits,recommended,precision,random_precision,termination,iterations\n";
        for (const auto& f : report.folds) {
            std::cout << f.seed << ',' << f.user_id << ',' << f.hidden << ',' << f.hits << ',' << f.recommended << ','
                      << ParamFlags::number(f.precision) << ',' << ParamFlags::number(f.random_precision) << ','
                      << to_string(f.termination) << ',' << f.iterations << '\n';
        }
        return 0;
    }
    if (g.verbose) {
        for (const auto& f : report.folds) {
            std::cout << "seed " << f.seed << "  " << std::left << std::setw(16) << f.user_id << std::right << " hits "
                      << f.hits << '/' << f.hidden << "  p@" << opts.top_n << ' ' << fixed(f.precision) << "  random "
                      << fixed(f.random_precision) << "  " << to_string(f.termination) << '\n';
        }
    }
    double ratio = report.mean_random_precision > 0 ? report.mean_precision / report.mean_random_precision : 0.0;
    std::vector<std::pair<std::string, std::string>> rows = {
        {"profiles", std::to_string(report.profiles)},
        {"folds", std::to_string(report.folds.size())},
        {"seeds", std::to_string(report.seeds.front()) + ".." + std::to_string(report.seeds.back())},
        {"precision@" + std::to_string(opts.top_n), fixed(report.mean_precision, 4)},
        {"random@" + std::to_string(opts.top_n), fixed(report.mean_random_precision, 4)},
        {"lift", fixed(ratio, 2)},
        {"mean_coverage", fixed(report.mean_coverage)},
    };
    print_kv(g, rows);
    if (g.verbose) {
        std::cout << "parameters:\n";
        for (const auto& [k, v] : report.parameters) std::cout << "  " << k << " = " << v << '\n';
    }
    return 0;
}

// synth

struct SynthArgs {
    std::string out;
    SyntheticCorpusSpec spec;
};

int cmd_synth(const Globals& g, SynthArgs a) {
    a.spec.seed = g.seed;
    a.spec.validate();
    auto corpus = generate_corpus(a.spec);
    write_corpus(corpus, a.out);
    print_kv(g, {{"profiles", std::to_string(corpus.profiles.size())},
                 {"categories", std::to_string(corpus.index.category_count())},
                 {"urls", std::to_string(corpus.index.url_count())},
                 {"seed", std::to_string(a.spec.seed)},
                 {"out", a.out}});
    return 0;
}

// stats

struct StatsArgs {
    std::vector<std::string> inputs;
    std::string index;
};

void profile_stats(const Globals& g, const WebProfile& p) {
    std::array<std::size_t, kMaxDepth> depth{};
    std::size_t deepest = 0;
    for (const auto& e : p.entries) {
        ++depth[e.address.depth() - 1];
        deepest = std::max(deepest, e.address.depth());
    }
    if (g.csv) {
        std::cout << p.user_id << ',' << p.entries.size() << ',' << p.vote_total() << ',' << p.total_bookmarks << ','
                  << p.unmapped << ',' << effective_size(p) << '\n';
        return;
    }
    std::cout << p.user_id << ": " << p.entries.size() << " categories, " << p.vote_total() << " votes";
    if (p.total_bookmarks) {
        std::cout << ", mapped " << p.mapped << '/' << p.total_bookmarks << " ("
                  << fixed(static_cast<double>(p.mapped) / static_cast<double>(p.total_bookmarks)) << ')';
    }
    std::cout << '\n';
    if (g.verbose) {
        for (std::size_t d = 0; d < deepest; ++d) std::cout << "  depth " << d + 1 << "  " << depth[d] << '\n';
    }
}

int cmd_stats(const Globals& g, const StatsArgs& a) {
    auto index = maybe_index(a.index);
    const OntologyIndex* idx = index ? &*index : nullptr;
    if (a.inputs.empty()) {
        if (!idx) throw UsageError("stats needs profile files, a profile directory or --index");
        const auto& st = idx->parse_stats();
        print_kv(g, {{"categories", std::to_string(idx->category_count())},
                     {"urls", std::to_string(idx->url_count())},
                     {"malformed", std::to_string(st.malformed)}});
        return 0;
    }
    std::vector<WebProfile> profiles;
    for (const auto& in : a.inputs) {
        if (fs::is_directory(in)) {
            for (auto& p : load_profile_db(in, idx)) profiles.push_back(std::move(p));
        } else {
            profiles.push_back(read_profile_file(in, idx));
        }
    }
    if (g.csv) std::cout << "user_id,categories,votes,bookmarks,unmapped,effective_size\n";
    double entries = 0, votes = 0;
    for (const auto& p : profiles) {
        profile_stats(g, p);
        entries += static_cast<double>(p.entries.size());
        votes += static_cast<double>(p.vote_total());
    }
    if (!g.csv && profiles.size() > 1) {
        auto n = static_cast<double>(profiles.size());
        std::cout << profiles.size() << " profiles, mean " << fixed(entries / n, 1) << " categories, mean "
                  << fixed(votes / n, 1) << " votes\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Web-site recommendation from bookmark profiles with an idiotypic immune network"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "key = value parameter file")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "seed for every random choice");
    app.add_flag("--csv", g.csv, "machine-readable output");
    app.add_flag("--verbose,-v", g.verbose, "extra detail");

    ParamFlags flags;

    BuildIndexArgs build_args;
    auto* build = app.add_subcommand("build-index", "parse a directory dump into an index file");
    build->add_option("input", build_args.input, "tsv or rdf-subset dump")->required()->check(CLI::ExistingFile);
    build->add_option("--format", build_args.format, "tsv or rdf")->capture_default_str();
    build->add_option("--out,-o", build_args.out, "index file to write");

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "turn a bookmark file into a profile");
    ingest->add_option("input", ingest_args.input, "bookmark file")->required()->check(CLI::ExistingFile);
    ingest->add_option("--format", ingest_args.format, "opera, plain or netscape")->capture_default_str();
    ingest->add_option("--index", ingest_args.index, "index file")->required();
    ingest->add_option("--user", ingest_args.user, "user id (default: file name)");
    ingest->add_option("--out,-o", ingest_args.out, "profile file to write");
    ingest->add_option("--lookup", ingest_args.lookup, "truncation or prefix")->capture_default_str();
    ingest->add_option("--stoplist", ingest_args.stoplist, "URLs to drop, one per line");
    ingest->add_option("--encoding", ingest_args.encoding, "tree or integer")->capture_default_str();

    SimilarityArgs sim_args;
    auto* similarity = app.add_subcommand("similarity", "compare two profiles");
    similarity->add_option("a", sim_args.a, "first profile")->required()->check(CLI::ExistingFile);
    similarity->add_option("b", sim_args.b, "second profile")->required()->check(CLI::ExistingFile);
    similarity->add_option("--index", sim_args.index, "index file (needed for integer profiles)");
    flags.similarity(similarity);

    RecommendArgs rec_args;
    auto* rec = app.add_subcommand("recommend", "run the immune network for one user");
    rec->add_option("target", rec_args.target, "target profile")->required()->check(CLI::ExistingFile);
    rec->add_option("--db", rec_args.db, "directory of profiles")->required();
    rec->add_option("--index", rec_args.index, "index file");
    rec->add_option("--top-n,-n", rec_args.top_n, "number of recommendations")->capture_default_str();
    rec->add_option("--trace", rec_args.trace, "per-iteration concentration CSV");
    flags.similarity(rec);
    flags.ais(rec);

    EvaluateArgs eval_args;
    auto* eval = app.add_subcommand("evaluate", "hold-out precision against a random baseline");
    eval->add_option("--db", eval_args.db, "directory of profiles")->required();
    eval->add_option("--index", eval_args.index, "index file");
    eval->add_option("--holdout", eval_args.holdout, "fraction of categories hidden")->capture_default_str();
    eval->add_option("--top-n,-n", eval_args.top_n, "list length")->capture_default_str();
    eval->add_option("--seeds", eval_args.seeds, "number of seeds starting at --seed")->capture_default_str();
    flags.similarity(eval);
    flags.ais(eval);

    SynthArgs synth_args;
    auto& sp = synth_args.spec;
    auto* synth = app.add_subcommand("synth", "generate a clustered synthetic corpus");
    synth->add_option("--out,-o", synth_args.out, "output directory")->required();
    synth->add_option("--clusters", sp.clusters)->capture_default_str();
    synth->add_option("--users-per-cluster", sp.users_per_cluster)->capture_default_str();
    synth->add_option("--categories-per-user", sp.categories_per_user)->capture_default_str();
    synth->add_option("--vote-min", sp.vote_min)->capture_default_str();
    synth->add_option("--vote-max", sp.vote_max)->capture_default_str();
    synth->add_option("--depth", sp.depth)->capture_default_str();
    synth->add_option("--branching", sp.branching)->capture_default_str();
    synth->add_option("--noise", sp.noise)->capture_default_str();
    synth->add_option("--hot-categories", sp.hot_categories)->capture_default_str();
    synth->add_option("--hot-fraction", sp.hot_fraction)->capture_default_str();
    synth->add_option("--urls-per-category", sp.urls_per_category)->capture_default_str();
    synth->add_option("--near-duplicates", sp.near_duplicates)->capture_default_str();

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "summarize profiles or an index");
    stats->add_option("inputs", stats_args.inputs, "profile files or directories");
    stats->add_option("--index", stats_args.index, "index file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*build) return cmd_build_index(g, build_args);
        if (*ingest) return cmd_ingest(g, ingest_args);
        if (*synth) return cmd_synth(g, synth_args);
        if (*stats) return cmd_stats(g, stats_args);
        auto settings = resolve(g, flags);
        if (*similarity) return cmd_similarity(g, sim_args, settings);
        if (*rec) return cmd_recommend(g, rec_args, settings);
        if (*eval) return cmd_evaluate(g, eval_args, settings);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
