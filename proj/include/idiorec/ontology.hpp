#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idiorec/error.hpp"
#include "idiorec/tree_address.hpp"
#include "idiorec/url.hpp"

namespace idiorec {

struct CategoryNode {
    CategoryId catid = 0;
    TreeAddress address;
    std::string title;
    std::size_t child_count = 0;
    std::size_t url_count = 0;

    [[nodiscard]] std::size_t depth() const noexcept { return address.depth(); }
};

enum class OntologyFormat { rdf_subset, tsv };

/// Counters collected while parsing a dump. Malformed records are skipped
/// and counted here rather than aborting the parse.
struct OntologyParseStats {
    std::size_t topics = 0;          // category records accepted from the source
    std::size_t implicit_nodes = 0;  // ancestors synthesized for the rdf subset
    std::size_t malformed = 0;
    std::size_t duplicate_urls = 0;  // URL already mapped to another category
};

/// Result of a reverse-truncation lookup.
struct UrlMatch {
    std::optional<CategoryId> category;
    std::size_t truncation_depth = 0;
    std::string matched;  // the indexed URL form that hit

    explicit operator bool() const noexcept { return category.has_value(); }
};

using LevelHistogram = std::array<std::size_t, kMaxDepth>;

inline constexpr std::string_view kIndexHeader = "IDIOREC-INDEX v1";

/// Category tree plus normalized-URL map. Immutable once built; every query is
/// a const read and may run concurrently.
class OntologyIndex {
public:
    class Builder;

    [[nodiscard]] std::size_t category_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t url_count() const noexcept { return urls_.size(); }
    [[nodiscard]] const OntologyParseStats& parse_stats() const noexcept { return stats_; }
    [[nodiscard]] const std::map<CategoryId, CategoryNode>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::map<std::string, CategoryId>& urls() const noexcept { return urls_; }

    [[nodiscard]] const CategoryNode* find(CategoryId id) const {
        auto it = nodes_.find(id);
        return it == nodes_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] const CategoryNode* find(const TreeAddress& address) const {
        auto it = by_address_.find(address);
        return it == by_address_.end() ? nullptr : find(it->second);
    }

    [[nodiscard]] const CategoryNode& at(CategoryId id) const {
        if (auto* n = find(id)) return *n;
        throw DataError("unknown category id " + std::to_string(id));
    }

    [[nodiscard]] const CategoryNode& at(const TreeAddress& address) const {
        if (auto* n = find(address)) return *n;
        throw DataError("unknown category address " + address.to_string());
    }

    /// Indexed URLs of one category, sorted.
    [[nodiscard]] const std::vector<std::string>& urls_of(CategoryId id) const {
        static const std::vector<std::string> none;
        auto it = urls_by_category_.find(id);
        return it == urls_by_category_.end() ? none : it->second;
    }

    [[nodiscard]] LevelHistogram level_histogram() const noexcept { return histogram_; }

    /// Exact match first, then each "/"-boundary truncation down to the host-only form.
    [[nodiscard]] UrlMatch lookup_url(std::string_view normalized) const {
        auto candidates = truncation_candidates(normalized);
        for (std::size_t depth = 0; depth < candidates.size(); ++depth) {
            auto it = urls_.find(candidates[depth]);
            if (it != urls_.end()) return UrlMatch{it->second, depth, it->first};
        }
        return UrlMatch{};
    }

    /// Indexed URL sharing the longest character prefix with the query. Ties go
    /// to the lexicographically smallest URL; a match must cover the whole host.
    [[nodiscard]] std::optional<CategoryId> lookup_url_prefix(std::string_view normalized) const {
        if (urls_.empty()) return std::nullopt;
        auto host_len = host_prefix_length(normalized);
        auto common = [&](const std::string& s) {
            auto [a, b] = std::mismatch(normalized.begin(), normalized.end(), s.begin(), s.end());
            return static_cast<std::size_t>(a - normalized.begin());
        };
        // Longest common prefix against a sorted set is attained at a neighbour
        // of the insertion point.
        std::size_t best = 0;
        auto succ = urls_.lower_bound(std::string(normalized));
        if (succ != urls_.end()) best = std::max(best, common(succ->first));
        if (succ != urls_.begin()) best = std::max(best, common(std::prev(succ)->first));
        if (best < host_len) return std::nullopt;
        // Every URL sharing `best` characters lies in one contiguous run; take its head.
        auto head = urls_.lower_bound(std::string(normalized.substr(0, best)));
        return head->second;
    }

    /// Edge count of the tree path between two indexed categories (1 when equal).
    [[nodiscard]] std::size_t tree_distance(const TreeAddress& a, const TreeAddress& b) const {
        (void)at(a);
        (void)at(b);
        return edge_distance(a, b);
    }

    /// Canonical tsv representation behind the versioned header.
    void write(std::ostream& out) const {
        out << kIndexHeader << '\n';
        std::vector<const CategoryNode*> ordered;
        ordered.reserve(nodes_.size());
        for (const auto& [id, node] : nodes_) ordered.push_back(&node);
        std::sort(ordered.begin(), ordered.end(),
                  [](const CategoryNode* a, const CategoryNode* b) { return a->address < b->address; });
        for (const auto* node : ordered) {
            out << "C\t" << node->catid << '\t' << node->address.to_string() << '\t' << node->title << '\n';
        }
        for (const auto& [url, id] : urls_) out << "U\t" << url << '\t' << id << '\n';
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write index file " + path);
        write(out);
        if (!out) throw DataError("failed writing index file " + path);
    }

private:
    std::map<CategoryId, CategoryNode> nodes_;
    std::unordered_map<TreeAddress, CategoryId, TreeAddressHash> by_address_;
    std::map<std::string, CategoryId> urls_;
    std::map<CategoryId, std::vector<std::string>> urls_by_category_;
    LevelHistogram histogram_{};
    OntologyParseStats stats_;
};

/// Accumulates category and URL records, then links and validates them.
class OntologyIndex::Builder {
public:
    OntologyParseStats& stats() noexcept { return stats_; }

    /// Same catid at a different address is fatal; an address already taken
    /// by another catid makes the record malformed.
    void add_category(CategoryId id, const TreeAddress& address, std::string title) {
        for (auto& c : title) {
            if (c == '\t' || c == '\n' || c == '\r') c = ' ';
        }
        if (auto it = categories_.find(id); it != categories_.end()) {
            if (it->second.address != address) {
                throw DataError("duplicate catid " + std::to_string(id) + " with conflicting addresses " +
                                it->second.address.to_string() + " and " + address.to_string());
            }
            return;
        }
        if (address_owner_.count(address)) {
            ++stats_.malformed;
            return;
        }
        address_owner_.emplace(address, id);
        categories_.emplace(id, CategoryNode{id, address, std::move(title), 0, 0});
    }

    /// URL is normalized here; unparsable URLs count as malformed.
    void add_url(std::string_view raw, CategoryId id) {
        std::string url;
        try {
            url = normalize_url(raw);
        } catch (const ParseError&) {
            ++stats_.malformed;
            return;
        }
        pending_urls_.emplace_back(std::move(url), id);
    }

    [[nodiscard]] OntologyIndex build() && {
        if (categories_.empty()) throw DataError("no valid categories parsed");

        auto root = categories_.begin()->second.address.root();
        for (const auto& [id, node] : categories_) {
            if (node.address.root() != root) throw DataError("ontology has more than one root");
        }

        // Drop nodes whose parent is absent, shallowest first so orphans cascade.
        std::vector<CategoryId> by_depth;
        by_depth.reserve(categories_.size());
        for (const auto& [id, node] : categories_) by_depth.push_back(id);
        std::stable_sort(by_depth.begin(), by_depth.end(), [&](CategoryId a, CategoryId b) {
            return categories_.at(a).depth() < categories_.at(b).depth();
        });

        OntologyIndex index;
        for (auto id : by_depth) {
            auto& node = categories_.at(id);
            if (node.depth() > 1) {
                auto parent = index.by_address_.find(node.address.parent());
                if (parent == index.by_address_.end()) {
                    ++stats_.malformed;
                    continue;
                }
                ++index.nodes_.at(parent->second).child_count;
            }
            index.by_address_.emplace(node.address, id);
            index.nodes_.emplace(id, node);
            ++index.histogram_[node.depth() - 1];
        }

        for (auto& [url, id] : pending_urls_) {
            auto node = index.nodes_.find(id);
            if (node == index.nodes_.end()) {
                ++stats_.malformed;
                continue;
            }
            auto [it, inserted] = index.urls_.emplace(url, id);
            if (!inserted) {
                if (it->second != id) ++stats_.duplicate_urls;
                continue;
            }
            ++node->second.url_count;
            index.urls_by_category_[id].push_back(url);
        }
        for (auto& [id, list] : index.urls_by_category_) std::sort(list.begin(), list.end());

        index.stats_ = stats_;
        return index;
    }

private:
    std::map<CategoryId, CategoryNode> categories_;
    std::map<TreeAddress, CategoryId> address_owner_;
    std::vector<std::pair<std::string, CategoryId>> pending_urls_;
    OntologyParseStats stats_;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline void parse_tsv_lines(std::string_view text, OntologyIndex::Builder& builder) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || line.front() == '#') continue;

        auto fields = split(line, '\t');
        if (fields[0] == "C" && (fields.size() == 3 || fields.size() == 4)) {
            auto id = parse_u64(fields[1]);
            if (!id) {
                ++builder.stats().malformed;
                continue;
            }
            TreeAddress address;
            try {
                address = TreeAddress::parse(fields[2]);
            } catch (const ParseError&) {
                ++builder.stats().malformed;
                continue;
            }
            builder.add_category(*id, address, fields.size() == 4 ? std::string(fields[3]) : std::string());
            ++builder.stats().topics;
        } else if (fields[0] == "U" && fields.size() == 3) {
            auto id = parse_u64(fields[2]);
            if (!id) {
                ++builder.stats().malformed;
                continue;
            }
            builder.add_url(fields[1], *id);
        } else {
            ++builder.stats().malformed;
        }
    }
}

// Minimal tag scanner for the directory dump subset: Topic, catid/tag,
// d:Title, narrow, link, ExternalPage (with optional topic child).
struct XmlTag {
    std::string name;
    bool closing = false;
    std::map<std::string, std::string> attrs;
    std::string_view text;  // character data up to the next '<'
};

class XmlScanner {
public:
    explicit XmlScanner(std::string_view src) : src_(src) {}

    std::optional<XmlTag> next() {
        while (true) {
            auto lt = src_.find('<', pos_);
            if (lt == std::string_view::npos) return std::nullopt;
            if (src_.substr(lt, 4) == "<!--") {
                auto end = src_.find("-->", lt + 4);
                pos_ = end == std::string_view::npos ? src_.size() : end + 3;
                continue;
            }
            auto gt = src_.find('>', lt + 1);
            if (gt == std::string_view::npos) return std::nullopt;
            pos_ = gt + 1;
            auto body = src_.substr(lt + 1, gt - lt - 1);
            if (body.empty() || body.front() == '?' || body.front() == '!') continue;

            XmlTag tag;
            if (body.front() == '/') {
                tag.closing = true;
                body.remove_prefix(1);
            }
            if (!body.empty() && body.back() == '/') body.remove_suffix(1);
            std::size_t i = 0;
            while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i]))) ++i;
            tag.name = std::string(body.substr(0, i));
            parse_attrs(body.substr(i), tag.attrs);

            auto next_lt = src_.find('<', pos_);
            tag.text = src_.substr(pos_, next_lt == std::string_view::npos ? std::string_view::npos : next_lt - pos_);
            return tag;
        }
    }

private:
    static void parse_attrs(std::string_view s, std::map<std::string, std::string>& out) {
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            auto eq = s.find('=', i);
            if (eq == std::string_view::npos) return;
            auto key = trim(s.substr(i, eq - i));
            auto q = eq + 1;
            while (q < s.size() && std::isspace(static_cast<unsigned char>(s[q]))) ++q;
            if (q >= s.size() || (s[q] != '"' && s[q] != '\'')) return;
            auto close = s.find(s[q], q + 1);
            if (close == std::string_view::npos) return;
            out.emplace(std::string(key), std::string(s.substr(q + 1, close - q - 1)));
            i = close + 1;
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline void parse_rdf_subset(std::string_view text, OntologyIndex::Builder& builder) {
    struct Topic {
        std::optional<CategoryId> catid;
        std::string title;
        std::vector<std::string> narrow;
        std::size_t order = 0;
        bool explicit_record = false;
        bool valid = true;
    };
    std::map<std::string, Topic> topics;
    std::vector<std::pair<std::string, std::string>> links;  // (topic path, url)
    std::size_t appearance = 0;

    std::string current;          // path of the open Topic
    std::string page_url;         // open ExternalPage
    std::string page_topic;
    bool in_page = false;

    auto close_page = [&] {
        if (in_page && !page_url.empty() && !page_topic.empty()) links.emplace_back(page_topic, page_url);
        in_page = false;
        page_url.clear();
        page_topic.clear();
    };

    XmlScanner scanner(text);
    while (auto tag = scanner.next()) {
        const auto& name = tag->name;
        if (tag->closing) {
            if (name == "Topic") current.clear();
            if (name == "ExternalPage") close_page();
            continue;
        }
        if (name == "Topic") {
            close_page();
            auto it = tag->attrs.find("r:ID");
            if (it == tag->attrs.end() || it->second.empty()) {
                ++builder.stats().malformed;
                current.clear();
                continue;
            }
            current = it->second;
            auto& t = topics[current];
            if (!t.explicit_record) t.order = appearance++;
            t.explicit_record = true;
        } else if (name == "ExternalPage") {
            close_page();
            auto it = tag->attrs.find("about");
            if (it == tag->attrs.end()) {
                ++builder.stats().malformed;
                continue;
            }
            in_page = true;
            page_url = it->second;
            page_topic = current;
        } else if (in_page) {
            if (name == "topic") page_topic = std::string(trim(tag->text));
        } else if (!current.empty()) {
            auto& t = topics[current];
            if (name == "tag" || name == "catid") {
                std::optional<std::uint64_t> id;
                if (auto a = tag->attrs.find("catid"); a != tag->attrs.end()) id = parse_u64(a->second);
                else id = parse_u64(tag->text);
                if (id) t.catid = *id;
                else t.valid = false;
            } else if (name == "d:Title") {
                t.title = std::string(trim(tag->text));
            } else if (name == "narrow" || name == "narrow1" || name == "narrow2") {
                if (auto a = tag->attrs.find("r:resource"); a != tag->attrs.end()) t.narrow.push_back(a->second);
            } else if (name == "link" || name == "link1") {
                if (auto a = tag->attrs.find("r:resource"); a != tag->attrs.end()) links.emplace_back(current, a->second);
            }
        }
    }
    close_page();

    // Validate records and synthesize absent ancestors.
    std::map<std::string, Topic> accepted;
    for (auto& [path, t] : topics) {
        if (!t.explicit_record || !t.valid || !t.catid) {
            ++builder.stats().malformed;
            continue;
        }
        auto parts = split(path, '/');
        if (parts.front() != "Top") throw DataError("topic '" + path + "' is not under the single root Top");
        if (parts.size() > kMaxDepth ||
            std::any_of(parts.begin(), parts.end(), [](std::string_view p) { return p.empty(); })) {
            ++builder.stats().malformed;
            continue;
        }
        accepted.emplace(path, std::move(t));
        ++builder.stats().topics;
    }
    if (accepted.empty()) return;

    std::map<std::string, Topic> all = accepted;
    for (const auto& [path, t] : accepted) {
        for (auto slash = path.rfind('/'); slash != std::string::npos; slash = path.rfind('/', slash - 1)) {
            auto anc = path.substr(0, slash);
            auto [it, inserted] = all.try_emplace(anc);
            if (inserted) {
                it->second.order = t.order;
                ++builder.stats().implicit_nodes;
            } else if (!it->second.explicit_record) {
                it->second.order = std::min(it->second.order, t.order);
            }
            if (slash == 0) break;
        }
    }

    std::map<std::string, std::vector<std::string>> children;
    for (const auto& [path, t] : all) {
        if (auto slash = path.rfind('/'); slash != std::string::npos) children[path.substr(0, slash)].push_back(path);
    }

    CategoryId next_free = 0;
    for (const auto& [path, t] : all) {
        if (t.catid) next_free = std::max(next_free, *t.catid + 1);
    }

    // Breadth-first numbering: narrow order first, then order of appearance.
    std::vector<std::pair<std::string, TreeAddress>> queue{{"Top", TreeAddress{1}}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto [path, address] = queue[qi];
        auto& t = all.at(path);
        std::string title = t.title;
        if (title.empty()) {
            auto slash = path.rfind('/');
            title = slash == std::string::npos ? path : path.substr(slash + 1);
            std::replace(title.begin(), title.end(), '_', ' ');
        }
        CategoryId id = t.catid ? *t.catid : next_free++;
        t.catid = id;
        builder.add_category(id, address, title);

        auto kids = children[path];
        auto rank = [&](const std::string& child) {
            auto it = std::find(t.narrow.begin(), t.narrow.end(), child);
            auto narrow_pos = it == t.narrow.end() ? std::numeric_limits<std::size_t>::max()
                                                   : static_cast<std::size_t>(it - t.narrow.begin());
            return std::pair{narrow_pos, all.at(child).order};
        };
        std::stable_sort(kids.begin(), kids.end(),
                         [&](const std::string& a, const std::string& b) { return rank(a) < rank(b); });
        for (std::size_t k = 0; k < kids.size(); ++k) {
            queue.emplace_back(kids[k], address.child(static_cast<std::uint32_t>(k + 1)));
        }
    }

    for (const auto& [path, url] : links) {
        auto it = all.find(path);
        if (it == all.end() || !it->second.catid) {
            ++builder.stats().malformed;
            continue;
        }
        builder.add_url(url, *it->second.catid);
    }
}

} // namespace detail

/// Builds an index from a directory dump. Malformed records are skipped and
/// counted; zero categories, duplicate catids at different addresses and
/// multi-root input are fatal.
[[nodiscard]] inline OntologyIndex parse_ontology(std::string_view text, OntologyFormat format) {
    OntologyIndex::Builder builder;
    if (format == OntologyFormat::tsv) detail::parse_tsv_lines(text, builder);
    else detail::parse_rdf_subset(text, builder);
    return std::move(builder).build();
}

[[nodiscard]] inline OntologyIndex parse_ontology(std::istream& in, OntologyFormat format) {
    if (!in) throw DataError("unreadable ontology source");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw DataError("error reading ontology source");
    return parse_ontology(text, format);
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path);
    return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Reads a persisted index (versioned header, then tsv records).
[[nodiscard]] inline OntologyIndex read_index(std::string_view text) {
    auto nl = text.find('\n');
    auto header = detail::trim(text.substr(0, nl));
    if (header != kIndexHeader) throw ParseError("missing '" + std::string(kIndexHeader) + "' header");
    return parse_ontology(nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1), OntologyFormat::tsv);
}

[[nodiscard]] inline OntologyIndex load_index(const std::string& path) { return read_index(read_file(path)); }

[[nodiscard]] inline OntologyFormat parse_ontology_format(std::string_view name) {
    if (name == "tsv") return OntologyFormat::tsv;
    if (name == "rdf" || name == "rdf-subset") return OntologyFormat::rdf_subset;
    throw UsageError("unknown ontology format '" + std::string(name) + "'");
}

} // namespace idiorec
