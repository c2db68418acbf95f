#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idiorec/error.hpp"
#include "idiorec/ingestion.hpp"
#include "idiorec/ontology.hpp"
#include "idiorec/tree_address.hpp"

namespace idiorec {

/// Entries beyond this count are treated as this many for disparity correction.
inline constexpr std::size_t kProfileSizeCap = 100;

inline constexpr std::string_view kProfileHeader = "IDIOREC-PROFILE v1";

struct ProfileEntry {
    TreeAddress address;
    std::optional<CategoryId> catid;  // absent for tree-encoded profiles read without an index
    std::uint64_t votes = 0;
    std::vector<std::string> urls;    // bookmarks that resolved here, sorted
};

/// A user as category votes, where a vote is one bookmark classified into the
/// category. Entries are unique and kept sorted by address.
struct WebProfile {
    std::string user_id;
    std::vector<ProfileEntry> entries;
    std::size_t total_bookmarks = 0;
    std::size_t mapped = 0;
    std::size_t unmapped = 0;

    [[nodiscard]] std::uint64_t vote_total() const noexcept {
        std::uint64_t total = 0;
        for (const auto& e : entries) total += e.votes;
        return total;
    }

    [[nodiscard]] const ProfileEntry* find(const TreeAddress& address) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), address,
                                   [](const ProfileEntry& e, const TreeAddress& a) { return e.address < a; });
        return it != entries.end() && it->address == address ? &*it : nullptr;
    }

    [[nodiscard]] bool empty() const noexcept { return entries.empty(); }
};

struct CoverageReport {
    double mapped_fraction = 0.0;
    std::vector<std::size_t> per_truncation_depth;  // hits by number of "/" steps dropped
    std::size_t prefix_hits = 0;                    // hits found by longest-prefix lookup
    std::size_t total = 0;
    std::size_t mapped = 0;
    std::size_t unmapped = 0;
};

struct ProfileBuild {
    WebProfile profile;
    CoverageReport coverage;
};

enum class LookupMode { truncation, prefix };
enum class ProfileEncoding { tree, integer };

[[nodiscard]] inline LookupMode parse_lookup_mode(std::string_view s) {
    if (s == "truncation") return LookupMode::truncation;
    if (s == "prefix") return LookupMode::prefix;
    throw UsageError("unknown lookup mode '" + std::string(s) + "'");
}

[[nodiscard]] inline ProfileEncoding parse_encoding(std::string_view s) {
    if (s == "tree") return ProfileEncoding::tree;
    if (s == "integer") return ProfileEncoding::integer;
    throw UsageError("unknown profile encoding '" + std::string(s) + "'");
}

[[nodiscard]] inline std::string_view to_string(ProfileEncoding e) { return e == ProfileEncoding::tree ? "tree" : "integer"; }

/// Sorts entries by address and sorts each entry's URLs.
inline void canonicalize(WebProfile& p) {
    std::sort(p.entries.begin(), p.entries.end(),
              [](const ProfileEntry& a, const ProfileEntry& b) { return a.address < b.address; });
    for (auto& e : p.entries) std::sort(e.urls.begin(), e.urls.end());
}

/// Resolves every URL against the index and tallies votes per category.
/// Misses are counted but left out of the profile.
[[nodiscard]] inline ProfileBuild build_profile(std::string user_id, const CleanBookmarkList& urls,
                                                const OntologyIndex& index, LookupMode mode) {
    ProfileBuild out;
    out.profile.user_id = std::move(user_id);
    std::map<CategoryId, ProfileEntry> votes;

    for (const auto& url : urls.urls) {
        std::optional<CategoryId> hit;
        if (mode == LookupMode::truncation) {
            auto match = index.lookup_url(url);
            if (match) {
                hit = match.category;
                if (out.coverage.per_truncation_depth.size() <= match.truncation_depth)
                    out.coverage.per_truncation_depth.resize(match.truncation_depth + 1, 0);
                ++out.coverage.per_truncation_depth[match.truncation_depth];
            }
        } else {
            hit = index.lookup_url_prefix(url);
            if (hit) ++out.coverage.prefix_hits;
        }
        if (!hit) {
            ++out.profile.unmapped;
            continue;
        }
        auto& entry = votes[*hit];
        if (entry.votes == 0) {
            entry.address = index.at(*hit).address;
            entry.catid = *hit;
        }
        ++entry.votes;
        entry.urls.push_back(url);
    }

    for (auto& [id, entry] : votes) out.profile.entries.push_back(std::move(entry));
    canonicalize(out.profile);
    out.profile.total_bookmarks = urls.urls.size();
    out.profile.mapped = out.profile.total_bookmarks - out.profile.unmapped;

    out.coverage.total = out.profile.total_bookmarks;
    out.coverage.mapped = out.profile.mapped;
    out.coverage.unmapped = out.profile.unmapped;
    out.coverage.mapped_fraction =
        out.coverage.total == 0 ? 0.0 : static_cast<double>(out.coverage.mapped) / static_cast<double>(out.coverage.total);
    return out;
}

/// Profiles larger than the cap count as the cap.
[[nodiscard]] inline std::size_t effective_size(const WebProfile& p) noexcept {
    return std::min(kProfileSizeCap, p.entries.size());
}

/// Header line, then one `key:votes;` entry per line in address order.
/// The key is the tree address or the integer catid.
[[nodiscard]] inline std::string serialize_profile(const WebProfile& p, ProfileEncoding encoding) {
    std::ostringstream out;
    out << kProfileHeader << ' ' << to_string(encoding) << ' ' << p.user_id << '\n';
    for (const auto& e : p.entries) {
        if (encoding == ProfileEncoding::tree) {
            out << e.address.to_string();
        } else {
            if (!e.catid) throw DataError("entry " + e.address.to_string() + " has no category id for integer encoding");
            out << *e.catid;
        }
        out << ':' << e.votes << ";\n";
    }
    return out.str();
}

namespace detail {

struct ProfileHeader {
    ProfileEncoding encoding;
    std::string user_id;
};

inline ProfileHeader parse_profile_header(std::string_view line) {
    line = trim(line);
    if (line.substr(0, kProfileHeader.size()) != kProfileHeader) {
        throw ParseError("missing '" + std::string(kProfileHeader) + "' header");
    }
    auto rest = trim(line.substr(kProfileHeader.size()));
    auto sp = rest.find(' ');
    auto enc = rest.substr(0, sp);
    ProfileHeader h{ProfileEncoding::tree, {}};
    if (enc == "tree") h.encoding = ProfileEncoding::tree;
    else if (enc == "integer") h.encoding = ProfileEncoding::integer;
    else throw ParseError("unknown profile encoding '" + std::string(enc) + "'");
    if (sp != std::string_view::npos) h.user_id = std::string(trim(rest.substr(sp + 1)));
    return h;
}

} // namespace detail

/// Parses `key:votes;` entries (any mix of newlines and spaces between them).
/// Integer keys need the index to recover addresses; tree keys pick up their
/// catid from the index when one is given.
[[nodiscard]] inline std::vector<ProfileEntry> parse_profile_entries(std::string_view body, ProfileEncoding encoding,
                                                                     const OntologyIndex* index) {
    if (encoding == ProfileEncoding::integer && !index) {
        throw DataError("integer-encoded profile needs an ontology index");
    }
    std::vector<ProfileEntry> entries;
    std::string joined;
    for (auto line : detail::lines_of(body)) {
        if (!detail::trim(line).empty() && detail::trim(line).front() == '#') continue;
        joined.append(line);
        joined.push_back(' ');
    }
    std::string_view rest = joined;
    while (true) {
        auto semi = rest.find(';');
        auto piece = detail::trim(rest.substr(0, semi));
        if (semi == std::string_view::npos) {
            if (!piece.empty()) throw ParseError("profile entry '" + std::string(piece) + "' lacks ';'");
            break;
        }
        rest.remove_prefix(semi + 1);
        if (piece.empty()) throw ParseError("empty profile entry");
        auto colon = piece.rfind(':');
        if (colon == std::string_view::npos) throw ParseError("malformed profile entry '" + std::string(piece) + "'");
        auto key = detail::trim(piece.substr(0, colon));
        auto votes = detail::parse_u64(piece.substr(colon + 1));
        if (!votes || *votes == 0) throw ParseError("bad vote count in '" + std::string(piece) + "'");

        ProfileEntry e;
        e.votes = *votes;
        if (encoding == ProfileEncoding::integer) {
            auto id = detail::parse_u64(key);
            if (!id) throw ParseError("bad category id in '" + std::string(piece) + "'");
            const auto* node = index->find(*id);
            if (!node) throw DataError("unknown category id " + std::to_string(*id));
            e.catid = *id;
            e.address = node->address;
        } else {
            e.address = TreeAddress::parse(key);
            if (index) e.catid = index->at(e.address).catid;
        }
        entries.push_back(std::move(e));
    }

    std::sort(entries.begin(), entries.end(),
              [](const ProfileEntry& a, const ProfileEntry& b) { return a.address < b.address; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].address == entries[i - 1].address) {
            throw ParseError("duplicate profile entry " + entries[i].address.to_string());
        }
    }
    return entries;
}

/// Inverse of serialize_profile. Also reads the `#url` and `#coverage`
/// annotation lines that write_profile_file appends.
[[nodiscard]] inline WebProfile parse_profile(std::string_view text, const OntologyIndex* index = nullptr) {
    auto nl = text.find('\n');
    auto header = detail::parse_profile_header(text.substr(0, nl));
    auto body = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    WebProfile p;
    p.user_id = header.user_id;
    p.entries = parse_profile_entries(body, header.encoding, index);
    p.mapped = static_cast<std::size_t>(p.vote_total());
    p.total_bookmarks = p.mapped;

    for (auto line : detail::lines_of(body)) {
        auto fields = detail::split(line, '\t');
        if (fields[0] == "#url" && fields.size() == 3) {
            auto address = TreeAddress::parse(fields[1]);
            auto it = std::lower_bound(p.entries.begin(), p.entries.end(), address,
                                       [](const ProfileEntry& e, const TreeAddress& a) { return e.address < a; });
            if (it == p.entries.end() || it->address != address) {
                throw ParseError("url annotation for absent entry " + address.to_string());
            }
            it->urls.emplace_back(fields[2]);
        } else if (fields[0] == "#coverage" && fields.size() == 3) {
            auto total = detail::parse_u64(fields[1]);
            auto unmapped = detail::parse_u64(fields[2]);
            if (!total || !unmapped || *unmapped > *total) throw ParseError("bad coverage annotation");
            p.total_bookmarks = *total;
            p.unmapped = *unmapped;
            p.mapped = *total - *unmapped;
        }
    }
    canonicalize(p);
    return p;
}

/// Profile file: serialize_profile output followed by `#coverage` and `#url`
/// annotation lines carrying the bookmark URLs behind each entry.
[[nodiscard]] inline std::string profile_file_text(const WebProfile& p, ProfileEncoding encoding) {
    std::string text = serialize_profile(p, encoding);
    text += "#coverage\t" + std::to_string(p.total_bookmarks) + '\t' + std::to_string(p.unmapped) + '\n';
    for (const auto& e : p.entries) {
        for (const auto& url : e.urls) text += "#url\t" + e.address.to_string() + '\t' + url + '\n';
    }
    return text;
}

inline void write_profile_file(const std::string& path, const WebProfile& p, ProfileEncoding encoding) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write profile " + path);
    out << profile_file_text(p, encoding);
    if (!out) throw DataError("failed writing profile " + path);
}

[[nodiscard]] inline WebProfile read_profile_file(const std::string& path, const OntologyIndex* index = nullptr) {
    return parse_profile(read_file(path), index);
}

/// Loads every `*.profile` file of a directory, sorted by user id.
[[nodiscard]] inline std::vector<WebProfile> load_profile_db(const std::string& dir, const OntologyIndex* index = nullptr) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw DataError("profile database " + dir + " is not a directory");
    std::vector<WebProfile> out;
    for (const auto& item : fs::directory_iterator(dir)) {
        if (item.is_regular_file() && item.path().extension() == ".profile") {
            out.push_back(read_profile_file(item.path().string(), index));
        }
    }
    std::sort(out.begin(), out.end(), [](const WebProfile& a, const WebProfile& b) { return a.user_id < b.user_id; });
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].user_id == out[i - 1].user_id) throw DataError("duplicate user id " + out[i].user_id + " in " + dir);
    }
    return out;
}

} // namespace idiorec
