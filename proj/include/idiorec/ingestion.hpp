#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "idiorec/error.hpp"
#include "idiorec/url.hpp"

namespace idiorec {

struct RawBookmark {
    std::optional<std::string> name;
    std::string url;
    std::optional<std::int64_t> created;  // unix seconds
    std::optional<std::int64_t> visited;
};

/// Output of a bookmark parser. `discarded` counts records with no URL.
struct BookmarkParse {
    std::vector<RawBookmark> bookmarks;
    std::size_t discarded = 0;
};

struct CleanBookmarkList {
    std::vector<std::string> urls;  // normalized, first occurrence order
    std::size_t duplicates_removed = 0;
    std::size_t discarded = 0;      // unparsable or stop-listed
    std::size_t stoplisted = 0;     // subset of discarded
};

enum class BookmarkFormat { opera, plain, netscape };

namespace detail {

inline std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

inline std::optional<std::int64_t> parse_i64(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

inline std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from = 0) {
    if (needle.size() > hay.size()) return std::string_view::npos;
    for (auto i = from; i + needle.size() <= hay.size(); ++i) {
        if (iequals(hay.substr(i, needle.size()), needle)) return i;
    }
    return std::string_view::npos;
}

} // namespace detail

/// Opera hotlist (.adr): `#URL` records followed by KEY=value lines. Folders,
/// notes and separators are skipped; user folder structure is not kept.
[[nodiscard]] inline BookmarkParse parse_opera_adr(std::string_view source) {
    BookmarkParse out;
    std::optional<RawBookmark> record;
    bool in_url_record = false;

    auto flush = [&] {
        if (in_url_record) {
            if (record && !record->url.empty()) out.bookmarks.push_back(std::move(*record));
            else ++out.discarded;
        }
        record.reset();
        in_url_record = false;
    };

    for (auto raw : detail::lines_of(source)) {
        auto line = detail::trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            flush();
            if (line == "#URL") {
                in_url_record = true;
                record.emplace();
            }
            continue;
        }
        if (!in_url_record) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) continue;
        auto key = detail::trim(line.substr(0, eq));
        auto value = line.substr(eq + 1);
        if (key == "URL") record->url = std::string(detail::trim(value));
        else if (key == "NAME") record->name = std::string(value);
        else if (key == "CREATED") record->created = detail::parse_i64(value);
        else if (key == "VISITED") record->visited = detail::parse_i64(value);
    }
    flush();
    return out;
}

/// One URL per line; blank lines and `#` comments are skipped.
[[nodiscard]] inline BookmarkParse parse_plaintext(std::string_view source) {
    BookmarkParse out;
    for (auto raw : detail::lines_of(source)) {
        auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        out.bookmarks.push_back(RawBookmark{std::nullopt, std::string(line), std::nullopt, std::nullopt});
    }
    return out;
}

/// Netscape bookmark-file HTML. Every `<A ...>` anchor is a bookmark; ADD_DATE
/// fills `created`, LAST_VISIT fills `visited`. Folder markup is ignored.
[[nodiscard]] inline BookmarkParse parse_netscape_html(std::string_view source) {
    BookmarkParse out;
    std::size_t pos = 0;
    while (true) {
        auto lt = detail::ifind(source, "<a", pos);
        if (lt == std::string_view::npos) break;
        auto after = lt + 2;
        if (after >= source.size() || !std::isspace(static_cast<unsigned char>(source[after]))) {
            pos = after;
            continue;
        }
        auto gt = source.find('>', after);
        if (gt == std::string_view::npos) break;
        auto attrs = source.substr(after, gt - after);
        pos = gt + 1;

        auto attr = [&](std::string_view key) -> std::optional<std::string_view> {
            std::size_t from = 0;
            while (true) {
                auto k = detail::ifind(attrs, key, from);
                if (k == std::string_view::npos) return std::nullopt;
                bool boundary = k == 0 || std::isspace(static_cast<unsigned char>(attrs[k - 1]));
                auto i = k + key.size();
                while (i < attrs.size() && std::isspace(static_cast<unsigned char>(attrs[i]))) ++i;
                if (!boundary || i >= attrs.size() || attrs[i] != '=') {
                    from = k + 1;
                    continue;
                }
                ++i;
                while (i < attrs.size() && std::isspace(static_cast<unsigned char>(attrs[i]))) ++i;
                if (i >= attrs.size()) return std::nullopt;
                if (attrs[i] == '"' || attrs[i] == '\'') {
                    auto close = attrs.find(attrs[i], i + 1);
                    if (close == std::string_view::npos) return std::nullopt;
                    return attrs.substr(i + 1, close - i - 1);
                }
                auto end = i;
                while (end < attrs.size() && !std::isspace(static_cast<unsigned char>(attrs[end]))) ++end;
                return attrs.substr(i, end - i);
            }
        };

        auto href = attr("HREF");
        if (!href || detail::trim(*href).empty()) {
            ++out.discarded;
            continue;
        }
        RawBookmark b;
        b.url = std::string(detail::trim(*href));
        if (auto d = attr("ADD_DATE")) b.created = detail::parse_i64(*d);
        if (auto d = attr("LAST_VISIT")) b.visited = detail::parse_i64(*d);
        auto close = detail::ifind(source, "</a>", pos);
        if (close != std::string_view::npos) {
            b.name = std::string(detail::trim(source.substr(pos, close - pos)));
            pos = close + 4;
        }
        out.bookmarks.push_back(std::move(b));
    }
    return out;
}

[[nodiscard]] inline BookmarkParse parse_bookmarks(std::string_view source, BookmarkFormat format) {
    switch (format) {
    case BookmarkFormat::opera: return parse_opera_adr(source);
    case BookmarkFormat::plain: return parse_plaintext(source);
    case BookmarkFormat::netscape: return parse_netscape_html(source);
    }
    throw UsageError("unknown bookmark format");
}

[[nodiscard]] inline BookmarkFormat parse_bookmark_format(std::string_view name) {
    if (name == "opera" || name == "adr") return BookmarkFormat::opera;
    if (name == "plain" || name == "text" || name == "txt") return BookmarkFormat::plain;
    if (name == "netscape" || name == "html") return BookmarkFormat::netscape;
    throw UsageError("unknown bookmark format '" + std::string(name) + "'");
}

/// Normalizes, drops unparsable and stop-listed URLs, and removes duplicates
/// keeping the first occurrence. The stop-list holds normalized URLs.
[[nodiscard]] inline CleanBookmarkList clean(const std::vector<RawBookmark>& bookmarks,
                                             const std::unordered_set<std::string>& stoplist = {}) {
    CleanBookmarkList out;
    std::unordered_set<std::string> seen;
    for (const auto& b : bookmarks) {
        std::string url;
        try {
            url = normalize_url(b.url);
        } catch (const ParseError&) {
            ++out.discarded;
            continue;
        }
        if (stoplist.count(url)) {
            ++out.discarded;
            ++out.stoplisted;
            continue;
        }
        if (!seen.insert(url).second) {
            ++out.duplicates_removed;
            continue;
        }
        out.urls.push_back(std::move(url));
    }
    return out;
}

/// Stop-list in plain URL-list format; entries that fail to normalize are ignored.
[[nodiscard]] inline std::unordered_set<std::string> parse_stoplist(std::string_view source) {
    std::unordered_set<std::string> out;
    for (const auto& b : parse_plaintext(source).bookmarks) {
        if (is_normalizable(b.url)) out.insert(normalize_url(b.url));
    }
    return out;
}

} // namespace idiorec
