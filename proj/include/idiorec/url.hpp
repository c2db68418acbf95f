#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "idiorec/error.hpp"

namespace idiorec {

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
    });
}

// name[:port]; name is a dotted label sequence (or "localhost").
inline bool valid_host(std::string_view host) {
    if (host.empty()) return false;
    auto colon = host.find(':');
    auto name = host.substr(0, colon);
    if (colon != std::string_view::npos) {
        auto port = host.substr(colon + 1);
        if (port.empty() || !std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); }))
            return false;
    }
    if (name.empty() || name.front() == '.' || name.front() == '-') return false;
    bool ok_chars = std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '.' || c == '-' || c == '_';
    });
    if (!ok_chars) return false;
    if (name.find("..") != std::string_view::npos) return false;
    return name.find('.') != std::string_view::npos || name == "localhost";
}

} // namespace detail

/// Canonical form used for every URL stored or looked up.
///
/// Scheme and host are lowercased, the path keeps its case, a missing scheme
/// becomes "http" and a host-only URL always ends in "/".
[[nodiscard]] inline std::string normalize_url(std::string_view raw) {
    auto text = detail::trim(raw);
    if (text.empty()) throw ParseError("empty URL");

    std::string scheme = "http";
    auto sep = text.find("://");
    if (sep != std::string_view::npos) {
        auto s = text.substr(0, sep);
        if (!detail::valid_scheme(s)) throw ParseError("bad URL scheme in '" + std::string(text) + "'");
        scheme = detail::to_lower(s);
        text.remove_prefix(sep + 3);
    }

    auto host_end = text.find_first_of("/?#");
    auto host = text.substr(0, host_end);
    if (!detail::valid_host(host)) throw ParseError("no parsable host in '" + std::string(raw) + "'");

    std::string out = scheme + "://" + detail::to_lower(host);
    if (host_end == std::string_view::npos) {
        out.push_back('/');
        return out;
    }
    auto rest = text.substr(host_end);
    if (rest.front() != '/') out.push_back('/');
    out.append(rest);
    return out;
}

/// True when normalize_url accepts the input.
[[nodiscard]] inline bool is_normalizable(std::string_view raw) {
    try {
        (void)normalize_url(raw);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

/// Length of "scheme://host/" within a normalized URL (includes the slash).
[[nodiscard]] inline std::size_t host_prefix_length(std::string_view normalized) {
    auto sep = normalized.find("://");
    auto from = sep == std::string_view::npos ? 0 : sep + 3;
    auto slash = normalized.find('/', from);
    if (slash == std::string_view::npos) throw UsageError("URL is not normalized: " + std::string(normalized));
    return slash + 1;
}

/// Reverse-truncation sequence: the URL itself, then each shorter prefix that
/// ends in "/", stopping at the host-only form.
[[nodiscard]] inline std::vector<std::string> truncation_candidates(std::string_view normalized) {
    std::vector<std::string> out;
    out.emplace_back(normalized);
    auto floor = host_prefix_length(normalized);
    auto end = normalized.size();
    // Skip a trailing "/" so ".../football/" steps to ".../english/".
    if (end > 0 && normalized[end - 1] == '/') --end;
    while (end > floor) {
        auto slash = normalized.rfind('/', end - 1);
        if (slash == std::string_view::npos || slash + 1 < floor) break;
        out.emplace_back(normalized.substr(0, slash + 1));
        end = slash;
    }
    return out;
}

} // namespace idiorec
