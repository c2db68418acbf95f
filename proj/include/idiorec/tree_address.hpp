#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idiorec/error.hpp"

namespace idiorec {

/// Ontology category identifier (the directory "catid").
using CategoryId = std::uint64_t;

/// Deepest level of the directory tree; the root sits at depth 1.
inline constexpr std::size_t kMaxDepth = 16;

/// Root-first dot path of a category, e.g. 1.13.12.1.5.
///
/// Every component is a positive ordinal; the first one names the root and
/// the length equals the depth of the category.
class TreeAddress {
public:
    TreeAddress() = default;

    explicit TreeAddress(std::vector<std::uint32_t> components) : parts_(std::move(components)) {
        validate();
    }

    TreeAddress(std::initializer_list<std::uint32_t> components)
        : TreeAddress(std::vector<std::uint32_t>(components)) {}

    /// Parses "1.13.12" (surrounding whitespace tolerated).
    static TreeAddress parse(std::string_view text) {
        while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
        if (text.empty()) throw ParseError("empty tree address");

        std::vector<std::uint32_t> parts;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto dot = text.find('.', start);
            if (dot == std::string_view::npos) dot = text.size();
            auto piece = text.substr(start, dot - start);
            std::uint32_t value = 0;
            auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
            if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
                throw ParseError("bad tree address component in '" + std::string(text) + "'");
            }
            parts.push_back(value);
            start = dot + 1;
        }
        return TreeAddress(std::move(parts));
    }

    [[nodiscard]] std::size_t depth() const noexcept { return parts_.size(); }
    [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
    [[nodiscard]] std::span<const std::uint32_t> components() const noexcept { return parts_; }
    [[nodiscard]] std::uint32_t root() const { return parts_.at(0); }
    [[nodiscard]] std::uint32_t back() const { return parts_.at(parts_.size() - 1); }

    [[nodiscard]] TreeAddress parent() const {
        if (parts_.size() <= 1) throw UsageError("root address has no parent");
        return TreeAddress(std::vector<std::uint32_t>(parts_.begin(), parts_.end() - 1));
    }

    [[nodiscard]] TreeAddress child(std::uint32_t ordinal) const {
        auto parts = parts_;
        parts.push_back(ordinal);
        return TreeAddress(std::move(parts));
    }

    [[nodiscard]] TreeAddress prefix(std::size_t length) const {
        if (length == 0 || length > parts_.size()) throw UsageError("prefix length out of range");
        return TreeAddress(std::vector<std::uint32_t>(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(length)));
    }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out.push_back('.');
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    friend auto operator<=>(const TreeAddress&, const TreeAddress&) = default;
    friend bool operator==(const TreeAddress&, const TreeAddress&) = default;

private:
    void validate() const {
        if (parts_.empty()) throw ParseError("tree address needs at least one component");
        if (parts_.size() > kMaxDepth) throw ParseError("tree address deeper than 16 levels");
        if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end()) {
            throw ParseError("tree address components must be positive");
        }
    }

    std::vector<std::uint32_t> parts_;
};

/// Length of the longest common root-first prefix.
///
/// Throws DataError when the roots differ: the ontology is single-rooted.
[[nodiscard]] inline std::size_t matching_level(const TreeAddress& a, const TreeAddress& b) {
    if (a.empty() || b.empty()) throw UsageError("matching_level on empty address");
    if (a.root() != b.root()) {
        throw DataError("addresses " + a.to_string() + " and " + b.to_string() + " have different roots");
    }
    auto ac = a.components();
    auto bc = b.components();
    auto [ai, bi] = std::mismatch(ac.begin(), ac.end(), bc.begin(), bc.end());
    return static_cast<std::size_t>(ai - ac.begin());
}

/// Edges on the tree path between two addresses; identical addresses count as 1.
[[nodiscard]] inline std::size_t edge_distance(const TreeAddress& a, const TreeAddress& b) {
    auto level = matching_level(a, b);
    auto edges = a.depth() + b.depth() - 2 * level;
    return edges == 0 ? 1 : edges;
}

struct TreeAddressHash {
    std::size_t operator()(const TreeAddress& a) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto c : a.components()) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace idiorec
