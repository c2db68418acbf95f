#pragma once

#include <charconv>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "idiorec/ais.hpp"
#include "idiorec/error.hpp"
#include "idiorec/ontology.hpp"
#include "idiorec/similarity.hpp"

namespace idiorec {

/// `key = value` lines; `#` starts a comment. Later keys override earlier ones.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(std::string_view text) {
        KeyValueConfig cfg;
        std::size_t lineno = 0;
        for (auto raw : detail::lines_of(text)) {
            ++lineno;
            auto hash = raw.find('#');
            auto line = detail::trim(raw.substr(0, hash));
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
            }
            auto key = detail::trim(line.substr(0, eq));
            if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
            cfg.values_[std::string(key)] = std::string(detail::trim(line.substr(eq + 1)));
        }
        return cfg;
    }

    static KeyValueConfig load(const std::string& path) { return parse(read_file(path)); }

    void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
    [[nodiscard]] const std::map<std::string, std::string>& values() const noexcept { return values_; }

    [[nodiscard]] double get_double(const std::string& key) const {
        const auto& v = values_.at(key);
        try {
            std::size_t used = 0;
            double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ParseError("config key '" + key + "': '" + v + "' is not a number");
        }
    }

    [[nodiscard]] std::size_t get_size(const std::string& key) const {
        auto v = detail::parse_u64(values_.at(key));
        if (!v) throw ParseError("config key '" + key + "': '" + values_.at(key) + "' is not a non-negative integer");
        return static_cast<std::size_t>(*v);
    }

    [[nodiscard]] bool get_bool(const std::string& key) const {
        const auto& v = values_.at(key);
        if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
        if (v == "0" || v == "false" || v == "off" || v == "no") return false;
        throw ParseError("config key '" + key + "': '" + v + "' is not a boolean");
    }

    [[nodiscard]] const std::string& get(const std::string& key) const { return values_.at(key); }

    /// Throws on any key neither parameter set understands.
    void check_known() const {
        static const std::set<std::string> known = {
            "match_fn", "ml_cutoff", "disparity_a", "normalization", "disparity_enabled", "size_basis", "measure",
            "pearson_disparity", "k0", "k1", "k2", "k3", "c", "dt", "pool_size", "y", "init_concentration",
            "concentration_max", "death_threshold", "stabilization_window", "max_iterations", "stability_mode",
            "stability_epsilon", "renormalize"};
        for (const auto& [key, value] : values_) {
            if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
        }
    }

    void apply(SimilarityParams& p) const {
        if (has("match_fn")) p.match_fn = parse_match_function(get("match_fn"));
        if (has("ml_cutoff")) p.ml_cutoff = static_cast<int>(get_size("ml_cutoff"));
        if (has("disparity_a")) p.disparity_a = get_double("disparity_a");
        if (has("normalization")) p.normalization = parse_normalization(get("normalization"));
        if (has("disparity_enabled")) p.disparity_enabled = get_bool("disparity_enabled");
        if (has("size_basis")) p.size_basis = parse_size_basis(get("size_basis"));
        if (has("measure")) p.measure = parse_measure(get("measure"));
        if (has("pearson_disparity")) p.pearson_disparity = get_bool("pearson_disparity");
    }

    void apply(AisParams& p) const {
        if (has("k0")) p.k0 = get_double("k0");
        if (has("k1")) p.k1 = get_double("k1");
        if (has("k2")) p.k2 = get_double("k2");
        if (has("k3")) p.k3 = get_double("k3");
        if (has("c")) p.c = get_double("c");
        if (has("dt")) p.dt = get_double("dt");
        if (has("pool_size")) p.pool_size = get_size("pool_size");
        if (has("y")) p.y = get_double("y");
        if (has("init_concentration")) p.init_concentration = get_double("init_concentration");
        if (has("concentration_max")) p.concentration_max = get_double("concentration_max");
        if (has("death_threshold")) p.death_threshold = get_double("death_threshold");
        if (has("stabilization_window")) p.stabilization_window = get_size("stabilization_window");
        if (has("max_iterations")) p.max_iterations = get_size("max_iterations");
        if (has("stability_mode")) {
            const auto& m = get("stability_mode");
            if (m == "membership") p.stability_mode = StabilityMode::membership;
            else if (m == "concentration") p.stability_mode = StabilityMode::concentration;
            else throw UsageError("unknown stability_mode '" + m + "'");
        }
        if (has("stability_epsilon")) p.stability_epsilon = get_double("stability_epsilon");
        if (has("renormalize")) p.renormalize = get_bool("renormalize");
    }

private:
    std::map<std::string, std::string> values_;
};

} // namespace idiorec
