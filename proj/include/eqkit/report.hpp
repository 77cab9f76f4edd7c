#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "eqkit/equiangular.hpp"
#include "eqkit/multiplicity.hpp"

namespace eqkit {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write_json(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& x : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write_json(x, out, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += std::isnan(x) ? "\"nan\"" : (x > 0 ? "\"inf\"" : "\"-inf\"");
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace detail

/// JSON text with every double at 17 significant digits; object keys sorted.
inline std::string dump_json(const Json& j, int indent = 2) {
    std::string out;
    detail::write_json(j, out, indent, 0);
    return out;
}

struct RunManifest {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    Json tolerances = Json::object();
    std::optional<double> wall_time;  // omitted for byte-identical reruns

    Json to_json() const {
        Json j{{"command", command}, {"parameters", parameters}, {"seed", seed}, {"tolerances", tolerances}, {"version", kVersion}};
        if (wall_time) j["wall_time_seconds"] = *wall_time;
        return j;
    }
};

inline Json make_report(const RunManifest& manifest, Json results, Json ledger = Json::array()) {
    return Json{{"manifest", manifest.to_json()}, {"results", std::move(results)}, {"ledger", std::move(ledger)}};
}

inline Json to_json(const LedgerEntry& e) {
    Json j{{"name", e.name}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"slack", e.slack}, {"holds", e.holds}};
    if (e.asymptotic) j["asymptotic"] = true;
    return j;
}

inline Json to_json(const VertexSet& s) {
    Json j = Json::array();
    for (Vertex v : s) j.push_back(v);
    return j;
}

/// vectors.json: {"d", "alpha", "vectors"}.
inline Json config_to_json(const LineConfig& c) {
    Json vecs = Json::array();
    for (const auto& v : c.vectors) vecs.push_back(v);
    return Json{{"d", c.d}, {"alpha", c.alpha}, {"vectors", std::move(vecs)}};
}

inline LineConfig config_from_json(const Json& j) {
    LineConfig c;
    c.d = j.at("d").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    for (const auto& v : j.at("vectors")) c.vectors.push_back(v.get<std::vector<double>>());
    return c;
}

}  // namespace eqkit
