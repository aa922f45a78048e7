#pragma once

#include <string>

#include <json.hpp>

#include "tracelift/geometry.hpp"

namespace tracelift {

using ordered_json = nlohmann::ordered_json;

/**
 * JSON codecs. Scalars travel as their canonical text form ("a/b" with an
 * optional "+c/d*r2" term), so every rational survives the pipe bit-exactly.
 * BiPoly: object keyed "i,j"; UniPoly: array of scalar strings (zero = []).
 */
inline ordered_json bipoly_to_json(const BiPoly& p) {
    ordered_json out = ordered_json::object();
    for (const auto& [k, v] : p.terms())
        out[std::to_string(k.first) + "," + std::to_string(k.second)] = v.str();
    return out;
}

inline BiPoly bipoly_from_json(const ordered_json& j) {
    if (!j.is_object()) throw ParseError("polynomial must be a JSON object");
    BiPoly p;
    for (const auto& [key, val] : j.items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw ParseError("bad exponent key: " + key);
        int i, jj;
        try {
            i = std::stoi(key.substr(0, comma));
            jj = std::stoi(key.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError("bad exponent key: " + key);
        }
        if (i < 0 || jj < 0) throw ParseError("negative exponent in key: " + key);
        if (!val.is_string()) throw ParseError("coefficient must be a string");
        p.add_term(i, jj, Scalar::parse(val.get<std::string>()));
    }
    return p;
}

inline ordered_json unipoly_to_json(const UniPoly& p) {
    ordered_json arr = ordered_json::array();
    if (!p.is_zero())
        for (int k = 0; k <= *p.degree(); ++k) arr.push_back(p.coeff(k).str());
    return arr;
}

inline UniPoly unipoly_from_json(const ordered_json& j) {
    if (!j.is_array()) throw ParseError("edge polynomial must be a JSON array");
    std::vector<Scalar> c;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError("coefficient must be a string");
        c.push_back(Scalar::parse(v.get<std::string>()));
    }
    return UniPoly(std::move(c));
}

inline ordered_json boundary_to_json(const BoundaryData& F) {
    ordered_json out;
    out["m"] = F.m;
    out["degree"] = F.degree;
    ordered_json edges = ordered_json::array();
    for (int i = 1; i <= 3; ++i) {
        ordered_json e;
        e["edge"] = i;
        ordered_json fs = ordered_json::array();
        for (int k = 0; k <= F.m; ++k) fs.push_back(unipoly_to_json(F.f(i, k)));
        e["f"] = fs;
        edges.push_back(e);
    }
    out["edges"] = edges;
    return out;
}

inline BoundaryData boundary_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("edges"))
        throw ParseError("boundary data needs fields m, degree, edges");
    int m = j.at("m").get<int>();
    if (m < 0) throw ParseError("trace order m must be >= 0");
    BoundaryData F = BoundaryData::zero(m, j.value("degree", 0));
    const auto& edges = j.at("edges");
    if (!edges.is_array() || edges.size() != 3) throw ParseError("need exactly 3 edge entries");
    bool seen[3] = {false, false, false};
    for (const auto& e : edges) {
        int idx = e.at("edge").get<int>();
        if (idx < 1 || idx > 3 || seen[idx - 1]) throw ParseError("bad edge index");
        seen[idx - 1] = true;
        const auto& fs = e.at("f");
        if (!fs.is_array() || static_cast<int>(fs.size()) != m + 1)
            throw ParseError("edge " + std::to_string(idx) + " needs m+1 coefficient arrays");
        for (int k = 0; k <= m; ++k) F.f(idx, k) = unipoly_from_json(fs[k]);
    }
    return F;
}

inline ordered_json report_to_json(const CompatibilityReport& report) {
    ordered_json out;
    out["compatible"] = report.compatible();
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json je;
        je["condition"] = e.condition;
        if (e.vertex != 0) je["vertex"] = e.vertex;
        je["pass"] = e.pass;
        je["defect"] = e.defect.str();
        entries.push_back(je);
    }
    out["conditions"] = entries;
    return out;
}

/// Canonical file rendering used by the CLI: 2-space indent, trailing newline.
inline std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace tracelift
