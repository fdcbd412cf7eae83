#pragma once

// JSON interchange.  Lattice exponents serialize as {"int": i, "g": g} so
// round trips are lossless; double coefficients rely on the shortest
// round-trip printing of the JSON library and come back bit identical.

#include "fracgreen/atoms.hpp"
#include "fracgreen/errors.hpp"

#include <json.hpp>

#include <string>

namespace fracgreen {

using nlohmann::json;

inline json to_json(LatticeExponent e) { return json{{"int", e.integer_part}, {"g", e.gamma_multiple}}; }

inline LatticeExponent lattice_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("int") || !j.contains("g"))
        throw ConfigError("expected {int, g} lattice exponent at " + where);
    return {j.at("int").get<std::int32_t>(), j.at("g").get<std::int32_t>()};
}

/// AtomSum <-> JSON list of {coeff, y:{int,g}, beta:[...], r:{int,g}}.
inline json to_json(const AtomSum<double>& u) {
    json arr = json::array();
    for (const auto& a : u.atoms()) {
        json beta = json::array();
        for (int b : a.x_multi) beta.push_back(b);
        arr.push_back(json{{"coeff", a.coeff}, {"y", to_json(a.y_exp)}, {"beta", beta}, {"r", to_json(a.r_exp)}});
    }
    return arr;
}

inline AtomSum<double> atom_sum_from_json(const json& j, int n, const std::string& where = "atom sum") {
    if (!j.is_array()) throw ConfigError(where + ": expected a JSON array of atoms");
    std::vector<GradedAtom<double>> atoms;
    atoms.reserve(j.size());
    for (std::size_t idx = 0; idx < j.size(); ++idx) {
        const json& a = j[idx];
        const std::string at = where + ", atom " + std::to_string(idx);
        if (!a.is_object() || !a.contains("coeff") || !a.contains("y") || !a.contains("beta") || !a.contains("r"))
            throw ConfigError(at + ": expected {coeff, y, beta, r}");
        GradedAtom<double> g;
        g.coeff = a.at("coeff").get<double>();
        g.y_exp = lattice_from_json(a.at("y"), at + ".y");
        g.r_exp = lattice_from_json(a.at("r"), at + ".r");
        const json& beta = a.at("beta");
        if (!beta.is_array() || static_cast<int>(beta.size()) != n)
            throw ConfigError(at + ".beta: expected an array of length n = " + std::to_string(n));
        for (const auto& b : beta) {
            int v = b.get<int>();
            if (v < 0) throw ConfigError(at + ".beta: negative multi-index entry");
            g.x_multi.push_back(v);
        }
        atoms.push_back(std::move(g));
    }
    return AtomSum<double>(n, std::move(atoms));
}

}  // namespace fracgreen
