#pragma once

#include <string>

#include <json.hpp>

#include "nodal/errors.hpp"
#include "nodal/multipoly.hpp"

namespace nodal {

/// Term-list schema shared by the fit cache and the CLI output. Integers
/// are serialized as decimal strings so consumers never overflow.
inline nlohmann::json terms_to_json(const MultiPoly& p) {
    if (p.degree_in(Var::g) > 0)
        throw usage_error("terms_to_json: polynomial still depends on the genus symbol");
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        nlohmann::json term;
        term["exponents"] = {e[0], e[1], e[2], e[3]};
        term["coeff_num"] = c.numerator().str();
        term["coeff_den"] = c.denominator().str();
        terms.push_back(term);
    }
    return terms;
}

inline MultiPoly terms_from_json(const nlohmann::json& terms) {
    if (!terms.is_array()) throw usage_error("polynomial terms: expected an array");
    MultiPoly p;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& term = terms[i];
        const std::string where = "terms[" + std::to_string(i) + "]";
        if (!term.is_object() || !term.contains("exponents") || !term.contains("coeff_num") ||
            !term.contains("coeff_den"))
            throw usage_error(where + ": expected exponents/coeff_num/coeff_den");
        const auto& ex = term["exponents"];
        if (!ex.is_array() || ex.size() != 4)
            throw usage_error(where + ".exponents: expected 4 entries");
        Exponents e{};
        for (int k = 0; k < 4; ++k) {
            if (!ex[k].is_number_integer() || ex[k].get<long long>() < 0)
                throw usage_error(where + ".exponents: expected non-negative integers");
            e[static_cast<unsigned>(k)] = static_cast<uint32_t>(ex[k].get<long long>());
        }
        if (!term["coeff_num"].is_string() || !term["coeff_den"].is_string())
            throw usage_error(where + ": coefficients must be decimal strings");
        Rational c = Rational::from_strings(term["coeff_num"].get<std::string>(),
                                            term["coeff_den"].get<std::string>());
        p += MultiPoly::monomial(e, c);
    }
    return p;
}

} // namespace nodal
