#pragma once

// Exact substrate: rationals, dense polynomials over Q and over Q[s],
// gcd, square-free decomposition, resultants, rational roots.

#include <json.hpp>

#include "linalg.hpp"
#include "poly.hpp"
#include "polyalg.hpp"
#include "ratfunc.hpp"
#include "rational.hpp"

namespace miop {

/// ["num/den", ...] ascending; the zero polynomial is [].
inline nlohmann::json poly_to_json(const UniPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

inline UniPoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(parse_rational(e.get<std::string>()));
    return UniPoly(std::move(c));
}

}  // namespace miop
