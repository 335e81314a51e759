#pragma once

#include "poly.hpp"

#include <json.hpp>

namespace wm {

using nlohmann::json;

inline json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
        return json(v.convert_to<int64_t>());
    return json(v.str());  // decimal string when it does not fit in 64 bits
}

inline BigInt bigint_from_json(const json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(j.get<int64_t>());
}

inline json cyclo_to_json(const CycloNumber& x) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs())
        coeffs.push_back(json::array({bigint_to_json(num(c)), bigint_to_json(den(c))}));
    return json{{"N", x.conductor()}, {"coeffs", coeffs}};
}

// accepts an integer, [num, den], or the {"N", "coeffs"} object form
inline CycloNumber cyclo_from_json(const json& j) {
    if (j.is_number_integer()) return CycloNumber(j.get<int64_t>());
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("cyclo json: bad pair");
        Rational q(bigint_from_json(j[0]), bigint_from_json(j[1]));
        return CycloNumber(q);
    }
    long N = j.at("N").get<long>();
    detail::QPoly p;
    for (const auto& pair : j.at("coeffs")) {
        Rational q(bigint_from_json(pair.at(0)), bigint_from_json(pair.at(1)));
        p.push_back(q);
    }
    return CycloNumber::from_qpoly(N, std::move(p));
}

inline json poly_to_json(const Polynomial& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(cyclo_to_json(c));
    return a;
}

inline Polynomial poly_from_json(const json& j) {
    std::vector<CycloNumber> cs;
    for (const auto& c : j) cs.push_back(cyclo_from_json(c));
    return Polynomial(std::move(cs));
}

inline json ratfn_to_json(const RationalFunction& f) {
    return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

inline RationalFunction ratfn_from_json(const json& j) {
    return RationalFunction(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

}  // namespace wm
