#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "critline/precision.hpp"

#ifndef CRITLINE_TEST_DATA
#define CRITLINE_TEST_DATA "tests/data"
#endif

namespace testing_support {

inline const nlohmann::json& oracles() {
    static const nlohmann::json j = [] {
        std::ifstream f(std::string(CRITLINE_TEST_DATA) + "/oracles.json");
        return nlohmann::json::parse(f);
    }();
    return j;
}

inline std::string data_path(const std::string& name) { return std::string(CRITLINE_TEST_DATA) + "/" + name; }

inline critline::Real real(const nlohmann::json& s, long bits) { return critline::Real(s.get<std::string>(), bits); }

inline critline::Complex cplx(const nlohmann::json& pair, long bits) {
    return critline::Complex(real(pair[0], bits), real(pair[1], bits));
}

// |a - b| / max(|b|, floor)
inline double rel(const critline::Complex& a, const critline::Complex& b, double floor = 0) {
    critline::Real d = critline::abs(a - b), m = critline::abs(b);
    double md = m.to_double();
    if (md < floor) return (d / critline::Real(floor, d.prec())).to_double();
    return (d / m).to_double();
}

inline double rel(const critline::Real& a, const critline::Real& b, double floor = 0) {
    return rel(critline::Complex(a, critline::Real(a.prec())), critline::Complex(b, critline::Real(b.prec())), floor);
}

}  // namespace testing_support
