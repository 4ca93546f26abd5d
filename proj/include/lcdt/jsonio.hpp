#pragma once

// JSON rendering for the library types. Key order is fixed by construction
// (ordered_json preserves insertion order), so output is byte-stable for a
// given input. Element strings use the galois syntax and round-trip through
// FiniteField::parse_element.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "lcdt/algebra.hpp"
#include "lcdt/codes.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/galois.hpp"

namespace lcdt {

using json = nlohmann::ordered_json;

// exact when it fits a 64-bit signed integer, decimal string otherwise
inline json bigint_json(const bigint& v) {
    if (v >= 0 && v <= bigint(INT64_MAX)) return static_cast<std::int64_t>(v);
    return v.str();
}

inline json field_json(const FieldPtr& f) {
    json mod = json::array();
    for (u64 c : f->modulus()) mod.push_back(c);
    return json{{"spec", f->spec()},
                {"characteristic", f->characteristic()},
                {"degree", f->degree()},
                {"order", bigint_json(f->order())},
                {"modulus", std::move(mod)}};
}

inline json element_json(const FieldElement& x) { return x.str(); }

template <typename Range>
json element_list_json(const Range& elems) {
    json out = json::array();
    for (const auto& x : elems) out.push_back(x.str());
    return out;
}

inline json matrix_json(const Matrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        entries.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline json poly_json(const Poly& p) {
    json coeffs = json::array();
    std::size_t top = p.is_zero() ? 0 : static_cast<std::size_t>(p.degree());
    for (std::size_t i = 0; i <= top; ++i) coeffs.push_back(p.coeff(i).str());
    return json{{"coeffs", std::move(coeffs)}};
}

inline json weights_json(const WeightDistribution& wd) {
    json out = json::object();
    for (const auto& [w, c] : wd) out[std::to_string(w)] = c;
    return out;
}

// Accepts either a bare array of rows or an object with an "entries" key;
// entries may be element strings or plain integers.
inline Matrix matrix_from_json(const FieldPtr& f, const json& j) {
    const json* entries = nullptr;
    if (j.is_array())
        entries = &j;
    else if (j.is_object() && j.contains("entries"))
        entries = &j.at("entries");
    else
        throw ParseError("generator must be an array of rows or {\"entries\": [...]}");
    if (entries->empty()) throw ParseError("generator needs at least one row");

    std::size_t rows = entries->size();
    std::size_t cols = entries->at(0).size();
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = entries->at(i);
        if (!row.is_array() || row.size() != cols)
            throw ParseError("generator rows must be arrays of equal length");
        for (std::size_t j2 = 0; j2 < cols; ++j2) {
            const json& cell = row.at(j2);
            if (cell.is_string())
                m.at(i, j2) = f->parse_element(cell.get<std::string>());
            else if (cell.is_number_integer())
                m.at(i, j2) = f->from_int(cell.get<long long>());
            else
                throw ParseError("generator entries must be element strings or integers");
        }
    }
    return m;
}

}  // namespace lcdt
