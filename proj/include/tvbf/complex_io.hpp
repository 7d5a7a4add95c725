#pragma once

// JSON file format for cell complexes.
//
// {
//   "name": "rp3",
//   "counts": {"P": 2, "F": 4, "E": 4, "V": 2},
//   "boundary3": [[...], ...],   // F x P, row-major
//   "boundary2": [[...], ...],   // E x F
//   "boundary1": [[...], ...]    // V x E
// }
//
// Entries must be JSON integers; unknown fields are rejected; loading always
// validates the complex.

#include "tvbf/cell_complex.hpp"

#include <json.hpp>

#include <fstream>

namespace tvbf {

class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline IntMatrix matrix_from_json(const nlohmann::json& j, const std::string& field,
                                  std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(field + ": expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(field + " row " + std::to_string(i) + ": expected " +
                             std::to_string(cols) + " integer entries");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!row[k].is_number_integer())
                throw ParseError(field + " entry (" + std::to_string(i) + "," +
                                 std::to_string(k) + ") is not an integer");
            m(i, k) = Integer(row[k].get<std::int64_t>());
        }
    }
    return m;
}

inline nlohmann::json matrix_to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_int64(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::size_t count_from_json(const nlohmann::json& counts, const char* key) {
    if (!counts.contains(key) || !counts[key].is_number_integer() ||
        counts[key].get<std::int64_t>() < 0)
        throw ParseError(std::string("counts.") + key + " must be a non-negative integer");
    return counts[key].get<std::size_t>();
}

} // namespace detail

inline CellComplex complex_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("top-level value must be an object");
    static const char* known[] = {"name", "counts", "boundary3", "boundary2", "boundary1"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ParseError("unknown field '" + it.key() + "'");
    }
    for (const char* k : known)
        if (!j.contains(k)) throw ParseError(std::string("missing field '") + k + "'");
    if (!j["name"].is_string()) throw ParseError("name must be a string");
    const auto& counts = j["counts"];
    if (!counts.is_object()) throw ParseError("counts must be an object");
    for (auto it = counts.begin(); it != counts.end(); ++it)
        if (it.key() != "P" && it.key() != "F" && it.key() != "E" && it.key() != "V")
            throw ParseError("unknown field 'counts." + it.key() + "'");

    CellComplex c;
    c.name = j["name"].get<std::string>();
    c.cells3 = detail::count_from_json(counts, "P");
    c.faces = detail::count_from_json(counts, "F");
    c.edges = detail::count_from_json(counts, "E");
    c.vertices = detail::count_from_json(counts, "V");
    c.boundary3 = detail::matrix_from_json(j["boundary3"], "boundary3", c.faces, c.cells3);
    c.boundary2 = detail::matrix_from_json(j["boundary2"], "boundary2", c.edges, c.faces);
    c.boundary1 = detail::matrix_from_json(j["boundary1"], "boundary1", c.vertices, c.edges);
    return c;
}

inline nlohmann::ordered_json complex_to_json(const CellComplex& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["counts"] = {{"P", c.cells3}, {"F", c.faces}, {"E", c.edges}, {"V", c.vertices}};
    j["boundary3"] = detail::matrix_to_json(c.boundary3);
    j["boundary2"] = detail::matrix_to_json(c.boundary2);
    j["boundary1"] = detail::matrix_to_json(c.boundary1);
    return j;
}

inline CellComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON parse error in '") + path + "': " + e.what());
    }
    CellComplex c = complex_from_json(j);
    require_valid(c);
    return c;
}

inline void save_complex(const CellComplex& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << complex_to_json(c).dump(2) << "\n";
}

} // namespace tvbf
