#pragma once

// JSON form of a complex:
//   {"formal_dimension": n,
//    "maximal_simplices": [["a","b"], ...],
//    "vertices": [{"id": "a", "level": 0}, ...]}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ihc/topology/filtered_complex.hpp"

namespace ihc {

inline nlohmann::json complex_to_json(const FilteredComplex& X) {
    nlohmann::json j;
    j["formal_dimension"] = X.formal_dimension();
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : X.vertices()) verts.push_back({{"id", v.id}, {"level", v.level}});
    j["vertices"] = std::move(verts);
    nlohmann::json simplices = nlohmann::json::array();
    for (SimplexIndex s : X.maximal_simplices()) {
        nlohmann::json ids = nlohmann::json::array();
        for (VertexIndex v : X.simplex(s)) ids.push_back(X.vertex(v).id);
        simplices.push_back(std::move(ids));
    }
    j["maximal_simplices"] = std::move(simplices);
    return j;
}

inline ComplexSpec spec_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw Error(ErrorKind::ParseError, "complex must be a JSON object");
        for (const char* key : {"formal_dimension", "vertices", "maximal_simplices"})
            if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
        ComplexSpec spec;
        spec.formal_dimension = j.at("formal_dimension").get<int>();
        for (const auto& v : j.at("vertices")) spec.vertices.emplace_back(v.at("id").get<std::string>(), v.at("level").get<int>());
        for (const auto& s : j.at("maximal_simplices")) spec.maximal_simplices.push_back(s.get<std::vector<std::string>>());
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline FilteredComplex complex_from_json(const nlohmann::json& j) { return build_complex(spec_from_json(j)); }

inline FilteredComplex complex_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return complex_from_json(j);
}

inline FilteredComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return complex_from_json_text(buf.str());
}

} // namespace ihc
