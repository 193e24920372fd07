#pragma once

#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ihc/error.hpp"
#include "ihc/topology/filtered_complex.hpp"

namespace ihc {

enum class ConstructionKind { Generator, Cone, JoinSphere, ProductCube, DisjointUnion };

/// Output of a constructor together with the data needed to transport
/// perversities from its inputs.
struct Construction {
    ConstructionKind kind = ConstructionKind::Generator;
    int param = 0;
    FilteredComplex result;
    std::vector<FilteredComplex> sources;
    std::vector<std::vector<VertexIndex>> vertex_image;  // per source, source vertex -> result vertex
    SimplexMask boundary;                                // product_cube: X x boundary of the cube
};

namespace detail {

inline std::string fresh_id(const FilteredComplex& X, const std::string& base) {
    if (!X.find_vertex(base)) return base;
    for (int k = 1;; ++k) {
        const std::string candidate = base + std::to_string(k);
        if (!X.find_vertex(candidate)) return candidate;
    }
}

inline std::vector<std::string> ids_of(const FilteredComplex& X, SimplexIndex s) {
    std::vector<std::string> out;
    for (VertexIndex v : X.simplex(s)) out.push_back(X.vertex(v).id);
    return out;
}

inline std::vector<VertexIndex> image_by_id(const FilteredComplex& src, const FilteredComplex& dst,
                                            const std::vector<std::string>& new_ids) {
    std::vector<VertexIndex> out;
    for (VertexIndex v = 0; v < src.vertex_count(); ++v) out.push_back(*dst.find_vertex(new_ids[v]));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------- generators

inline FilteredComplex point() { return build_complex({0, {{"0", 0}}, {{"0"}}}); }

inline FilteredComplex interval() { return build_complex({1, {{"0", 1}, {"1", 1}}, {{"0", "1"}}}); }

inline FilteredComplex circle(int m) {
    if (m < 3) throw Error(ErrorKind::BadParam, "circle needs at least 3 vertices");
    ComplexSpec spec{1, {}, {}};
    for (int i = 0; i < m; ++i) spec.vertices.emplace_back(std::to_string(i), 1);
    for (int i = 0; i < m; ++i) spec.maximal_simplices.push_back({std::to_string(i), std::to_string((i + 1) % m)});
    return build_complex(spec);
}

/// Boundary of the (a+1)-dimensional cross-polytope.
inline FilteredComplex sphere(int a) {
    if (a < 0 || a > 8) throw Error(ErrorKind::BadParam, "sphere dimension must be in 0..8");
    ComplexSpec spec{a, {}, {}};
    for (int i = 0; i <= a; ++i) {
        spec.vertices.emplace_back("p" + std::to_string(i), a);
        spec.vertices.emplace_back("m" + std::to_string(i), a);
    }
    for (std::uint32_t bits = 0; bits < (1u << (a + 1)); ++bits) {
        std::vector<std::string> s;
        for (int i = 0; i <= a; ++i) s.push_back(((bits >> i) & 1u ? "m" : "p") + std::to_string(i));
        spec.maximal_simplices.push_back(std::move(s));
    }
    return build_complex(spec);
}

/// Seven-vertex torus.
inline FilteredComplex torus() {
    ComplexSpec spec{2, {}, {}};
    for (int i = 0; i < 7; ++i) spec.vertices.emplace_back(std::to_string(i), 2);
    auto id = [](int i) { return std::to_string(i % 7); };
    for (int i = 0; i < 7; ++i) {
        spec.maximal_simplices.push_back({id(i), id(i + 1), id(i + 3)});
        spec.maximal_simplices.push_back({id(i), id(i + 2), id(i + 3)});
    }
    return build_complex(spec);
}

/// Six-vertex real projective plane.
inline FilteredComplex rp2() {
    ComplexSpec spec{2, {}, {}};
    for (int i = 1; i <= 6; ++i) spec.vertices.emplace_back(std::to_string(i), 2);
    for (const char* t : {"123", "134", "145", "156", "162", "235", "346", "452", "563", "624"})
        spec.maximal_simplices.push_back({std::string(1, t[0]), std::string(1, t[1]), std::string(1, t[2])});
    return build_complex(spec);
}

// -------------------------------------------------------------- combinators

/// Closed cone with apex at level 0; levels of L shift up by one.
inline Construction make_cone(const FilteredComplex& L) {
    const std::string apex = detail::fresh_id(L, "v");
    ComplexSpec spec{L.formal_dimension() + 1, {{apex, 0}}, {}};
    for (const auto& v : L.vertices()) spec.vertices.emplace_back(v.id, v.level + 1);
    for (SimplexIndex s : L.maximal_simplices()) {
        auto ids = detail::ids_of(L, s);
        ids.insert(ids.begin(), apex);
        spec.maximal_simplices.push_back(std::move(ids));
    }
    Construction c;
    c.kind = ConstructionKind::Cone;
    c.result = build_complex(spec);
    c.sources = {L};
    std::vector<std::string> ids;
    for (const auto& v : L.vertices()) ids.push_back(v.id);
    c.vertex_image = {detail::image_by_id(L, c.result, ids)};
    return c;
}

inline FilteredComplex cone(const FilteredComplex& L) { return make_cone(L).result; }

/// S^a * X with the cross-polytope sphere at level a.
inline Construction make_join_sphere(int a, const FilteredComplex& X) {
    if (a < 0 || a > 8) throw Error(ErrorKind::BadParam, "sphere dimension must be in 0..8");
    const FilteredComplex S = sphere(a);
    ComplexSpec spec{a + 1 + X.formal_dimension(), {}, {}};
    std::vector<std::string> sphere_ids;
    for (const auto& v : S.vertices()) {
        sphere_ids.push_back(detail::fresh_id(X, v.id));
        spec.vertices.emplace_back(sphere_ids.back(), a);
    }
    for (const auto& v : X.vertices()) spec.vertices.emplace_back(v.id, v.level + a + 1);
    for (SimplexIndex s : S.maximal_simplices())
        for (SimplexIndex t : X.maximal_simplices()) {
            std::vector<std::string> ids;
            for (VertexIndex v : S.simplex(s)) ids.push_back(sphere_ids[v]);
            for (const auto& id : detail::ids_of(X, t)) ids.push_back(id);
            spec.maximal_simplices.push_back(std::move(ids));
        }
    Construction c;
    c.kind = ConstructionKind::JoinSphere;
    c.param = a;
    c.result = build_complex(spec);
    c.sources = {X};
    std::vector<std::string> ids;
    for (const auto& v : X.vertices()) ids.push_back(v.id);
    c.vertex_image = {detail::image_by_id(X, c.result, ids)};
    return c;
}

inline FilteredComplex join_sphere(int a, const FilteredComplex& X) { return make_join_sphere(a, X).result; }

/// X x [0,1]^a by iterated staircase prisms. Vertex (v, b) is named
/// "<v>_<b>" with one bit per cube factor.
inline Construction make_product_cube(int a, const FilteredComplex& X) {
    if (a < 0 || a > 6) throw Error(ErrorKind::BadParam, "cube dimension must be in 0..6");
    Construction c;
    c.kind = ConstructionKind::ProductCube;
    c.param = a;
    c.sources = {X};
    if (a == 0) {
        c.result = X;
        c.boundary.assign(X.size(), 0);
        std::vector<VertexIndex> id(X.vertex_count());
        for (VertexIndex v = 0; v < id.size(); ++v) id[v] = v;
        c.vertex_image = {id};
        return c;
    }
    struct PV {
        VertexIndex base;
        std::string bits;
    };
    // vertex lists stay sorted by (base, bits), which is a linear extension
    // of the product order, so each simplex is a chain in list order
    std::vector<PV> verts;
    for (VertexIndex v = 0; v < X.vertex_count(); ++v) verts.push_back({v, ""});
    std::vector<std::vector<std::uint32_t>> tops;
    for (SimplexIndex s : X.maximal_simplices()) tops.emplace_back(X.simplex(s).begin(), X.simplex(s).end());
    for (int step = 0; step < a; ++step) {
        std::vector<PV> next;
        for (const auto& p : verts) {
            next.push_back({p.base, p.bits + "0"});
            next.push_back({p.base, p.bits + "1"});
        }
        std::vector<std::vector<std::uint32_t>> next_tops;
        for (const auto& t : tops)
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::vector<std::uint32_t> prism;
                for (std::size_t j = 0; j <= i; ++j) prism.push_back(2 * t[j]);
                for (std::size_t j = i; j < t.size(); ++j) prism.push_back(2 * t[j] + 1);
                next_tops.push_back(std::move(prism));
            }
        verts = std::move(next);
        tops = std::move(next_tops);
    }
    ComplexSpec spec{X.formal_dimension() + a, {}, {}};
    std::vector<std::string> ids;
    for (const auto& p : verts) {
        ids.push_back(X.vertex(p.base).id + "_" + p.bits);
        spec.vertices.emplace_back(ids.back(), X.vertex(p.base).level + a);
    }
    for (const auto& t : tops) {
        std::vector<std::string> s;
        for (auto v : t) s.push_back(ids[v]);
        spec.maximal_simplices.push_back(std::move(s));
    }
    c.result = build_complex(spec);

    // X x boundary: simplices whose vertices agree on some cube coordinate at 0 or 1
    std::vector<std::string> bits_of(c.result.vertex_count());
    for (std::size_t k = 0; k < verts.size(); ++k) bits_of[*c.result.find_vertex(ids[k])] = verts[k].bits;
    c.boundary.assign(c.result.size(), 0);
    for (SimplexIndex s = 0; s < c.result.size(); ++s)
        for (int j = 0; j < a && !c.boundary[s]; ++j)
            for (char val : {'0', '1'}) {
                bool all = true;
                for (VertexIndex v : c.result.simplex(s)) all = all && bits_of[v][static_cast<std::size_t>(j)] == val;
                if (all) {
                    c.boundary[s] = 1;
                    break;
                }
            }
    std::vector<std::string> corner;
    for (const auto& v : X.vertices()) corner.push_back(v.id + "_" + std::string(static_cast<std::size_t>(a), '0'));
    c.vertex_image = {detail::image_by_id(X, c.result, corner)};
    return c;
}

inline FilteredComplex product_cube(int a, const FilteredComplex& X) { return make_product_cube(a, X).result; }

inline Construction make_disjoint_union(const FilteredComplex& X, const FilteredComplex& Y) {
    if (X.formal_dimension() != Y.formal_dimension())
        throw Error(ErrorKind::BadParam, "disjoint union needs equal formal dimensions");
    ComplexSpec spec{X.formal_dimension(), {}, {}};
    const FilteredComplex* parts[2] = {&X, &Y};
    std::vector<std::vector<std::string>> ids(2);
    for (int p = 0; p < 2; ++p) {
        const std::string prefix = std::to_string(p + 1) + ".";
        for (const auto& v : parts[p]->vertices()) {
            ids[static_cast<std::size_t>(p)].push_back(prefix + v.id);
            spec.vertices.emplace_back(prefix + v.id, v.level);
        }
        for (SimplexIndex s : parts[p]->maximal_simplices()) {
            std::vector<std::string> t;
            for (VertexIndex v : parts[p]->simplex(s)) t.push_back(prefix + parts[p]->vertex(v).id);
            spec.maximal_simplices.push_back(std::move(t));
        }
    }
    Construction c;
    c.kind = ConstructionKind::DisjointUnion;
    c.result = build_complex(spec);
    c.sources = {X, Y};
    c.vertex_image = {detail::image_by_id(X, c.result, ids[0]), detail::image_by_id(Y, c.result, ids[1])};
    return c;
}

inline FilteredComplex disjoint_union(const FilteredComplex& X, const FilteredComplex& Y) {
    return make_disjoint_union(X, Y).result;
}

// ------------------------------------------------------------------ recipes

/// A built space with the boundary handle of its outermost product, if any.
struct Space {
    std::string recipe;
    FilteredComplex complex;
    SimplexMask boundary;
};

namespace detail {

class RecipeParser {
public:
    explicit RecipeParser(std::string text) : text_(std::move(text)) {}

    Space parse() {
        Space s = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        s.recipe = text_;
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::ParseError, "recipe '" + text_ + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        if (!accept(ch)) fail(std::string("expected '") + ch + "'");
    }

    std::string word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a name");
        return text_.substr(start, pos_ - start);
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 9) fail("expected an integer");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    static Space plain(FilteredComplex X) {
        Space s;
        s.boundary.assign(X.size(), 0);
        s.complex = std::move(X);
        return s;
    }

    Space expr() {
        const std::string name = word();
        if (name == "point" || name == "interval" || name == "torus" || name == "rp2") {
            if (accept('(')) expect(')');
            if (name == "point") return plain(ihc::point());
            if (name == "interval") return plain(ihc::interval());
            if (name == "torus") return plain(ihc::torus());
            return plain(ihc::rp2());
        }
        if (name == "circle" || name == "sphere") {
            expect('(');
            const int m = integer();
            expect(')');
            return plain(name == "circle" ? ihc::circle(m) : ihc::sphere(m));
        }
        if (name == "cone") {
            expect('(');
            Space inner = expr();
            expect(')');
            return plain(ihc::cone(inner.complex));
        }
        if (name == "join_sphere" || name == "product_cube") {
            expect('(');
            const int a = integer();
            expect(',');
            Space inner = expr();
            expect(')');
            if (name == "join_sphere") return plain(ihc::join_sphere(a, inner.complex));
            auto c = make_product_cube(a, inner.complex);
            return {"", c.result, c.boundary};
        }
        if (name == "disjoint_union") {
            expect('(');
            Space x = expr();
            expect(',');
            Space y = expr();
            expect(')');
            return plain(ihc::disjoint_union(x.complex, y.complex));
        }
        fail("unknown constructor '" + name + "'");
    }

    std::string text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Evaluates expressions such as `product_cube(1,cone(circle(6)))`.
inline Space build_recipe(const std::string& recipe) { return detail::RecipeParser(recipe).parse(); }

} // namespace ihc
