#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ihc/error.hpp"

namespace ihc {

using VertexIndex = std::uint32_t;
using SimplexIndex = std::uint32_t;

/// Vertex indices in increasing (global) order.
using Simplex = std::vector<VertexIndex>;

/// Per-simplex membership flags; a subcomplex when closed under faces.
using SimplexMask = std::vector<char>;

struct ComplexSpec {
    int formal_dimension = 0;
    std::vector<std::pair<std::string, int>> vertices;  // (id, level)
    std::vector<std::vector<std::string>> maximal_simplices;
};

struct Stratum {
    std::uint32_t index = 0;
    std::string name;  // id of the first vertex of the stratum
    int dim = 0;
    int codim = 0;
    bool regular = false;
    std::vector<SimplexIndex> simplices;
};

class FilteredComplex {
public:
    struct Vertex {
        std::string id;
        int level = 0;
    };

    FilteredComplex() = default;

    int formal_dimension() const { return data_->n; }
    std::size_t vertex_count() const { return data_->vertices.size(); }
    std::size_t size() const { return data_->simplices.size(); }
    const Vertex& vertex(VertexIndex v) const { return data_->vertices[v]; }
    const std::vector<Vertex>& vertices() const { return data_->vertices; }

    const Simplex& simplex(SimplexIndex s) const { return data_->simplices[s]; }
    const std::vector<Simplex>& simplices() const { return data_->simplices; }
    int dim(SimplexIndex s) const { return static_cast<int>(data_->simplices[s].size()) - 1; }
    int max_dim() const { return data_->simplices.empty() ? -1 : dim(static_cast<SimplexIndex>(size() - 1)); }
    int level(SimplexIndex s) const { return data_->level[s]; }
    bool is_regular(SimplexIndex s) const { return level(s) == formal_dimension(); }

    /// Simplices of dimension k, in the canonical (lexicographic) order.
    const std::vector<SimplexIndex>& of_dim(int k) const {
        static const std::vector<SimplexIndex> none;
        return k < 0 || k >= static_cast<int>(data_->by_dim.size()) ? none : data_->by_dim[static_cast<std::size_t>(k)];
    }

    /// facets(s)[i] is s with its i-th vertex removed (sign (-1)^i in the boundary).
    const std::vector<SimplexIndex>& facets(SimplexIndex s) const { return data_->facets[s]; }
    const std::vector<SimplexIndex>& cofacets(SimplexIndex s) const { return data_->cofacets[s]; }

    std::optional<SimplexIndex> find(const Simplex& s) const {
        auto it = data_->index.find(s);
        if (it == data_->index.end()) return std::nullopt;
        return it->second;
    }
    std::optional<VertexIndex> find_vertex(const std::string& id) const {
        auto it = data_->vertex_index.find(id);
        if (it == data_->vertex_index.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<Stratum>& strata() const { return data_->strata; }
    const Stratum& stratum_of(SimplexIndex s) const { return data_->strata[data_->stratum_of[s]]; }
    std::uint32_t stratum_index(SimplexIndex s) const { return data_->stratum_of[s]; }
    std::optional<std::uint32_t> find_stratum(const std::string& name) const {
        for (const auto& S : data_->strata)
            if (S.name == name) return S.index;
        return std::nullopt;
    }

    /// Stratum of level i met by s, if any: the stratum of the face spanned
    /// by the vertices of level <= i, provided s has a vertex of level i.
    std::optional<std::uint32_t> stratum_met(SimplexIndex s, int i) const {
        Simplex face;
        bool hit = false;
        for (VertexIndex v : simplex(s)) {
            const int l = vertex(v).level;
            if (l <= i) face.push_back(v);
            if (l == i) hit = true;
        }
        if (!hit) return std::nullopt;
        return data_->stratum_of[data_->index.at(face)];
    }

    std::string vertex_id(VertexIndex v) const { return vertex(v).id; }
    std::string name(SimplexIndex s) const {
        std::string out = "(";
        for (std::size_t i = 0; i < simplex(s).size(); ++i) {
            if (i) out += ",";
            out += vertex(simplex(s)[i]).id;
        }
        return out + ")";
    }

    /// Maximal simplices in canonical order.
    std::vector<SimplexIndex> maximal_simplices() const {
        std::vector<SimplexIndex> out;
        for (SimplexIndex s = 0; s < size(); ++s)
            if (cofacets(s).empty()) out.push_back(s);
        return out;
    }

    /// Spec that rebuilds this complex.
    ComplexSpec spec() const {
        ComplexSpec out;
        out.formal_dimension = formal_dimension();
        for (const auto& v : vertices()) out.vertices.emplace_back(v.id, v.level);
        for (SimplexIndex s : maximal_simplices()) {
            std::vector<std::string> ids;
            for (VertexIndex v : simplex(s)) ids.push_back(vertex(v).id);
            out.maximal_simplices.push_back(std::move(ids));
        }
        return out;
    }

    /// Smallest subcomplex containing the flagged simplices.
    SimplexMask closure(SimplexMask mask) const {
        for (SimplexIndex s = static_cast<SimplexIndex>(size()); s-- > 0;)
            if (mask[s])
                for (SimplexIndex f : facets(s)) mask[f] = 1;
        return mask;
    }

    /// Full subcomplex on the vertices accepted by `keep`.
    template <class Pred>
    SimplexMask full_subcomplex(Pred keep) const {
        SimplexMask mask(size(), 0);
        for (SimplexIndex s = 0; s < size(); ++s)
            mask[s] = std::all_of(simplex(s).begin(), simplex(s).end(), [&](VertexIndex v) { return keep(v); }) ? 1 : 0;
        return mask;
    }

    bool same_as(const FilteredComplex& other) const { return data_ == other.data_; }
    bool operator==(const FilteredComplex& other) const {
        if (data_ == other.data_) return true;
        if (formal_dimension() != other.formal_dimension() || size() != other.size()) return false;
        for (VertexIndex v = 0; v < vertex_count(); ++v)
            if (vertex(v).id != other.vertex(v).id || vertex(v).level != other.vertex(v).level) return false;
        return simplices() == other.simplices();
    }

    friend FilteredComplex build_complex(const ComplexSpec& spec);

private:
    struct Data {
        int n = 0;
        std::vector<Vertex> vertices;
        std::map<std::string, VertexIndex> vertex_index;
        std::vector<Simplex> simplices;
        std::map<Simplex, SimplexIndex> index;
        std::vector<std::vector<SimplexIndex>> by_dim;
        std::vector<int> level;
        std::vector<std::vector<SimplexIndex>> facets, cofacets;
        std::vector<Stratum> strata;
        std::vector<std::uint32_t> stratum_of;
    };

    std::shared_ptr<const Data> data_;
};

namespace detail {

inline std::uint32_t uf_find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

} // namespace detail

inline FilteredComplex build_complex(const ComplexSpec& spec) {
    const int n = spec.formal_dimension;
    if (n < 0) throw Error(ErrorKind::BadParam, "formal dimension must be non-negative");

    // stable level sort of the vertices
    std::vector<std::size_t> order(spec.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
        const auto& [id, lvl] = spec.vertices[i];
        if (id.empty()) throw Error(ErrorKind::BadParam, "empty vertex id");
        if (!seen.emplace(id, i).second) throw Error(ErrorKind::BadParam, "duplicate vertex id '" + id + "'");
        if (lvl < 0 || lvl > n)
            throw Error(ErrorKind::BadLevel, "vertex '" + id + "' has level " + std::to_string(lvl) + " outside 0.." +
                                                 std::to_string(n));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return spec.vertices[a].second < spec.vertices[b].second; });

    auto data = std::make_shared<FilteredComplex::Data>();
    data->n = n;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& [id, lvl] = spec.vertices[order[k]];
        data->vertices.push_back({id, lvl});
        data->vertex_index.emplace(id, static_cast<VertexIndex>(k));
    }
    if (std::none_of(data->vertices.begin(), data->vertices.end(), [n](const auto& v) { return v.level == n; }))
        throw Error(ErrorKind::EmptyRegularPart, "no simplex has level " + std::to_string(n));

    std::set<Simplex> all;
    for (VertexIndex v = 0; v < data->vertices.size(); ++v) all.insert({v});
    for (const auto& ms : spec.maximal_simplices) {
        if (ms.empty()) throw Error(ErrorKind::BadParam, "empty simplex");
        Simplex s;
        for (const auto& id : ms) {
            auto it = data->vertex_index.find(id);
            if (it == data->vertex_index.end()) throw Error(ErrorKind::BadParam, "unknown vertex '" + id + "'");
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorKind::BadParam, "repeated vertex in a simplex");
        if (s.size() > 24) throw Error(ErrorKind::BadParam, "simplex dimension too large");
        const std::uint32_t m = static_cast<std::uint32_t>(s.size());
        for (std::uint32_t bits = 1; bits < (1u << m); ++bits) {
            Simplex face;
            for (std::uint32_t i = 0; i < m; ++i)
                if (bits & (1u << i)) face.push_back(s[i]);
            all.insert(std::move(face));
        }
    }
    std::vector<Simplex> sorted(all.begin(), all.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    data->simplices = std::move(sorted);

    const auto count = static_cast<SimplexIndex>(data->simplices.size());
    data->level.resize(count);
    data->facets.resize(count);
    data->cofacets.resize(count);
    for (SimplexIndex s = 0; s < count; ++s) {
        const Simplex& sx = data->simplices[s];
        data->index.emplace(sx, s);
        const auto d = sx.size() - 1;
        if (data->by_dim.size() <= d) data->by_dim.resize(d + 1);
        data->by_dim[d].push_back(s);
        int lvl = 0;
        for (VertexIndex v : sx) lvl = std::max(lvl, data->vertices[v].level);
        data->level[s] = lvl;
        if (sx.size() > 1)
            for (std::size_t i = 0; i < sx.size(); ++i) {
                Simplex f = sx;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                const SimplexIndex fi = data->index.at(f);
                data->facets[s].push_back(fi);
                data->cofacets[fi].push_back(s);
                if (data->level[fi] > lvl) throw Error(ErrorKind::BadLevel, "face level exceeds simplex level");
            }
    }

    // strata: components of level-i simplices under the facet relation
    std::vector<std::uint32_t> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    for (SimplexIndex s = 0; s < count; ++s)
        for (SimplexIndex f : data->facets[s])
            if (data->level[f] == data->level[s]) {
                const auto a = detail::uf_find(parent, s), b = detail::uf_find(parent, f);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    // vertices come first in the simplex order, so every root is the first vertex of its component
    std::vector<std::pair<int, SimplexIndex>> roots;
    for (SimplexIndex s = 0; s < count; ++s)
        if (detail::uf_find(parent, s) == s) roots.emplace_back(data->level[s], s);
    std::sort(roots.begin(), roots.end());
    std::map<SimplexIndex, std::uint32_t> root_to_stratum;
    for (const auto& [lvl, root] : roots) {
        Stratum S;
        S.index = static_cast<std::uint32_t>(data->strata.size());
        S.name = data->vertices[data->simplices[root][0]].id;
        S.dim = lvl;
        S.codim = n - lvl;
        S.regular = lvl == n;
        root_to_stratum.emplace(root, S.index);
        data->strata.push_back(std::move(S));
    }
    data->stratum_of.resize(count);
    for (SimplexIndex s = 0; s < count; ++s) {
        const auto st = root_to_stratum.at(detail::uf_find(parent, s));
        data->stratum_of[s] = st;
        data->strata[st].simplices.push_back(s);
    }

    FilteredComplex X;
    X.data_ = std::move(data);
    return X;
}

/// Signed boundary of a simplex: pairs (facet, +-1).
inline std::vector<std::pair<SimplexIndex, int>> boundary(const FilteredComplex& X, SimplexIndex s) {
    std::vector<std::pair<SimplexIndex, int>> out;
    const auto& f = X.facets(s);
    for (std::size_t i = 0; i < f.size(); ++i) out.emplace_back(f[i], i % 2 == 0 ? 1 : -1);
    return out;
}

struct PseudomanifoldReport {
    bool pure = true;           // every simplex lies in an n-simplex
    bool non_branching = true;  // every level-n (n-1)-simplex has at most two n-cofaces
    bool dims_ok = true;        // dim <= level for every simplex
    bool closed = true;         // no level-n (n-1)-simplex with a single coface
    std::vector<SimplexIndex> not_pure, branching, too_big, boundary_facets;

    bool passes() const { return pure && non_branching && dims_ok; }
};

inline PseudomanifoldReport pseudomanifold_check(const FilteredComplex& X) {
    PseudomanifoldReport r;
    const int n = X.formal_dimension();
    std::vector<char> in_top(X.size(), 0);
    for (SimplexIndex s : X.of_dim(n)) in_top[s] = 1;
    for (SimplexIndex s = static_cast<SimplexIndex>(X.size()); s-- > 0;)
        if (in_top[s])
            for (SimplexIndex f : X.facets(s)) in_top[f] = 1;
    for (SimplexIndex s = 0; s < X.size(); ++s) {
        if (!in_top[s]) {
            r.pure = false;
            r.not_pure.push_back(s);
        }
        if (X.dim(s) > X.level(s)) {
            r.dims_ok = false;
            r.too_big.push_back(s);
        }
    }
    if (n >= 1)
        for (SimplexIndex s : X.of_dim(n - 1)) {
            if (!X.is_regular(s)) continue;
            std::size_t top = 0;
            for (SimplexIndex c : X.cofacets(s))
                if (X.dim(c) == n) ++top;
            if (top > 2) {
                r.non_branching = false;
                r.branching.push_back(s);
            } else if (top == 1) {
                r.closed = false;
                r.boundary_facets.push_back(s);
            }
        }
    return r;
}

/// Closure of the level-n (n-1)-simplices with a single n-coface.
inline SimplexMask boundary_subcomplex(const FilteredComplex& X) {
    SimplexMask mask(X.size(), 0);
    for (SimplexIndex s : pseudomanifold_check(X).boundary_facets) mask[s] = 1;
    return X.closure(std::move(mask));
}

/// Sign per n-simplex (indexed like X.of_dim(n)).
struct Orientation {
    std::vector<SimplexIndex> simplices;
    std::vector<int> sign;

    int sign_of(SimplexIndex s) const {
        auto it = std::lower_bound(simplices.begin(), simplices.end(), s);
        return it != simplices.end() && *it == s ? sign[static_cast<std::size_t>(it - simplices.begin())] : 0;
    }
};

inline Orientation orient(const FilteredComplex& X) {
    const int n = X.formal_dimension();
    Orientation o;
    o.simplices = X.of_dim(n);
    o.sign.assign(o.simplices.size(), 0);
    std::map<SimplexIndex, std::size_t> pos;
    for (std::size_t i = 0; i < o.simplices.size(); ++i) pos[o.simplices[i]] = i;

    auto position_in = [&](SimplexIndex top, SimplexIndex facet) {
        const auto& f = X.facets(top);
        return static_cast<int>(std::find(f.begin(), f.end(), facet) - f.begin());
    };
    for (std::size_t seed = 0; seed < o.simplices.size(); ++seed) {
        if (o.sign[seed] != 0) continue;
        o.sign[seed] = 1;
        std::queue<std::size_t> todo;
        todo.push(seed);
        while (!todo.empty()) {
            const std::size_t cur = todo.front();
            todo.pop();
            const SimplexIndex s = o.simplices[cur];
            for (SimplexIndex f : X.facets(s)) {
                if (!X.is_regular(f)) continue;
                std::vector<SimplexIndex> tops;
                for (SimplexIndex c : X.cofacets(f))
                    if (X.dim(c) == n) tops.push_back(c);
                if (tops.size() != 2) continue;
                const SimplexIndex other = tops[0] == s ? tops[1] : tops[0];
                const int mine = o.sign[cur] * (position_in(s, f) % 2 == 0 ? 1 : -1);
                const int theirs_unit = position_in(other, f) % 2 == 0 ? 1 : -1;
                const int required = -mine * theirs_unit;
                const std::size_t op = pos.at(other);
                if (o.sign[op] == 0) {
                    o.sign[op] = required;
                    todo.push(op);
                } else if (o.sign[op] != required) {
                    throw Error(ErrorKind::NonOrientable, "regular part is not orientable (conflict at " + X.name(f) +
                                                              "); retry with zp:2 coefficients");
                }
            }
        }
    }
    return o;
}

/// Signed sum of the n-simplices, as (simplex, coefficient) pairs.
inline std::vector<std::pair<SimplexIndex, int>> fundamental_cycle(const FilteredComplex& X, const Orientation& o) {
    if (o.simplices != X.of_dim(X.formal_dimension()))
        throw Error(ErrorKind::ComplexMismatch, "orientation belongs to another complex");
    std::vector<std::pair<SimplexIndex, int>> out;
    for (std::size_t i = 0; i < o.simplices.size(); ++i) out.emplace_back(o.simplices[i], o.sign[i]);
    return out;
}

} // namespace ihc
