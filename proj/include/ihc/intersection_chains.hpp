#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ihc/algebra/free_complex.hpp"
#include "ihc/algebra/ring.hpp"
#include "ihc/perversity.hpp"
#include "ihc/topology/filtered_complex.hpp"

namespace ihc {

/// Stands for minus infinity in perverse degrees.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

struct JoinDecomposition {
    std::vector<std::vector<VertexIndex>> blocks;  // blocks[i] = vertices of level i
    bool regular = false;
};

inline JoinDecomposition join_decomposition(const FilteredComplex& X, SimplexIndex s) {
    JoinDecomposition J;
    const int n = X.formal_dimension();
    J.blocks.resize(static_cast<std::size_t>(n) + 1);
    for (VertexIndex v : X.simplex(s)) J.blocks[static_cast<std::size_t>(X.vertex(v).level)].push_back(v);
    J.regular = !J.blocks[static_cast<std::size_t>(n)].empty();
    return J;
}

/// Entry i is dim(D_0 * ... * D_(n-i)), or kMinusInfinity if that join is empty.
inline std::vector<int> simplex_perverse_degree(const FilteredComplex& X, SimplexIndex s) {
    const int n = X.formal_dimension();
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    for (VertexIndex v : X.simplex(s)) ++count[static_cast<std::size_t>(X.vertex(v).level)];
    std::vector<int> out(static_cast<std::size_t>(n) + 1);
    int below = 0;  // vertices of level <= n - i
    std::vector<int> prefix(static_cast<std::size_t>(n) + 1);
    for (int l = 0; l <= n; ++l) {
        below += count[static_cast<std::size_t>(l)];
        prefix[static_cast<std::size_t>(l)] = below;
    }
    for (int i = 0; i <= n; ++i) {
        const int m = prefix[static_cast<std::size_t>(n - i)];
        out[static_cast<std::size_t>(i)] = m == 0 ? kMinusInfinity : m - 1;
    }
    return out;
}

/// ||s||_S <= dim s - codim S + p(S) for every singular stratum S that s meets.
inline bool is_allowable(const FilteredComplex& X, SimplexIndex s, const Perversity& p) {
    const int n = X.formal_dimension();
    const auto degree = simplex_perverse_degree(X, s);
    for (int level = 0; level < n; ++level) {
        auto S = X.stratum_met(s, level);
        if (!S) continue;
        const int codim = n - level;
        const int lhs = degree[static_cast<std::size_t>(codim)];
        if (lhs != kMinusInfinity && lhs > X.dim(s) - codim + p(*S)) return false;
    }
    return true;
}

/// Boundary with the non-regular facets discarded.
inline std::vector<std::pair<SimplexIndex, int>> tame_boundary(const FilteredComplex& X, SimplexIndex s) {
    if (!X.is_regular(s)) throw Error(ErrorKind::NotRegular, X.name(s) + " is not regular");
    std::vector<std::pair<SimplexIndex, int>> out;
    for (const auto& [f, sign] : boundary(X, s))
        if (X.is_regular(f)) out.emplace_back(f, sign);
    return out;
}

enum class ChainVariant { King, Tame };

template <class Ring>
struct IntersectionChains {
    FreeComplex<Ring> ambient;                         // all generators with d
    std::vector<std::vector<SimplexIndex>> generators;  // basis simplices of `ambient` per degree
    std::vector<std::vector<char>> allowable;           // per degree flags on generators
    SubComplex<Ring> sub;                               // c and dc allowable
    std::optional<FreeComplex<Ring>> relative;          // image in ambient / C(U)

    const FreeComplex<Ring>& complex() const { return relative ? *relative : sub.complex; }
};

/// Simplicial chain complex on the chosen generators: every simplex with the
/// boundary (King) or the regular simplices with the tame boundary.
template <class Ring>
FreeComplex<Ring> chain_complex(const FilteredComplex& X, ChainVariant variant, const Ring& R,
                                std::vector<std::vector<SimplexIndex>>* generators_out = nullptr) {
    using V = typename Ring::value_type;
    const int top = X.max_dim();
    std::vector<std::vector<SimplexIndex>> gens(static_cast<std::size_t>(top) + 1);
    std::vector<std::int64_t> position(X.size(), -1);
    for (int k = 0; k <= top; ++k)
        for (SimplexIndex s : X.of_dim(k))
            if (variant == ChainVariant::King || X.is_regular(s)) {
                position[s] = static_cast<std::int64_t>(gens[static_cast<std::size_t>(k)].size());
                gens[static_cast<std::size_t>(k)].push_back(s);
            }
    while (!gens.empty() && gens.back().empty()) gens.pop_back();

    FreeComplex<Ring> C(R, Direction::Homological);
    C.labels.resize(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (SimplexIndex s : gens[k]) C.labels[k].push_back(X.name(s));
    C.reset_differentials();
    for (std::size_t k = 1; k < gens.size(); ++k)
        for (std::size_t j = 0; j < gens[k].size(); ++j) {
            const SimplexIndex s = gens[k][j];
            auto bd = variant == ChainVariant::King ? boundary(X, s) : tame_boundary(X, s);
            SparseVector<V> col;
            for (const auto& [f, sign] : bd) col.push_back({static_cast<std::uint32_t>(position[f]), R.from_int(sign)});
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            C.d[k].columns[j] = std::move(col);
        }
    if (generators_out) *generators_out = std::move(gens);
    return C;
}

/// Allowable chains whose boundary is allowable, optionally modulo the
/// chains of a closed subcomplex U.
template <class Ring>
IntersectionChains<Ring> intersection_complex(const FilteredComplex& X, const Perversity& p, ChainVariant variant,
                                              const Ring& R, const SimplexMask* U = nullptr) {
    if (!(p.complex() == X)) throw Error(ErrorKind::ComplexMismatch, "perversity belongs to another complex");
    std::vector<std::vector<SimplexIndex>> gens;
    auto C = chain_complex(X, variant, R, &gens);
    std::vector<std::vector<char>> allowed(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (SimplexIndex s : gens[k]) allowed[k].push_back(is_allowable(X, s, p) ? 1 : 0);
    auto sub = subcomplex_with_induced_differential(C, allowed);
    IntersectionChains<Ring> out{std::move(C), std::move(gens), std::move(allowed), std::move(sub), std::nullopt};
    if (U) {
        if (U->size() != X.size() || X.closure(*U) != *U)
            throw Error(ErrorKind::NotClosed, "relative part is not a closed subcomplex");
        std::vector<std::vector<char>> in_u(out.generators.size());
        for (std::size_t k = 0; k < out.generators.size(); ++k)
            for (SimplexIndex s : out.generators[k]) in_u[k].push_back((*U)[s]);
        out.relative = relative_subcomplex(out.ambient, out.sub, in_u);
    }
    return out;
}

inline HomologySummary intersection_homology(const FilteredComplex& X, const Perversity& p, ChainVariant variant,
                                             const Coefficients& coeff, const SimplexMask* U = nullptr) {
    return visit_ring(coeff, [&](const auto& R) { return homology(intersection_complex(X, p, variant, R, U).complex()); });
}

/// Cohomology of Hom(tame intersection chains, R).
inline HomologySummary intersection_cochain_cohomology(const FilteredComplex& X, const Perversity& p,
                                                       const Coefficients& coeff, const SimplexMask* U = nullptr,
                                                       ChainVariant variant = ChainVariant::Tame) {
    return visit_ring(coeff, [&](const auto& R) {
        return homology(dual_complex(intersection_complex(X, p, variant, R, U).complex()));
    });
}

/// Evaluation map from chains into the dual of the dual cochain complex.
template <class Ring>
struct BidualMap {
    FreeComplex<Ring> chains;
    FreeComplex<Ring> cochains;
    FreeComplex<Ring> bidual;
    std::vector<SparseMatrix<typename Ring::value_type>> phi;  // per degree
};

/// Field coefficients only. Dual basis functionals are realized as simplex
/// cochains and the map is computed by evaluating them on chains.
template <class Ring>
BidualMap<Ring> bidual_map(const FilteredComplex& X, const Perversity& p, const Ring& R,
                           ChainVariant variant = ChainVariant::Tame) {
    using V = typename Ring::value_type;
    if constexpr (!Ring::is_field) {
        throw Error(ErrorKind::NotAField, "the bidual map is implemented for field coefficients only");
    } else {
        auto ic = intersection_complex(X, p, variant, R);
        BidualMap<Ring> out{ic.sub.complex, dual_complex(ic.sub.complex), FreeComplex<Ring>(R, Direction::Homological), {}};
        out.bidual = dual_complex(out.cochains);
        for (std::size_t k = 0; k < out.chains.degrees(); ++k) {
            const SparseMatrix<V>& Z = ic.sub.inclusion[k];
            const std::size_t r = Z.cols;
            SparseMatrix<V> phi(r, r);
            if (r == 0) {
                out.phi.push_back(std::move(phi));
                continue;
            }
            // r independent coordinates of the basis vectors
            auto red = column_reduce(R, transpose(Z), false);
            std::vector<std::uint32_t> pivots;
            for (std::uint32_t row = 0; row < red.owner.size(); ++row)
                if (red.owner[row] >= 0) pivots.push_back(static_cast<std::uint32_t>(red.owner[row]));
            std::sort(pivots.begin(), pivots.end());
            DenseMatrix<V> ZR(r, r, R.zero());
            for (std::size_t j = 0; j < r; ++j)
                for (const auto& [i, v] : Z.columns[j]) {
                    auto it = std::lower_bound(pivots.begin(), pivots.end(), i);
                    if (it != pivots.end() && *it == i) ZR(static_cast<std::size_t>(it - pivots.begin()), j) = v;
                }
            auto snf = smith_normal_form(R, ZR, true);
            const auto inverse = dense_multiply(R, snf.V, snf.U);  // ZR^-1, all divisors are 1 over a field
            // functional j: f_j(e_pivot[a]) = inverse(j, a)
            std::vector<SparseVector<V>> functionals(r);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t a = 0; a < r; ++a)
                    if (!R.is_zero(inverse(j, a))) functionals[j].push_back({pivots[a], inverse(j, a)});
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    V value = R.zero();
                    for (const auto& [row, fv] : functionals[j])
                        if (const V* zv = find_entry(Z.columns[i], row)) value = R.add(value, R.mul(fv, *zv));
                    if (!R.is_zero(value)) phi.columns[i].push_back({static_cast<std::uint32_t>(j), value});
                }
            out.phi.push_back(std::move(phi));
        }
        return out;
    }
}

} // namespace ihc
