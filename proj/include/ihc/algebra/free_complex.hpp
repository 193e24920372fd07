#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ihc/algebra/reduction.hpp"
#include "ihc/algebra/ring.hpp"
#include "ihc/algebra/sparse.hpp"

namespace ihc {

enum class Direction { Homological, Cohomological };

/// Graded free module in degrees 0..size()-1 with differential d[k] leaving
/// degree k (towards k-1 for chains, k+1 for cochains).
template <class Ring>
struct FreeComplex {
    using V = typename Ring::value_type;

    Ring ring;
    Direction direction = Direction::Homological;
    std::vector<std::vector<std::string>> labels;
    std::vector<SparseMatrix<V>> d;

    FreeComplex(Ring R, Direction dir) : ring(std::move(R)), direction(dir) {}

    std::size_t degrees() const { return labels.size(); }
    std::size_t rank(std::int64_t k) const {
        return k < 0 || k >= static_cast<std::int64_t>(labels.size()) ? 0 : labels[static_cast<std::size_t>(k)].size();
    }
    std::int64_t target(std::int64_t k) const { return direction == Direction::Homological ? k - 1 : k + 1; }
    std::int64_t source(std::int64_t k) const { return direction == Direction::Homological ? k + 1 : k - 1; }

    /// Differential leaving degree k, as a rank(target) x rank(k) matrix.
    const SparseMatrix<V>& out(std::size_t k) const { return d[k]; }

    /// Differential arriving in degree k (zero matrix if none).
    SparseMatrix<V> in(std::int64_t k) const {
        const std::int64_t s = source(k);
        if (s < 0 || s >= static_cast<std::int64_t>(degrees())) return SparseMatrix<V>(rank(k), 0);
        return d[static_cast<std::size_t>(s)];
    }

    std::size_t total_rank() const {
        std::size_t n = 0;
        for (const auto& l : labels) n += l.size();
        return n;
    }

    /// Builds a complex from per-degree ranks; differentials start at zero.
    static FreeComplex with_ranks(Ring R, Direction dir, const std::vector<std::size_t>& ranks) {
        FreeComplex C(std::move(R), dir);
        C.labels.resize(ranks.size());
        for (std::size_t k = 0; k < ranks.size(); ++k) {
            C.labels[k].reserve(ranks[k]);
            for (std::size_t i = 0; i < ranks[k]; ++i) C.labels[k].push_back("e" + std::to_string(k) + "_" + std::to_string(i));
        }
        C.reset_differentials();
        return C;
    }

    void reset_differentials() {
        d.assign(degrees(), SparseMatrix<V>());
        for (std::size_t k = 0; k < degrees(); ++k) {
            const std::int64_t t = target(static_cast<std::int64_t>(k));
            d[k] = SparseMatrix<V>(rank(t), rank(static_cast<std::int64_t>(k)));
        }
    }
};

struct DegreeHomology {
    std::size_t betti = 0;
    std::vector<BigInt> torsion;  // divisors > 1, ascending along the divisibility chain

    bool is_zero() const { return betti == 0 && torsion.empty(); }
    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologySummary {
    Coefficients coeff;
    std::vector<DegreeHomology> degrees;

    DegreeHomology at(std::int64_t k) const {
        if (k < 0 || k >= static_cast<std::int64_t>(degrees.size())) return {};
        return degrees[static_cast<std::size_t>(k)];
    }
    std::vector<std::size_t> bettis() const {
        std::vector<std::size_t> b;
        for (const auto& d : degrees) b.push_back(d.betti);
        return b;
    }
    /// Equality up to trailing zero degrees.
    bool same_as(const HomologySummary& other) const {
        const std::size_t n = std::max(degrees.size(), other.degrees.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!(at(static_cast<std::int64_t>(k)) == other.at(static_cast<std::int64_t>(k)))) return false;
        return true;
    }
};

inline std::string to_string(const DegreeHomology& h, const Coefficients& coeff) {
    std::string out;
    const std::string base = coeff.to_string();
    if (h.betti == 1)
        out = base;
    else if (h.betti > 1)
        out = base + "^" + std::to_string(h.betti);
    for (const auto& t : h.torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + t.str();
    }
    return out.empty() ? "0" : out;
}

template <class Ring>
bool squares_to_zero(const FreeComplex<Ring>& C) {
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        const std::int64_t t = C.target(static_cast<std::int64_t>(k));
        if (t < 0 || t >= static_cast<std::int64_t>(C.degrees())) continue;
        if (!multiply(C.ring, C.d[static_cast<std::size_t>(t)], C.d[k]).is_zero()) return false;
    }
    return true;
}

template <class Ring>
HomologySummary homology(const FreeComplex<Ring>& C) {
    if (!squares_to_zero(C)) throw Error(ErrorKind::NotAComplex, "differential does not square to zero");
    const Ring& R = C.ring;
    std::vector<std::vector<typename Ring::value_type>> divisors(C.degrees());
    for (std::size_t k = 0; k < C.degrees(); ++k) divisors[k] = elementary_divisors(R, C.d[k]);

    HomologySummary out{R.coefficients(), {}};
    out.degrees.resize(C.degrees());
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        const std::size_t rank_out = divisors[k].size();
        const std::int64_t s = C.source(static_cast<std::int64_t>(k));
        std::size_t rank_in = 0;
        if (s >= 0 && s < static_cast<std::int64_t>(C.degrees())) {
            const auto& incoming = divisors[static_cast<std::size_t>(s)];
            rank_in = incoming.size();
            if constexpr (!Ring::is_field) {
                for (const auto& dv : incoming)
                    if (!R.is_unit(dv)) out.degrees[k].torsion.push_back(R.canonical(dv));
            }
        }
        out.degrees[k].betti = C.rank(static_cast<std::int64_t>(k)) - rank_out - rank_in;
    }
    return out;
}

/// A complex realized inside another one: `inclusion[k]` has the basis of
/// degree k as its columns, in coordinates of the ambient complex.
template <class Ring>
struct SubComplex {
    FreeComplex<Ring> complex;
    std::vector<SparseMatrix<typename Ring::value_type>> inclusion;
};

/// Induced differential on an explicit d-stable family of free submodules.
template <class Ring>
SubComplex<Ring> subcomplex_from_generators(const FreeComplex<Ring>& C,
                                            std::vector<SparseMatrix<typename Ring::value_type>> gens) {
    using V = typename Ring::value_type;
    const Ring& R = C.ring;
    std::vector<std::size_t> ranks;
    for (const auto& g : gens) ranks.push_back(g.cols);
    SubComplex<Ring> out{FreeComplex<Ring>::with_ranks(R, C.direction, ranks), {}};
    std::vector<LatticeBasis<Ring>> lattices;
    lattices.reserve(gens.size());
    for (const auto& g : gens) lattices.emplace_back(R, g);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const std::int64_t t = C.target(static_cast<std::int64_t>(k));
        if (t < 0 || t >= static_cast<std::int64_t>(gens.size())) continue;
        SparseMatrix<V>& dk = out.complex.d[k];
        for (std::size_t j = 0; j < gens[k].cols; ++j) {
            auto image = apply(R, C.d[k], gens[k].columns[j]);
            auto coords = lattices[static_cast<std::size_t>(t)].coordinates(std::move(image));
            if (!coords) throw Error(ErrorKind::NotInSpan, "generators are not closed under the differential");
            dk.columns[j] = std::move(*coords);
        }
    }
    out.inclusion = std::move(gens);
    return out;
}

/// {x in A_k : d x in A_(target)} where A_k is spanned by the coordinates
/// flagged in allowed[k]. The result basis is saturated.
template <class Ring>
SubComplex<Ring> subcomplex_with_induced_differential(const FreeComplex<Ring>& C,
                                                      const std::vector<std::vector<char>>& allowed) {
    using V = typename Ring::value_type;
    const Ring& R = C.ring;
    std::vector<SparseMatrix<V>> gens(C.degrees());
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        std::vector<std::uint32_t> cols;
        for (std::uint32_t i = 0; i < C.rank(static_cast<std::int64_t>(k)); ++i)
            if (allowed[k][i]) cols.push_back(i);
        const std::int64_t t = C.target(static_cast<std::int64_t>(k));
        SparseMatrix<V> K;
        if (t >= 0 && t < static_cast<std::int64_t>(C.degrees())) {
            std::vector<char> bad(C.rank(t));
            for (std::size_t i = 0; i < bad.size(); ++i) bad[i] = allowed[static_cast<std::size_t>(t)][i] ? 0 : 1;
            K = kernel_basis(R, select_rows(select_columns(C.d[k], cols), bad));
        } else {
            K = SparseMatrix<V>::identity(cols.size(), R.one());
        }
        // back to ambient coordinates
        SparseMatrix<V> G(C.rank(static_cast<std::int64_t>(k)), K.cols);
        for (std::size_t j = 0; j < K.cols; ++j)
            for (const auto& [i, v] : K.columns[j]) G.columns[j].push_back({cols[i], v});
        gens[k] = std::move(G);
    }
    auto sub = subcomplex_from_generators(C, std::move(gens));
    return sub;
}

/// Quotient of C by the coordinate subcomplex flagged in `sub`.
template <class Ring>
FreeComplex<Ring> relative_complex(const FreeComplex<Ring>& C, const std::vector<std::vector<char>>& sub) {
    using V = typename Ring::value_type;
    for (std::size_t k = 0; k < C.degrees(); ++k)
        for (std::size_t j = 0; j < C.rank(static_cast<std::int64_t>(k)); ++j) {
            if (!sub[k][j]) continue;
            const std::int64_t t = C.target(static_cast<std::int64_t>(k));
            for (const auto& [i, v] : C.d[k].columns[j])
                if (!sub[static_cast<std::size_t>(t)][i])
                    throw Error(ErrorKind::NotClosed, "subcomplex is not closed under the differential");
        }
    FreeComplex<Ring> Q(C.ring, C.direction);
    Q.labels.resize(C.degrees());
    std::vector<std::vector<std::uint32_t>> kept(C.degrees());
    std::vector<std::vector<char>> keep(C.degrees());
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        keep[k].resize(C.rank(static_cast<std::int64_t>(k)));
        for (std::uint32_t j = 0; j < keep[k].size(); ++j) {
            keep[k][j] = sub[k][j] ? 0 : 1;
            if (keep[k][j]) {
                kept[k].push_back(j);
                Q.labels[k].push_back(C.labels[k][j]);
            }
        }
    }
    Q.d.assign(C.degrees(), SparseMatrix<V>());
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        const std::int64_t t = C.target(static_cast<std::int64_t>(k));
        auto cols = select_columns(C.d[k], kept[k]);
        Q.d[k] = (t >= 0 && t < static_cast<std::int64_t>(C.degrees()))
                     ? select_rows(cols, keep[static_cast<std::size_t>(t)])
                     : SparseMatrix<V>(0, kept[k].size());
    }
    return Q;
}

/// Same as above, with the subcomplex given by basis labels.
template <class Ring>
FreeComplex<Ring> relative_complex(const FreeComplex<Ring>& C, const FreeComplex<Ring>& sub) {
    std::vector<std::vector<char>> mask(C.degrees());
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        mask[k].assign(C.rank(static_cast<std::int64_t>(k)), 0);
        if (k >= sub.degrees()) continue;
        for (const auto& label : sub.labels[k]) {
            auto it = std::find(C.labels[k].begin(), C.labels[k].end(), label);
            if (it == C.labels[k].end()) throw Error(ErrorKind::NotClosed, "label '" + label + "' is not a basis element");
            mask[k][static_cast<std::size_t>(it - C.labels[k].begin())] = 1;
        }
    }
    return relative_complex(C, mask);
}

/// Image of a subcomplex Z of C in the coordinate quotient C / C(sub). This
/// is Z / (Z n C(sub)), always free.
template <class Ring>
FreeComplex<Ring> relative_subcomplex(const FreeComplex<Ring>& C, const SubComplex<Ring>& Z,
                                      const std::vector<std::vector<char>>& sub) {
    using V = typename Ring::value_type;
    const Ring& R = C.ring;
    const std::size_t n = C.degrees();
    std::vector<SparseMatrix<V>> images(n), lifts(n);
    std::vector<std::vector<char>> keep(n);
    for (std::size_t k = 0; k < n; ++k) {
        keep[k].resize(C.rank(static_cast<std::int64_t>(k)));
        for (std::size_t j = 0; j < keep[k].size(); ++j) keep[k][j] = sub[k][j] ? 0 : 1;
        auto projected = select_rows(Z.inclusion[k], keep[k]);
        auto red = column_reduce(R, projected, true);
        images[k] = SparseMatrix<V>(projected.rows, 0);
        lifts[k] = SparseMatrix<V>(Z.inclusion[k].rows, 0);
        for (std::size_t j = 0; j < projected.cols; ++j) {
            if (red.reduced.columns[j].empty()) continue;
            images[k].columns.push_back(red.reduced.columns[j]);
            lifts[k].columns.push_back(apply(R, Z.inclusion[k], red.transform.columns[j]));
        }
        images[k].cols = images[k].columns.size();
        lifts[k].cols = lifts[k].columns.size();
    }
    std::vector<std::size_t> ranks;
    for (const auto& m : images) ranks.push_back(m.cols);
    auto Q = FreeComplex<Ring>::with_ranks(R, C.direction, ranks);
    std::vector<LatticeBasis<Ring>> lattices;
    for (const auto& m : images) lattices.emplace_back(R, m);
    for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t t = C.target(static_cast<std::int64_t>(k));
        if (t < 0 || t >= static_cast<std::int64_t>(n)) continue;
        const auto ut = static_cast<std::size_t>(t);
        for (std::size_t j = 0; j < lifts[k].cols; ++j) {
            auto image = apply(R, C.d[k], lifts[k].columns[j]);
            SparseVector<V> projected;
            std::vector<std::uint32_t> renumber(keep[ut].size());
            std::uint32_t next = 0;
            for (std::size_t i = 0; i < keep[ut].size(); ++i) renumber[i] = keep[ut][i] ? next++ : 0;
            for (auto& [i, v] : image)
                if (keep[ut][i]) projected.push_back({renumber[i], std::move(v)});
            auto coords = lattices[ut].coordinates(std::move(projected));
            if (!coords) throw Error(ErrorKind::NotInSpan, "relative differential leaves the image");
            Q.d[k].columns[j] = std::move(*coords);
        }
    }
    return Q;
}

/// Hom(C, R). Chains go to cochains with delta^k = (-1)^(k+1) d_(k+1)^T;
/// cochains go to chains with d_k = (-1)^k (delta^(k-1))^T.
template <class Ring>
FreeComplex<Ring> dual_complex(const FreeComplex<Ring>& C) {
    using V = typename Ring::value_type;
    const Ring& R = C.ring;
    FreeComplex<Ring> D(R, C.direction == Direction::Homological ? Direction::Cohomological : Direction::Homological);
    D.labels = C.labels;
    for (auto& per_degree : D.labels)
        for (auto& l : per_degree) l = l + "*";
    D.reset_differentials();
    for (std::size_t k = 0; k < D.degrees(); ++k) {
        const std::int64_t s = D.target(static_cast<std::int64_t>(k));
        if (s < 0 || s >= static_cast<std::int64_t>(D.degrees())) continue;
        const SparseMatrix<V>& original = C.d[static_cast<std::size_t>(s)];
        bool negate;
        if (C.direction == Direction::Homological)
            negate = (k + 1) % 2 == 1;  // (-1)^(k+1) d_(k+1)^T
        else
            negate = k % 2 == 1;        // (-1)^k (delta^(k-1))^T
        auto T = transpose(original);
        D.d[k] = negate ? scaled(R, R.neg(R.one()), T) : std::move(T);
    }
    return D;
}

/// Checks f d = d' f for a degreewise map f[k]: C_k -> C'_k.
template <class Ring>
bool is_chain_map(const FreeComplex<Ring>& C, const FreeComplex<Ring>& Cp,
                  const std::vector<SparseMatrix<typename Ring::value_type>>& f) {
    const Ring& R = C.ring;
    for (std::size_t k = 0; k < C.degrees(); ++k) {
        const std::int64_t t = C.target(static_cast<std::int64_t>(k));
        if (t < 0 || t >= static_cast<std::int64_t>(C.degrees())) {
            if (k < Cp.degrees() && !multiply(R, Cp.d[k], f[k]).is_zero()) return false;
            continue;
        }
        auto lhs = multiply(R, f[static_cast<std::size_t>(t)], C.d[k]);
        auto rhs = multiply(R, Cp.d[k], f[k]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// Whether the chain map f induces an isomorphism H_k(C) -> H_k(C'), decided
/// on cycle and boundary lattices (not by comparing ranks).
template <class Ring>
bool induced_map_is_iso(const FreeComplex<Ring>& C, const FreeComplex<Ring>& Cp,
                        const SparseMatrix<typename Ring::value_type>& fk, std::size_t k) {
    using V = typename Ring::value_type;
    const Ring& R = C.ring;
    const auto kk = static_cast<std::int64_t>(k);
    auto Z = kernel_basis(R, C.out(k));
    auto B = image_basis(R, C.in(kk));
    auto Zp = kernel_basis(R, Cp.out(k));
    auto Bp = image_basis(R, Cp.in(kk));
    LatticeBasis<Ring> zp_lattice(R, Zp);

    // surjective: f(Z) + B' = Z'
    SparseMatrix<V> G(Zp.cols, 0);
    auto push_coords = [&](const SparseVector<V>& v) {
        auto c = zp_lattice.coordinates(v);
        if (!c) throw Error(ErrorKind::NotInSpan, "map does not send cycles to cycles");
        G.columns.push_back(std::move(*c));
    };
    for (const auto& z : Z.columns) push_coords(apply(R, fk, z));
    for (const auto& b : Bp.columns) push_coords(b);
    G.cols = G.columns.size();
    auto divs = elementary_divisors(R, G);
    if (divs.size() != Zp.cols) return false;
    for (const auto& dv : divs)
        if (!R.is_unit(dv)) return false;

    // injective: f z in B' implies z in B
    auto fZ = multiply(R, fk, Z);
    auto stacked = hstack(fZ, scaled(R, R.neg(R.one()), Bp));
    auto K = kernel_basis(R, stacked);
    LatticeBasis<Ring> b_lattice(R, B);
    for (const auto& col : K.columns) {
        SparseVector<V> y;
        for (const auto& [i, v] : col)
            if (i < Z.cols) y.push_back({i, v});
        if (!b_lattice.contains(apply(R, Z, y))) return false;
    }
    return true;
}

} // namespace ihc
