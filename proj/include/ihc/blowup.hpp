#pragma once

// Blown-up cochains. A compatible family over the regular simplices is
// determined by its values on basis tuples F = (F_0, ..., F_n), and each
// tuple is the restriction of exactly one global basis cochain, the "cell"
// (tau, eps): tau is the regular simplex spanned by the non-apex vertices of
// F, and eps records for each block i < n with tau_i nonempty whether the
// cone apex of that block belongs to F_i. Blocks with tau_i empty carry the
// bare apex. The cell restricts to F^* on every regular simplex containing
// tau, so the limit is free on cells.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ihc/algebra/free_complex.hpp"
#include "ihc/algebra/reduction.hpp"
#include "ihc/intersection_chains.hpp"
#include "ihc/perversity.hpp"
#include "ihc/topology/filtered_complex.hpp"

namespace ihc {

struct BlowupCell {
    SimplexIndex tau = 0;
    std::uint32_t eps = 0;  // bit i set: apex_i in F_i (only for i < n with tau_i nonempty)
    int degree = 0;
};

/// Signed coboundary term: (target cell id, +-1).
using CellTerm = std::pair<std::uint32_t, int>;

/// Cell basis of the blown-up complex over the regular faces of a set of
/// simplices (all of X, or the faces of one simplex for the local complex).
class BlowupBasis {
public:
    BlowupBasis(FilteredComplex X, std::optional<SimplexIndex> only_faces_of = std::nullopt)
        : X_(std::move(X)), n_(X_.formal_dimension()) {
        if (n_ > 30) throw Error(ErrorKind::BadParam, "formal dimension too large for the blow-up");
        in_scope_.assign(X_.size(), 1);
        if (only_faces_of) {
            if (!X_.is_regular(*only_faces_of)) throw Error(ErrorKind::NotRegular, X_.name(*only_faces_of) + " is not regular");
            in_scope_.assign(X_.size(), 0);
            in_scope_[*only_faces_of] = 1;
            in_scope_ = X_.closure(in_scope_);
        }
        for (SimplexIndex s = 0; s < X_.size(); ++s) {
            if (!in_scope_[s] || !X_.is_regular(s)) continue;
            std::uint32_t free_bits = 0;
            for (VertexIndex v : X_.simplex(s))
                if (X_.vertex(v).level < n_) free_bits |= 1u << X_.vertex(v).level;
            // enumerate the subsets of free_bits
            std::uint32_t sub = 0;
            for (;;) {
                cells_.push_back({s, sub, 0});
                cells_.back().degree = compute_degree(cells_.back());
                if (sub == free_bits) break;
                sub = (sub - free_bits) & free_bits;
            }
        }
        std::stable_sort(cells_.begin(), cells_.end(), [](const BlowupCell& a, const BlowupCell& b) {
            if (a.degree != b.degree) return a.degree < b.degree;
            if (a.tau != b.tau) return a.tau < b.tau;
            return a.eps < b.eps;
        });
        int top = -1;
        for (const auto& c : cells_) top = std::max(top, c.degree);
        by_degree_.resize(static_cast<std::size_t>(top + 1));
        position_.resize(cells_.size());
        for (std::uint32_t id = 0; id < cells_.size(); ++id) {
            auto& bucket = by_degree_[static_cast<std::size_t>(cells_[id].degree)];
            position_[id] = static_cast<std::uint32_t>(bucket.size());
            bucket.push_back(id);
            index_.emplace(std::make_pair(cells_[id].tau, cells_[id].eps), id);
        }
    }

    const FilteredComplex& complex() const { return X_; }
    std::size_t size() const { return cells_.size(); }
    const BlowupCell& cell(std::uint32_t id) const { return cells_[id]; }
    std::size_t degrees() const { return by_degree_.size(); }
    const std::vector<std::uint32_t>& of_degree(std::size_t k) const { return by_degree_[k]; }
    std::uint32_t position(std::uint32_t id) const { return position_[id]; }
    bool in_scope(SimplexIndex s) const { return in_scope_[s] != 0; }

    std::optional<std::uint32_t> find(SimplexIndex tau, std::uint32_t eps) const {
        auto it = index_.find({tau, eps});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Vertices of block i of tau, in global order.
    std::vector<VertexIndex> block(const BlowupCell& c, int i) const {
        std::vector<VertexIndex> out;
        for (VertexIndex v : X_.simplex(c.tau))
            if (X_.vertex(v).level == i) out.push_back(v);
        return out;
    }

    /// dim F_i (the bare apex has dimension 0).
    int block_dim(const BlowupCell& c, int i) const {
        int count = 0;
        for (VertexIndex v : X_.simplex(c.tau))
            if (X_.vertex(v).level == i) ++count;
        if (i == n_) return count - 1;
        if (count == 0) return 0;
        return count - 1 + static_cast<int>((c.eps >> i) & 1u);
    }

    std::string label(std::uint32_t id) const {
        const auto& c = cells_[id];
        std::string out = X_.name(c.tau) + "/";
        for (int i = 0; i < n_; ++i) {
            bool nonempty = false;
            for (VertexIndex v : X_.simplex(c.tau)) nonempty = nonempty || X_.vertex(v).level == i;
            out += nonempty ? (((c.eps >> i) & 1u) ? '1' : '0') : '-';
        }
        return out;
    }

    /// Coboundary of a cell: add one vertex (or one apex) to one block.
    std::vector<CellTerm> coboundary(std::uint32_t id) const {
        const BlowupCell& c = cells_[id];
        std::vector<CellTerm> out;
        const Simplex& tau = X_.simplex(c.tau);
        int prefix = 0;  // total dimension of the blocks before i
        for (int i = 0; i <= n_; ++i) {
            const auto blk = block(c, i);
            if (i < n_ && !blk.empty() && !((c.eps >> i) & 1u)) {
                // apex comes last in its block
                const int sign = (prefix + static_cast<int>(blk.size())) % 2 == 0 ? 1 : -1;
                out.emplace_back(*find(c.tau, c.eps | (1u << i)), sign);
            }
            for (SimplexIndex up : X_.cofacets(c.tau)) {
                if (!in_scope_[up]) continue;
                const Simplex& us = X_.simplex(up);
                VertexIndex added = 0;
                for (std::size_t k = 0; k < us.size(); ++k)
                    if (k == tau.size() || us[k] != tau[k]) {
                        added = us[k];
                        break;
                    }
                if (X_.vertex(added).level != i) continue;
                int pos = 0;
                for (VertexIndex v : blk)
                    if (v < added) ++pos;
                std::uint32_t eps = c.eps;
                if (i < n_ && blk.empty()) eps |= 1u << i;  // {apex} grows to {v, apex}
                const int sign = (prefix + pos) % 2 == 0 ? 1 : -1;
                out.emplace_back(*find(up, eps), sign);
            }
            prefix += block_dim(c, i);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Tail degree sum_{i > l} dim F_i if F_l is apex free and nonempty,
    /// i.e. the cell survives de-coning at level l.
    std::optional<int> tail_degree(const BlowupCell& c, int l) const {
        if (block(c, l).empty() || ((c.eps >> l) & 1u)) return std::nullopt;
        int tail = 0;
        for (int i = l + 1; i <= n_; ++i) tail += block_dim(c, i);
        return tail;
    }

private:
    int compute_degree(const BlowupCell& c) const {
        int d = 0;
        for (int i = 0; i <= n_; ++i) d += block_dim(c, i);
        return d;
    }

    FilteredComplex X_;
    int n_;
    SimplexMask in_scope_;
    std::vector<BlowupCell> cells_;
    std::vector<std::vector<std::uint32_t>> by_degree_;
    std::vector<std::uint32_t> position_;
    std::map<std::pair<SimplexIndex, std::uint32_t>, std::uint32_t> index_;
};

template <class Ring>
FreeComplex<Ring> cochain_complex(const BlowupBasis& B, const Ring& R) {
    FreeComplex<Ring> C(R, Direction::Cohomological);
    C.labels.resize(B.degrees());
    for (std::size_t k = 0; k < B.degrees(); ++k)
        for (std::uint32_t id : B.of_degree(k)) C.labels[k].push_back(B.label(id));
    C.reset_differentials();
    for (std::size_t k = 0; k < B.degrees(); ++k)
        for (std::uint32_t id : B.of_degree(k)) {
            SparseVector<typename Ring::value_type> col;
            for (const auto& [target, sign] : B.coboundary(id)) col.push_back({B.position(target), R.from_int(sign)});
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            C.d[k].columns[B.position(id)] = std::move(col);
        }
    return C;
}

/// Tensor complex of one regular simplex.
template <class Ring>
FreeComplex<Ring> local_complex(const FilteredComplex& X, SimplexIndex sigma, const Ring& R) {
    return cochain_complex(BlowupBasis(X, sigma), R);
}

/// Restriction from the tensor complex of sigma to that of a regular face:
/// a basis tuple survives iff its simplex lies in the face.
template <class Ring>
SparseMatrix<typename Ring::value_type> restriction_matrix(const BlowupBasis& from, const BlowupBasis& to,
                                                           std::size_t k, const Ring& R) {
    SparseMatrix<typename Ring::value_type> M(k < to.degrees() ? to.of_degree(k).size() : 0, from.of_degree(k).size());
    for (std::uint32_t id : from.of_degree(k)) {
        const auto& c = from.cell(id);
        if (!to.in_scope(c.tau)) continue;
        auto target = to.find(c.tau, c.eps);
        if (target) M.columns[from.position(id)].push_back({to.position(*target), R.one()});
    }
    return M;
}

template <class Ring>
std::vector<SparseMatrix<typename Ring::value_type>> restriction_map(const FilteredComplex& X, SimplexIndex sigma,
                                                                     SimplexIndex face, const Ring& R) {
    const Simplex& s = X.simplex(sigma);
    const Simplex& f = X.simplex(face);
    if (!std::includes(s.begin(), s.end(), f.begin(), f.end()))
        throw Error(ErrorKind::NotAFace, X.name(face) + " is not a face of " + X.name(sigma));
    if (!X.is_regular(face)) throw Error(ErrorKind::NotRegular, X.name(face) + " is not regular");
    BlowupBasis from(X, sigma), to(X, face);
    std::vector<SparseMatrix<typename Ring::value_type>> out;
    for (std::size_t k = 0; k < from.degrees(); ++k) out.push_back(restriction_matrix(from, to, k, R));
    return out;
}

/// The inverse limit over all regular simplices, in the cell basis.
template <class Ring>
FreeComplex<Ring> global_complex(const FilteredComplex& X, const Ring& R) {
    return cochain_complex(BlowupBasis(X), R);
}

/// The inverse limit computed literally: the kernel of
/// (+)_sigma N_sigma -> (+)_(sigma, F) N_F, w -> res(w_sigma) - w_F over
/// regular facet pairs, with the componentwise differential.
template <class Ring>
struct KernelRoute {
    FreeComplex<Ring> product;                                // (+)_sigma of local complexes
    SubComplex<Ring> limit;                                   // kernel with induced differential
    std::vector<std::vector<std::pair<SimplexIndex, std::uint32_t>>> product_basis;  // (sigma, local cell id)
    std::vector<BlowupBasis> locals;
    std::vector<SimplexIndex> owners;
};

template <class Ring>
KernelRoute<Ring> global_complex_by_kernel(const FilteredComplex& X, const Ring& R) {
    using V = typename Ring::value_type;
    std::vector<SimplexIndex> regular;
    for (SimplexIndex s = 0; s < X.size(); ++s)
        if (X.is_regular(s)) regular.push_back(s);
    std::vector<BlowupBasis> locals;
    locals.reserve(regular.size());
    for (SimplexIndex s : regular) locals.emplace_back(X, s);
    std::map<SimplexIndex, std::size_t> slot;
    for (std::size_t i = 0; i < regular.size(); ++i) slot[regular[i]] = i;

    std::size_t top = 0;
    for (const auto& b : locals) top = std::max(top, b.degrees());
    std::vector<std::vector<std::pair<SimplexIndex, std::uint32_t>>> basis(top);
    std::vector<std::vector<std::size_t>> offset(top, std::vector<std::size_t>(regular.size(), 0));
    for (std::size_t k = 0; k < top; ++k)
        for (std::size_t i = 0; i < regular.size(); ++i) {
            offset[k][i] = basis[k].size();
            if (k < locals[i].degrees())
                for (std::uint32_t id : locals[i].of_degree(k)) basis[k].emplace_back(regular[i], id);
        }

    FreeComplex<Ring> P(R, Direction::Cohomological);
    P.labels.resize(top);
    for (std::size_t k = 0; k < top; ++k)
        for (const auto& [s, id] : basis[k]) P.labels[k].push_back(X.name(s) + ":" + locals[slot[s]].label(id));
    P.reset_differentials();
    for (std::size_t k = 0; k < top; ++k)
        for (std::size_t i = 0; i < regular.size(); ++i) {
            if (k >= locals[i].degrees()) continue;
            for (std::uint32_t id : locals[i].of_degree(k)) {
                SparseVector<V> col;
                for (const auto& [t, sign] : locals[i].coboundary(id))
                    col.push_back({static_cast<std::uint32_t>(offset[k + 1][i] + locals[i].position(t)), R.from_int(sign)});
                std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                P.d[k].columns[offset[k][i] + locals[i].position(id)] = std::move(col);
            }
        }

    std::vector<SparseMatrix<V>> kernels(top);
    for (std::size_t k = 0; k < top; ++k) {
        // rows: one block per regular facet pair (sigma, F)
        SparseMatrix<V> M(0, basis[k].size());
        std::vector<SparseVector<V>> cols(basis[k].size());
        std::uint32_t row = 0;
        for (std::size_t i = 0; i < regular.size(); ++i)
            for (SimplexIndex f : X.facets(regular[i])) {
                if (!X.is_regular(f)) continue;
                const std::size_t fi = slot.at(f);
                if (k >= locals[fi].degrees()) continue;
                auto res = restriction_matrix(locals[i], locals[fi], k, R);
                for (std::size_t c = 0; c < res.cols; ++c)
                    for (const auto& [r, v] : res.columns[c]) cols[offset[k][i] + c].push_back({row + r, v});
                for (std::uint32_t id : locals[fi].of_degree(k))
                    cols[offset[k][fi] + locals[fi].position(id)].push_back({row + locals[fi].position(id), R.neg(R.one())});
                row += static_cast<std::uint32_t>(locals[fi].of_degree(k).size());
            }
        M.rows = row;
        for (auto& c : cols) std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        M.columns = std::move(cols);
        M.cols = basis[k].size();
        kernels[k] = kernel_basis(R, M);
    }
    auto limit = subcomplex_from_generators(P, std::move(kernels));
    return {std::move(P), std::move(limit), std::move(basis), std::move(locals), std::move(regular)};
}

/// Column vector of a cell in the product (+)_sigma N_sigma: the tuple on every sigma containing tau.
template <class Ring>
SparseVector<typename Ring::value_type> cell_in_product(const KernelRoute<Ring>& route, const BlowupBasis& global,
                                                        std::uint32_t cell_id) {
    const auto& c = global.cell(cell_id);
    const auto k = static_cast<std::size_t>(c.degree);
    SparseVector<typename Ring::value_type> out;
    const auto& basis = route.product_basis[k];
    for (std::uint32_t j = 0; j < basis.size(); ++j) {
        const auto& [sigma, local_id] = basis[j];
        std::size_t slot = static_cast<std::size_t>(std::lower_bound(route.owners.begin(), route.owners.end(), sigma) -
                                                    route.owners.begin());
        const auto& lc = route.locals[slot].cell(local_id);
        if (lc.tau == c.tau && lc.eps == c.eps) out.push_back({j, route.limit.complex.ring.one()});
    }
    return out;
}

// --------------------------------------------------------------- cochains

/// A homogeneous element of the blown-up complex in the cell basis.
template <class V>
struct BlowupCochain {
    int degree = 0;
    std::map<std::uint32_t, V> coeffs;  // cell id -> coefficient
};

/// Per stratum: max tail degree over support cells surviving de-coning at
/// the stratum's level and sitting over it; kMinusInfinity if none (and on
/// regular strata).
template <class V>
std::vector<int> cochain_perverse_degree(const BlowupBasis& B, const BlowupCochain<V>& w) {
    const FilteredComplex& X = B.complex();
    std::vector<int> out(X.strata().size(), kMinusInfinity);
    for (const auto& [id, v] : w.coeffs) {
        const auto& c = B.cell(id);
        for (int l = 0; l < X.formal_dimension(); ++l) {
            auto tail = B.tail_degree(c, l);
            if (!tail) continue;
            const auto S = *X.stratum_met(c.tau, l);
            out[S] = std::max(out[S], *tail);
        }
    }
    return out;
}

/// Whether the cell can appear in a p-allowable cochain.
inline bool cell_allowed(const BlowupBasis& B, std::uint32_t id, const Perversity& p) {
    const FilteredComplex& X = B.complex();
    const auto& c = B.cell(id);
    for (int l = 0; l < X.formal_dimension(); ++l) {
        auto tail = B.tail_degree(c, l);
        if (tail && *tail > p(*X.stratum_met(c.tau, l))) return false;
    }
    return true;
}

template <class Ring>
struct BlowupPComplex {
    BlowupBasis basis;
    FreeComplex<Ring> ambient;
    SubComplex<Ring> sub;  // w and dw allowable
};

template <class Ring>
BlowupPComplex<Ring> blowup_p_complex(const FilteredComplex& X, const Perversity& p, const Ring& R) {
    if (!(p.complex() == X)) throw Error(ErrorKind::ComplexMismatch, "perversity belongs to another complex");
    BlowupBasis B(X);
    auto C = cochain_complex(B, R);
    std::vector<std::vector<char>> allowed(B.degrees());
    for (std::size_t k = 0; k < B.degrees(); ++k)
        for (std::uint32_t id : B.of_degree(k)) allowed[k].push_back(cell_allowed(B, id, p) ? 1 : 0);
    auto sub = subcomplex_with_induced_differential(C, allowed);
    return {std::move(B), std::move(C), std::move(sub)};
}

inline HomologySummary blowup_cohomology(const FilteredComplex& X, const Perversity& p, const Coefficients& coeff) {
    return visit_ring(coeff, [&](const auto& R) { return homology(blowup_p_complex(X, p, R).sub.complex); });
}

/// Product of two cells: +-(tau u upsilon, H) when every block satisfies
/// last(F_i) = first(G_i), otherwise nothing.
inline std::optional<CellTerm> cup_cells(const BlowupBasis& B, std::uint32_t a, std::uint32_t b) {
    const FilteredComplex& X = B.complex();
    const int n = X.formal_dimension();
    const auto& ca = B.cell(a);
    const auto& cb = B.cell(b);
    Simplex uni;
    std::set_union(X.simplex(ca.tau).begin(), X.simplex(ca.tau).end(), X.simplex(cb.tau).begin(),
                   X.simplex(cb.tau).end(), std::back_inserter(uni));
    auto u = X.find(uni);
    if (!u) return std::nullopt;
    constexpr std::int64_t kApex = -1;
    std::uint32_t eps = 0;
    for (int i = 0; i <= n; ++i) {
        auto fa = B.block(ca, i), fb = B.block(cb, i);
        const bool apex_a = i < n && (fa.empty() || ((ca.eps >> i) & 1u));
        const bool apex_b = i < n && (fb.empty() || ((cb.eps >> i) & 1u));
        const std::int64_t last_a = apex_a ? kApex : static_cast<std::int64_t>(fa.back());
        const std::int64_t first_b = fb.empty() ? kApex : static_cast<std::int64_t>(fb.front());
        if (last_a != first_b) return std::nullopt;
        const bool nonempty = !fa.empty() || !fb.empty();
        if (i < n && nonempty && apex_b) eps |= 1u << i;
    }
    int sign_exp = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < i; ++j) sign_exp += B.block_dim(ca, i) * B.block_dim(cb, j);
    auto id = B.find(*u, eps);
    if (!id) return std::nullopt;
    return CellTerm{*id, sign_exp % 2 == 0 ? 1 : -1};
}

template <class Ring>
BlowupCochain<typename Ring::value_type> cup(const BlowupBasis& B, const Ring& R,
                                             const BlowupCochain<typename Ring::value_type>& w,
                                             const BlowupCochain<typename Ring::value_type>& e) {
    BlowupCochain<typename Ring::value_type> out;
    out.degree = w.degree + e.degree;
    for (const auto& [a, va] : w.coeffs)
        for (const auto& [b, vb] : e.coeffs) {
            auto t = cup_cells(B, a, b);
            if (!t) continue;
            auto term = R.mul(R.from_int(t->second), R.mul(va, vb));
            auto [it, fresh] = out.coeffs.emplace(t->first, term);
            if (!fresh) it->second = R.add(it->second, term);
            if (R.is_zero(it->second)) out.coeffs.erase(it);
        }
    return out;
}

/// Cup product with an explicit pair of complexes, checked for equality.
template <class Ring>
BlowupCochain<typename Ring::value_type> cup(const BlowupBasis& B, const BlowupBasis& B2, const Ring& R,
                                             const BlowupCochain<typename Ring::value_type>& w,
                                             const BlowupCochain<typename Ring::value_type>& e) {
    if (!(B.complex() == B2.complex())) throw Error(ErrorKind::ComplexMismatch, "cochains live on different complexes");
    return cup(B, R, w, e);
}

template <class Ring>
BlowupCochain<typename Ring::value_type> unit_cochain(const BlowupBasis& B, const Ring& R) {
    BlowupCochain<typename Ring::value_type> out;
    if (B.degrees() > 0)
        for (std::uint32_t id : B.of_degree(0)) out.coeffs.emplace(id, R.one());
    return out;
}

template <class Ring>
BlowupCochain<typename Ring::value_type> coboundary(const BlowupBasis& B, const Ring& R,
                                                    const BlowupCochain<typename Ring::value_type>& w) {
    BlowupCochain<typename Ring::value_type> out;
    out.degree = w.degree + 1;
    for (const auto& [id, v] : w.coeffs)
        for (const auto& [t, sign] : B.coboundary(id)) {
            auto term = R.mul(R.from_int(sign), v);
            auto [it, fresh] = out.coeffs.emplace(t, term);
            if (!fresh) it->second = R.add(it->second, term);
            if (R.is_zero(it->second)) out.coeffs.erase(it);
        }
    return out;
}

/// Restriction of blown-up cochains from cone(L) to L, in cell bases: cells
/// over simplices of L go to the matching cell of L, cells containing the
/// cone apex go to zero.
template <class Ring>
std::vector<SparseMatrix<typename Ring::value_type>> cone_restriction(const BlowupBasis& cone_basis,
                                                                      const BlowupBasis& link_basis,
                                                                      const std::vector<VertexIndex>& vertex_image,
                                                                      const Ring& R) {
    const FilteredComplex& C = cone_basis.complex();
    const FilteredComplex& L = link_basis.complex();
    std::vector<VertexIndex> preimage(C.vertex_count(), static_cast<VertexIndex>(-1));
    for (VertexIndex v = 0; v < vertex_image.size(); ++v) preimage[vertex_image[v]] = v;
    std::vector<SparseMatrix<typename Ring::value_type>> out;
    for (std::size_t k = 0; k < cone_basis.degrees(); ++k) {
        SparseMatrix<typename Ring::value_type> M(k < link_basis.degrees() ? link_basis.of_degree(k).size() : 0,
                                                  cone_basis.of_degree(k).size());
        for (std::uint32_t id : cone_basis.of_degree(k)) {
            const auto& c = cone_basis.cell(id);
            Simplex image;
            bool inside = true;
            for (VertexIndex v : C.simplex(c.tau)) {
                if (preimage[v] == static_cast<VertexIndex>(-1)) {
                    inside = false;
                    break;
                }
                image.push_back(preimage[v]);
            }
            if (!inside) continue;
            std::sort(image.begin(), image.end());
            auto tau = L.find(image);
            if (!tau) continue;
            auto target = link_basis.find(*tau, c.eps >> 1);  // levels shift down by one
            if (target) M.columns[cone_basis.position(id)].push_back({link_basis.position(*target), R.one()});
        }
        out.push_back(std::move(M));
    }
    return out;
}

} // namespace ihc
