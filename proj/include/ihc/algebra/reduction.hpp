#pragma once

// Column echelon reduction by unimodular column operations. Over Z every
// step has determinant +-1, so the nonzero reduced columns form a basis of
// the column lattice and the transform columns of the zero columns form a
// saturated basis of the kernel lattice.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ihc/algebra/ring.hpp"
#include "ihc/algebra/smith.hpp"
#include "ihc/algebra/sparse.hpp"

namespace ihc {

template <class V>
struct ColumnReduction {
    SparseMatrix<V> reduced;    // M * transform
    SparseMatrix<V> transform;  // unimodular, empty if not tracked
    std::vector<std::int64_t> owner;  // row -> column whose lowest entry sits there, or -1
    std::size_t rank = 0;
};

template <class V>
std::int64_t low(const SparseVector<V>& x) {
    return x.empty() ? -1 : static_cast<std::int64_t>(x.back().first);
}

template <class Ring>
ColumnReduction<typename Ring::value_type> column_reduce(const Ring& R, const SparseMatrix<typename Ring::value_type>& M,
                                                         bool track = true) {
    using V = typename Ring::value_type;
    ColumnReduction<V> out;
    out.reduced = M;
    if (track) out.transform = SparseMatrix<V>::identity(M.cols, R.one());
    out.owner.assign(M.rows, -1);
    auto& cols = out.reduced.columns;
    auto& T = out.transform.columns;

    for (std::size_t j = 0; j < M.cols; ++j) {
        while (!cols[j].empty()) {
            const auto r = static_cast<std::size_t>(low(cols[j]));
            const std::int64_t i = out.owner[r];
            if (i < 0) {
                out.owner[r] = static_cast<std::int64_t>(j);
                ++out.rank;
                break;
            }
            const V a = cols[i].back().second;
            const V b = cols[j].back().second;
            if (R.divides(a, b)) {
                const V q = R.neg(R.exact_div(b, a));
                cols[j] = combine(R, R.one(), cols[j], q, cols[i]);
                if (track) T[j] = combine(R, R.one(), T[j], q, T[i]);
            } else if (R.divides(b, a)) {
                // swap the roles so that column i keeps the smaller pivot
                const V q = R.neg(R.exact_div(a, b));
                auto new_j = combine(R, R.one(), cols[i], q, cols[j]);
                cols[i] = std::move(cols[j]);
                cols[j] = std::move(new_j);
                if (track) {
                    auto new_tj = combine(R, R.one(), T[i], q, T[j]);
                    T[i] = std::move(T[j]);
                    T[j] = std::move(new_tj);
                }
            } else {
                const auto bz = R.gcdext(a, b);
                const V ag = R.exact_div(a, bz.g), bg = R.neg(R.exact_div(b, bz.g));
                auto new_i = combine(R, bz.s, cols[i], bz.t, cols[j]);
                auto new_j = combine(R, bg, cols[i], ag, cols[j]);
                cols[i] = std::move(new_i);
                cols[j] = std::move(new_j);
                if (track) {
                    auto ti = combine(R, bz.s, T[i], bz.t, T[j]);
                    auto tj = combine(R, bg, T[i], ag, T[j]);
                    T[i] = std::move(ti);
                    T[j] = std::move(tj);
                }
            }
        }
    }
    return out;
}

template <class Ring>
std::size_t rank_of(const Ring& R, const SparseMatrix<typename Ring::value_type>& M) {
    return column_reduce(R, M, false).rank;
}

/// Saturated basis (columns) of {x : M x = 0}.
template <class Ring>
SparseMatrix<typename Ring::value_type> kernel_basis(const Ring& R, const SparseMatrix<typename Ring::value_type>& M) {
    auto red = column_reduce(R, M, true);
    SparseMatrix<typename Ring::value_type> K(M.cols, 0);
    for (std::size_t j = 0; j < M.cols; ++j)
        if (red.reduced.columns[j].empty()) K.columns.push_back(std::move(red.transform.columns[j]));
    K.cols = K.columns.size();
    return K;
}

/// Basis (columns) of the lattice spanned by the columns of M.
template <class Ring>
SparseMatrix<typename Ring::value_type> image_basis(const Ring& R, const SparseMatrix<typename Ring::value_type>& M) {
    auto red = column_reduce(R, M, false);
    SparseMatrix<typename Ring::value_type> B(M.rows, 0);
    for (auto& c : red.reduced.columns)
        if (!c.empty()) B.columns.push_back(std::move(c));
    B.cols = B.columns.size();
    return B;
}

/// A free submodule given by linearly independent columns, with a solver
/// for coordinates of vectors in it.
template <class Ring>
class LatticeBasis {
public:
    using V = typename Ring::value_type;

    LatticeBasis(const Ring& R, SparseMatrix<V> basis) : R_(R), basis_(std::move(basis)) {
        auto red = column_reduce(R, basis_, true);
        if (red.rank != basis_.cols) throw Error(ErrorKind::BadParam, "lattice generators are linearly dependent");
        echelon_ = std::move(red.reduced);
        transform_ = std::move(red.transform);
        owner_ = std::move(red.owner);
    }

    const SparseMatrix<V>& basis() const { return basis_; }
    std::size_t size() const { return basis_.cols; }
    std::size_t ambient() const { return basis_.rows; }

    /// Coordinates c with basis * c = y, or nullopt if y is outside the lattice.
    std::optional<SparseVector<V>> coordinates(SparseVector<V> y) const {
        std::map<std::uint32_t, V> echelon_coords;
        while (!y.empty()) {
            const auto r = static_cast<std::size_t>(low(y));
            if (r >= owner_.size() || owner_[r] < 0) return std::nullopt;
            const auto j = static_cast<std::uint32_t>(owner_[r]);
            const V& pivot = echelon_.columns[j].back().second;
            if (!R_.divides(pivot, y.back().second)) return std::nullopt;
            const V c = R_.exact_div(y.back().second, pivot);
            y = combine(R_, R_.one(), y, R_.neg(c), echelon_.columns[j]);
            echelon_coords.emplace(j, c);
        }
        SparseVector<V> e(echelon_coords.begin(), echelon_coords.end());
        return apply(R_, transform_, e);
    }

    bool contains(const SparseVector<V>& y) const { return coordinates(y).has_value(); }

private:
    Ring R_;
    SparseMatrix<V> basis_, echelon_, transform_;
    std::vector<std::int64_t> owner_;
};

/// Nonzero elementary divisors of M in canonical form, ascending along the
/// divisibility chain. Unit pivots are removed by sparse elimination first;
/// the remaining block goes through dense Smith normal form.
template <class Ring>
std::vector<typename Ring::value_type> elementary_divisors(const Ring& R,
                                                           const SparseMatrix<typename Ring::value_type>& M) {
    using V = typename Ring::value_type;
    std::vector<std::map<std::uint32_t, V>> cols(M.cols);
    std::vector<std::set<std::uint32_t>> rows(M.rows);
    for (std::uint32_t j = 0; j < M.cols; ++j)
        for (const auto& [i, v] : M.columns[j]) {
            cols[j].emplace(i, v);
            rows[i].insert(j);
        }
    std::vector<char> col_alive(M.cols, 1), row_alive(M.rows, 1);
    std::size_t units = 0;

    for (;;) {
        // Markowitz choice among unit entries
        std::int64_t best_r = -1, best_c = -1;
        std::size_t best_cost = 0;
        for (std::uint32_t j = 0; j < M.cols; ++j) {
            if (!col_alive[j]) continue;
            for (const auto& [i, v] : cols[j]) {
                if (!R.is_unit(v)) continue;
                const std::size_t cost = (rows[i].size() - 1) * (cols[j].size() - 1);
                if (best_r < 0 || cost < best_cost) {
                    best_r = i;
                    best_c = j;
                    best_cost = cost;
                }
            }
        }
        if (best_r < 0) break;
        const auto pr = static_cast<std::uint32_t>(best_r);
        const auto pc = static_cast<std::uint32_t>(best_c);
        const V inv = R.exact_div(R.one(), cols[pc].at(pr));
        const std::vector<std::uint32_t> others(rows[pr].begin(), rows[pr].end());
        for (std::uint32_t c : others) {
            if (c == pc) continue;
            const V f = R.neg(R.mul(cols[c].at(pr), inv));
            // col_c += f * col_pc, which clears (pr, c)
            for (const auto& [i, v] : cols[pc]) {
                auto it = cols[c].find(i);
                V nv = it == cols[c].end() ? R.mul(f, v) : R.add(it->second, R.mul(f, v));
                if (R.is_zero(nv)) {
                    if (it != cols[c].end()) cols[c].erase(it);
                    rows[i].erase(c);
                } else if (it == cols[c].end()) {
                    cols[c].emplace(i, std::move(nv));
                    rows[i].insert(c);
                } else {
                    it->second = std::move(nv);
                }
            }
        }
        // the pivot row is now a unit vector; row operations clear the rest
        // of the pivot column without touching anything else
        for (const auto& [i, v] : cols[pc]) rows[i].erase(pc);
        cols[pc].clear();
        for (std::uint32_t c : rows[pr]) cols[c].erase(pr);
        rows[pr].clear();
        col_alive[pc] = 0;
        row_alive[pr] = 0;
        ++units;
    }

    std::vector<std::uint32_t> live_rows, live_cols;
    for (std::uint32_t i = 0; i < M.rows; ++i)
        if (!rows[i].empty()) live_rows.push_back(i);
    for (std::uint32_t j = 0; j < M.cols; ++j)
        if (!cols[j].empty()) live_cols.push_back(j);

    std::vector<V> out(units, R.one());
    if (!live_cols.empty()) {
        std::map<std::uint32_t, std::size_t> row_pos;
        for (std::size_t k = 0; k < live_rows.size(); ++k) row_pos[live_rows[k]] = k;
        DenseMatrix<V> D(live_rows.size(), live_cols.size(), R.zero());
        for (std::size_t k = 0; k < live_cols.size(); ++k)
            for (const auto& [i, v] : cols[live_cols[k]]) D(row_pos.at(i), k) = v;
        auto snf = smith_normal_form(R, D, false);
        for (auto& d : snf.diagonal) out.push_back(std::move(d));
    }
    return out;
}

} // namespace ihc
