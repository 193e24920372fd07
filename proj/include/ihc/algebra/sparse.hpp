#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace ihc {

/// Sorted (index, value) pairs with no stored zeros.
template <class V>
using SparseVector = std::vector<std::pair<std::uint32_t, V>>;

/// Column-major sparse matrix.
template <class V>
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SparseVector<V>> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    static SparseMatrix identity(std::size_t n, const V& one) {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.columns[i].push_back({static_cast<std::uint32_t>(i), one});
        return m;
    }

    std::size_t nonzeros() const {
        std::size_t total = 0;
        for (const auto& c : columns) total += c.size();
        return total;
    }

    bool is_zero() const {
        return std::all_of(columns.begin(), columns.end(), [](const auto& c) { return c.empty(); });
    }
};

/// Returns `a*x + b*y`.
template <class Ring>
SparseVector<typename Ring::value_type> combine(const Ring& R, const typename Ring::value_type& a,
                                                const SparseVector<typename Ring::value_type>& x,
                                                const typename Ring::value_type& b,
                                                const SparseVector<typename Ring::value_type>& y) {
    using V = typename Ring::value_type;
    SparseVector<V> out;
    out.reserve(x.size() + y.size());
    const bool a_zero = R.is_zero(a), b_zero = R.is_zero(b);
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            if (!a_zero) out.push_back({x[i].first, R.mul(a, x[i].second)});
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            if (!b_zero) out.push_back({y[j].first, R.mul(b, y[j].second)});
            ++j;
        } else {
            V v = R.add(R.mul(a, x[i].second), R.mul(b, y[j].second));
            if (!R.is_zero(v)) out.push_back({x[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

/// In place `y += a*x`.
template <class Ring>
void add_scaled(const Ring& R, SparseVector<typename Ring::value_type>& y, const typename Ring::value_type& a,
                const SparseVector<typename Ring::value_type>& x) {
    if (R.is_zero(a) || x.empty()) return;
    y = combine(R, R.one(), y, a, x);
}

template <class Ring>
SparseVector<typename Ring::value_type> scaled(const Ring& R, const typename Ring::value_type& a,
                                               const SparseVector<typename Ring::value_type>& x) {
    SparseVector<typename Ring::value_type> out;
    if (R.is_zero(a)) return out;
    out.reserve(x.size());
    for (const auto& [i, v] : x) {
        auto w = R.mul(a, v);
        if (!R.is_zero(w)) out.push_back({i, std::move(w)});
    }
    return out;
}

template <class V>
const V* find_entry(const SparseVector<V>& x, std::uint32_t index) {
    auto it = std::lower_bound(x.begin(), x.end(), index, [](const auto& e, std::uint32_t i) { return e.first < i; });
    if (it == x.end() || it->first != index) return nullptr;
    return &it->second;
}

/// M * x
template <class Ring>
SparseVector<typename Ring::value_type> apply(const Ring& R, const SparseMatrix<typename Ring::value_type>& M,
                                              const SparseVector<typename Ring::value_type>& x) {
    using V = typename Ring::value_type;
    std::vector<V> dense(M.rows, R.zero());
    std::vector<char> touched(M.rows, 0);
    for (const auto& [j, xj] : x)
        for (const auto& [i, m] : M.columns[j]) {
            dense[i] = R.add(dense[i], R.mul(m, xj));
            touched[i] = 1;
        }
    SparseVector<V> out;
    for (std::uint32_t i = 0; i < M.rows; ++i)
        if (touched[i] && !R.is_zero(dense[i])) out.push_back({i, std::move(dense[i])});
    return out;
}

/// A * B
template <class Ring>
SparseMatrix<typename Ring::value_type> multiply(const Ring& R, const SparseMatrix<typename Ring::value_type>& A,
                                                 const SparseMatrix<typename Ring::value_type>& B) {
    SparseMatrix<typename Ring::value_type> C(A.rows, B.cols);
    for (std::size_t j = 0; j < B.cols; ++j) C.columns[j] = apply(R, A, B.columns[j]);
    return C;
}

template <class V>
SparseMatrix<V> transpose(const SparseMatrix<V>& M) {
    SparseMatrix<V> T(M.cols, M.rows);
    for (std::uint32_t j = 0; j < M.cols; ++j)
        for (const auto& [i, v] : M.columns[j]) T.columns[i].push_back({j, v});
    return T;
}

template <class Ring>
SparseMatrix<typename Ring::value_type> scaled(const Ring& R, const typename Ring::value_type& a,
                                               const SparseMatrix<typename Ring::value_type>& M) {
    SparseMatrix<typename Ring::value_type> out(M.rows, M.cols);
    for (std::size_t j = 0; j < M.cols; ++j) out.columns[j] = scaled(R, a, M.columns[j]);
    return out;
}

template <class V>
bool operator==(const SparseMatrix<V>& a, const SparseMatrix<V>& b) {
    return a.rows == b.rows && a.cols == b.cols && a.columns == b.columns;
}

/// Keeps only the rows whose `keep` flag is set, renumbered densely.
template <class V>
SparseMatrix<V> select_rows(const SparseMatrix<V>& M, const std::vector<char>& keep) {
    std::vector<std::uint32_t> renumber(M.rows, 0);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < M.rows; ++i)
        if (keep[i]) renumber[i] = next++;
    SparseMatrix<V> out(next, M.cols);
    for (std::size_t j = 0; j < M.cols; ++j)
        for (const auto& [i, v] : M.columns[j])
            if (keep[i]) out.columns[j].push_back({renumber[i], v});
    return out;
}

template <class V>
SparseMatrix<V> select_columns(const SparseMatrix<V>& M, const std::vector<std::uint32_t>& which) {
    SparseMatrix<V> out(M.rows, which.size());
    for (std::size_t j = 0; j < which.size(); ++j) out.columns[j] = M.columns[which[j]];
    return out;
}

template <class V>
SparseMatrix<V> hstack(const SparseMatrix<V>& a, const SparseMatrix<V>& b) {
    SparseMatrix<V> out(a.rows, a.cols + b.cols);
    std::copy(a.columns.begin(), a.columns.end(), out.columns.begin());
    std::copy(b.columns.begin(), b.columns.end(), out.columns.begin() + a.cols);
    return out;
}

} // namespace ihc
