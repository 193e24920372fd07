#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ihc/algebra/ring.hpp"
#include "ihc/algebra/sparse.hpp"

namespace ihc {

template <class V>
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<V> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, const V& fill) : rows(r), cols(c), data(r * c, fill) {}

    V& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const V& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

template <class Ring>
DenseMatrix<typename Ring::value_type> to_dense(const Ring& R, const SparseMatrix<typename Ring::value_type>& M) {
    DenseMatrix<typename Ring::value_type> D(M.rows, M.cols, R.zero());
    for (std::size_t j = 0; j < M.cols; ++j)
        for (const auto& [i, v] : M.columns[j]) D(i, j) = v;
    return D;
}

template <class Ring>
DenseMatrix<typename Ring::value_type> dense_identity(const Ring& R, std::size_t n) {
    DenseMatrix<typename Ring::value_type> D(n, n, R.zero());
    for (std::size_t i = 0; i < n; ++i) D(i, i) = R.one();
    return D;
}

template <class Ring>
DenseMatrix<typename Ring::value_type> dense_multiply(const Ring& R, const DenseMatrix<typename Ring::value_type>& A,
                                                      const DenseMatrix<typename Ring::value_type>& B) {
    DenseMatrix<typename Ring::value_type> C(A.rows, B.cols, R.zero());
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            if (R.is_zero(A(i, k))) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                if (!R.is_zero(B(k, j))) C(i, j) = R.add(C(i, j), R.mul(A(i, k), B(k, j)));
        }
    return C;
}

/// D = U * M * V with D diagonal, diagonal entries canonical and forming a
/// divisibility chain.
template <class T>
struct SmithForm {
    DenseMatrix<T> U, D, V;
    std::vector<T> diagonal;  // nonzero diagonal entries in order
};

namespace detail {

template <class Ring>
class SmithWorker {
public:
    using V = typename Ring::value_type;

    SmithWorker(const Ring& R, DenseMatrix<V> A, bool track)
        : R_(R), A_(std::move(A)), track_(track) {
        if (track_) {
            U_ = dense_identity(R_, A_.rows);
            W_ = dense_identity(R_, A_.cols);
        }
    }

    SmithForm<V> run() {
        const std::size_t m = A_.rows, n = A_.cols;
        std::vector<V> diag;
        for (std::size_t t = 0; t < std::min(m, n); ++t) {
            if (!move_smallest_to(t)) break;
            for (;;) {
                if (!clear_column(t) || !clear_row(t)) continue;
                // both cleared; enforce divisibility on the remaining block
                bool fixed = true;
                for (std::size_t i = t + 1; i < m && fixed; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (!R_.divides(A_(t, t), A_(i, j))) {
                            add_row(t, i, R_.one());
                            fixed = false;
                            break;
                        }
                if (fixed) break;
            }
            const V unit = R_.exact_div(R_.canonical(A_(t, t)), A_(t, t));
            scale_row(t, unit);
            diag.push_back(A_(t, t));
        }
        SmithForm<V> out;
        out.D = std::move(A_);
        out.diagonal = std::move(diag);
        if (track_) {
            out.U = std::move(U_);
            out.V = std::move(W_);
        }
        return out;
    }

private:
    // Brings the smallest nonzero entry of the trailing block to (t, t).
    bool move_smallest_to(std::size_t t) {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = t; i < A_.rows; ++i)
            for (std::size_t j = t; j < A_.cols; ++j)
                if (!R_.is_zero(A_(i, j)) && (!found || R_.smaller(A_(i, j), A_(bi, bj)))) {
                    bi = i;
                    bj = j;
                    found = true;
                }
        if (!found) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    // Returns false if a smaller remainder was swapped into the pivot.
    bool clear_column(std::size_t t) {
        for (std::size_t i = t + 1; i < A_.rows; ++i) {
            if (R_.is_zero(A_(i, t))) continue;
            const V q = R_.quotient(A_(i, t), A_(t, t));
            add_row(i, t, R_.neg(q));
            if (!R_.is_zero(A_(i, t))) {
                swap_rows(t, i);
                return false;
            }
        }
        return true;
    }

    bool clear_row(std::size_t t) {
        for (std::size_t j = t + 1; j < A_.cols; ++j) {
            if (R_.is_zero(A_(t, j))) continue;
            const V q = R_.quotient(A_(t, j), A_(t, t));
            add_col(j, t, R_.neg(q));
            if (!R_.is_zero(A_(t, j))) {
                swap_cols(t, j);
                return false;
            }
        }
        return true;
    }

    // row_dst += c * row_src
    void add_row(std::size_t dst, std::size_t src, const V& c) {
        for (std::size_t j = 0; j < A_.cols; ++j)
            if (!R_.is_zero(A_(src, j))) A_(dst, j) = R_.add(A_(dst, j), R_.mul(c, A_(src, j)));
        if (track_)
            for (std::size_t j = 0; j < U_.cols; ++j)
                if (!R_.is_zero(U_(src, j))) U_(dst, j) = R_.add(U_(dst, j), R_.mul(c, U_(src, j)));
    }

    void add_col(std::size_t dst, std::size_t src, const V& c) {
        for (std::size_t i = 0; i < A_.rows; ++i)
            if (!R_.is_zero(A_(i, src))) A_(i, dst) = R_.add(A_(i, dst), R_.mul(c, A_(i, src)));
        if (track_)
            for (std::size_t i = 0; i < W_.rows; ++i)
                if (!R_.is_zero(W_(i, src))) W_(i, dst) = R_.add(W_(i, dst), R_.mul(c, W_(i, src)));
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < A_.cols; ++j) std::swap(A_(a, j), A_(b, j));
        if (track_)
            for (std::size_t j = 0; j < U_.cols; ++j) std::swap(U_(a, j), U_(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < A_.rows; ++i) std::swap(A_(i, a), A_(i, b));
        if (track_)
            for (std::size_t i = 0; i < W_.rows; ++i) std::swap(W_(i, a), W_(i, b));
    }

    void scale_row(std::size_t t, const V& unit) {
        for (std::size_t j = 0; j < A_.cols; ++j) A_(t, j) = R_.mul(unit, A_(t, j));
        if (track_)
            for (std::size_t j = 0; j < U_.cols; ++j) U_(t, j) = R_.mul(unit, U_(t, j));
    }

    Ring R_;
    DenseMatrix<V> A_;
    DenseMatrix<V> U_, W_;
    bool track_;
};

} // namespace detail

template <class Ring>
SmithForm<typename Ring::value_type> smith_normal_form(const Ring& R, const DenseMatrix<typename Ring::value_type>& M,
                                                       bool with_transforms = true) {
    return detail::SmithWorker<Ring>(R, M, with_transforms).run();
}

template <class Ring>
SmithForm<typename Ring::value_type> smith_normal_form(const Ring& R, const SparseMatrix<typename Ring::value_type>& M,
                                                       bool with_transforms = true) {
    return smith_normal_form(R, to_dense(R, M), with_transforms);
}

} // namespace ihc
