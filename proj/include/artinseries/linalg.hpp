/// Exact dense and sparse linear algebra over a field.
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "artinseries/field.hpp"

namespace artin {

template <typename K>
using Vec = std::vector<K>;

/// Sparse row: (index, coefficient) pairs sorted by index, no zeros.
template <typename K>
using SparseVec = std::vector<std::pair<std::size_t, K>>;

template <typename K>
SparseVec<K> to_sparse(const Vec<K>& v) {
    SparseVec<K> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) s.emplace_back(i, v[i]);
    return s;
}

template <typename K>
Vec<K> to_dense(const SparseVec<K>& s, std::size_t n) {
    Vec<K> v(n, K(0));
    for (const auto& [i, c] : s) v[i] = c;
    return v;
}

/// a - c * b, sparse merge.
template <typename K>
SparseVec<K> sparse_axpy(const SparseVec<K>& a, const K& c, const SparseVec<K>& b) {
    SparseVec<K> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            K v = -(c * b[j].second);
            if (!is_zero(v)) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            K v = a[i].second - c * b[j].second;
            if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/// Incremental row-echelon span with sparse rows, keyed by pivot index.
template <typename K>
class Echelon {
public:
    /// Reduce v until its leading index is not a pivot (empty iff v is in the span).
    SparseVec<K> reduce(SparseVec<K> v) const {
        while (!v.empty()) {
            auto it = rows_.find(v.front().first);
            if (it == rows_.end()) return v;
            v = sparse_axpy(v, v.front().second, it->second);
        }
        return v;
    }

    /// Insert v into the span; returns true if the rank grew.
    bool insert(SparseVec<K> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        K lead = v.front().second;
        if (!is_one(lead))
            for (auto& [i, c] : v) c = c / lead;
        std::size_t piv = v.front().first;
        rows_.emplace(piv, std::move(v));
        return true;
    }

    bool contains(const SparseVec<K>& v) const { return reduce(v).empty(); }
    bool contains_dense(const Vec<K>& v) const { return contains(to_sparse(v)); }

    std::size_t rank() const { return rows_.size(); }
    const std::map<std::size_t, SparseVec<K>>& rows() const { return rows_; }

private:
    std::map<std::size_t, SparseVec<K>> rows_;
};

/// Dense matrix in row-major layout.
template <typename K>
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t r, std::size_t c, K fill = K(0)) : rows_(r), cols_(c), a_(r * c, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec<K> apply(const Vec<K>& x) const {
        Vec<K> y(rows_, K(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            K acc(0);
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(a_[i * cols_ + j])) acc += a_[i * cols_ + j] * x[j];
            y[i] = acc;
        }
        return y;
    }

private:
    std::size_t rows_, cols_;
    std::vector<K> a_;
};

/// Gaussian elimination over the column span of a matrix. Tracks each reduced
/// column as a combination of the original columns, which makes kernel
/// vectors and solutions of  sum_j x_j col_j = b  directly available.
template <typename K>
class LinearSolver {
public:
    LinearSolver(std::vector<Vec<K>> columns, std::size_t nrows) : nrows_(nrows) {
        const std::size_t n = columns.size();
        for (std::size_t j = 0; j < n; ++j) {
            Vec<K> v = std::move(columns[j]);
            Vec<K> combo(n, K(0));
            combo[j] = K(1);
            reduce_in_place(v, combo);
            std::size_t pr = first_nonzero(v);
            if (pr == nrows_) {
                kernel_.push_back(std::move(combo));
                continue;
            }
            K inv = K(1) / v[pr];
            scale(v, inv);
            scale(combo, inv);
            pivots_.push_back(Pivot{pr, std::move(v), std::move(combo)});
        }
    }

    std::size_t rank() const { return pivots_.size(); }
    const std::vector<Vec<K>>& kernel_basis() const { return kernel_; }

    /// One x with sum_j x_j col_j = b, if any.
    std::optional<Vec<K>> solve(const Vec<K>& b) const {
        Vec<K> r = b;
        Vec<K> x(ncols(), K(0));
        for (const Pivot& p : pivots_) {
            if (is_zero(r[p.row])) continue;
            K c = r[p.row];
            for (std::size_t i = 0; i < nrows_; ++i)
                if (!is_zero(p.v[i])) r[i] -= c * p.v[i];
            for (std::size_t j = 0; j < x.size(); ++j)
                if (!is_zero(p.combo[j])) x[j] += c * p.combo[j];
        }
        for (const K& ri : r)
            if (!is_zero(ri)) return std::nullopt;
        return x;
    }

    bool in_span(const Vec<K>& b) const { return solve(b).has_value(); }

private:
    struct Pivot {
        std::size_t row;
        Vec<K> v;
        Vec<K> combo;
    };

    std::size_t ncols() const {
        return pivots_.empty() ? (kernel_.empty() ? 0 : kernel_[0].size()) : pivots_[0].combo.size();
    }

    void reduce_in_place(Vec<K>& v, Vec<K>& combo) const {
        for (const Pivot& p : pivots_) {
            if (is_zero(v[p.row])) continue;
            K c = v[p.row];
            for (std::size_t i = 0; i < nrows_; ++i)
                if (!is_zero(p.v[i])) v[i] -= c * p.v[i];
            for (std::size_t j = 0; j < combo.size(); ++j)
                if (!is_zero(p.combo[j])) combo[j] -= c * p.combo[j];
        }
    }

    static void scale(Vec<K>& v, const K& c) {
        for (K& x : v)
            if (!is_zero(x)) x = x * c;
    }

    static std::size_t first_nonzero(const Vec<K>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!is_zero(v[i])) return i;
        return v.size();
    }

    std::size_t nrows_;
    std::vector<Pivot> pivots_;
    std::vector<Vec<K>> kernel_;
};

}  // namespace artin
