#pragma once

#include <vector>

#include "pompeiu/scalar.hpp"

namespace pompeiu {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;  // rows

namespace detail {

// Scales a row so every entry is a Gaussian integer. Row scaling preserves
// rank; Bareiss then stays in the subring throughout.
inline void clear_denominators(Vec& row) {
    mpz_class l(1);
    for (const Scalar& s : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.real().get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.imag().get_den().get_mpz_t());
    }
    if (l == 1) return;
    Scalar f((Rational(l)));
    for (Scalar& s : row) s *= f;
}

} // namespace detail

// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled to
// Gaussian-integer entries; every division in the sweep is then exact in that
// subring, so intermediate values are minors rather than accumulated
// fractions.
inline int rank_bareiss(Mat m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    for (auto& row : m) detail::clear_denominators(row);

    Scalar prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = Scalar(0);
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

// In-place reduced row echelon form. Returns the pivot columns in ascending
// order; zero rows sink to the bottom.
inline std::vector<std::size_t> rref(Mat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Scalar inv = Scalar(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Canonical kernel basis of the row system m*x = 0: one vector per free
// column (ascending), carrying 1 there, minus the pivot-row entries at the
// pivot columns, and 0 at every other free column.
inline std::vector<Vec> nullspace(Mat m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (auto c : pivots) is_pivot[c] = 1;

    std::vector<Vec> basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(cols, Scalar(0));
        v[fc] = Scalar(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline int rank_of(const std::vector<Vec>& vectors) {
    return rank_bareiss(Mat(vectors.begin(), vectors.end()));
}

// Row space maintained in reduced form for cheap repeated membership tests;
// each accepted row costs O(rank * cols) instead of a fresh elimination.
class IncrementalRowSpace {
public:
    // Reduces v against the basis; absorbs it and returns true when it was
    // outside the span, returns false when it reduced to zero.
    bool add(Vec v) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Scalar c = v[pivots_[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rows_[i][j];
        }
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) return false;
        Scalar inv = Scalar(1) / v[p];
        for (auto& x : v) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Scalar c = rows_[i][p];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j) rows_[i][j] -= c * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    bool contains(Vec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Scalar c = v[pivots_[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rows_[i][j];
        }
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    const Mat& rows() const { return rows_; }

private:
    Mat rows_;
    std::vector<std::size_t> pivots_;
};

// True iff the two vector families span the same subspace.
inline bool span_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() && b.empty()) return true;
    Mat both(a.begin(), a.end());
    both.insert(both.end(), b.begin(), b.end());
    int ra = rank_of(a);
    int rb = rank_of(b);
    return ra == rb && ra == rank_bareiss(std::move(both));
}

// True iff v lies in the span of the family.
inline bool in_span(const std::vector<Vec>& family, const Vec& v) {
    int r = rank_of(family);
    Mat m(family.begin(), family.end());
    m.push_back(v);
    return rank_bareiss(std::move(m)) == r;
}

} // namespace pompeiu
