#include "hc/linalg.hpp"

#include <algorithm>

namespace hc {

void sparse_normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return sgn(e.second) == 0; }),
              out.end());
    v = std::move(out);
}

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    Rational t;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, a * y[j].second);
            ++j;
        } else {
            t = x[i].second + a * y[j].second;
            if (sgn(t) != 0) out.emplace_back(x[i].first, t);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec Echelon::reduce(SparseVec row) const {
    // Eliminate every entry that sits on a pivot column, left to right.
    size_t pos = 0;
    while (pos < row.size()) {
        int c = row[pos].first;
        int r = pivot_of_col_[c];
        if (r < 0) {
            ++pos;
            continue;
        }
        Rational f = -row[pos].second;
        row = sparse_axpy(row, f, rows_[r]);
        // entries before pos are unchanged (pivot rows start at c)
    }
    return row;
}

int Echelon::add_row(SparseVec row) {
    // Only the leading entry must be new; reduce leading entries until a
    // non-pivot column leads.
    while (!row.empty()) {
        int c = row.front().first;
        int r = pivot_of_col_[c];
        if (r < 0) break;
        Rational f = -row.front().second;
        row = sparse_axpy(row, f, rows_[r]);
    }
    if (row.empty()) return -1;
    int c = row.front().first;
    if (c == rhs_col_) {
        inconsistent_ = true;
        return -1;
    }
    Rational inv = 1 / row.front().second;
    for (auto& e : row) e.second *= inv;
    pivot_of_col_[c] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    return c;
}

std::vector<int> Echelon::pivot_columns() const {
    std::vector<int> out;
    for (int c = 0; c < ncols_; ++c)
        if (pivot_of_col_[c] >= 0) out.push_back(c);
    return out;
}

void Echelon::make_reduced() {
    std::vector<int> piv = pivot_columns();
    // Later pivots first, so each row only meets already-reduced rows.
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        int r = pivot_of_col_[*it];
        SparseVec row = std::move(rows_[r]);
        size_t pos = 1;
        while (pos < row.size()) {
            int c = row[pos].first;
            int pr = pivot_of_col_[c];
            if (pr < 0 || pr == r) {
                ++pos;
                continue;
            }
            Rational f = -row[pos].second;
            row = sparse_axpy(row, f, rows_[pr]);
        }
        rows_[r] = std::move(row);
    }
}

std::vector<SparseVec> Echelon::kernel_basis() {
    make_reduced();
    std::vector<SparseVec> by_free(ncols_);
    for (const auto& row : rows_) {
        int p = row.front().first;
        for (size_t k = 1; k < row.size(); ++k)
            by_free[row[k].first].emplace_back(p, -row[k].second);
    }
    std::vector<SparseVec> out;
    for (int f = 0; f < ncols_; ++f) {
        if (pivot_of_col_[f] >= 0 || f == rhs_col_) continue;
        SparseVec v = std::move(by_free[f]);
        v.emplace_back(f, Rational(1));
        sparse_normalize(v);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<SparseVec> Echelon::solve_augmented(int rhs_col) const {
    if (inconsistent_) return std::nullopt;
    // Each pivot row reads x_c + sum_j a_j x_j = b (b stored at rhs_col).
    std::vector<Rational> x(ncols_);
    std::vector<int> piv = pivot_columns();
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        const SparseVec& row = rows_[pivot_of_col_[*it]];
        Rational v = 0;
        for (size_t k = 1; k < row.size(); ++k) {
            int c = row[k].first;
            if (c == rhs_col) v += row[k].second;
            else if (sgn(x[c]) != 0) v -= row[k].second * x[c];
        }
        x[*it] = v;
    }
    SparseVec out;
    for (int c = 0; c < ncols_; ++c)
        if (c != rhs_col && sgn(x[c]) != 0) out.emplace_back(c, x[c]);
    return out;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

int dense_rank(const std::vector<std::vector<Rational>>& m) {
    if (m.empty()) return 0;
    Echelon e(static_cast<int>(m[0].size()));
    for (const auto& row : m) {
        SparseVec v;
        for (size_t c = 0; c < row.size(); ++c)
            if (sgn(row[c]) != 0) v.emplace_back(static_cast<int>(c), row[c]);
        e.add_row(std::move(v));
    }
    return e.rank();
}

} // namespace hc
