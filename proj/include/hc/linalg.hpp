#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hc/scalars.hpp"

namespace hc {

// Sorted (column, value) pairs, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

void sparse_normalize(SparseVec& v);            // sort, merge duplicates, drop zeros
SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y); // x + a*y

// Incremental row echelon form over a fixed number of columns. Pivot
// columns are the leading columns of inserted rows; the pivot set does not
// depend on insertion order (it is the set of columns not in the span of
// earlier columns).
class Echelon {
public:
    explicit Echelon(int ncols) : ncols_(ncols), pivot_of_col_(ncols, -1) {}

    // Reduces the row against existing pivots and keeps it if nonzero.
    // Returns the new pivot column, or -1 if the row was dependent.
    int add_row(SparseVec row);
    // Reduce a vector against the current pivots (without inserting).
    SparseVec reduce(SparseVec row) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }
    bool is_pivot(int col) const { return pivot_of_col_[col] >= 0; }
    std::vector<int> pivot_columns() const;

    // Bring the stored rows to reduced row echelon form.
    void make_reduced();
    // Kernel basis of the row space's matrix: one vector per free column,
    // with value 1 at that column. Calls make_reduced().
    std::vector<SparseVec> kernel_basis();
    // Solve for the row whose column index `rhs_col` holds the right-hand
    // side: rows were inserted as [A | b] with b at rhs_col (the last
    // column). Free variables are zero. Returns nullopt if inconsistent.
    std::optional<SparseVec> solve_augmented(int rhs_col) const;
    bool inconsistent() const { return inconsistent_; }
    void set_rhs_col(int c) { rhs_col_ = c; }

private:
    int ncols_;
    int rhs_col_ = -1;
    bool inconsistent_ = false;
    std::vector<SparseVec> rows_;      // leading coefficient normalized to 1
    std::vector<int> pivot_of_col_;    // row index or -1
};

// Exact determinant and rank of small dense matrices.
Rational determinant(std::vector<std::vector<Rational>> m);
int dense_rank(const std::vector<std::vector<Rational>>& m);

} // namespace hc
