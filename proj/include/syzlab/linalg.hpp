#ifndef SYZLAB_LINALG_HPP
#define SYZLAB_LINALG_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "syzlab/field.hpp"

namespace syzlab {

struct DenseMatrix {
    std::size_t n_rows = 0, n_cols = 0;
    std::vector<felt> a;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : n_rows(r), n_cols(c), a(r * c, 0) {}
    felt& at(std::size_t i, std::size_t j) { return a[i * n_cols + j]; }
    felt at(std::size_t i, std::size_t j) const { return a[i * n_cols + j]; }
};

// Row-compressed exact sparse matrix: per row a col-sorted list of nonzero
// entries, no duplicates, no stored zeros.
class SparseMatrix {
  public:
    using Entry = std::pair<std::uint32_t, felt>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : n_rows_(rows), n_cols_(cols), rows_(rows) {}

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }
    const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }
    std::size_t nnz() const;

    // entries may come in any order; duplicates and zeros are rejected
    void set(std::size_t row, std::size_t col, felt value);
    void finalize();  // sorts rows, checks invariants

    DenseMatrix to_dense() const;
    SparseMatrix transposed() const;

  private:
    std::size_t n_rows_ = 0, n_cols_ = 0;
    std::vector<std::vector<Entry>> rows_;
    bool finalized_ = false;
    friend std::size_t rank_sparse(const SparseMatrix&, const Field&, const struct SparseRankOptions&);
};

struct SparseRankOptions {
    // switch to a dense finish once the active submatrix exceeds this density
    double dense_switch_density = 0.20;
    // never allocate a dense finisher bigger than this many entries
    std::size_t dense_max_entries = 120000000;
};

// Structured Gaussian elimination with Markowitz-style pivoting.  Deterministic:
// pivots tie-break on lowest (row, col).
std::size_t rank_sparse(const SparseMatrix& m, const Field& F,
                        const SparseRankOptions& opt = SparseRankOptions{});

// Plain dense elimination, kept as an independent serial reference; shares no
// pivoting code with rank_sparse.
std::size_t rank_dense_oracle(DenseMatrix m, const Field& F);

// Basis of the right null space, canonical (one vector per free column of the
// reduced row echelon form, ascending).
std::vector<std::vector<felt>> kernel_basis(const SparseMatrix& m, const Field& F);

std::size_t rank_dense_kernel_count(const DenseMatrix& m, const Field& F);

// Expresses vectors in the span of a fixed list of row vectors; used to write
// section products in a chosen basis.
class RowBasisSolver {
  public:
    RowBasisSolver(const Field& F, const std::vector<std::vector<felt>>& basis_rows);
    // combo (size = number of basis rows) with sum combo[i]*basis[i] == target
    bool solve(const std::vector<felt>& target, std::vector<felt>& combo) const;
    std::size_t rank() const { return pivots_.size(); }

  private:
    const Field& F_;
    std::size_t width_ = 0, n_basis_ = 0;
    std::vector<std::vector<felt>> ech_;       // echelonized rows
    std::vector<std::vector<felt>> transform_; // ech_ = transform_ * basis
    std::vector<std::size_t> pivots_;          // pivot column per echelon row
};

}  // namespace syzlab

#endif
