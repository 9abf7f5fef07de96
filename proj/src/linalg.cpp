#include "syzlab/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "syzlab/errors.hpp"
#include "syzlab/parallel.hpp"

namespace syzlab {

std::size_t SparseMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

void SparseMatrix::set(std::size_t row, std::size_t col, felt value) {
    if (row >= n_rows_ || col >= n_cols_) throw std::out_of_range("sparse entry out of range");
    if (value == 0) return;
    rows_[row].emplace_back(static_cast<std::uint32_t>(col), value);
    finalized_ = false;
}

void SparseMatrix::finalize() {
    for (auto& r : rows_) {
        std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < r.size(); ++i) {
            if (r[i].first == r[i - 1].first) throw std::invalid_argument("duplicate sparse entry");
        }
    }
    finalized_ = true;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(n_rows_, n_cols_);
    for (std::size_t i = 0; i < n_rows_; ++i)
        for (const auto& [c, v] : rows_[i]) d.at(i, c) = v;
    return d;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix t(n_cols_, n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i)
        for (const auto& [c, v] : rows_[i]) t.set(c, i, v);
    t.finalize();
    return t;
}

namespace {

using Row = std::vector<SparseMatrix::Entry>;

// new_row = row - coef * pivot_row (two-pointer merge of col-sorted rows)
Row merge_eliminate(const Field& F, const Row& row, const Row& pivot_row, felt coef,
                    std::uint32_t pivot_col) {
    Row out;
    out.reserve(row.size() + pivot_row.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot_row.size()) {
        if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || pivot_row[j].first < row[i].first) {
            felt v = F.neg(F.mul(coef, pivot_row[j].second));
            if (v) out.emplace_back(pivot_row[j].first, v);
            ++j;
        } else {
            felt v = F.sub(row[i].second, F.mul(coef, pivot_row[j].second));
            if (v) out.emplace_back(row[i].first, v);
            ++i;
            ++j;
        }
    }
    (void)pivot_col;
    return out;
}

// dense elimination finisher for rank_sparse; deliberately separate from
// rank_dense_oracle
std::size_t dense_rank_finish(std::vector<std::vector<felt>>& rows, std::size_t n_cols, const Field& F) {
    std::size_t rank = 0;
    std::size_t n_rows = rows.size();
    for (std::size_t col = 0; col < n_cols && rank < n_rows; ++col) {
        std::size_t piv = n_rows;
        for (std::size_t i = rank; i < n_rows; ++i) {
            if (rows[i][col]) {
                piv = i;
                break;
            }
        }
        if (piv == n_rows) continue;
        std::swap(rows[rank], rows[piv]);
        felt inv = F.inv(rows[rank][col]);
        const std::vector<felt>& prow = rows[rank];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long ii = static_cast<long long>(rank) + 1; ii < static_cast<long long>(n_rows); ++ii) {
            auto& r = rows[ii];
            if (!r[col]) continue;
            felt coef = F.mul(r[col], inv);
            for (std::size_t j = col; j < n_cols; ++j) {
                if (prow[j]) r[j] = F.sub(r[j], F.mul(coef, prow[j]));
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank_sparse(const SparseMatrix& m, const Field& F, const SparseRankOptions& opt) {
    std::size_t nr = m.n_rows(), nc = m.n_cols();
    if (nr == 0 || nc == 0) return 0;
    // eliminate over the shorter dimension
    if (nr > 2 * nc) return rank_sparse(m.transposed(), F, opt);

    std::vector<Row> rows(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        rows[i] = m.row(i);
        std::sort(rows[i].begin(), rows[i].end(),
                  [](const SparseMatrix::Entry& a, const SparseMatrix::Entry& b) { return a.first < b.first; });
    }

    std::vector<std::uint32_t> row_count(nr, 0), col_count(nc, 0);
    std::vector<char> row_alive(nr, 1), col_alive(nc, 1);
    std::vector<std::vector<std::uint32_t>> col_rows(nc);  // lazy, may hold stale ids
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < nr; ++i) {
        row_count[i] = static_cast<std::uint32_t>(rows[i].size());
        nnz += rows[i].size();
        for (const auto& [c, v] : rows[i]) {
            ++col_count[c];
            col_rows[c].push_back(static_cast<std::uint32_t>(i));
        }
    }

    // rows/cols ordered by (count, index); empty rows/cols excluded
    std::set<std::pair<std::uint32_t, std::uint32_t>> rows_by_count, cols_by_count;
    for (std::size_t i = 0; i < nr; ++i)
        if (row_count[i]) rows_by_count.insert({row_count[i], static_cast<std::uint32_t>(i)});
    for (std::size_t j = 0; j < nc; ++j)
        if (col_count[j]) cols_by_count.insert({col_count[j], static_cast<std::uint32_t>(j)});

    std::size_t alive_rows = nr, alive_cols = nc;

    auto find_in_row = [&](std::uint32_t r, std::uint32_t c) -> const SparseMatrix::Entry* {
        const Row& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const SparseMatrix::Entry& e, std::uint32_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) return &*it;
        return nullptr;
    };

    std::size_t rank = 0;
    std::vector<std::uint32_t> affected;
    std::vector<Row> merged;

    while (!rows_by_count.empty()) {
        // dense switch-over
        if (alive_rows && alive_cols) {
            double density = static_cast<double>(nnz) / (static_cast<double>(alive_rows) * static_cast<double>(alive_cols));
            if (density > opt.dense_switch_density &&
                alive_rows * alive_cols <= opt.dense_max_entries) {
                std::vector<std::uint32_t> col_map(nc, 0);
                std::size_t k = 0;
                for (std::size_t j = 0; j < nc; ++j)
                    if (col_alive[j]) col_map[j] = static_cast<std::uint32_t>(k++);
                std::vector<std::vector<felt>> dense;
                dense.reserve(alive_rows);
                for (std::size_t i = 0; i < nr; ++i) {
                    if (!row_alive[i] || rows[i].empty()) continue;
                    std::vector<felt> dr(k, 0);
                    for (const auto& [c, v] : rows[i]) dr[col_map[c]] = v;
                    dense.push_back(std::move(dr));
                }
                return rank + dense_rank_finish(dense, k, F);
            }
        }

        // pivot selection: best Markowitz cost among the entries of the
        // minimum-count row and the minimum-count column
        auto [rcnt, rbest] = *rows_by_count.begin();
        std::uint64_t best_cost = ~0ull;
        std::uint32_t piv_row = 0, piv_col = 0;
        for (const auto& [c, v] : rows[rbest]) {
            std::uint64_t cost = static_cast<std::uint64_t>(rcnt - 1) * (col_count[c] - 1);
            if (cost < best_cost || (cost == best_cost && (rbest < piv_row || (rbest == piv_row && c < piv_col)))) {
                best_cost = cost;
                piv_row = rbest;
                piv_col = c;
            }
        }
        if (!cols_by_count.empty()) {
            auto [ccnt, cbest] = *cols_by_count.begin();
            for (std::uint32_t r : col_rows[cbest]) {
                if (!row_alive[r]) continue;
                const auto* e = find_in_row(r, cbest);
                if (!e) continue;
                std::uint64_t cost = static_cast<std::uint64_t>(row_count[r] - 1) * (ccnt - 1);
                if (cost < best_cost || (cost == best_cost && (r < piv_row || (r == piv_row && cbest < piv_col)))) {
                    best_cost = cost;
                    piv_row = r;
                    piv_col = cbest;
                }
            }
        }

        const felt piv_val = find_in_row(piv_row, piv_col)->second;
        const felt piv_inv = F.inv(piv_val);

        // collect affected rows (deterministic ascending order)
        affected.clear();
        for (std::uint32_t r : col_rows[piv_col]) {
            if (r == piv_row || !row_alive[r]) continue;
            if (find_in_row(r, piv_col)) affected.push_back(r);
        }
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

        merged.assign(affected.size(), {});
        const Row& prow = rows[piv_row];
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (affected.size() > 16)
#endif
        for (long long t = 0; t < static_cast<long long>(affected.size()); ++t) {
            std::uint32_t r = affected[t];
            felt coef = F.mul(find_in_row(r, piv_col)->second, piv_inv);
            merged[t] = merge_eliminate(F, rows[r], prow, coef, piv_col);
        }

        // serial commit: swap in merged rows, maintain counts and orderings
        for (std::size_t t = 0; t < affected.size(); ++t) {
            std::uint32_t r = affected[t];
            Row& oldr = rows[r];
            Row& newr = merged[t];
            // column bookkeeping via merge walk
            std::size_t i = 0, j = 0;
            while (i < oldr.size() || j < newr.size()) {
                std::uint32_t co = i < oldr.size() ? oldr[i].first : UINT32_MAX;
                std::uint32_t cn = j < newr.size() ? newr[j].first : UINT32_MAX;
                if (co < cn) {  // entry vanished
                    cols_by_count.erase({col_count[co], co});
                    if (--col_count[co]) cols_by_count.insert({col_count[co], co});
                    ++i;
                } else if (cn < co) {  // fill-in
                    cols_by_count.erase({col_count[cn], cn});
                    ++col_count[cn];
                    cols_by_count.insert({col_count[cn], cn});
                    col_rows[cn].push_back(r);
                    ++j;
                } else {
                    ++i;
                    ++j;
                }
            }
            nnz = nnz - oldr.size() + newr.size();
            rows_by_count.erase({row_count[r], r});
            row_count[r] = static_cast<std::uint32_t>(newr.size());
            if (row_count[r]) rows_by_count.insert({row_count[r], r});
            oldr = std::move(newr);
        }

        // retire the pivot row and column
        rows_by_count.erase({row_count[piv_row], piv_row});
        for (const auto& [c, v] : rows[piv_row]) {
            cols_by_count.erase({col_count[c], c});
            if (--col_count[c]) cols_by_count.insert({col_count[c], c});
        }
        nnz -= rows[piv_row].size();
        rows[piv_row].clear();
        rows[piv_row].shrink_to_fit();
        row_alive[piv_row] = 0;
        col_alive[piv_col] = 0;
        cols_by_count.erase({col_count[piv_col], piv_col});
        col_count[piv_col] = 0;
        --alive_rows;
        --alive_cols;
        ++rank;
    }
    return rank;
}

std::size_t rank_dense_oracle(DenseMatrix m, const Field& F) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.n_cols && rank < m.n_rows; ++col) {
        std::size_t piv = m.n_rows;
        for (std::size_t i = rank; i < m.n_rows; ++i) {
            if (m.at(i, col)) {
                piv = i;
                break;
            }
        }
        if (piv == m.n_rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.n_cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
        felt inv = F.inv(m.at(rank, col));
        for (std::size_t i = rank + 1; i < m.n_rows; ++i) {
            felt c = m.at(i, col);
            if (!c) continue;
            felt coef = F.mul(c, inv);
            for (std::size_t j = col; j < m.n_cols; ++j) {
                felt pj = m.at(rank, j);
                if (pj) m.at(i, j) = F.sub(m.at(i, j), F.mul(coef, pj));
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<felt>> kernel_basis(const SparseMatrix& m, const Field& F) {
    std::size_t nr = m.n_rows(), nc = m.n_cols();
    DenseMatrix d = m.to_dense();
    // full reduced row echelon form
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i) {
            if (d.at(i, col)) {
                piv = i;
                break;
            }
        }
        if (piv == nr) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < nc; ++j) std::swap(d.at(rank, j), d.at(piv, j));
        felt inv = F.inv(d.at(rank, col));
        for (std::size_t j = col; j < nc; ++j) d.at(rank, j) = F.mul(d.at(rank, j), inv);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == rank) continue;
            felt c = d.at(i, col);
            if (!c) continue;
            for (std::size_t j = col; j < nc; ++j)
                d.at(i, j) = F.sub(d.at(i, j), F.mul(c, d.at(rank, j)));
        }
        pivot_col_of_row.push_back(col);
        ++rank;
    }
    std::vector<char> is_pivot(nc, 0);
    for (std::size_t c : pivot_col_of_row) is_pivot[c] = 1;
    std::vector<std::vector<felt>> out;
    for (std::size_t j = 0; j < nc; ++j) {
        if (is_pivot[j]) continue;
        std::vector<felt> v(nc, 0);
        v[j] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
            v[pivot_col_of_row[i]] = F.neg(d.at(i, j));
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t rank_dense_kernel_count(const DenseMatrix& m, const Field& F) {
    return m.n_cols - rank_dense_oracle(m, F);
}

RowBasisSolver::RowBasisSolver(const Field& F, const std::vector<std::vector<felt>>& basis_rows)
    : F_(F), n_basis_(basis_rows.size()) {
    width_ = basis_rows.empty() ? 0 : basis_rows[0].size();
    ech_ = basis_rows;
    transform_.assign(n_basis_, std::vector<felt>(n_basis_, 0));
    for (std::size_t i = 0; i < n_basis_; ++i) transform_[i][i] = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width_ && rank < n_basis_; ++col) {
        std::size_t piv = n_basis_;
        for (std::size_t i = rank; i < n_basis_; ++i) {
            if (ech_[i][col]) {
                piv = i;
                break;
            }
        }
        if (piv == n_basis_) continue;
        std::swap(ech_[rank], ech_[piv]);
        std::swap(transform_[rank], transform_[piv]);
        felt inv = F_.inv(ech_[rank][col]);
        for (auto& x : ech_[rank]) x = F_.mul(x, inv);
        for (auto& x : transform_[rank]) x = F_.mul(x, inv);
        for (std::size_t i = 0; i < n_basis_; ++i) {
            if (i == rank || !ech_[i][col]) continue;
            felt c = ech_[i][col];
            for (std::size_t j = 0; j < width_; ++j)
                ech_[i][j] = F_.sub(ech_[i][j], F_.mul(c, ech_[rank][j]));
            for (std::size_t j = 0; j < n_basis_; ++j)
                transform_[i][j] = F_.sub(transform_[i][j], F_.mul(c, transform_[rank][j]));
        }
        pivots_.push_back(col);
        ++rank;
    }
    ech_.resize(rank);
    transform_.resize(rank);
}

bool RowBasisSolver::solve(const std::vector<felt>& target, std::vector<felt>& combo) const {
    std::vector<felt> t = target;
    t.resize(width_, 0);
    combo.assign(n_basis_, 0);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        felt c = t[pivots_[i]];
        if (!c) continue;
        for (std::size_t j = 0; j < width_; ++j)
            if (ech_[i][j]) t[j] = F_.sub(t[j], F_.mul(c, ech_[i][j]));
        for (std::size_t j = 0; j < n_basis_; ++j)
            if (transform_[i][j]) combo[j] = F_.add(combo[j], F_.mul(c, transform_[i][j]));
    }
    for (felt x : t)
        if (x) return false;
    return true;
}

}  // namespace syzlab
