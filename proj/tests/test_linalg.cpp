#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syzlab/linalg.hpp"
#include "test_util.hpp"

using namespace syzlab;

namespace {

SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    m.finalize();
    return m;
}

}  // namespace

TEST_CASE("rank of identity and zero") {
    Field F(101);
    CHECK(rank_sparse(identity(5), F) == 5);
    SparseMatrix z(3, 7);
    z.finalize();
    CHECK(rank_sparse(z, F) == 0);
    CHECK(rank_dense_oracle(DenseMatrix(3, 7), F) == 0);
    DenseMatrix one(1, 1);
    one.at(0, 0) = 42;
    CHECK(rank_dense_oracle(one, F) == 1);
    CHECK(rank_dense_oracle(identity(8).to_dense(), F) == 8);
    SparseMatrix empty(0, 0);
    empty.finalize();
    CHECK(rank_sparse(empty, F) == 0);
}

TEST_CASE("constructed rank 25") {
    Field F(101);
    std::mt19937_64 rng(777);
    SparseMatrix m = testutil::random_rank_bounded(F, 40, 60, 25, rng);
    CHECK(rank_dense_oracle(m.to_dense(), F) == 25);  // factors were full rank
    CHECK(rank_sparse(m, F) == 25);
}

TEST_CASE("oracle equality across shapes and fields") {
    std::mt19937_64 rng(2024);
    for (auto fd : {std::pair<std::uint64_t, std::uint32_t>{101, 1}, {101, 2}, {499, 1}}) {
        Field F(fd.first, fd.second);
        for (int t = 0; t < 12; ++t) {
            std::uniform_int_distribution<std::size_t> dim(1, 90);
            std::size_t r = dim(rng), c = dim(rng);
            std::uniform_real_distribution<double> dens(0.02, 0.3);
            SparseMatrix m = testutil::random_sparse(F, r, c, dens(rng), rng);
            CHECK(rank_sparse(m, F) == rank_dense_oracle(m.to_dense(), F));
        }
        // skewed shapes hit the transpose path
        SparseMatrix tall = testutil::random_sparse(F, 200, 20, 0.1, rng);
        CHECK(rank_sparse(tall, F) == rank_dense_oracle(tall.to_dense(), F));
    }
}

TEST_CASE("rank of transpose equals rank") {
    Field F(101);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 8; ++t) {
        SparseMatrix m = testutil::random_sparse(F, 30, 45, 0.1, rng);
        CHECK(rank_sparse(m, F) == rank_sparse(m.transposed(), F));
        CHECK(rank_sparse(m, F) <= 30);
    }
}

TEST_CASE("dense switch-over still exact") {
    Field F(101);
    std::mt19937_64 rng(31);
    SparseMatrix m = testutil::random_rank_bounded(F, 60, 60, 37, rng);
    SparseRankOptions opt;
    opt.dense_switch_density = 0.0;  // switch immediately
    CHECK(rank_sparse(m, F, opt) == 37);
    opt.dense_switch_density = 2.0;  // never switch
    CHECK(rank_sparse(m, F, opt) == 37);
}

TEST_CASE("kernel basis") {
    Field F(101);
    CHECK(kernel_basis(identity(6), F).empty());
    SparseMatrix z(2, 3);
    z.finalize();
    CHECK(kernel_basis(z, F).size() == 3);

    std::mt19937_64 rng(88);
    for (auto fd : {std::pair<std::uint64_t, std::uint32_t>{101, 1}, {101, 2}}) {
        Field K(fd.first, fd.second);
        SparseMatrix m = testutil::random_rank_bounded(K, 20, 30, 12, rng);
        auto ker = kernel_basis(m, K);
        std::size_t rk = rank_sparse(m, K);
        CHECK(ker.size() == 30 - rk);
        // every vector annihilated exactly
        for (const auto& v : ker) {
            for (std::size_t i = 0; i < m.n_rows(); ++i) {
                felt acc = 0;
                for (const auto& [c, val] : m.row(i)) acc = K.add(acc, K.mul(val, v[c]));
                CHECK(acc == 0);
            }
        }
        // linear independence: stack as rows and take the rank
        SparseMatrix stack(ker.size(), 30);
        for (std::size_t i = 0; i < ker.size(); ++i)
            for (std::size_t j = 0; j < 30; ++j)
                if (ker[i][j]) stack.set(i, j, ker[i][j]);
        stack.finalize();
        CHECK(rank_sparse(stack, K) == ker.size());
    }
}

TEST_CASE("sparse matrix invariants") {
    Field F(101);
    SparseMatrix m(2, 2);
    m.set(0, 0, 1);
    m.set(0, 0, 2);
    CHECK_THROWS(m.finalize());
    SparseMatrix ok(2, 2);
    ok.set(0, 1, 5);
    ok.set(1, 0, 0);  // explicit zero is dropped
    ok.finalize();
    CHECK(ok.nnz() == 1);
    CHECK_THROWS(ok.set(5, 0, 1));
}

TEST_CASE("row basis solver") {
    Field F(101);
    std::vector<std::vector<felt>> basis{{1, 2, 3, 0}, {0, 1, 4, 0}, {1, 1, 0, 0}};
    RowBasisSolver solver(F, basis);
    std::vector<felt> target(4, 0);
    // 2*b0 + 3*b1 - b2
    for (std::size_t j = 0; j < 4; ++j) {
        felt v = F.mul(2, basis[0][j]);
        v = F.add(v, F.mul(3, basis[1][j]));
        v = F.sub(v, basis[2][j]);
        target[j] = v;
    }
    std::vector<felt> combo;
    REQUIRE(solver.solve(target, combo));
    std::vector<felt> recomb(4, 0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) recomb[j] = F.add(recomb[j], F.mul(combo[i], basis[i][j]));
    CHECK(recomb == target);
    std::vector<felt> outside{0, 0, 0, 1};
    CHECK(!solver.solve(outside, combo));
}
