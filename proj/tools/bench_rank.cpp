// Compares the structured sparse elimination against the serial dense
// reference, and a parallel Betti-table run against a single-threaded one.

#include <chrono>
#include <iostream>
#include <random>

#include "syzlab/build_system.hpp"
#include "syzlab/koszul.hpp"
#include "syzlab/parallel.hpp"

using namespace syzlab;

namespace {

double secs(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SparseMatrix random_sparse(const Field& F, std::size_t n, double density, std::mt19937_64& rng) {
    SparseMatrix m(n, n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> val(1, F.order() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (coin(rng) < density) m.set(i, j, val(rng));
    m.finalize();
    return m;
}

}  // namespace

int main() {
    Field F(101);
    std::mt19937_64 rng(1);
    std::cout << "rank kernels (n x n random, F_101)\n";
    std::cout << "   n  density   sparse[s]    dense[s]  rank\n";
    for (auto [n, density] : {std::pair<std::size_t, double>{300, 0.01},
                              {600, 0.01},
                              {900, 0.005},
                              {600, 0.05}}) {
        SparseMatrix m = random_sparse(F, n, density, rng);
        auto t0 = std::chrono::steady_clock::now();
        std::size_t rs = rank_sparse(m, F);
        double ts = secs(t0);
        t0 = std::chrono::steady_clock::now();
        std::size_t rd = rank_dense_oracle(m.to_dense(), F);
        double td = secs(t0);
        if (rs != rd) {
            std::cerr << "rank mismatch!\n";
            return 1;
        }
        std::printf("%4zu  %7.3f  %9.3f  %10.3f  %4zu\n", n, density, ts, td, rs);
    }

    std::cout << "\nbetti table, quartic B=K L=O(4), p in [0,7], q in {0,1,2}\n";
    FieldDesc fd;
    fd.characteristic = 101;
    auto quartic = CurveModel::plane_curve(fd, {{4, 0, 0, 1}, {0, 4, 0, 1}, {0, 0, 4, 1}});
    SectionSystem direct =
        build_section_system(quartic, quartic.canonical_bundle(), {4, {}}, -1, 3);
    SectionSystem dual = build_section_system(quartic, {0, {}}, {4, {}}, -1, 3);
    for (int threads : {1, par::max_threads()}) {
        par::set_threads(threads);
        auto t0 = std::chrono::steady_clock::now();
        BettiTable tab = betti_table(direct, &dual, 0, 7, 0, 2);
        std::printf("threads=%d: %.3f s (K_{1,1} = %lld)\n", threads, secs(t0), tab.at(1, 1));
    }
    return 0;
}
