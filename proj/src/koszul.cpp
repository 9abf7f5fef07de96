#include "syzlab/koszul.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "syzlab/errors.hpp"
#include "syzlab/exterior.hpp"
#include "syzlab/parallel.hpp"

namespace syzlab {

namespace {

// w-dimension that also resolves q outside the window when the bundle degree
// is negative (the space is then zero regardless of the window)
int wdim_ext(const SectionSystem& ss, int q) {
    if (ss.has_w(q)) return ss.wdim(q);
    if (ss.deg_B + static_cast<long long>(q) * ss.deg_L < 0) return 0;
    throw WindowTooSmallError("W_" + std::to_string(q) + " not covered by the section-system window");
}

}  // namespace

KoszulDifferential assemble_differential(const SectionSystem& ss, int p, int q) {
    const int n = ss.n();
    KoszulDifferential out;
    out.p = p;
    out.q = q;
    const std::uint64_t cols_sub = (p >= 0 && p <= n) ? binom(n, p) : 0;
    const std::uint64_t rows_sub = (p >= 1 && p - 1 <= n) ? binom(n, p - 1) : 0;
    const int wq = wdim_ext(ss, q);
    if (rows_sub == 0 || cols_sub == 0 || wq == 0) {
        int wq1 = 0;
        if (rows_sub != 0) wq1 = wdim_ext(ss, q + 1);
        out.matrix = SparseMatrix(rows_sub * wq1, cols_sub * wq);
        return out;
    }
    const int wq1 = wdim_ext(ss, q + 1);
    out.matrix = SparseMatrix(rows_sub * wq1, cols_sub * wq);
    if (wq1 == 0) return out;

    const MuTensor& mu = ss.mu(q);
    const Field F(ss.field);
    ExteriorIndex full(n, p);
    ExteriorIndex sub(n, p - 1);

    std::vector<unsigned> S(p);
    for (int i = 0; i < p; ++i) S[i] = i;
    std::vector<unsigned> T(p > 0 ? p - 1 : 0);
    std::uint64_t srank = 0;
    do {
        for (int a = 0; a < p; ++a) {
            // remove position a (sign (-1)^a with ascending index tuples)
            for (int t = 0, u = 0; t < p; ++t)
                if (t != a) T[u++] = S[t];
            std::uint64_t trank = sub.rank(T);
            bool negate = (a % 2) == 1;
            unsigned i = S[a];
            for (int j = 0; j < wq; ++j) {
                auto pr = mu.prod(i, j);
                std::uint64_t col = srank * wq + j;
                for (int k = 0; k < wq1; ++k) {
                    if (!pr[k]) continue;
                    felt v = negate ? F.neg(pr[k]) : pr[k];
                    out.matrix.set(trank * wq1 + k, col, v);
                }
            }
        }
        ++srank;
    } while (ExteriorIndex::next_subset(S, n));
    out.matrix.finalize();
    return out;
}

std::size_t differential_rank(const SectionSystem& ss, int p, int q, RankCache* cache) {
    const int n = ss.n();
    if (p <= 0 || p > n) return 0;                      // empty source or target
    if (wdim_ext(ss, q) == 0) return 0;                 // zero source
    if (cache) {
        auto it = cache->find({p, q});
        if (it != cache->end()) return it->second;
    }
    KoszulDifferential d = assemble_differential(ss, p, q);
    Field F(ss.field);
    std::size_t r = rank_sparse(d.matrix, F);
    if (cache) (*cache)[{p, q}] = r;
    return r;
}

long long koszul_dim(const SectionSystem& ss, int p, int q, RankCache* cache) {
    const int n = ss.n();
    if (p < 0 || p > n) return 0;
    const long long wq = wdim_ext(ss, q);
    if (wq == 0) return 0;
    const long long space = static_cast<long long>(binom(n, p)) * wq;
    const long long r1 = static_cast<long long>(differential_rank(ss, p, q, cache));
    const long long r2 = static_cast<long long>(differential_rank(ss, p + 1, q - 1, cache));
    long long k = space - r1 - r2;
    if (k < 0) throw std::logic_error("negative Koszul dimension: rank bookkeeping corrupt");
    return k;
}

long long koszul_cycles_dim(const SectionSystem& ss, int p, int q, RankCache* cache) {
    const int n = ss.n();
    if (p < 0 || p > n) return 0;
    const long long wq = wdim_ext(ss, q);
    const long long space = static_cast<long long>(binom(n, p)) * wq;
    return space - static_cast<long long>(differential_rank(ss, p, q, cache));
}

namespace {

// lexicographic subset list; intentionally disjoint from the colex machinery
std::vector<std::vector<unsigned>> lex_subsets(unsigned n, int p) {
    std::vector<std::vector<unsigned>> out;
    if (p < 0 || p > static_cast<int>(n)) return out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned start, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned v = start; v + left <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1, left - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, p);
    return out;
}

DenseMatrix dense_differential(const SectionSystem& ss, int p, int q, std::size_t max_entries) {
    const int n = ss.n();
    const Field F(ss.field);
    auto srcs = lex_subsets(n, p);
    auto dsts = lex_subsets(n, p - 1);
    const int wq = wdim_ext(ss, q);
    const int wq1 = (p >= 1 && !dsts.empty()) ? wdim_ext(ss, q + 1) : 0;
    std::size_t rows = dsts.size() * static_cast<std::size_t>(wq1);
    std::size_t cols = srcs.size() * static_cast<std::size_t>(wq);
    if (rows * cols > max_entries)
        throw TooLargeError("dense oracle differential exceeds entry cap");
    DenseMatrix m(rows, cols);
    if (rows == 0 || cols == 0) return m;
    std::map<std::vector<unsigned>, std::size_t> dst_index;
    for (std::size_t i = 0; i < dsts.size(); ++i) dst_index[dsts[i]] = i;
    const MuTensor& mu = ss.mu(q);
    for (std::size_t s = 0; s < srcs.size(); ++s) {
        const auto& S = srcs[s];
        for (int a = 0; a < p; ++a) {
            std::vector<unsigned> T;
            T.reserve(p - 1);
            for (int t = 0; t < p; ++t)
                if (t != a) T.push_back(S[t]);
            std::size_t trow = dst_index.at(T);
            for (int j = 0; j < wq; ++j) {
                auto pr = mu.prod(S[a], j);
                for (int k = 0; k < wq1; ++k) {
                    if (!pr[k]) continue;
                    felt v = (a % 2) ? F.neg(pr[k]) : pr[k];
                    felt& cell = m.at(trow * wq1 + k, s * wq + j);
                    cell = F.add(cell, v);
                }
            }
        }
    }
    return m;
}

}  // namespace

long long koszul_dim_oracle(const SectionSystem& ss, int p, int q, std::size_t max_entries) {
    const int n = ss.n();
    if (p < 0 || p > n) return 0;
    const long long wq = wdim_ext(ss, q);
    if (wq == 0) return 0;
    const Field F(ss.field);
    long long space = static_cast<long long>(binom(n, p)) * wq;
    long long r1 = 0, r2 = 0;
    if (p >= 1)
        r1 = static_cast<long long>(rank_dense_oracle(dense_differential(ss, p, q, max_entries), F));
    else if (p == 0)
        r1 = 0;
    if (p + 1 <= n && wdim_ext(ss, q - 1) > 0)
        r2 = static_cast<long long>(rank_dense_oracle(dense_differential(ss, p + 1, q - 1, max_entries), F));
    return space - r1 - r2;
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Direct: return "direct";
        case Provenance::Dual: return "dual";
        case Provenance::PredictedZero: return "predicted-zero";
    }
    return "?";
}

long long BettiTable::at(int p, int q) const { return entry(p, q).dim; }

const BettiEntry& BettiTable::entry(int p, int q) const {
    for (const auto& e : entries)
        if (e.p == p && e.q == q) return e;
    throw std::out_of_range("betti entry (" + std::to_string(p) + "," + std::to_string(q) + ") not computed");
}

std::string BettiTable::to_text() const {
    std::ostringstream os;
    std::size_t w = 3;
    for (const auto& e : entries) w = std::max(w, std::to_string(e.dim).size() + 1);
    os << "     ";
    for (int p = p_min; p <= p_max; ++p) {
        std::string h = std::to_string(p);
        os << std::string(w >= h.size() ? w - h.size() : 1, ' ') << h;
    }
    os << '\n';
    for (int q = q_min; q <= q_max; ++q) {
        std::string h = std::to_string(q) + ":";
        os << std::string(5 >= h.size() ? 5 - h.size() : 1, ' ') << h;
        for (int p = p_min; p <= p_max; ++p) {
            std::string cell = ".";
            for (const auto& e : entries)
                if (e.p == p && e.q == q && e.dim != 0) cell = std::to_string(e.dim);
            os << std::string(w >= cell.size() ? w - cell.size() : 1, ' ') << cell;
        }
        os << '\n';
    }
    return os.str();
}

namespace {

// predicted dense elimination work for the rank of d_{p,q}
long double rank_work(const SectionSystem& ss, int p, int q) {
    const int n = ss.n();
    if (p <= 0 || p > n) return 0;
    int wq = 0, wq1 = 0;
    try {
        wq = wdim_ext(ss, q);
        wq1 = wdim_ext(ss, q + 1);
    } catch (const WindowTooSmallError&) {
        return -1;  // not computable on this side
    }
    long double R = static_cast<long double>(binom(n, p - 1)) * wq1;
    long double C = static_cast<long double>(binom(n, p)) * wq;
    return std::min(R, C) * R * C;
}

long double entry_work(const SectionSystem& ss, int p, int q) {
    long double w1 = rank_work(ss, p, q);
    long double w2 = rank_work(ss, p + 1, q - 1);
    if (w1 < 0 || w2 < 0) return -1;
    return w1 + w2;
}

}  // namespace

BettiTable betti_table(const SectionSystem& ss_direct, const SectionSystem* ss_dual,
                       int p_min, int p_max, int q_min, int q_max) {
    BettiTable tab;
    tab.curve_id = ss_direct.curve_id;
    tab.label_B = ss_direct.label_B;
    tab.label_L = ss_direct.label_L;
    tab.field = ss_direct.field;
    tab.p_min = p_min;
    tab.p_max = p_max;
    tab.q_min = q_min;
    tab.q_max = q_max;
    const int n = ss_direct.n();
    const int r = ss_direct.r;

    struct Plan {
        int p, q;
        Provenance prov;
        const SectionSystem* sys;  // nullptr for predicted zero
        int sp, sq;                // indices on the chosen system
    };
    std::vector<Plan> plans;
    for (int q = q_min; q <= q_max; ++q) {
        for (int p = p_min; p <= p_max; ++p) {
            Plan pl{p, q, Provenance::Direct, &ss_direct, p, q};
            if (p < 0 || p > n || wdim_ext(ss_direct, q) == 0) {
                pl.prov = Provenance::PredictedZero;
                pl.sys = nullptr;
                plans.push_back(pl);
                continue;
            }
            long double direct_cost = entry_work(ss_direct, p, q);
            if (ss_dual) {
                int dp = r - 1 - p, dq = 2 - q;
                bool dual_zero = dp < 0 || dp > ss_dual->n();
                long double dual_cost = -1;
                if (!dual_zero) {
                    try {
                        dual_zero = wdim_ext(*ss_dual, dq) == 0;
                    } catch (const WindowTooSmallError&) {
                        dual_zero = false;
                        dual_cost = -1;
                    }
                }
                if (dual_zero) {
                    pl.prov = Provenance::Dual;
                    pl.sys = nullptr;
                    plans.push_back(pl);
                    continue;
                }
                dual_cost = entry_work(*ss_dual, dp, dq);
                if (dual_cost >= 0 && (direct_cost < 0 || dual_cost < direct_cost)) {
                    pl.prov = Provenance::Dual;
                    pl.sys = ss_dual;
                    pl.sp = dp;
                    pl.sq = dq;
                }
            }
            if (pl.sys == &ss_direct && direct_cost < 0)
                throw WindowTooSmallError("entry (" + std::to_string(p) + "," + std::to_string(q) +
                                          ") not computable within the section-system window");
            plans.push_back(pl);
        }
    }

    // entry-level parallelism: collect the distinct differential ranks needed
    struct Task {
        const SectionSystem* sys;
        int p, q;
    };
    std::vector<Task> tasks;
    auto add_task = [&](const SectionSystem* sys, int p, int q) {
        if (p <= 0 || p > sys->n()) return;
        if (wdim_ext(*sys, q) == 0) return;
        for (const auto& t : tasks)
            if (t.sys == sys && t.p == p && t.q == q) return;
        tasks.push_back({sys, p, q});
    };
    for (const auto& pl : plans) {
        if (!pl.sys) continue;
        add_task(pl.sys, pl.sp, pl.sq);
        add_task(pl.sys, pl.sp + 1, pl.sq - 1);
    }

    RankCache cache_direct, cache_dual;
    std::vector<std::size_t> results(tasks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long t = 0; t < static_cast<long long>(tasks.size()); ++t) {
        results[t] = differential_rank(*tasks[t].sys, tasks[t].p, tasks[t].q, nullptr);
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        RankCache& c = tasks[t].sys == &ss_direct ? cache_direct : cache_dual;
        c[{tasks[t].p, tasks[t].q}] = results[t];
    }

    for (const auto& pl : plans) {
        BettiEntry e;
        e.p = pl.p;
        e.q = pl.q;
        e.prov = pl.prov;
        if (!pl.sys) {
            e.dim = 0;
        } else {
            RankCache& c = pl.sys == &ss_direct ? cache_direct : cache_dual;
            e.dim = koszul_dim(*pl.sys, pl.sp, pl.sq, &c);
        }
        tab.entries.push_back(e);
    }
    return tab;
}

}  // namespace syzlab
