#ifndef SYZLAB_KOSZUL_HPP
#define SYZLAB_KOSZUL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzlab/linalg.hpp"
#include "syzlab/section_system.hpp"

namespace syzlab {

// The weight-q Koszul differential Lambda^p H0(L) (x) H0(B+qL) ->
// Lambda^(p-1) H0(L) (x) H0(B+(q+1)L).
struct KoszulDifferential {
    int p = 0, q = 0;
    SparseMatrix matrix;  // [C(n,p-1) * w_{q+1}] x [C(n,p) * w_q]
};

KoszulDifferential assemble_differential(const SectionSystem& ss, int p, int q);

// Memoized differential ranks; key is (p, q) of the differential.
using RankCache = std::map<std::pair<int, int>, std::size_t>;

std::size_t differential_rank(const SectionSystem& ss, int p, int q, RankCache* cache = nullptr);

// dim K_{p,q} = C(n,p) w_q - rank d_{p,q} - rank d_{p+1,q-1}
long long koszul_dim(const SectionSystem& ss, int p, int q, RankCache* cache = nullptr);

// dim Z_{p,q} = C(n,p) w_q - rank d_{p,q} (Koszul cycles)
long long koszul_cycles_dim(const SectionSystem& ss, int p, int q, RankCache* cache = nullptr);

// Independent dense pipeline: lex subset order, dense matrices, dense ranks.
// Throws TooLargeError when either matrix exceeds max_entries.
long long koszul_dim_oracle(const SectionSystem& ss, int p, int q,
                            std::size_t max_entries = 4000000);

enum class Provenance { Direct, Dual, PredictedZero };
const char* provenance_name(Provenance p);

struct BettiEntry {
    int p = 0, q = 0;
    long long dim = 0;
    Provenance prov = Provenance::Direct;
};

struct BettiTable {
    std::string curve_id, label_B, label_L;
    FieldDesc field;
    int p_min = 0, p_max = 0, q_min = 0, q_max = 0;
    std::vector<BettiEntry> entries;  // (q-major, p-minor) over the window

    long long at(int p, int q) const;
    const BettiEntry& entry(int p, int q) const;
    std::string to_text() const;  // Macaulay-style table: rows q, columns p
};

// Computes each requested entry on the cheaper of the direct system or, when
// a system for (K_C - B; L) is supplied, the dual index (r-1-p, 2-q).  The
// cost model compares the predicted dense elimination work of the two rank
// computations; provenance is recorded per entry.
BettiTable betti_table(const SectionSystem& ss_direct, const SectionSystem* ss_dual,
                       int p_min, int p_max, int q_min, int q_max);

}  // namespace syzlab

#endif
