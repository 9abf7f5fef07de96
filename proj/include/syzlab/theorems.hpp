#ifndef SYZLAB_THEOREMS_HPP
#define SYZLAB_THEOREMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "syzlab/curve.hpp"
#include "syzlab/koszul.hpp"

namespace syzlab {

// Expected nonvanishing ranges of K_{p,0} and K_{p,2} in the large-degree
// regime: [0, h0(B)-1] and [r - h1(B), r - 1]; empty when the corresponding
// cohomology vanishes.
struct GreenRanges {
    int k0_lo = 0, k0_hi = -1;  // empty iff lo > hi
    int k2_lo = 0, k2_hi = -1;
};
GreenRanges green_range_predict(long long h0B, long long h1B, int r);

struct GonalityReport {
    std::string curve_id, label_L;
    long long deg_L = 0;
    int p_max = 0;
    int first_nonzero_p = -1;
    long long gonality_estimate = 0;
    bool bound_ok = false;
    long long bound_used = 0;
    std::vector<std::pair<int, long long>> scan;  // (p, dim K_{p,1}(C, K_C; L))
};
// Scans dim K_{p,1}(C, K_C; L) for p = 0, 1, ...; the first nonzero position
// plus one is the gonality readout.
GonalityReport gonality_from_syzygies(const CurveModel& c, const LineBundleSpec& L, int p_max);

struct PvaReport {
    std::string label_B;
    int p = 0;
    std::uint32_t N = 1;
    bool exhaustive = false;  // N >= lcm(1..p+1): all residue-degree patterns split
    bool p_very_ample = false;
    std::optional<EffectiveDivisor> witness;
    std::size_t witness_rank = 0;
    std::size_t n_points = 0;
    std::uint64_t n_divisors = 0;
};
// Exhaustive search over effective divisors of degree p+1 supported on
// C(F_{p^N}), including all multiplicity patterns; jets of order equal to the
// multiplicity are used at repeated points.
PvaReport is_p_very_ample(const CurveModel& c, const LineBundleSpec& B, int p, std::uint32_t N);

struct TheoremBReport {
    enum class Status { Pass, Fail, BoundNotMet };
    Status status = Status::Fail;
    PvaReport pva;
    long long k_p1 = 0;
    long long bound = 0;
    long long deg_L = 0;
    bool bound_met = false;
};
// PASS iff (p-very-ample => K_{p,1} = 0) and (not p-very-ample => K_{p,1} > 0).
// Refuses to assert the vanishing direction below the effective bound.
TheoremBReport theoremB_check(const CurveModel& c, const LineBundleSpec& B, int p,
                              const LineBundleSpec& L, std::uint32_t N);

struct Frac {
    long long num = 0;
    long long den = 1;
};

struct GrowthReport {
    enum class Status { Fitted, NotPolynomial };
    Status status = Status::Fitted;
    int p = 0, q = 0;
    std::string label_B, label_A;
    std::vector<std::pair<long long, long long>> samples;  // (d, dim)
    int fitted_degree = 0;
    std::vector<long long> newton_coeffs;  // forward differences at the first sample
    std::vector<Frac> coeffs;              // monomial coefficients, exact rationals
    std::optional<int> expected_degree;
    bool pass = false;
};
// Exact finite-difference fit of integer samples at consecutive arguments.
// NotPolynomial when the top difference row fails to vanish (degree s-1 can
// never be certified from s samples).
GrowthReport fit_growth_samples(std::vector<std::pair<long long, long long>> samples,
                                std::optional<int> expected_degree);

// Samples dim K_{p,q}(B; L_d) for L_d = d*A (minus an optional fixed reduced
// divisor, q = 0 only) and fits the exact interpolation polynomial by finite
// differences.
GrowthReport growth_fit(const CurveModel& c, const LineBundleSpec& B, int p, int q,
                        const LineBundleSpec& A, long long d_lo, long long d_hi,
                        std::optional<int> expected_degree = std::nullopt,
                        const std::vector<CurvePoint>& fixed_minus = {});

long long effective_bound(long long p, long long g, long long degB);
long long gonality_bound(long long p, long long g);
long long g_cubed_bound(long long g);

// Number of effective divisors of degree p+1 supported on C(F_{p^N}) that
// fail to impose independent conditions on H0(B).  Exhaustive, no early exit.
std::uint64_t count_failing_divisors(const CurveModel& c, const LineBundleSpec& B, int p,
                                     std::uint32_t N);

// Experimental estimator for the dimension of the failure locus: the counts
// over two extensions grow like const * p^(gamma * N), so the estimate is the
// rounded log-ratio.  Desk-scale only; excluded from the acceptance matrix.
struct GammaEstimate {
    std::uint64_t count_lo = 0, count_hi = 0;
    std::uint32_t N_lo = 1, N_hi = 2;
    std::optional<int> gamma;  // absent when the counts are degenerate
};
GammaEstimate gamma_p_estimate(const CurveModel& c, const LineBundleSpec& B, int p,
                               std::uint32_t N_lo, std::uint32_t N_hi);

// Surjectivity of H0(alpha) (x) H0(K_C - alpha) -> H0(K_C).
bool gieseker_petri_check(const CurveModel& c, const LineBundleSpec& alpha);

struct DualityReport {
    bool pass = true;
    int r = 0;
    struct Pair {
        int p, q;
        long long lhs, rhs;  // dim K_{p,q}(B;L) vs dim K_{r-1-p,2-q}(K-B;L)
    };
    std::vector<Pair> pairs;
};
// Computes both sides independently for p in [p_min, p_max], q in {0,1,2}.
DualityReport duality_check(const CurveModel& c, const LineBundleSpec& B, const LineBundleSpec& L,
                            int p_min, int p_max);

}  // namespace syzlab

#endif
