#include "syzlab/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "syzlab/build_system.hpp"
#include "syzlab/errors.hpp"
#include "syzlab/parallel.hpp"

namespace syzlab {

GreenRanges green_range_predict(long long h0B, long long h1B, int r) {
    GreenRanges g;
    if (h0B > 0) {
        g.k0_lo = 0;
        g.k0_hi = static_cast<int>(h0B) - 1;
    }
    if (h1B > 0) {
        g.k2_lo = r - static_cast<int>(h1B);
        g.k2_hi = r - 1;
    }
    return g;
}

long long effective_bound(long long p, long long g, long long degB) {
    return (p * p + p + 2) * (g - 1) + (p + 1) * degB;
}

long long gonality_bound(long long p, long long g) { return (p * p + 3 * p + 3) * (g - 1); }

long long g_cubed_bound(long long g) { return g * g * g; }

GonalityReport gonality_from_syzygies(const CurveModel& c, const LineBundleSpec& L, int p_max) {
    if (c.genus() < 2)
        throw UnsupportedError("gonality readout requires genus >= 2");
    LineBundleSpec K = c.canonical_bundle();
    SectionSystem ss = build_section_system(c, K, L, 0, 2);
    GonalityReport rep;
    rep.curve_id = c.id();
    rep.label_L = c.bundle_label(L);
    rep.deg_L = c.bundle_degree(L);
    rep.p_max = p_max;
    RankCache cache;
    for (int p = 0; p <= p_max; ++p) {
        long long k = koszul_dim(ss, p, 1, &cache);
        rep.scan.emplace_back(p, k);
        if (k > 0) {
            rep.first_nonzero_p = p;
            break;
        }
    }
    if (rep.first_nonzero_p < 0)
        throw ScanExhaustedError("all K_{p,1}(C,K_C;L) vanish for p <= " + std::to_string(p_max));
    rep.gonality_estimate = rep.first_nonzero_p + 1;
    // the certified content is the vanishing below the first nonzero position
    long long p_ref = std::max(1, rep.first_nonzero_p - 1);
    rep.bound_used = gonality_bound(p_ref, c.genus());
    rep.bound_ok = rep.deg_L > rep.bound_used;
    return rep;
}

namespace {

// rank of a small dense matrix given as stacked rows, fraction-free
std::size_t small_rank(const Field& F, std::vector<std::vector<felt>>& rows) {
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (rows[i][col]) {
                piv = i;
                break;
            }
        if (piv == nr) continue;
        std::swap(rows[rank], rows[piv]);
        felt pv = rows[rank][col];
        for (std::size_t i = rank + 1; i < nr; ++i) {
            felt c = rows[i][col];
            if (!c) continue;
            for (std::size_t j = col; j < nc; ++j)
                rows[i][j] = F.sub(F.mul(pv, rows[i][j]), F.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

std::uint64_t lcm_upto(unsigned k) {
    std::uint64_t l = 1;
    for (unsigned i = 2; i <= k; ++i) l = std::lcm(l, static_cast<std::uint64_t>(i));
    return l;
}

}  // namespace

PvaReport is_p_very_ample(const CurveModel& c, const LineBundleSpec& B, int p, std::uint32_t N) {
    if (p < 0) throw UnsupportedError("p must be nonnegative");
    if (N < 1) throw UnsupportedError("N must be positive");
    PvaReport rep;
    rep.label_B = c.bundle_label(B);
    rep.p = p;
    rep.N = N;
    rep.exhaustive = N >= lcm_upto(static_cast<unsigned>(p + 1));

    const Field Fq = c.extension_field(N);
    SectionBasis basis = c.sections_basis(B);
    const std::size_t h0 = basis.dim();
    const unsigned deg = static_cast<unsigned>(p) + 1;
    std::vector<CurvePoint> pts = c.points_over(N);
    rep.n_points = pts.size();

    // jets of every section to order p+1 at every point, computed once
    std::vector<std::vector<std::vector<felt>>> jets(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) jets[i] = c.jet_rows(basis, pts[i], deg);

    // multiset odometer over point indices <= m with maximum exactly m;
    // blocks of m are scanned in order so the reported witness is the first
    // in enumeration order regardless of thread count
    struct Hit {
        std::uint64_t counter = ~0ull;
        std::vector<unsigned> idx;
    };
    std::uint64_t total_checked = 0;

    auto scan_m = [&](std::size_t m, Hit& hit, std::uint64_t& checked) {
        std::vector<unsigned> idx(deg, 0);  // nondecreasing, last fixed to m
        idx.back() = static_cast<unsigned>(m);
        std::uint64_t counter = 0;
        std::vector<std::vector<felt>> rows;
        while (true) {
            // assemble jet rows for the multiset
            rows.clear();
            std::size_t a = 0;
            while (a < deg) {
                std::size_t b = a;
                while (b < deg && idx[b] == idx[a]) ++b;
                unsigned mult = static_cast<unsigned>(b - a);
                const auto& J = jets[idx[a]];
                for (unsigned l = 0; l < mult; ++l) rows.push_back(J[l]);
                a = b;
            }
            ++checked;
            if (small_rank(Fq, rows) < deg) {
                hit.counter = counter;
                hit.idx = idx;
                return;
            }
            ++counter;
            // next nondecreasing tuple, last entry pinned to m: advance the
            // lowest position that has room, resetting everything below it
            int t = 0;
            while (t <= static_cast<int>(deg) - 2) {
                unsigned cap = (t + 1 <= static_cast<int>(deg) - 2) ? idx[t + 1] : static_cast<unsigned>(m);
                if (idx[t] < cap) {
                    ++idx[t];
                    for (int u = 0; u < t; ++u) idx[u] = 0;
                    break;
                }
                ++t;
            }
            if (t > static_cast<int>(deg) - 2) return;
        }
    };

    if (h0 < deg) {
        // fewer sections than conditions: any divisor is a witness
        if (!pts.empty()) {
            EffectiveDivisor xi;
            xi.points.push_back({pts[0], deg});
            std::vector<std::vector<felt>> rows = jets.empty() ? std::vector<std::vector<felt>>{} : jets[0];
            rows.resize(deg, std::vector<felt>(h0, 0));
            rep.p_very_ample = false;
            rep.witness = xi;
            rep.witness_rank = small_rank(Fq, rows);
            rep.n_divisors = 1;
            return rep;
        }
    }

    const std::size_t block = 64;
    bool found = false;
    Hit best;
    for (std::size_t m0 = 0; m0 < pts.size() && !found; m0 += block) {
        std::size_t m1 = std::min(m0 + block, pts.size());
        std::vector<Hit> hits(m1 - m0);
        std::vector<std::uint64_t> counts(m1 - m0, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (long long m = static_cast<long long>(m0); m < static_cast<long long>(m1); ++m) {
            scan_m(static_cast<std::size_t>(m), hits[m - m0], counts[m - m0]);
        }
        for (std::size_t t = 0; t < hits.size(); ++t) {
            total_checked += counts[t];
            if (!found && hits[t].counter != ~0ull) {
                best = hits[t];
                found = true;
            }
        }
    }
    rep.n_divisors = total_checked;
    if (!found) {
        rep.p_very_ample = true;
        return rep;
    }
    // rebuild the witness divisor
    EffectiveDivisor xi;
    std::size_t a = 0;
    while (a < best.idx.size()) {
        std::size_t b = a;
        while (b < best.idx.size() && best.idx[b] == best.idx[a]) ++b;
        xi.points.push_back({pts[best.idx[a]], static_cast<unsigned>(b - a)});
        a = b;
    }
    rep.p_very_ample = false;
    rep.witness = xi;
    DenseMatrix jm = c.jet_matrix(B, xi);
    rep.witness_rank = rank_dense_oracle(jm, Fq);
    return rep;
}

std::uint64_t count_failing_divisors(const CurveModel& c, const LineBundleSpec& B, int p,
                                     std::uint32_t N) {
    if (p < 0 || N < 1) throw UnsupportedError("p >= 0 and N >= 1 required");
    const Field Fq = c.extension_field(N);
    SectionBasis basis = c.sections_basis(B);
    const unsigned deg = static_cast<unsigned>(p) + 1;
    std::vector<CurvePoint> pts = c.points_over(N);
    std::vector<std::vector<std::vector<felt>>> jets(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) jets[i] = c.jet_rows(basis, pts[i], deg);

    std::uint64_t total = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : total)
#endif
    for (long long m = 0; m < static_cast<long long>(pts.size()); ++m) {
        std::vector<unsigned> idx(deg, 0);
        idx.back() = static_cast<unsigned>(m);
        std::vector<std::vector<felt>> rows;
        while (true) {
            rows.clear();
            std::size_t a = 0;
            while (a < deg) {
                std::size_t b2 = a;
                while (b2 < deg && idx[b2] == idx[a]) ++b2;
                for (std::size_t l = a; l < b2; ++l) rows.push_back(jets[idx[a]][l - a]);
                a = b2;
            }
            if (small_rank(Fq, rows) < deg) ++total;
            int t = 0;
            while (t <= static_cast<int>(deg) - 2) {
                unsigned cap = (t + 1 <= static_cast<int>(deg) - 2) ? idx[t + 1] : static_cast<unsigned>(m);
                if (idx[t] < cap) {
                    ++idx[t];
                    for (int u = 0; u < t; ++u) idx[u] = 0;
                    break;
                }
                ++t;
            }
            if (t > static_cast<int>(deg) - 2) break;
        }
    }
    return total;
}

GammaEstimate gamma_p_estimate(const CurveModel& c, const LineBundleSpec& B, int p,
                               std::uint32_t N_lo, std::uint32_t N_hi) {
    if (N_hi <= N_lo) throw UnsupportedError("need N_hi > N_lo");
    GammaEstimate est;
    est.N_lo = N_lo;
    est.N_hi = N_hi;
    est.count_lo = count_failing_divisors(c, B, p, N_lo);
    est.count_hi = count_failing_divisors(c, B, p, N_hi);
    if (est.count_lo == 0 || est.count_hi == 0) return est;
    double ratio = std::log(static_cast<double>(est.count_hi) / static_cast<double>(est.count_lo));
    double step = (N_hi - N_lo) * std::log(static_cast<double>(c.base_field().characteristic()));
    est.gamma = static_cast<int>(std::lround(ratio / step));
    return est;
}

TheoremBReport theoremB_check(const CurveModel& c, const LineBundleSpec& B, int p,
                              const LineBundleSpec& L, std::uint32_t N) {
    TheoremBReport rep;
    rep.deg_L = c.bundle_degree(L);
    rep.bound = effective_bound(p, c.genus(), c.bundle_degree(B));
    rep.bound_met = rep.deg_L > rep.bound;
    rep.pva = is_p_very_ample(c, B, p, N);
    SectionSystem ss = build_section_system(c, B, L, 0, 2);
    rep.k_p1 = koszul_dim(ss, p, 1);
    if (rep.pva.p_very_ample) {
        if (!rep.bound_met)
            rep.status = TheoremBReport::Status::BoundNotMet;
        else
            rep.status = rep.k_p1 == 0 ? TheoremBReport::Status::Pass : TheoremBReport::Status::Fail;
    } else {
        rep.status = rep.k_p1 > 0 ? TheoremBReport::Status::Pass : TheoremBReport::Status::Fail;
    }
    return rep;
}

namespace {

long long igcd(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

Frac frac_norm(long long n, long long d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = igcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return {n, d};
}

Frac frac_add(Frac a, Frac b) { return frac_norm(a.num * b.den + b.num * a.den, a.den * b.den); }
Frac frac_mul(Frac a, Frac b) { return frac_norm(a.num * b.num, a.den * b.den); }

}  // namespace

GrowthReport fit_growth_samples(std::vector<std::pair<long long, long long>> samples,
                                std::optional<int> expected_degree) {
    GrowthReport rep;
    rep.samples = std::move(samples);
    rep.expected_degree = expected_degree;
    const long long d_lo = rep.samples.front().first;

    // forward differences at step 1
    std::size_t s = rep.samples.size();
    std::vector<std::vector<long long>> diff(s);
    diff[0].resize(s);
    for (std::size_t i = 0; i < s; ++i) diff[0][i] = rep.samples[i].second;
    int top_nonzero = 0;
    for (std::size_t j = 1; j < s; ++j) {
        diff[j].resize(s - j);
        for (std::size_t i = 0; i + j < s; ++i) diff[j][i] = diff[j - 1][i + 1] - diff[j - 1][i];
        for (long long v : diff[j])
            if (v != 0) top_nonzero = static_cast<int>(j);
    }
    if (top_nonzero == static_cast<int>(s) - 1 && diff[s - 1][0] != 0) {
        rep.status = GrowthReport::Status::NotPolynomial;
        rep.pass = false;
        return rep;
    }
    rep.fitted_degree = top_nonzero;
    for (int j = 0; j <= top_nonzero; ++j) rep.newton_coeffs.push_back(diff[j][0]);

    // expand P(d) = sum_j diff_j * C(d - d0, j) into monomial coefficients
    std::vector<Frac> coeffs(top_nonzero + 1, Frac{0, 1});
    for (int j = 0; j <= top_nonzero; ++j) {
        // C(x, j) = prod_{t=0}^{j-1} (x - d0 - t) / j!
        std::vector<Frac> poly{Frac{1, 1}};
        long long fact = 1;
        for (int t = 0; t < j; ++t) {
            fact *= (t + 1);
            std::vector<Frac> next(poly.size() + 1, Frac{0, 1});
            for (std::size_t u = 0; u < poly.size(); ++u) {
                next[u + 1] = frac_add(next[u + 1], poly[u]);
                next[u] = frac_add(next[u], frac_mul(poly[u], Frac{-(d_lo + t), 1}));
            }
            poly = std::move(next);
        }
        for (std::size_t u = 0; u < poly.size(); ++u)
            coeffs[u] = frac_add(coeffs[u], frac_mul(poly[u], frac_norm(rep.newton_coeffs[j], fact)));
    }
    rep.coeffs = coeffs;

    // the fitted polynomial must reproduce every sample exactly
    for (const auto& [d, v] : rep.samples) {
        Frac acc{0, 1};
        Frac dp{1, 1};
        for (std::size_t u = 0; u < coeffs.size(); ++u) {
            acc = frac_add(acc, frac_mul(coeffs[u], dp));
            dp = frac_mul(dp, Frac{d, 1});
        }
        if (acc.den != 1 || acc.num != v) throw std::logic_error("interpolation failed to reproduce a sample");
    }

    rep.status = GrowthReport::Status::Fitted;
    rep.pass = !expected_degree || rep.fitted_degree == *expected_degree;
    return rep;
}

GrowthReport growth_fit(const CurveModel& c, const LineBundleSpec& B, int p, int q,
                        const LineBundleSpec& A, long long d_lo, long long d_hi,
                        std::optional<int> expected_degree,
                        const std::vector<CurvePoint>& fixed_minus) {
    if (A.twist <= 0 || !A.minus_points.empty())
        throw UnsupportedError("the progression base A must be a positive twist");
    if (!fixed_minus.empty() && q != 0)
        throw UnsupportedError("a fixed subtracted divisor is only supported for the q = 0 strand");
    if (d_hi < d_lo + 1) throw UnsupportedError("need at least two samples");

    std::vector<std::pair<long long, long long>> samples;
    for (long long d = d_lo; d <= d_hi; ++d) {
        LineBundleSpec Ld{d * A.twist, fixed_minus};
        SectionSystem ss = build_section_system(c, B, Ld, q - 1, q + 1);
        samples.emplace_back(d, koszul_dim(ss, p, q));
    }
    GrowthReport rep = fit_growth_samples(std::move(samples), expected_degree);
    rep.p = p;
    rep.q = q;
    rep.label_B = c.bundle_label(B);
    rep.label_A = c.bundle_label(A);
    return rep;
}

bool gieseker_petri_check(const CurveModel& c, const LineBundleSpec& alpha) {
    LineBundleSpec K = c.canonical_bundle();
    LineBundleSpec rest = c.bundle_diff(K, alpha);
    MuTensor mu = c.mult_tensor(alpha, rest);
    SectionBasis HK = c.sections_basis(K);
    // flatten: rows (i,j), columns the coordinates in H0(K)
    DenseMatrix m(static_cast<std::size_t>(mu.n) * mu.wq, mu.wq1);
    for (std::uint32_t i = 0; i < mu.n; ++i)
        for (std::uint32_t j = 0; j < mu.wq; ++j)
            for (std::uint32_t k = 0; k < mu.wq1; ++k)
                m.at(static_cast<std::size_t>(i) * mu.wq + j, k) = mu.at(i, j, k);
    return rank_dense_oracle(m, c.base_field()) == HK.dim();
}

DualityReport duality_check(const CurveModel& c, const LineBundleSpec& B, const LineBundleSpec& L,
                            int p_min, int p_max) {
    LineBundleSpec K = c.canonical_bundle();
    LineBundleSpec Bd = c.bundle_diff(K, B);
    SectionSystem lhs = build_section_system(c, B, L, -1, 3);
    SectionSystem rhs = build_section_system(c, Bd, L, -1, 3);
    DualityReport rep;
    rep.r = lhs.r;
    RankCache cl, cr;
    for (int p = p_min; p <= p_max; ++p) {
        for (int q = 0; q <= 2; ++q) {
            long long a = koszul_dim(lhs, p, q, &cl);
            long long b = koszul_dim(rhs, rep.r - 1 - p, 2 - q, &cr);
            rep.pairs.push_back({p, q, a, b});
            if (a != b) rep.pass = false;
        }
    }
    return rep;
}

}  // namespace syzlab
