#include "syzlab/suite.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "syzlab/build_system.hpp"
#include "syzlab/theorems.hpp"

namespace syzlab {

namespace {

// --- curated models -------------------------------------------------------
// The genus-2 curve is y^2 = x^6 + 1: squarefree at every prime used here
// (its discriminant only carries 2 and 3), with rational points at infinity.
// The genus-3 hyperelliptic curve is y^2 = x^8 + 1, and the plane curve is
// the Fermat quartic.

FieldDesc fd(std::uint64_t p) {
    FieldDesc d;
    d.characteristic = p;
    return d;
}

CurveModel curated_g2(std::uint64_t p) {
    return CurveModel::hyperelliptic(fd(p), {1, 0, 0, 0, 0, 0, 1});
}

CurveModel curated_g3(std::uint64_t p) {
    return CurveModel::hyperelliptic(fd(p), {1, 0, 0, 0, 0, 0, 0, 0, 1});
}

CurveModel curated_quartic(std::uint64_t p) {
    return CurveModel::plane_curve(fd(p), {{4, 0, 0, 1}, {0, 4, 0, 1}, {0, 0, 4, 1}});
}

SectionSystem twisted_cubic(std::uint64_t p) {
    auto line = CurveModel::rational_line(fd(p));
    return build_section_system(line, {0, {}}, {3, {}}, -1, 4);
}

struct Budget {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

struct Check {
    bool ok = true;
    std::ostringstream detail;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

// nonvanishing range of a strip as a closed interval; {lo > hi} when empty
std::pair<int, int> nonzero_range(const BettiTable& tab, int q, int p_hi) {
    int lo = 1, hi = 0;
    for (int p = 0; p <= p_hi; ++p) {
        if (tab.at(p, q) != 0) {
            if (lo > hi) lo = p;
            hi = p;
        }
    }
    if (lo > hi) return {1, 0};
    // the range must be a single contiguous interval of nonzero entries
    for (int p = lo; p <= hi; ++p)
        if (tab.at(p, q) == 0) return {-2, -3};  // not an interval: poisoned result
    return {lo, hi};
}

// --- criteria -------------------------------------------------------------

SparseMatrix testmatrix(const Field& F, std::size_t rows, std::size_t cols, double density,
                        std::mt19937_64& rng) {
    SparseMatrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> val(1, F.order() - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng) < density) m.set(i, j, val(rng));
    m.finalize();
    return m;
}

SparseMatrix boundedmatrix(const Field& F, std::size_t rows, std::size_t cols, std::size_t r,
                           std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> val(0, F.order() - 1);
    DenseMatrix A(rows, r), B(r, cols);
    for (auto& x : A.a) x = val(rng);
    for (auto& x : B.a) x = val(rng);
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            felt acc = 0;
            for (std::size_t k = 0; k < r; ++k) acc = F.add(acc, F.mul(A.at(i, k), B.at(k, j)));
            if (acc) m.set(i, j, acc);
        }
    m.finalize();
    return m;
}

bool compose_zero(const SparseMatrix& A, const SparseMatrix& B, const Field& F) {
    if (A.n_cols() != B.n_rows()) return false;
    std::vector<felt> acc(B.n_cols(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < A.n_rows(); ++i) {
        touched.clear();
        for (const auto& [k, va] : A.row(i))
            for (const auto& [j, vb] : B.row(k)) {
                if (!acc[j]) touched.push_back(j);
                acc[j] = F.add(acc[j], F.mul(va, vb));
            }
        bool zero = true;
        for (std::uint32_t j : touched) {
            if (acc[j]) zero = false;
            acc[j] = 0;
        }
        if (!zero) return false;
    }
    return true;
}

CriterionResult crit1() {
    Budget b;
    Check c;
    std::mt19937_64 rng(0xC0FFEE);
    std::size_t count = 0;
    auto run_field = [&](const Field& F, int n_random, int n_bounded, std::size_t maxdim) {
        std::uniform_int_distribution<std::size_t> dim(1, maxdim);
        std::uniform_real_distribution<double> dens(0.005, 0.05);
        for (int t = 0; t < n_random; ++t) {
            std::size_t r = dim(rng), cc = dim(rng);
            SparseMatrix m = testmatrix(F, r, cc, dens(rng), rng);
            std::size_t rs = rank_sparse(m, F);
            std::size_t rd = rank_dense_oracle(m.to_dense(), F);
            c.expect(rs == rd, "rank mismatch on random matrix");
            ++count;
        }
        for (int t = 0; t < n_bounded; ++t) {
            std::uniform_int_distribution<std::size_t> dim2(10, maxdim);
            std::size_t r = dim2(rng), cc = dim2(rng);
            std::uniform_int_distribution<std::size_t> rk(1, std::min(r, cc));
            SparseMatrix m = boundedmatrix(F, r, cc, rk(rng), rng);
            std::size_t rs = rank_sparse(m, F);
            std::size_t rd = rank_dense_oracle(m.to_dense(), F);
            c.expect(rs == rd, "rank mismatch on bounded-rank matrix");
            ++count;
        }
    };
    Field F101(101);
    Field Fext(101, 2);
    run_field(F101, 40, 25, 500);
    run_field(Fext, 20, 15, 160);
    c.expect(count >= 100, "fewer than 100 instances");
    double sec = b.seconds();
    c.expect(sec < 60.0, "over the 1 minute budget");
    c.detail << "; " << count << " matrices in " << sec << " s";
    return {"1", "oracle equivalence rank_sparse vs dense on random matrices", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit2() {
    Budget b;
    Check c;
    Field F(101);
    // twisted cubic: every adjacent pair in the window
    SectionSystem tc = twisted_cubic(101);
    c.expect(validate_section_system(tc).pass, "twisted cubic mu-commutativity");
    for (int q = 0; q <= 3; ++q)
        for (int p = 1; p + 1 <= tc.n(); ++p) {
            auto a = assemble_differential(tc, p, q);
            auto d = assemble_differential(tc, p + 1, q - 1);
            c.expect(compose_zero(a.matrix, d.matrix, F), "d o d != 0 on twisted cubic");
        }
    // genus-2 systems, both B = O and B = K
    auto h2 = curated_g2(101);
    for (auto B : {LineBundleSpec{0, {}}, h2.canonical_bundle()}) {
        SectionSystem ss = build_section_system(h2, B, {4, {}}, -1, 3);
        c.expect(validate_section_system(ss).pass, "genus-2 mu-commutativity");
        for (int q = 0; q <= 2; ++q)
            for (int p = 1; p + 1 <= ss.n(); ++p) {
                auto a = assemble_differential(ss, p, q);
                auto d = assemble_differential(ss, p + 1, q - 1);
                c.expect(compose_zero(a.matrix, d.matrix, F), "d o d != 0 on genus-2 system");
            }
    }
    // quartic with B = K: exhaustive commutativity, composition at small p
    auto q4 = curated_quartic(101);
    SectionSystem qs = build_section_system(q4, q4.canonical_bundle(), {4, {}}, -1, 3);
    c.expect(validate_section_system(qs).pass, "quartic mu-commutativity");
    for (int q = 0; q <= 2; ++q)
        for (int p = 1; p <= 3; ++p) {
            auto a = assemble_differential(qs, p, q);
            auto d = assemble_differential(qs, p + 1, q - 1);
            c.expect(compose_zero(a.matrix, d.matrix, F), "d o d != 0 on quartic system");
        }
    double sec = b.seconds();
    c.expect(sec < 60.0, "over the 1 minute budget");
    return {"2", "complex soundness: d o d = 0 and exhaustive mu-commutativity", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit3() {
    Budget b;
    Check c;
    SectionSystem tc = twisted_cubic(101);
    c.expect(koszul_dim(tc, 1, 1) == 3, "K_{1,1} != 3");
    c.expect(koszul_dim(tc, 2, 1) == 2, "K_{2,1} != 2");
    c.expect(koszul_dim_oracle(tc, 1, 1) == 3, "oracle K_{1,1} != 3");
    c.expect(koszul_dim_oracle(tc, 2, 1) == 2, "oracle K_{2,1} != 2");
    for (int p = 0; p <= 4; ++p) {
        c.expect(koszul_dim(tc, p, 2) == 0, "K_{p,2} != 0");
        c.expect(koszul_dim_oracle(tc, p, 2) == 0, "oracle K_{p,2} != 0");
    }
    double sec = b.seconds();
    c.expect(sec < 5.0, "over the 5 second budget");
    return {"3", "twisted cubic Betti shape (3 quadrics, 2 syzygies, empty q=2 row)", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit4() {
    Budget b;
    Check c;
    auto h2 = curated_g2(101);
    DualityReport rep = duality_check(h2, {0, {}}, {4, {}}, 0, 6);
    c.expect(rep.r == 6, "r != 6");
    c.expect(rep.pairs.size() == 21, "pair count");
    for (const auto& pr : rep.pairs) {
        if (pr.lhs != pr.rhs) {
            std::ostringstream os;
            os << "mismatch at (" << pr.p << "," << pr.q << "): " << pr.lhs << " vs " << pr.rhs;
            c.expect(false, os.str());
        }
    }
    double sec = b.seconds();
    c.expect(sec < 120.0, "over the 2 minute budget");
    return {"4", "duality K_{p,q}(O;L) = K_{5-p,2-q}(K;L) on the genus-2 curve", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit5() {
    Budget b;
    Check c;
    auto h2 = curated_g2(101);
    GonalityReport a = gonality_from_syzygies(h2, {5, {}}, 6);
    c.expect(a.gonality_estimate == 2, "hyperelliptic estimate != 2");
    c.expect(a.bound_ok, "hyperelliptic bound not met");
    double t_a = b.seconds();
    c.expect(t_a < 600.0, "(a) over the 10 minute budget");

    Budget b2;
    auto q4 = curated_quartic(101);
    GonalityReport r = gonality_from_syzygies(q4, {4, {}}, 6);
    c.expect(r.gonality_estimate == 3, "quartic estimate != 3");
    c.expect(r.bound_ok, "quartic bound not met");
    double t_b = b2.seconds();
    c.expect(t_b < 600.0, "(b) over the 10 minute budget");
    std::ostringstream os;
    os << "estimates 2 and 3 in " << t_a << " s / " << t_b << " s";
    c.detail << (c.detail.str().empty() ? "" : "; ") << os.str();
    return {"5", "gonality readout from the K_{p,1}(C,K;L) scan", c.ok, b.seconds(), c.detail.str()};
}

void check_strips(Check& c, const CurveModel& curve, const LineBundleSpec& B,
                  const LineBundleSpec& L, const char* tag) {
    SectionSystem direct = build_section_system(curve, B, L, -1, 3);
    LineBundleSpec Bd = curve.bundle_diff(curve.canonical_bundle(), B);
    SectionSystem dual = build_section_system(curve, Bd, L, -1, 3);
    int r = direct.r;
    BettiTable tab = betti_table(direct, &dual, 0, r, 0, 2);

    long long h0 = curve.sections_basis(B).dim();
    long long degB = curve.bundle_degree(B);
    long long h1 = h0 - degB - 1 + curve.genus();
    GreenRanges pred = green_range_predict(h0, h1, r);

    auto [lo0, hi0] = nonzero_range(tab, 0, r);
    auto [lo2, hi2] = nonzero_range(tab, 2, r);
    std::ostringstream os;
    os << tag << ": K0 [" << lo0 << "," << hi0 << "] vs [" << pred.k0_lo << "," << pred.k0_hi
       << "], K2 [" << lo2 << "," << hi2 << "] vs [" << pred.k2_lo << "," << pred.k2_hi << "]";
    bool ok0 = (lo0 > hi0 && pred.k0_lo > pred.k0_hi) || (lo0 == pred.k0_lo && hi0 == pred.k0_hi);
    bool ok2 = (lo2 > hi2 && pred.k2_lo > pred.k2_hi) || (lo2 == pred.k2_lo && hi2 == pred.k2_hi);
    c.expect(ok0 && ok2, os.str());
}

CriterionResult crit6() {
    Budget b;
    Check c;
    auto h2 = curated_g2(101);
    check_strips(c, h2, {0, {}}, {5, {}}, "g2 B=O");
    check_strips(c, h2, h2.canonical_bundle(), {5, {}}, "g2 B=K");
    auto q4 = curated_quartic(101);
    check_strips(c, q4, {0, {}}, {4, {}}, "quartic B=O");
    check_strips(c, q4, q4.canonical_bundle(), {4, {}}, "quartic B=K");
    double sec = b.seconds();
    c.expect(sec < 600.0, "over the 10 minute budget");
    return {"6", "K_{p,0} and K_{p,2} nonvanishing strips match the predicted ranges", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit7() {
    Budget b;
    Check c;
    auto q4 = curated_quartic(101);
    TheoremBReport r1 = theoremB_check(q4, {1, {}}, 1, {5, {}}, 2);
    c.expect(r1.bound == 16 && r1.deg_L == 20, "bound arithmetic");
    c.expect(r1.pva.p_very_ample, "O(1) should be 1-very-ample");
    c.expect(r1.pva.exhaustive, "p=1 enumeration over F_{101^2} should be exhaustive");
    c.expect(r1.k_p1 == 0, "K_{1,1}(O(1);O(5)) != 0");
    c.expect(r1.status == TheoremBReport::Status::Pass, "p=1 verdict");

    TheoremBReport r2 = theoremB_check(q4, {1, {}}, 2, {5, {}}, 2);
    c.expect(!r2.pva.p_very_ample, "O(1) should fail 2-very-ampleness");
    c.expect(r2.pva.witness.has_value(), "collinear witness missing");
    if (r2.pva.witness) {
        c.expect(r2.pva.witness->degree() == 3, "witness degree");
        c.expect(r2.pva.witness_rank == 2, "witness should span a pencil (rank 2)");
    }
    c.expect(r2.k_p1 > 0, "K_{2,1}(O(1);O(5)) == 0");
    c.expect(r2.status == TheoremBReport::Status::Pass, "p=2 verdict");
    double sec = b.seconds();
    c.expect(sec < 600.0, "over the 10 minute budget");
    return {"7", "weight-one vanishing iff p-very-ample at the effective bound", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit8() {
    Budget b;
    Check c;
    auto h2 = curated_g2(101);
    GrowthReport a = growth_fit(h2, h2.canonical_bundle(), 1, 1, {1, {}}, 5, 9, 1);
    c.expect(a.status == GrowthReport::Status::Fitted, "(a) differences failed to stabilize");
    c.expect(a.fitted_degree == 1, "(a) fitted degree != 1");
    double t_a = b.seconds();
    c.expect(t_a < 1200.0, "(a) over the 20 minute budget");

    Budget b2;
    auto q4 = curated_quartic(101);
    GrowthReport r = growth_fit(q4, {1, {}}, 2, 1, {1, {}}, 5, 10, 2);
    c.expect(r.status == GrowthReport::Status::Fitted, "(b) differences failed to stabilize");
    c.expect(r.fitted_degree == 2, "(b) fitted degree != 2");
    double t_b = b2.seconds();
    c.expect(t_b < 1200.0, "(b) over the 20 minute budget");
    std::ostringstream os;
    os << "degrees 1 and 2 in " << t_a << " s / " << t_b << " s";
    c.detail << (c.detail.str().empty() ? "" : "; ") << os.str();
    return {"8", "dim K_{p,1}(B;L_d) grows as a polynomial of the predicted degree", c.ok,
            b.seconds(), c.detail.str()};
}

CriterionResult crit9() {
    Budget b;
    Check c;
    auto q4 = curated_quartic(101);
    GrowthReport r = growth_fit(q4, {1, {}}, 1, 0, {1, {}}, 5, 10, 1);
    c.expect(r.status == GrowthReport::Status::Fitted, "differences failed to stabilize");
    c.expect(r.fitted_degree == 1, "fitted degree != 1 = r(B) - p");
    double sec = b.seconds();
    c.expect(sec < 600.0, "over the 10 minute budget");
    return {"9", "dim K_{1,0}(O(1);O(d)) grows with degree r(B) - p = 1", c.ok, sec, c.detail.str()};
}

CriterionResult crit10() {
    Budget b;
    Check c;
    c.expect(gieseker_petri_check(curated_g2(101), {1, {}}), "genus 2 g^1_2");
    c.expect(gieseker_petri_check(curated_g3(101), {1, {}}), "genus 3 g^1_2");
    double sec = b.seconds();
    c.expect(sec < 1.0, "over the 1 second budget");
    return {"10", "Gieseker-Petri surjectivity for the hyperelliptic pencils", c.ok, sec,
            c.detail.str()};
}

CriterionResult crit11() {
    Budget b;
    Check c;
    const std::vector<std::uint64_t> primes{101, 499, 1009};

    // criterion 3 table per prime
    std::vector<std::vector<long long>> cubic_dims;
    for (auto p : primes) {
        SectionSystem tc = twisted_cubic(p);
        std::vector<long long> dims;
        for (int q = 0; q <= 2; ++q)
            for (int pp = 0; pp <= 4; ++pp) dims.push_back(koszul_dim(tc, pp, q));
        cubic_dims.push_back(std::move(dims));
    }
    for (std::size_t i = 1; i < cubic_dims.size(); ++i)
        c.expect(cubic_dims[i] == cubic_dims[0], "twisted cubic table differs between primes");

    // criterion 4 table per prime
    std::vector<std::vector<long long>> dual_dims;
    for (auto p : primes) {
        auto h2 = curated_g2(p);
        DualityReport rep = duality_check(h2, {0, {}}, {4, {}}, 0, 6);
        c.expect(rep.pass, "duality fails at prime " + std::to_string(p));
        std::vector<long long> dims;
        for (const auto& pr : rep.pairs) {
            dims.push_back(pr.lhs);
            dims.push_back(pr.rhs);
        }
        dual_dims.push_back(std::move(dims));
    }
    for (std::size_t i = 1; i < dual_dims.size(); ++i)
        c.expect(dual_dims[i] == dual_dims[0], "duality table differs between primes");

    // criterion 5 scans per prime
    std::vector<std::vector<long long>> scans;
    for (auto p : primes) {
        std::vector<long long> s;
        GonalityReport a = gonality_from_syzygies(curated_g2(p), {5, {}}, 6);
        c.expect(a.gonality_estimate == 2, "estimate != 2 at prime " + std::to_string(p));
        for (const auto& [pp, k] : a.scan) s.push_back(k);
        GonalityReport r = gonality_from_syzygies(curated_quartic(p), {4, {}}, 6);
        c.expect(r.gonality_estimate == 3, "estimate != 3 at prime " + std::to_string(p));
        for (const auto& [pp, k] : r.scan) s.push_back(k);
        scans.push_back(std::move(s));
    }
    for (std::size_t i = 1; i < scans.size(); ++i)
        c.expect(scans[i] == scans[0], "gonality scans differ between primes");

    return {"11", "criteria 3-5 rerun at primes {101, 499, 1009} give identical tables", c.ok,
            b.seconds(), c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const std::vector<int>& which) {
    auto want = [&](int id) {
        if (which.empty()) return true;
        for (int w : which)
            if (w == id) return true;
        return false;
    };
    std::vector<CriterionResult> out;
    if (want(1)) out.push_back(crit1());
    if (want(2)) out.push_back(crit2());
    if (want(3)) out.push_back(crit3());
    if (want(4)) out.push_back(crit4());
    if (want(5)) out.push_back(crit5());
    if (want(6)) out.push_back(crit6());
    if (want(7)) out.push_back(crit7());
    if (want(8)) out.push_back(crit8());
    if (want(9)) out.push_back(crit9());
    if (want(10)) out.push_back(crit10());
    if (want(11)) out.push_back(crit11());
    return out;
}

}  // namespace syzlab
