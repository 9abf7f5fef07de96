#include "syzlab/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "syzlab/errors.hpp"
#include "syzlab/exterior.hpp"

namespace syzlab {

namespace {

// degree-k trivariate monomials, ordered by x-exponent descending then
// y-exponent descending
std::size_t mono_count(unsigned k) { return static_cast<std::size_t>(k + 1) * (k + 2) / 2; }

std::size_t mono_index(unsigned a, unsigned b, unsigned k) {
    unsigned s = k - a;
    return static_cast<std::size_t>(s) * (s + 1) / 2 + (s - b);
}

std::array<unsigned, 3> mono_exps(std::size_t idx, unsigned k) {
    unsigned s = 0;
    while (static_cast<std::size_t>(s + 1) * (s + 2) / 2 <= idx) ++s;
    std::size_t base = static_cast<std::size_t>(s) * (s + 1) / 2;
    unsigned b = s - static_cast<unsigned>(idx - base);
    unsigned a = k - s;
    return {a, b, k - a - b};
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

// ---------------------------------------------------------------------------
// construction and validation

CurveModel CurveModel::rational_line(const FieldDesc& fd) {
    CurveModel c;
    c.variant_ = CurveVariant::RationalLine;
    c.F_ = std::make_shared<Field>(fd);
    if (c.F_->degree() != 1) throw UnsupportedError("curve base fields must be prime fields");
    c.genus_ = 0;
    c.id_ = "P1/F" + std::to_string(c.F_->characteristic());
    return c;
}

CurveModel CurveModel::hyperelliptic(const FieldDesc& fd, const std::vector<long long>& f_coeffs) {
    CurveModel c;
    c.variant_ = CurveVariant::Hyperelliptic;
    c.F_ = std::make_shared<Field>(fd);
    const Field& F = *c.F_;
    if (F.degree() != 1) throw UnsupportedError("curve base fields must be prime fields");
    if (F.characteristic() == 2) throw BadCharacteristicError("hyperelliptic model needs odd characteristic");
    for (long long v : f_coeffs) c.hyper_f_.push_back(F.from_int(v));
    poly::trim(c.hyper_f_);
    int df = poly::deg(c.hyper_f_);
    if (df < 3) throw UnsupportedError("hyperelliptic f must have degree >= 3");
    poly::Poly g = poly::gcd(F, c.hyper_f_, poly::derivative(F, c.hyper_f_));
    if (poly::deg(g) != 0) throw NotSquarefreeError("hyperelliptic f has a repeated root");
    c.genus_ = (df - 1) / 2;
    c.hyper_even_ = (df % 2) == 0;
    std::ostringstream os;
    os << "hyperelliptic-g" << c.genus_ << "/F" << F.characteristic();
    c.id_ = os.str();
    return c;
}

CurveModel CurveModel::plane_curve(const FieldDesc& fd,
                                   const std::vector<std::array<long long, 4>>& terms) {
    CurveModel c;
    c.variant_ = CurveVariant::PlaneCurve;
    c.F_ = std::make_shared<Field>(fd);
    const Field& F = *c.F_;
    if (F.degree() != 1) throw UnsupportedError("curve base fields must be prime fields");
    long long d = -1;
    for (const auto& t : terms) {
        if (t[0] < 0 || t[1] < 0 || t[2] < 0) throw ConfigError("negative exponent in plane curve");
        long long deg = t[0] + t[1] + t[2];
        if (d == -1) d = deg;
        if (deg != d) throw ConfigError("plane curve polynomial must be homogeneous");
    }
    if (d <= 0) throw ConfigError("plane curve needs positive degree");
    c.plane_deg_ = static_cast<unsigned>(d);
    // combine duplicate terms
    std::vector<felt> grid(mono_count(c.plane_deg_), 0);
    for (const auto& t : terms) {
        std::size_t idx = mono_index(static_cast<unsigned>(t[0]), static_cast<unsigned>(t[1]), c.plane_deg_);
        grid[idx] = F.add(grid[idx], F.from_int(t[3]));
    }
    bool any = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!grid[i]) continue;
        any = true;
        auto e = mono_exps(i, c.plane_deg_);
        c.plane_exps_.push_back(e);
        c.plane_coeffs_.push_back(grid[i]);
    }
    if (!any) throw ConfigError("plane curve polynomial is zero");
    c.genus_ = static_cast<long long>(c.plane_deg_ - 1) * (c.plane_deg_ - 2) / 2;
    c.check_plane_smooth();
    std::ostringstream os;
    os << "plane-d" << c.plane_deg_ << "-g" << c.genus_ << "/F" << F.characteristic();
    c.id_ = os.str();
    return c;
}

namespace {

// bivariate polynomials on a (deg+1)x(deg+1) grid, index a*(cap+1)+b
struct BiPoly {
    unsigned cap = 0;
    std::vector<felt> a;
    felt& at(unsigned i, unsigned j) { return a[static_cast<std::size_t>(i) * (cap + 1) + j]; }
    felt at(unsigned i, unsigned j) const { return a[static_cast<std::size_t>(i) * (cap + 1) + j]; }
    explicit BiPoly(unsigned cap_) : cap(cap_), a(static_cast<std::size_t>(cap_ + 1) * (cap_ + 1), 0) {}
    bool zero() const {
        for (felt v : a)
            if (v) return false;
        return true;
    }
    unsigned degree() const {
        unsigned d = 0;
        for (unsigned i = 0; i <= cap; ++i)
            for (unsigned j = 0; j <= cap; ++j)
                if (at(i, j)) d = std::max(d, i + j);
        return d;
    }
};

BiPoly bi_derivative(const Field& F, const BiPoly& f, bool wrt_u) {
    BiPoly g(f.cap);
    for (unsigned i = 0; i <= f.cap; ++i) {
        for (unsigned j = 0; j <= f.cap; ++j) {
            felt c = f.at(i, j);
            if (!c) continue;
            if (wrt_u && i > 0) g.at(i - 1, j) = F.add(g.at(i - 1, j), F.mul(c, F.from_int(i)));
            if (!wrt_u && j > 0) g.at(i, j - 1) = F.add(g.at(i, j - 1), F.mul(c, F.from_int(j)));
        }
    }
    return g;
}

}  // namespace

// Exact smoothness: in each affine chart the partials together with the curve
// equation must generate the unit ideal; by the effective Nullstellensatz it
// is enough to look for 1 among combinations of degree at most max(3,d)^2.
void CurveModel::check_plane_smooth() const {
    const Field& F = *F_;
    unsigned d = plane_deg_;
    unsigned D = std::max(3u, d) * std::max(3u, d);
    for (int chart = 2; chart >= 0; --chart) {
        BiPoly f(D);
        for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
            auto [ex, ey, ez] = plane_exps_[t];
            unsigned iu, iv;
            if (chart == 2) {
                iu = ex;
                iv = ey;
            } else if (chart == 1) {
                iu = ex;
                iv = ez;
            } else {
                iu = ey;
                iv = ez;
            }
            f.at(iu, iv) = F.add(f.at(iu, iv), plane_coeffs_[t]);
        }
        BiPoly fu = bi_derivative(F, f, true);
        BiPoly fv = bi_derivative(F, f, false);
        const BiPoly* gens[3] = {&f, &fu, &fv};
        std::vector<std::vector<felt>> rows;
        std::size_t width = static_cast<std::size_t>(D + 1) * (D + 1);
        for (const BiPoly* g : gens) {
            if (g->zero()) continue;
            unsigned dg = g->degree();
            for (unsigned sa = 0; sa + dg <= D; ++sa) {
                for (unsigned sb = 0; sa + sb + dg <= D; ++sb) {
                    std::vector<felt> row(width, 0);
                    for (unsigned i = 0; i <= dg; ++i)
                        for (unsigned j = 0; i + j <= dg; ++j) {
                            felt c = g->at(i, j);
                            if (c) row[static_cast<std::size_t>(i + sa) * (D + 1) + (j + sb)] = c;
                        }
                    rows.push_back(std::move(row));
                }
            }
        }
        RowBasisSolver solver(F, rows);
        std::vector<felt> one(width, 0);
        one[0] = 1;
        std::vector<felt> combo;
        if (!solver.solve(one, combo))
            throw NotSmoothError("plane curve has a singular point (chart " + std::to_string(chart) + ")");
    }
}

// ---------------------------------------------------------------------------
// bundles

long long CurveModel::ambient_multiplier() const {
    switch (variant_) {
        case CurveVariant::RationalLine: return 1;
        case CurveVariant::Hyperelliptic: return hyper_even_ ? 2 : 1;
        case CurveVariant::PlaneCurve: return plane_deg_;
    }
    return 1;
}

long long CurveModel::bundle_degree(const LineBundleSpec& lb) const {
    return lb.twist * ambient_multiplier() - static_cast<long long>(lb.minus_points.size());
}

LineBundleSpec CurveModel::canonical_bundle() const {
    switch (variant_) {
        case CurveVariant::RationalLine: return {-2, {}};
        case CurveVariant::Hyperelliptic:
            return {hyper_even_ ? genus_ - 1 : 2 * genus_ - 2, {}};
        case CurveVariant::PlaneCurve: return {static_cast<long long>(plane_deg_) - 3, {}};
    }
    return {};
}

void CurveModel::validate_bundle(const LineBundleSpec& lb) const {
    for (std::size_t i = 0; i < lb.minus_points.size(); ++i) {
        const CurvePoint& pt = lb.minus_points[i];
        if (pt.field_degree != 1) throw UnsupportedError("marked points must be rational");
        if (!point_on_curve(pt)) throw UnsupportedError("marked point does not lie on the curve");
        for (std::size_t j = i + 1; j < lb.minus_points.size(); ++j)
            if (pt == lb.minus_points[j]) throw UnsupportedError("marked points must be distinct");
    }
}

LineBundleSpec CurveModel::bundle_sum(const LineBundleSpec& a, const LineBundleSpec& b) const {
    LineBundleSpec s;
    s.twist = a.twist + b.twist;
    s.minus_points = a.minus_points;
    for (const auto& pt : b.minus_points) {
        for (const auto& q : s.minus_points)
            if (pt == q) throw UnsupportedError("bundle sum leaves the reduced-divisor family");
        s.minus_points.push_back(pt);
    }
    return s;
}

LineBundleSpec CurveModel::bundle_diff(const LineBundleSpec& a, const LineBundleSpec& b) const {
    if (!b.minus_points.empty())
        throw UnsupportedError("bundle difference would add points to the divisor");
    LineBundleSpec s = a;
    s.twist -= b.twist;
    return s;
}

std::string CurveModel::bundle_label(const LineBundleSpec& lb) const {
    std::ostringstream os;
    os << "O(" << lb.twist << ")";
    if (!lb.minus_points.empty()) os << "-E" << lb.minus_points.size();
    return os.str();
}

// ---------------------------------------------------------------------------
// plane-curve normal forms

struct CurveModel::PlaneCtx {
    unsigned k = 0;
    std::size_t n_mono = 0;
    std::vector<std::vector<felt>> red_rows;  // RREF rows spanning F * M_{k-d}
    std::vector<std::size_t> red_pivots;
    std::vector<std::size_t> free_cols;

    void normal_form(const Field& F, std::vector<felt>& v) const {
        for (std::size_t i = 0; i < red_rows.size(); ++i) {
            felt c = v[red_pivots[i]];
            if (!c) continue;
            const auto& row = red_rows[i];
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j]) v[j] = F.sub(v[j], F.mul(c, row[j]));
        }
    }
};

CurveModel::PlaneCtx CurveModel::plane_ctx(unsigned k) const {
    const Field& F = *F_;
    PlaneCtx ctx;
    ctx.k = k;
    ctx.n_mono = mono_count(k);
    unsigned d = plane_deg_;
    if (k >= d) {
        std::size_t shifts = mono_count(k - d);
        std::vector<std::vector<felt>> rows;
        rows.reserve(shifts);
        for (std::size_t s = 0; s < shifts; ++s) {
            auto [ma, mb, mc] = mono_exps(s, k - d);
            std::vector<felt> row(ctx.n_mono, 0);
            for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
                auto [ex, ey, ez] = plane_exps_[t];
                std::size_t idx = mono_index(ex + ma, ey + mb, k);
                row[idx] = F.add(row[idx], plane_coeffs_[t]);
            }
            rows.push_back(std::move(row));
        }
        // RREF with unit pivots; pivot columns are eliminated from normal forms
        std::size_t rank = 0;
        for (std::size_t col = 0; col < ctx.n_mono && rank < rows.size(); ++col) {
            std::size_t piv = rows.size();
            for (std::size_t i = rank; i < rows.size(); ++i)
                if (rows[i][col]) {
                    piv = i;
                    break;
                }
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            felt inv = F.inv(rows[rank][col]);
            for (auto& x : rows[rank]) x = F.mul(x, inv);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == rank || !rows[i][col]) continue;
                felt c = rows[i][col];
                for (std::size_t j = 0; j < ctx.n_mono; ++j)
                    if (rows[rank][j]) rows[i][j] = F.sub(rows[i][j], F.mul(c, rows[rank][j]));
            }
            ctx.red_pivots.push_back(col);
            ++rank;
        }
        rows.resize(rank);
        ctx.red_rows = std::move(rows);
    }
    std::vector<char> is_piv(ctx.n_mono, 0);
    for (std::size_t c : ctx.red_pivots) is_piv[c] = 1;
    for (std::size_t c = 0; c < ctx.n_mono; ++c)
        if (!is_piv[c]) ctx.free_cols.push_back(c);
    return ctx;
}

// ---------------------------------------------------------------------------
// section bases

namespace {

// ambient layout for hyperelliptic sections a(x) + b(x) y
struct HyperLayout {
    long long ka = -1, kb = -1;  // max degrees (negative: part absent)
    std::size_t dim_a() const { return ka >= 0 ? static_cast<std::size_t>(ka) + 1 : 0; }
    std::size_t dim_b() const { return kb >= 0 ? static_cast<std::size_t>(kb) + 1 : 0; }
    std::size_t dim() const { return dim_a() + dim_b(); }
};

HyperLayout hyper_layout(long long twist, long long g, bool even) {
    HyperLayout L;
    if (twist < 0) return L;
    if (even) {
        L.ka = twist;
        L.kb = twist - g - 1;
    } else {
        L.ka = twist / 2;
        L.kb = (twist - (2 * g + 1)) >= 0 ? (twist - (2 * g + 1)) / 2 : -1;
    }
    if (L.kb < -1) L.kb = -1;
    return L;
}

}  // namespace

SectionBasis CurveModel::sections_basis(const LineBundleSpec& lb) const {
    validate_bundle(lb);
    const Field& F = *F_;
    SectionBasis out;
    out.lb = lb;
    out.degree = bundle_degree(lb);
    if (lb.twist < 0) return out;  // ambient twist negative: zero space

    // unrestricted monomial-style basis of H0(O(twist))
    std::vector<std::vector<felt>> unres;
    switch (variant_) {
        case CurveVariant::RationalLine: {
            out.ambient_dim = static_cast<std::size_t>(lb.twist) + 1;
            for (std::size_t i = 0; i < out.ambient_dim; ++i) {
                std::vector<felt> v(out.ambient_dim, 0);
                v[i] = 1;
                unres.push_back(std::move(v));
            }
            break;
        }
        case CurveVariant::Hyperelliptic: {
            HyperLayout lay = hyper_layout(lb.twist, genus_, hyper_even_);
            out.ambient_dim = lay.dim();
            for (std::size_t i = 0; i < lay.dim(); ++i) {
                std::vector<felt> v(lay.dim(), 0);
                v[i] = 1;
                unres.push_back(std::move(v));
            }
            break;
        }
        case CurveVariant::PlaneCurve: {
            unsigned k = static_cast<unsigned>(lb.twist);
            PlaneCtx ctx = plane_ctx(k);
            out.ambient_dim = ctx.n_mono;
            for (std::size_t c : ctx.free_cols) {
                std::vector<felt> v(ctx.n_mono, 0);
                v[c] = 1;
                unres.push_back(std::move(v));
            }
            break;
        }
    }

    if (lb.minus_points.empty()) {
        out.vectors = std::move(unres);
        return out;
    }

    // impose vanishing at the marked points: kernel of the evaluation rows
    SectionBasis plain;
    plain.lb = {lb.twist, {}};
    plain.degree = lb.twist * ambient_multiplier();
    plain.ambient_dim = out.ambient_dim;
    plain.vectors = unres;
    SparseMatrix cond(lb.minus_points.size(), unres.size());
    for (std::size_t r = 0; r < lb.minus_points.size(); ++r) {
        auto rows = jet_rows(plain, lb.minus_points[r], 1);
        for (std::size_t c = 0; c < unres.size(); ++c) cond.set(r, c, rows[0][c]);
    }
    cond.finalize();
    auto combos = kernel_basis(cond, F);
    for (const auto& combo : combos) {
        std::vector<felt> v(out.ambient_dim, 0);
        for (std::size_t i = 0; i < combo.size(); ++i) {
            if (!combo[i]) continue;
            for (std::size_t j = 0; j < out.ambient_dim; ++j)
                v[j] = F.add(v[j], F.mul(combo[i], unres[i][j]));
        }
        out.vectors.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// multiplication

MuTensor CurveModel::mult_tensor(const LineBundleSpec& lb1, const LineBundleSpec& lb2) const {
    const Field& F = *F_;
    SectionBasis B1 = sections_basis(lb1);
    SectionBasis B2 = sections_basis(lb2);
    LineBundleSpec sum = bundle_sum(lb1, lb2);
    SectionBasis B3 = sections_basis(sum);
    RowBasisSolver solver(F, B3.vectors);
    MuTensor mu(static_cast<std::uint32_t>(B1.dim()), static_cast<std::uint32_t>(B2.dim()),
                static_cast<std::uint32_t>(B3.dim()));
    if (B1.dim() == 0 || B2.dim() == 0) return mu;

    // raw ambient product, then expressed in the target basis
    std::unique_ptr<PlaneCtx> ctx;
    if (variant_ == CurveVariant::PlaneCurve)
        ctx = std::make_unique<PlaneCtx>(plane_ctx(static_cast<unsigned>(sum.twist)));

    HyperLayout l1, l2, l3;
    if (variant_ == CurveVariant::Hyperelliptic) {
        l1 = hyper_layout(lb1.twist, genus_, hyper_even_);
        l2 = hyper_layout(lb2.twist, genus_, hyper_even_);
        l3 = hyper_layout(sum.twist, genus_, hyper_even_);
    }

    std::vector<felt> combo;
    for (std::uint32_t i = 0; i < mu.n; ++i) {
        for (std::uint32_t j = 0; j < mu.wq; ++j) {
            std::vector<felt> raw;
            switch (variant_) {
                case CurveVariant::RationalLine: {
                    poly::Poly a(B1.vectors[i]), b(B2.vectors[j]);
                    poly::Poly pr = poly::mul(F, a, b);
                    raw.assign(static_cast<std::size_t>(sum.twist) + 1, 0);
                    for (std::size_t t = 0; t < pr.size(); ++t) raw[t] = pr[t];
                    break;
                }
                case CurveVariant::Hyperelliptic: {
                    auto split = [](const std::vector<felt>& v, const HyperLayout& l) {
                        poly::Poly a(v.begin(), v.begin() + l.dim_a());
                        poly::Poly b(v.begin() + l.dim_a(), v.end());
                        poly::trim(a);
                        poly::trim(b);
                        return std::make_pair(a, b);
                    };
                    auto [a1, b1] = split(B1.vectors[i], l1);
                    auto [a2, b2] = split(B2.vectors[j], l2);
                    // (a1 + b1 y)(a2 + b2 y) = a1 a2 + b1 b2 f + (a1 b2 + a2 b1) y
                    poly::Poly pa = poly::add(F, poly::mul(F, a1, a2),
                                              poly::mul(F, poly::mul(F, b1, b2), hyper_f_));
                    poly::Poly pb = poly::add(F, poly::mul(F, a1, b2), poly::mul(F, a2, b1));
                    if (pa.size() > l3.dim_a() || pb.size() > l3.dim_b())
                        throw std::logic_error("hyperelliptic product exceeds pole bounds");
                    raw.assign(l3.dim(), 0);
                    for (std::size_t t = 0; t < pa.size(); ++t) raw[t] = pa[t];
                    for (std::size_t t = 0; t < pb.size(); ++t) raw[l3.dim_a() + t] = pb[t];
                    break;
                }
                case CurveVariant::PlaneCurve: {
                    unsigned k1 = static_cast<unsigned>(lb1.twist), k2 = static_cast<unsigned>(lb2.twist);
                    unsigned ks = k1 + k2;
                    raw.assign(mono_count(ks), 0);
                    const auto& v1 = B1.vectors[i];
                    const auto& v2 = B2.vectors[j];
                    for (std::size_t s = 0; s < v1.size(); ++s) {
                        if (!v1[s]) continue;
                        auto [a1, b1, c1] = mono_exps(s, k1);
                        for (std::size_t t = 0; t < v2.size(); ++t) {
                            if (!v2[t]) continue;
                            auto [a2, b2, c2] = mono_exps(t, k2);
                            std::size_t idx = mono_index(a1 + a2, b1 + b2, ks);
                            raw[idx] = F.add(raw[idx], F.mul(v1[s], v2[t]));
                        }
                    }
                    ctx->normal_form(F, raw);
                    break;
                }
            }
            if (!solver.solve(raw, combo))
                throw std::logic_error("section product lies outside the target basis span");
            for (std::uint32_t t = 0; t < mu.wq1; ++t) mu.at(i, j, t) = combo[t];
        }
    }
    return mu;
}

// ---------------------------------------------------------------------------
// points

Field CurveModel::extension_field(std::uint32_t N) const {
    if (N == 1) return Field(F_->desc());
    return Field(F_->characteristic(), N);
}

bool CurveModel::point_on_curve(const CurvePoint& pt) const {
    Field Fq = extension_field(pt.field_degree);
    switch (variant_) {
        case CurveVariant::RationalLine: return true;
        case CurveVariant::Hyperelliptic: {
            if (pt.at_infinity) {
                if (!hyper_even_) return pt.y == 0;
                return Fq.mul(pt.y, pt.y) == hyper_f_.back();
            }
            felt rhs = poly::eval(Fq, hyper_f_, pt.x);
            return Fq.mul(pt.y, pt.y) == rhs;
        }
        case CurveVariant::PlaneCurve: {
            felt acc = 0;
            for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
                auto [ex, ey, ez] = plane_exps_[t];
                felt term = plane_coeffs_[t];
                term = Fq.mul(term, Fq.pow(pt.x, ex));
                term = Fq.mul(term, Fq.pow(pt.y, ey));
                term = Fq.mul(term, Fq.pow(pt.z, ez));
                acc = Fq.add(acc, term);
            }
            return acc == 0;
        }
    }
    return false;
}

std::vector<CurvePoint> CurveModel::points_over(std::uint32_t N) const {
    Field Fq = extension_field(N);
    std::uint64_t q = Fq.order();
    std::vector<CurvePoint> pts;
    auto residue = [&](std::initializer_list<felt> coords) {
        std::uint64_t r = 1;
        for (felt c : coords) r = lcm_u64(r, Fq.residue_degree(c));
        return static_cast<std::uint32_t>(r);
    };
    switch (variant_) {
        case CurveVariant::RationalLine: {
            for (felt x = 0; x < q; ++x)
                pts.push_back({false, x, 0, 0, N, residue({x})});
            pts.push_back({true, 0, 0, 0, N, 1});
            break;
        }
        case CurveVariant::Hyperelliptic: {
            for (felt x = 0; x < q; ++x) {
                felt fx = poly::eval(Fq, hyper_f_, x);
                if (fx == 0) {
                    pts.push_back({false, x, 0, 0, N, residue({x})});
                    continue;
                }
                auto s = Fq.sqrt(fx);
                if (!s) continue;
                felt y1 = std::min(*s, Fq.neg(*s)), y2 = std::max(*s, Fq.neg(*s));
                pts.push_back({false, x, y1, 0, N, residue({x, y1})});
                pts.push_back({false, x, y2, 0, N, residue({x, y2})});
            }
            if (hyper_even_) {
                auto w = Fq.sqrt(hyper_f_.back());
                if (w && *w != 0) {
                    felt e1 = std::min(*w, Fq.neg(*w)), e2 = std::max(*w, Fq.neg(*w));
                    pts.push_back({true, 0, e1, 0, N, residue({e1})});
                    pts.push_back({true, 0, e2, 0, N, residue({e2})});
                }
            } else {
                pts.push_back({true, 0, 0, 0, N, 1});
            }
            break;
        }
        case CurveVariant::PlaneCurve: {
            unsigned d = plane_deg_;
            for (felt x = 0; x < q; ++x) {
                poly::Poly in_y(d + 1, 0);
                for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
                    auto [ex, ey, ez] = plane_exps_[t];
                    in_y[ey] = Fq.add(in_y[ey], Fq.mul(plane_coeffs_[t], Fq.pow(x, ex)));
                }
                poly::trim(in_y);
                if (poly::is_zero(in_y)) {
                    // the whole fibre lies on the curve (only for d = 1 models)
                    for (felt y = 0; y < q; ++y)
                        pts.push_back({false, x, y, 1, N, residue({x, y})});
                } else {
                    for (felt y : poly::roots(Fq, in_y))
                        pts.push_back({false, x, y, 1, N, residue({x, y})});
                }
            }
            poly::Poly at_inf(d + 1, 0);  // F(x, 1, 0)
            for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
                auto [ex, ey, ez] = plane_exps_[t];
                if (ez == 0) at_inf[ex] = Fq.add(at_inf[ex], plane_coeffs_[t]);
            }
            poly::trim(at_inf);
            for (felt x : poly::roots(Fq, at_inf))
                pts.push_back({false, x, 1, 0, N, residue({x})});
            bool x_axis_pt = true;  // (1:0:0) on curve iff coefficient of x^d vanishes
            for (std::size_t t = 0; t < plane_exps_.size(); ++t)
                if (plane_exps_[t][0] == d && plane_coeffs_[t] != 0) x_axis_pt = false;
            if (x_axis_pt) pts.push_back({false, 1, 0, 0, N, 1});
            break;
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// jets

namespace {

// evaluate a polynomial (base-field coefficients embed as-is) at a series
poly::Poly poly_at_series(const Field& Fq, const poly::Poly& f, const poly::Poly& s, std::size_t m) {
    poly::Poly acc(m, 0);
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = poly::series_mul(Fq, acc, s, m);
        if (!acc.empty())
            acc[0] = Fq.add(acc[0], f[i]);
        else if (m > 0)
            acc.assign(1, f[i]);
    }
    acc.resize(m, 0);
    return acc;
}

}  // namespace

std::vector<std::vector<felt>> CurveModel::jet_rows(const SectionBasis& basis, const CurvePoint& pt,
                                                    unsigned order) const {
    const Field Fq = extension_field(pt.field_degree);
    if (!point_on_curve(pt)) throw SingularSupportError("divisor point does not lie on the curve");
    unsigned shift = 0;
    for (const auto& mp : basis.lb.minus_points) {
        CurvePoint mp2 = mp;
        // marked points are rational; compare against pt in its own field
        mp2.field_degree = pt.field_degree;
        if (mp2 == pt) ++shift;
    }
    const unsigned m = order + shift;
    std::vector<std::vector<felt>> rows(order, std::vector<felt>(basis.dim(), 0));
    if (basis.dim() == 0) return rows;

    // per-point coordinate series, shared by all sections
    std::vector<poly::Poly> series(basis.dim());
    switch (variant_) {
        case CurveVariant::RationalLine: {
            long long k = basis.lb.twist;
            for (std::size_t s = 0; s < basis.dim(); ++s) {
                const auto& v = basis.vectors[s];
                if (!pt.at_infinity) {
                    poly::Poly f(v.begin(), v.end());
                    series[s] = poly::taylor_shift_trunc(Fq, f, pt.x, m);
                } else {
                    poly::Poly sr(m, 0);
                    for (unsigned j = 0; j < m; ++j) {
                        long long src = k - static_cast<long long>(j);
                        if (src >= 0 && src < static_cast<long long>(v.size())) sr[j] = v[src];
                    }
                    series[s] = std::move(sr);
                }
            }
            break;
        }
        case CurveVariant::Hyperelliptic: {
            HyperLayout lay = hyper_layout(basis.lb.twist, genus_, hyper_even_);
            long long k = basis.lb.twist;
            long long g = genus_;
            auto split = [&](const std::vector<felt>& v) {
                poly::Poly a(v.begin(), v.begin() + lay.dim_a());
                poly::Poly b(v.begin() + lay.dim_a(), v.end());
                poly::trim(a);
                poly::trim(b);
                return std::make_pair(a, b);
            };
            if (!pt.at_infinity && pt.y != 0) {
                poly::Poly fx = poly::taylor_shift_trunc(Fq, hyper_f_, pt.x, m);
                poly::Poly ys = poly::series_sqrt(Fq, fx, pt.y, m);
                for (std::size_t s = 0; s < basis.dim(); ++s) {
                    auto [a, b] = split(basis.vectors[s]);
                    poly::Poly sa = poly::taylor_shift_trunc(Fq, a, pt.x, m);
                    poly::Poly sb = poly::taylor_shift_trunc(Fq, b, pt.x, m);
                    series[s] = poly::add(Fq, sa, poly::series_mul(Fq, sb, ys, m));
                    series[s].resize(m, 0);
                }
            } else if (!pt.at_infinity) {
                // Weierstrass point: t = y, x(t) solves f(x) = t^2
                std::vector<poly::Poly> coeff(hyper_f_.size());
                for (std::size_t i = 0; i < hyper_f_.size(); ++i) coeff[i] = poly::Poly{hyper_f_[i]};
                coeff[0] = poly::Poly{hyper_f_[0], 0, Fq.neg(1)};
                for (auto& cp : coeff) cp.resize(std::max<std::size_t>(m, 3), 0);
                poly::Poly xs = poly::newton_series_root(Fq, coeff, pt.x, m);
                poly::Poly ts(m, 0);
                if (m > 1) ts[1] = 1;
                for (std::size_t s = 0; s < basis.dim(); ++s) {
                    auto [a, b] = split(basis.vectors[s]);
                    poly::Poly sa = poly_at_series(Fq, a, xs, m);
                    poly::Poly sb = poly_at_series(Fq, b, xs, m);
                    series[s] = poly::add(Fq, sa, poly::series_mul(Fq, sb, ts, m));
                    series[s].resize(m, 0);
                }
            } else if (hyper_even_) {
                // t = 1/x; eta = y/x^(g+1) = sqrt of the reversed polynomial
                poly::Poly fstar(hyper_f_.size(), 0);
                for (std::size_t i = 0; i < hyper_f_.size(); ++i) fstar[i] = hyper_f_[hyper_f_.size() - 1 - i];
                fstar.resize(std::max<std::size_t>(m, fstar.size()), 0);
                poly::Poly eta = poly::series_sqrt(Fq, fstar, pt.y, m);
                for (std::size_t s = 0; s < basis.dim(); ++s) {
                    auto [a, b] = split(basis.vectors[s]);
                    poly::Poly sr(m, 0);
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        long long e = k - static_cast<long long>(i);
                        if (a[i] && e >= 0 && e < static_cast<long long>(m)) sr[e] = Fq.add(sr[e], a[i]);
                    }
                    poly::Poly brev(m, 0);
                    for (std::size_t j = 0; j < b.size(); ++j) {
                        long long e = k - g - 1 - static_cast<long long>(j);
                        if (b[j] && e >= 0 && e < static_cast<long long>(m)) brev[e] = Fq.add(brev[e], b[j]);
                    }
                    series[s] = poly::add(Fq, sr, poly::series_mul(Fq, brev, eta, m));
                    series[s].resize(m, 0);
                }
            } else {
                // odd model at infinity: local parameter t = x^g / y, write
                // x = z(t)/t^2; then z satisfies lc z^(2g+1) - z^(2g) +
                // sum_{i<=2g} f_i t^(2(2g+1-i)) z^i = 0 with z(0) = 1/lc,
                // always a simple root
                felt lc = hyper_f_.back();
                long long dfull = 2 * g + 1;
                std::vector<poly::Poly> coeff(dfull + 1);
                for (long long i = 0; i <= dfull; ++i) {
                    long long e = 2 * (dfull - i);
                    poly::Poly cp;
                    if (e < static_cast<long long>(m)) {
                        cp.assign(e + 1, 0);
                        cp[e] = hyper_f_[i];
                    }
                    coeff[i] = std::move(cp);
                }
                poly::Poly& c2g = coeff[2 * g];
                if (c2g.empty()) c2g.assign(1, 0);
                c2g[0] = Fq.sub(c2g[0], 1);
                poly::Poly zs = poly::newton_series_root(Fq, coeff, Fq.inv(lc), m);
                long long maxpow = lay.ka;
                if (lay.kb >= 0) maxpow = std::max(maxpow, g + lay.kb);
                std::vector<poly::Poly> zpow(static_cast<std::size_t>(maxpow) + 1);
                zpow[0] = poly::Poly(m, 0);
                zpow[0][0] = 1;
                for (std::size_t i = 1; i < zpow.size(); ++i) zpow[i] = poly::series_mul(Fq, zpow[i - 1], zs, m);
                for (std::size_t s = 0; s < basis.dim(); ++s) {
                    auto [a, b] = split(basis.vectors[s]);
                    poly::Poly sr(m, 0);
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        if (!a[i]) continue;
                        long long e = k - 2 * static_cast<long long>(i);
                        for (long long u = 0; u + e < static_cast<long long>(m); ++u)
                            if (zpow[i][u]) sr[u + e] = Fq.add(sr[u + e], Fq.mul(a[i], zpow[i][u]));
                    }
                    for (std::size_t j = 0; j < b.size(); ++j) {
                        if (!b[j]) continue;
                        long long e = k - 2 * static_cast<long long>(j) - 2 * g - 1;
                        const poly::Poly& zp = zpow[static_cast<std::size_t>(g) + j];
                        for (long long u = 0; u + e < static_cast<long long>(m); ++u)
                            if (zp[u]) sr[u + e] = Fq.add(sr[u + e], Fq.mul(b[j], zp[u]));
                    }
                    series[s] = std::move(sr);
                }
            }
            break;
        }
        case CurveVariant::PlaneCurve: {
            unsigned k = static_cast<unsigned>(basis.lb.twist);
            // chart: position of the normalizing 1 in priority z, y, x
            int chart = pt.z != 0 ? 2 : (pt.y != 0 ? 1 : 0);
            felt u0, v0;
            if (chart == 2) {
                u0 = pt.x;
                v0 = pt.y;
            } else if (chart == 1) {
                u0 = pt.x;
                v0 = pt.z;
            } else {
                u0 = pt.y;
                v0 = pt.z;
            }
            auto chart_exps = [&](const std::array<unsigned, 3>& e) {
                if (chart == 2) return std::make_pair(e[0], e[1]);
                if (chart == 1) return std::make_pair(e[0], e[2]);
                return std::make_pair(e[1], e[2]);
            };
            // curve equation as a polynomial in v with u-polynomial coefficients
            unsigned d = plane_deg_;
            std::vector<poly::Poly> fv(d + 1);
            for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
                auto [eu, ev] = chart_exps(plane_exps_[t]);
                if (fv[ev].size() < eu + 1) fv[ev].resize(eu + 1, 0);
                fv[ev][eu] = Fq.add(fv[ev][eu], plane_coeffs_[t]);
            }
            // local parameter choice: u if df/dv != 0 at the point, else v
            felt dfdv = 0, vp = 1;
            for (unsigned j = 1; j <= d; ++j) {
                felt cj = poly::eval(Fq, fv[j], u0);
                dfdv = Fq.add(dfdv, Fq.mul(Fq.mul(cj, Fq.from_int(j)), vp));
                vp = Fq.mul(vp, v0);
            }
            poly::Poly us, vs;
            if (dfdv != 0) {
                us.assign(m, 0);
                us[0] = u0;
                if (m > 1) us[1] = 1;
                std::vector<poly::Poly> coeff(d + 1);
                for (unsigned j = 0; j <= d; ++j) coeff[j] = poly::taylor_shift_trunc(Fq, fv[j], u0, m);
                vs = poly::newton_series_root(Fq, coeff, v0, m);
            } else {
                std::vector<poly::Poly> fu(d + 1);
                for (std::size_t t = 0; t < plane_exps_.size(); ++t) {
                    auto [eu, ev] = chart_exps(plane_exps_[t]);
                    if (fu[eu].size() < ev + 1) fu[eu].resize(ev + 1, 0);
                    fu[eu][ev] = Fq.add(fu[eu][ev], plane_coeffs_[t]);
                }
                vs.assign(m, 0);
                vs[0] = v0;
                if (m > 1) vs[1] = 1;
                std::vector<poly::Poly> coeff(d + 1);
                for (unsigned i = 0; i <= d; ++i) coeff[i] = poly::taylor_shift_trunc(Fq, fu[i], v0, m);
                us = poly::newton_series_root(Fq, coeff, u0, m);
            }
            // evaluate each section (a degree-k form) in the chart
            for (std::size_t s = 0; s < basis.dim(); ++s) {
                const auto& v = basis.vectors[s];
                std::vector<poly::Poly> gv(k + 1);
                for (std::size_t idx = 0; idx < v.size(); ++idx) {
                    if (!v[idx]) continue;
                    auto e = mono_exps(idx, k);
                    auto [eu, ev] = chart_exps(e);
                    if (gv[ev].size() < eu + 1) gv[ev].resize(eu + 1, 0);
                    gv[ev][eu] = Fq.add(gv[ev][eu], v[idx]);
                }
                poly::Poly acc(m, 0);
                for (std::size_t j = gv.size(); j-- > 0;) {
                    acc = poly::series_mul(Fq, acc, vs, m);
                    poly::Poly cj = poly_at_series(Fq, gv[j], us, m);
                    for (std::size_t t = 0; t < m; ++t) acc[t] = Fq.add(acc[t], cj[t]);
                }
                series[s] = std::move(acc);
            }
            break;
        }
    }

    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const poly::Poly& sr = series[s];
        for (unsigned sh = 0; sh < shift; ++sh) {
            if (sr[sh] != 0) throw std::logic_error("section fails to vanish at a marked point");
        }
        for (unsigned l = 0; l < order; ++l) rows[l][s] = sr[l + shift];
    }
    return rows;
}

DenseMatrix CurveModel::jet_matrix(const LineBundleSpec& lb, const EffectiveDivisor& xi) const {
    if (xi.points.empty()) throw SingularSupportError("empty divisor");
    std::uint32_t N = xi.points.front().first.field_degree;
    for (std::size_t i = 0; i < xi.points.size(); ++i) {
        const auto& [pt, mlt] = xi.points[i];
        if (pt.field_degree != N)
            throw UnsupportedError("divisor points must live over a common extension");
        if (mlt == 0) throw UnsupportedError("divisor multiplicities must be positive");
        for (std::size_t j = i + 1; j < xi.points.size(); ++j)
            if (pt == xi.points[j].first) throw UnsupportedError("divisor points must be distinct");
    }
    SectionBasis basis = sections_basis(lb);
    DenseMatrix m(xi.degree(), basis.dim());
    std::size_t r = 0;
    for (const auto& [pt, mlt] : xi.points) {
        auto rows = jet_rows(basis, pt, mlt);
        for (unsigned l = 0; l < mlt; ++l, ++r)
            for (std::size_t c = 0; c < basis.dim(); ++c) m.at(r, c) = rows[l][c];
    }
    return m;
}

felt CurveModel::evaluate_section(const SectionBasis& basis, std::size_t idx, const CurvePoint& pt) const {
    auto rows = jet_rows(basis, pt, 1);
    return rows[0][idx];
}

}  // namespace syzlab
