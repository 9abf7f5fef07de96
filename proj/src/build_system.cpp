#include "syzlab/build_system.hpp"

#include <sstream>

#include "syzlab/errors.hpp"

namespace syzlab {

namespace {

// B + qL within the twist-minus-reduced-divisor family.  Pieces of negative
// total degree are the zero space and need no representation at all.
struct PieceSpec {
    bool zero = false;
    LineBundleSpec lb;
};

PieceSpec piece_bundle(const CurveModel& c, const LineBundleSpec& B, const LineBundleSpec& L, int q) {
    PieceSpec out;
    long long deg = c.bundle_degree(B) + static_cast<long long>(q) * c.bundle_degree(L);
    if (deg < 0) {
        out.zero = true;
        return out;
    }
    out.lb.twist = B.twist + static_cast<long long>(q) * L.twist;
    out.lb.minus_points = B.minus_points;
    if (!L.minus_points.empty()) {
        if (q < 0 || q > 1)
            throw UnsupportedError(
                "q-window leaves the reduced-divisor family (L carries marked points)");
        if (q == 1)
            for (const auto& pt : L.minus_points) out.lb.minus_points.push_back(pt);
    }
    return out;
}

}  // namespace

SectionSystem build_section_system(const CurveModel& c, const LineBundleSpec& B,
                                   const LineBundleSpec& L, int q_min, int q_max) {
    if (q_max < q_min) throw WindowTooSmallError("empty q-window requested");
    c.validate_bundle(B);
    c.validate_bundle(L);
    const Field& F = c.base_field();

    SectionSystem ss;
    ss.field = F.desc();
    ss.genus = c.genus();
    ss.deg_L = c.bundle_degree(L);
    ss.deg_B = c.bundle_degree(B);
    ss.q_min = q_min;
    ss.q_max = q_max;
    ss.curve_id = c.id();
    ss.label_B = c.bundle_label(B);
    ss.label_L = c.bundle_label(L);

    SectionBasis VL = c.sections_basis(L);
    ss.r = static_cast<int>(VL.dim()) - 1;
    if (VL.dim() == 0) throw UnsupportedError("L has no sections");
    if (ss.deg_L < 2 * ss.genus + 1) {
        std::ostringstream os;
        os << "deg L = " << ss.deg_L << " < 2g+1 = " << 2 * ss.genus + 1
           << ": very-ampleness of L is not guaranteed";
        ss.warnings.push_back(os.str());
    }

    std::vector<PieceSpec> pieces;
    for (int q = q_min; q <= q_max; ++q) {
        PieceSpec ps = piece_bundle(c, B, L, q);
        if (ps.zero) {
            ss.wdims.push_back(0);
        } else {
            SectionBasis W = c.sections_basis(ps.lb);
            ss.wdims.push_back(static_cast<int>(W.dim()));
        }
        pieces.push_back(std::move(ps));
    }

    for (int q = q_min; q < q_max; ++q) {
        int wq = ss.wdims[q - q_min];
        int wq1 = ss.wdims[q - q_min + 1];
        if (wq == 0 || wq1 == 0) {
            ss.mus.emplace_back(static_cast<std::uint32_t>(ss.n()), static_cast<std::uint32_t>(wq),
                                static_cast<std::uint32_t>(wq1));
            continue;
        }
        MuTensor mu = c.mult_tensor(L, pieces[q - q_min].lb);
        if (mu.wq1 != static_cast<std::uint32_t>(wq1))
            throw std::logic_error("piece dimension mismatch while building mu");
        ss.mus.push_back(std::move(mu));
    }
    return ss;
}

}  // namespace syzlab
