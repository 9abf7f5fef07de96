#ifndef SYZLAB_CURVE_HPP
#define SYZLAB_CURVE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "syzlab/field.hpp"
#include "syzlab/linalg.hpp"
#include "syzlab/poly.hpp"
#include "syzlab/section_system.hpp"

namespace syzlab {

enum class CurveVariant { RationalLine, Hyperelliptic, PlaneCurve };

// A geometric point with coordinates in F_{p^field_degree}.
//   RationalLine: affine x, or the point at infinity.
//   Hyperelliptic: affine (x, y); at infinity y holds the branch value
//     eta = lim y/x^(g+1) for the even-degree model (two branches), and is 0
//     for the unique infinite point of the odd-degree model.
//   PlaneCurve: projective (x : y : z), normalized so the first nonzero
//     coordinate in the order z, y, x equals one.
struct CurvePoint {
    bool at_infinity = false;
    felt x = 0, y = 0, z = 0;
    std::uint32_t field_degree = 1;
    std::uint32_t residue_degree = 1;

    bool operator==(const CurvePoint& o) const {
        return at_infinity == o.at_infinity && x == o.x && y == o.y && z == o.z &&
               field_degree == o.field_degree;
    }
};

struct EffectiveDivisor {
    std::vector<std::pair<CurvePoint, unsigned>> points;  // distinct points, mult >= 1
    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [pt, m] : points) d += m;
        return d;
    }
};

// Bundles of the family "ambient twist minus a reduced rational divisor":
// O_C(twist) restricted for PlaneCurve, twist * D_inf for Hyperelliptic,
// O(twist) for RationalLine, minus the marked points.
struct LineBundleSpec {
    long long twist = 0;
    std::vector<CurvePoint> minus_points;
};

// Basis of H0 of a bundle, as coefficient vectors in the variant-specific
// ambient coordinate space (polynomials of bounded degree, a/b parts, or
// degree-k monomials in normal form).
struct SectionBasis {
    LineBundleSpec lb;
    long long degree = 0;
    std::size_t ambient_dim = 0;
    std::vector<std::vector<felt>> vectors;
    std::size_t dim() const { return vectors.size(); }
};

class CurveModel {
  public:
    static CurveModel rational_line(const FieldDesc& fd);
    // f given by ascending coefficients; degree 2g+1 or 2g+2, squarefree, odd char
    static CurveModel hyperelliptic(const FieldDesc& fd, const std::vector<long long>& f_coeffs);
    // terms (ex, ey, ez, coeff); homogeneous, smooth (checked exactly)
    static CurveModel plane_curve(const FieldDesc& fd,
                                  const std::vector<std::array<long long, 4>>& terms);

    CurveVariant variant() const { return variant_; }
    long long genus() const { return genus_; }
    const Field& base_field() const { return *F_; }
    std::string id() const { return id_; }

    unsigned plane_degree() const { return plane_deg_; }
    const poly::Poly& hyper_f() const { return hyper_f_; }
    bool hyper_even_model() const { return hyper_even_; }

    long long ambient_multiplier() const;  // deg of the twist-1 bundle
    long long bundle_degree(const LineBundleSpec& lb) const;
    LineBundleSpec canonical_bundle() const;
    LineBundleSpec bundle_sum(const LineBundleSpec& a, const LineBundleSpec& b) const;
    // a - b; requires b.minus_points empty (adding points leaves the family)
    LineBundleSpec bundle_diff(const LineBundleSpec& a, const LineBundleSpec& b) const;
    std::string bundle_label(const LineBundleSpec& lb) const;
    void validate_bundle(const LineBundleSpec& lb) const;

    SectionBasis sections_basis(const LineBundleSpec& lb) const;
    // structure tensor H0(lb1) x H0(lb2) -> H0(lb1 + lb2)
    MuTensor mult_tensor(const LineBundleSpec& lb1, const LineBundleSpec& lb2) const;

    Field extension_field(std::uint32_t N) const;
    std::vector<CurvePoint> points_over(std::uint32_t N) const;  // deterministic order
    bool point_on_curve(const CurvePoint& pt) const;

    // evaluation map H0(lb) -> H0(lb (x) O_xi); rows ordered by (point, jet order)
    DenseMatrix jet_matrix(const LineBundleSpec& lb, const EffectiveDivisor& xi) const;
    // trivialized jet rows of a precomputed basis at one point, orders 0..order-1
    std::vector<std::vector<felt>> jet_rows(const SectionBasis& basis, const CurvePoint& pt,
                                            unsigned order) const;
    felt evaluate_section(const SectionBasis& basis, std::size_t idx, const CurvePoint& pt) const;

  private:
    CurveModel() = default;
    void check_plane_smooth() const;

    CurveVariant variant_ = CurveVariant::RationalLine;
    std::shared_ptr<const Field> F_;
    long long genus_ = 0;
    std::string id_;

    // hyperelliptic data
    poly::Poly hyper_f_;
    bool hyper_even_ = false;

    // plane-curve data
    unsigned plane_deg_ = 0;
    std::vector<std::array<unsigned, 3>> plane_exps_;
    std::vector<felt> plane_coeffs_;

    struct PlaneCtx;
    PlaneCtx plane_ctx(unsigned k) const;
};

}  // namespace syzlab

#endif
