#ifndef SYZLAB_POLY_HPP
#define SYZLAB_POLY_HPP

#include <cstdint>
#include <vector>

#include "syzlab/field.hpp"

// Dense univariate polynomials over a runtime finite field, represented as
// coefficient vectors in ascending degree with no trailing zeros, plus the
// truncated power-series operations the curve machinery needs.

namespace syzlab::poly {

using Poly = std::vector<felt>;

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }
void trim(Poly& f);
bool is_zero(const Poly& f);

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, felt c);
// a = q*b + r with deg r < deg b; b != 0.
void divrem(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Poly gcd(const Field& F, Poly a, Poly b);  // monic gcd
Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& m);
felt eval(const Field& F, const Poly& f, felt x);
Poly derivative(const Field& F, const Poly& f);
Poly monic(const Field& F, Poly f);

// f(x0 + t) truncated to order n (coefficients of t^0..t^{n-1}).
Poly taylor_shift_trunc(const Field& F, const Poly& f, felt x0, std::size_t n);

bool is_irreducible(const Field& Fp, const Poly& f);  // prime field only

// All roots in F, each once, ascending in packed order.  Deterministic.
std::vector<felt> roots(const Field& F, const Poly& f);

// --- truncated power series (coefficient vectors of fixed order n) ---

Poly series_mul(const Field& F, const Poly& a, const Poly& b, std::size_t n);
Poly series_inv(const Field& F, const Poly& a, std::size_t n);  // a[0] != 0

// Solves P(y(t)) = 0 to order n by Newton iteration, where
// P(y) = sum_j coeff[j](t) * y^j and y0 is a simple root of P at t = 0.
Poly newton_series_root(const Field& F, const std::vector<Poly>& coeff, felt y0,
                        std::size_t n);

// Square root of a series with a[0] = seed^2, seed != 0; odd characteristic.
Poly series_sqrt(const Field& F, const Poly& a, felt seed, std::size_t n);

}  // namespace syzlab::poly

#endif
