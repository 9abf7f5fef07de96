#include "syzlab/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "syzlab/errors.hpp"

namespace syzlab::poly {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

bool is_zero(const Poly& f) {
    for (felt c : f)
        if (c) return false;
    return true;
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        felt x = i < a.size() ? a[i] : 0;
        felt y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    trim(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        felt x = i < a.size() ? a[i] : 0;
        felt y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    trim(r);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
        }
    }
    trim(r);
    return r;
}

Poly scale(const Field& F, const Poly& a, felt c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

void divrem(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (is_zero(b)) throw std::domain_error("polynomial division by zero");
    r = a;
    trim(r);
    int db = deg(b);
    q.assign(r.size() > b.size() ? r.size() - b.size() + 1 : 1, 0);
    felt lcinv = F.inv(b[db]);
    while (deg(r) >= db) {
        int dr = deg(r);
        felt c = F.mul(r[dr], lcinv);
        q[dr - db] = c;
        for (int j = 0; j <= db; ++j) r[dr - db + j] = F.sub(r[dr - db + j], F.mul(c, b[j]));
        trim(r);
    }
    trim(q);
}

Poly mod(const Field& F, const Poly& a, const Poly& b) {
    Poly q, r;
    divrem(F, a, b, q, r);
    return r;
}

Poly monic(const Field& F, Poly f) {
    trim(f);
    if (f.empty()) return f;
    felt c = F.inv(f.back());
    for (auto& x : f) x = F.mul(x, c);
    return f;
}

Poly gcd(const Field& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!is_zero(b)) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, std::move(a));
}

Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly r{1};
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mod(F, mul(F, r, base), m);
        base = mod(F, mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

felt eval(const Field& F, const Poly& f, felt x) {
    felt r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
    return r;
}

Poly derivative(const Field& F, const Poly& f) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(f[i], F.from_int(static_cast<std::int64_t>(i)));
    trim(r);
    return r;
}

Poly taylor_shift_trunc(const Field& F, const Poly& f, felt x0, std::size_t n) {
    Poly r;  // Horner: r <- r*(x0 + t) + f[i], truncated to order n
    for (std::size_t i = f.size(); i-- > 0;) {
        Poly nr(std::min(r.size() + 1, n), 0);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j < nr.size()) nr[j] = F.add(nr[j], F.mul(r[j], x0));
            if (j + 1 < nr.size()) nr[j + 1] = F.add(nr[j + 1], r[j]);
        }
        if (!nr.empty())
            nr[0] = F.add(nr[0], f[i]);
        else if (n > 0)
            nr.assign(1, f[i]);
        r = std::move(nr);
    }
    r.resize(n, 0);
    return r;
}

bool is_irreducible(const Field& Fq, const Poly& f_in) {
    Poly f = monic(Fq, f_in);
    int k = deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    std::uint64_t q = Fq.order();
    Poly x{0, 1};
    // x^(q^k) == x mod f, and gcd(x^(q^(k/l)) - x, f) == 1 for primes l | k
    Poly h = x;
    std::vector<Poly> frob_powers(k + 1);  // frob_powers[j] = x^(q^j) mod f
    frob_powers[0] = x;
    for (int j = 1; j <= k; ++j) frob_powers[j] = powmod(Fq, frob_powers[j - 1], q, f);
    if (!is_zero(sub(Fq, frob_powers[k], x))) return false;
    for (int l = 2; l <= k; ++l) {
        if (k % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        Poly g = gcd(Fq, sub(Fq, frob_powers[k / l], x), f);
        if (deg(g) != 0) return false;
    }
    return true;
}

namespace {

// splits a product of distinct monic linear factors into roots
void split_linear(const Field& F, const Poly& g, std::vector<felt>& out) {
    int d = deg(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.neg(F.mul(g[0], F.inv(g[1]))));
        return;
    }
    std::uint64_t q = F.order();
    if (F.characteristic() == 2) {
        if (q > (1ull << 22)) throw UnsupportedError("root extraction over large even-order fields");
        for (felt c = 0; c < q; ++c)
            if (eval(F, g, c) == 0) out.push_back(c);
        return;
    }
    for (felt c = 0;; ++c) {
        if (c >= q) throw std::logic_error("root splitting failed");
        Poly shifted{c, 1};
        Poly h = powmod(F, shifted, (q - 1) / 2, g);
        if (!h.empty())
            h[0] = F.sub(h[0], 1);
        else
            h = Poly{F.neg(1)};
        Poly g1 = gcd(F, h, g);
        if (deg(g1) > 0 && deg(g1) < d) {
            Poly g2, r;
            divrem(F, g, g1, g2, r);
            split_linear(F, g1, out);
            split_linear(F, g2, out);
            return;
        }
    }
}

}  // namespace

std::vector<felt> roots(const Field& F, const Poly& f_in) {
    Poly f = f_in;
    trim(f);
    std::vector<felt> out;
    if (deg(f) <= 0) return out;
    std::uint64_t q = F.order();
    // distinct roots in F are the roots of gcd(x^q - x, f)
    Poly xq = powmod(F, Poly{0, 1}, q, f);
    Poly g = gcd(F, sub(F, xq, Poly{0, 1}), f);
    split_linear(F, g, out);
    std::sort(out.begin(), out.end());
    return out;
}

Poly series_mul(const Field& F, const Poly& a, const Poly& b, std::size_t n) {
    Poly r(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return r;
}

Poly series_inv(const Field& F, const Poly& a, std::size_t n) {
    if (a.empty() || a[0] == 0) throw std::domain_error("series not invertible");
    Poly b{F.inv(a[0])};
    std::size_t prec = 1;
    while (prec < n) {
        prec = std::min(prec * 2, n);
        Poly ab = series_mul(F, a, b, prec);
        Poly two_minus(prec, 0);
        two_minus[0] = F.sub(F.from_int(2), ab[0]);
        for (std::size_t i = 1; i < prec; ++i) two_minus[i] = F.neg(ab[i]);
        b = series_mul(F, b, two_minus, prec);
    }
    b.resize(n, 0);
    return b;
}

Poly newton_series_root(const Field& F, const std::vector<Poly>& coeff, felt y0, std::size_t n) {
    // derivative coefficients: sum_j j*coeff[j] y^(j-1)
    std::vector<Poly> dcoeff;
    for (std::size_t j = 1; j < coeff.size(); ++j)
        dcoeff.push_back(scale(F, coeff[j], F.from_int(static_cast<std::int64_t>(j))));
    auto horner = [&](const std::vector<Poly>& cs, const Poly& y, std::size_t prec) {
        Poly v(prec, 0);
        for (std::size_t j = cs.size(); j-- > 0;) {
            v = series_mul(F, v, y, prec);
            for (std::size_t i = 0; i < cs[j].size() && i < prec; ++i) v[i] = F.add(v[i], cs[j][i]);
        }
        return v;
    };
    Poly y{y0};
    {
        Poly d0 = horner(dcoeff, y, 1);
        if (d0.empty() || d0[0] == 0) throw std::domain_error("newton_series_root: not a simple root");
    }
    std::size_t prec = 1;
    while (prec < n) {
        prec = std::min(prec * 2, n);
        y.resize(prec, 0);
        Poly val = horner(coeff, y, prec);
        Poly dval = horner(dcoeff, y, prec);
        Poly corr = series_mul(F, val, series_inv(F, dval, prec), prec);
        for (std::size_t i = 0; i < prec; ++i) y[i] = F.sub(y[i], corr[i]);
    }
    y.resize(n, 0);
    return y;
}

Poly series_sqrt(const Field& F, const Poly& a, felt seed, std::size_t n) {
    if (F.characteristic() == 2) throw UnsupportedError("series sqrt in characteristic 2");
    if (seed == 0 || (a.empty() ? 0 : a[0]) != F.mul(seed, seed))
        throw std::domain_error("series_sqrt: bad seed");
    felt half = F.inv(F.from_int(2));
    Poly y{seed};
    std::size_t prec = 1;
    while (prec < n) {
        prec = std::min(prec * 2, n);
        y.resize(prec, 0);
        Poly ay = series_mul(F, a, series_inv(F, y, prec), prec);
        for (std::size_t i = 0; i < prec; ++i) y[i] = F.mul(F.add(y[i], ay[i]), half);
    }
    y.resize(n, 0);
    return y;
}

}  // namespace syzlab::poly
