#include "syzlab/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "syzlab/errors.hpp"
#include "syzlab/poly.hpp"

namespace syzlab {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw std::domain_error("division by zero in F_p");
    // extended Euclid on (a, p)
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field::Field(std::uint64_t p) {
    if (!is_prime_u64(p)) throw ConfigError("field characteristic must be prime, got " + std::to_string(p));
    if (p >= (1ull << 31)) throw ConfigError("characteristic too large (must fit in 31 bits)");
    desc_.characteristic = p;
    desc_.extension_degree = 1;
    p_ = p;
    deg_ = 1;
    init_tables();
}

Field::Field(std::uint64_t p, std::uint32_t degree) : Field(p) {
    if (degree == 0 || degree > kMaxDegree) throw ConfigError("extension degree out of range");
    if (degree == 1) return;
    // order must stay packable in 64 bits
    long double ord = 1;
    for (std::uint32_t i = 0; i < degree; ++i) ord *= static_cast<long double>(p);
    if (ord > 9.0e18L) throw ConfigError("field order does not fit in 64 bits");

    // Lowest lexicographic monic irreducible: candidates x^degree + c, where the
    // tuple (c_{k-1}, ..., c_0) is the base-p expansion of an ascending counter.
    Field prime(p);
    poly::Poly f(degree + 1, 0);
    f[degree] = 1;
    std::uint64_t limit = 1;
    for (std::uint32_t i = 0; i < degree; ++i) limit *= p;
    for (std::uint64_t n = 0; n < limit; ++n) {
        std::uint64_t v = n;
        for (std::uint32_t i = 0; i < degree; ++i) {
            f[i] = v % p;
            v /= p;
        }
        if (poly::is_irreducible(prime, f)) {
            desc_.extension_degree = degree;
            desc_.modulus_poly.assign(f.begin(), f.end());
            deg_ = degree;
            mod_ = desc_.modulus_poly;
            init_tables();
            return;
        }
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
}

Field::Field(FieldDesc desc) : Field(desc.characteristic) {
    if (desc.extension_degree == 1) {
        if (!desc.modulus_poly.empty()) throw ConfigError("degree-1 field must not carry a modulus");
        return;
    }
    if (desc.extension_degree > kMaxDegree) throw ConfigError("extension degree out of range");
    if (desc.modulus_poly.size() != desc.extension_degree + 1)
        throw ConfigError("modulus length must be extension_degree + 1");
    if (desc.modulus_poly.back() != 1) throw ConfigError("modulus must be monic");
    for (auto c : desc.modulus_poly)
        if (c >= p_) throw ConfigError("modulus coefficients must be reduced mod p");
    Field prime(p_);
    poly::Poly f(desc.modulus_poly.begin(), desc.modulus_poly.end());
    if (!poly::is_irreducible(prime, f)) throw ConfigError("modulus polynomial is reducible");
    long double ord = 1;
    for (std::uint32_t i = 0; i < desc.extension_degree; ++i) ord *= static_cast<long double>(p_);
    if (ord > 9.0e18L) throw ConfigError("field order does not fit in 64 bits");
    desc_ = std::move(desc);
    deg_ = desc_.extension_degree;
    mod_ = desc_.modulus_poly;
    init_tables();
}

void Field::init_tables() {
    pow_p_[0] = 1;
    for (std::uint32_t i = 1; i <= deg_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
    order_ = pow_p_[deg_];
}

felt Field::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<felt>(m);
}

void Field::unpack(felt a, std::uint64_t* digits) const {
    for (std::uint32_t i = 0; i < deg_; ++i) {
        digits[i] = a % p_;
        a /= p_;
    }
}

felt Field::pack(std::span<const std::uint64_t> digits) const {
    felt a = 0;
    for (std::uint32_t i = deg_; i-- > 0;) a = a * p_ + (i < digits.size() ? digits[i] % p_ : 0);
    return a;
}

felt Field::add(felt a, felt b) const {
    if (deg_ == 1) {
        felt s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    felt r = 0;
    for (std::uint32_t i = 0; i < deg_; ++i) {
        felt s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

felt Field::sub(felt a, felt b) const {
    if (deg_ == 1) {
        return a >= b ? a - b : a + p_ - b;
    }
    felt r = 0;
    for (std::uint32_t i = 0; i < deg_; ++i) {
        felt x = a % p_, y = b % p_;
        felt s = x >= y ? x - y : x + p_ - y;
        r += s * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

felt Field::neg(felt a) const { return sub(0, a); }

felt Field::mul(felt a, felt b) const {
    if (deg_ == 1) return (a * b) % p_;
    std::uint64_t x[kMaxDegree], y[kMaxDegree];
    unpack(a, x);
    unpack(b, y);
    unsigned __int128 acc[2 * kMaxDegree - 1] = {};
    for (std::uint32_t i = 0; i < deg_; ++i) {
        if (!x[i]) continue;
        for (std::uint32_t j = 0; j < deg_; ++j) acc[i + j] += x[i] * y[j];
    }
    std::uint64_t t[2 * kMaxDegree - 1];
    for (std::uint32_t i = 0; i < 2 * deg_ - 1; ++i) t[i] = static_cast<std::uint64_t>(acc[i] % p_);
    // reduce by the monic modulus
    for (std::uint32_t i = 2 * deg_ - 2; i >= deg_; --i) {
        std::uint64_t c = t[i];
        if (c) {
            t[i] = 0;
            for (std::uint32_t j = 0; j < deg_; ++j) {
                if (mod_[j]) t[i - deg_ + j] = (t[i - deg_ + j] + (p_ - mod_[j]) * c) % p_;
            }
        }
        if (i == deg_) break;
    }
    return pack(std::span<const std::uint64_t>(t, deg_));
}

felt Field::inv(felt a) const {
    if (a == 0) throw std::domain_error("division by zero in finite field");
    if (deg_ == 1) return inv_mod_prime(a, p_);
    // extended Euclid over F_p[x]: maintain t_i with t_i * a == r_i (mod modulus)
    std::size_t cap = 2 * deg_ + 2;
    std::vector<std::uint64_t> r0(cap, 0), r1(cap, 0), t0(cap, 0), t1(cap, 0);
    for (std::uint32_t i = 0; i <= deg_; ++i) r0[i] = mod_[i];
    unpack(a, r1.data());
    t1[0] = 1;
    auto pdeg = [cap](const std::vector<std::uint64_t>& f) {
        for (std::size_t i = cap; i-- > 0;)
            if (f[i]) return static_cast<int>(i);
        return -1;
    };
    while (pdeg(r1) >= 0) {
        int d1 = pdeg(r1);
        std::uint64_t lcinv = inv_mod_prime(r1[d1], p_);
        while (pdeg(r0) >= d1) {
            int d0 = pdeg(r0);
            std::uint64_t c = mulmod_u64(r0[d0], lcinv, p_);
            int shift = d0 - d1;
            for (int j = 0; j <= d1; ++j)
                r0[j + shift] = (r0[j + shift] + (p_ - mulmod_u64(c, r1[j], p_))) % p_;
            for (std::size_t j = 0; j + shift < cap; ++j)
                t0[j + shift] = (t0[j + shift] + (p_ - mulmod_u64(c, t1[j], p_))) % p_;
        }
        std::swap(r0, r1);
        std::swap(t0, t1);
    }
    if (pdeg(r0) != 0) throw std::domain_error("element not invertible (gcd with modulus nonconstant)");
    std::uint64_t c = inv_mod_prime(r0[0], p_);
    std::vector<std::uint64_t> out(deg_, 0);
    for (std::uint32_t j = 0; j < deg_; ++j) out[j] = mulmod_u64(t0[j], c, p_);
    return pack(out);
}

felt Field::pow(felt a, std::uint64_t e) const {
    felt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool Field::is_square(felt a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;  // Frobenius is surjective on squares in char 2
    return pow(a, (order_ - 1) / 2) == 1;
}

std::optional<felt> Field::sqrt(felt a) const {
    if (a == 0) return felt{0};
    if (p_ == 2) {
        // squaring is a bijection; a^(2^(deg*?-1)) ... use a^(q/2)
        return pow(a, order_ / 2);
    }
    if (!is_square(a)) return std::nullopt;
    std::uint64_t q1 = order_ - 1;
    std::uint64_t s = 0;
    std::uint64_t Q = q1;
    while ((Q & 1) == 0) {
        Q >>= 1;
        ++s;
    }
    if (s == 1) {
        felt r = pow(a, (Q + 1) / 2);
        return std::min(r, neg(r));
    }
    // deterministic non-residue: first element in packed order
    felt z = 0;
    for (felt c = 2; c < order_; ++c) {
        if (!is_square(c)) {
            z = c;
            break;
        }
    }
    felt M = s;
    felt cc = pow(z, Q);
    felt t = pow(a, Q);
    felt r = pow(a, (Q + 1) / 2);
    while (t != 1) {
        felt tt = t;
        std::uint64_t i = 0;
        while (tt != 1) {
            tt = mul(tt, tt);
            ++i;
            if (i == M) return std::nullopt;  // not reached for squares
        }
        felt b = cc;
        for (std::uint64_t j = 0; j + i + 1 < M; ++j) b = mul(b, b);
        M = i;
        cc = mul(b, b);
        t = mul(t, cc);
        r = mul(r, b);
    }
    return std::min(r, neg(r));
}

std::uint32_t Field::residue_degree(felt a) const {
    felt x = a;
    for (std::uint32_t k = 1; k <= deg_; ++k) {
        x = frobenius(x);
        if (x == a && deg_ % k == 0) return k;
    }
    return deg_;
}

std::string Field::to_string(felt a) const {
    if (deg_ == 1) return std::to_string(a);
    std::uint64_t d[kMaxDegree];
    unpack(a, d);
    std::ostringstream os;
    os << '[';
    for (std::uint32_t i = 0; i < deg_; ++i) {
        if (i) os << ',';
        os << d[i];
    }
    os << ']';
    return os.str();
}

}  // namespace syzlab
