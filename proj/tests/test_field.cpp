#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syzlab/errors.hpp"
#include "syzlab/field.hpp"
#include "syzlab/poly.hpp"
#include "test_util.hpp"

using namespace syzlab;

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(499));
    CHECK(is_prime_u64(1009));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(1001));
}

TEST_CASE("prime field arithmetic") {
    Field F(101);
    CHECK(F.add(100, 2) == 1);
    CHECK(F.sub(1, 3) == 99);
    CHECK(F.mul(50, 4) == 200 % 101);
    CHECK(F.mul(7, F.inv(7)) == 1);
    CHECK(F.pow(3, 100) == 1);  // Fermat
    CHECK(F.from_int(-1) == 100);
    CHECK_THROWS_AS(Field(100), ConfigError);
}

TEST_CASE("deterministic modulus is lowest lexicographic") {
    // -1 is a square mod 101 but -2 is not, so x^2 + 2 is the first
    // irreducible monic quadratic in the coefficient order
    Field F(101, 2);
    std::vector<std::uint64_t> expected{2, 0, 1};
    CHECK(F.desc().modulus_poly == expected);
    CHECK(F.order() == 101ull * 101);
}

TEST_CASE("field descriptor validation") {
    FieldDesc bad;
    bad.characteristic = 101;
    bad.extension_degree = 2;
    bad.modulus_poly = {1, 0, 1};  // x^2 + 1 = (x-10)(x+10) mod 101
    CHECK_THROWS_AS(Field{bad}, ConfigError);
    bad.modulus_poly = {2, 0, 1};
    CHECK_NOTHROW(Field{bad});
}

TEST_CASE("extension field axioms, sampled") {
    std::mt19937_64 rng(12345);
    for (auto desc : {std::pair<std::uint64_t, std::uint32_t>{101, 2}, {7, 3}, {5, 4}}) {
        Field F(desc.first, desc.second);
        for (int t = 0; t < 50; ++t) {
            felt a = testutil::random_element(F, rng);
            felt b = testutil::random_element(F, rng);
            felt c = testutil::random_element(F, rng);
            CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.sub(F.add(a, b), b) == a);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            // Frobenius is additive
            CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
        }
        // multiplicative order divides q - 1
        felt a = testutil::random_element(F, rng);
        if (a != 0) CHECK(F.pow(a, F.order() - 1) == 1);
    }
}

TEST_CASE("square roots") {
    std::mt19937_64 rng(99);
    for (auto desc : {std::pair<std::uint64_t, std::uint32_t>{101, 1}, {101, 2}, {13, 2}}) {
        Field F(desc.first, desc.second);
        int squares = 0;
        for (int t = 0; t < 40; ++t) {
            felt a = testutil::random_element(F, rng);
            felt sq = F.mul(a, a);
            auto r = F.sqrt(sq);
            REQUIRE(r.has_value());
            CHECK(F.mul(*r, *r) == sq);
            if (a != 0 && !F.is_square(a)) {
                CHECK(!F.sqrt(a).has_value());
            } else {
                ++squares;
            }
        }
        CHECK(squares > 0);
    }
}

TEST_CASE("residue degrees") {
    Field F(101, 4);
    CHECK(F.residue_degree(17) == 1);  // prime subfield
    felt x = F.generator_x();
    CHECK(F.residue_degree(x) == 4);
    // an element of the quadratic subfield: x^((q-1)/(p^2-1)) generates F_{p^2}
    std::uint64_t e = (F.order() - 1) / (101ull * 101 - 1);
    felt sub = F.pow(x, e);
    CHECK(F.residue_degree(sub) <= 2);
}

TEST_CASE("pack unpack round trip") {
    Field F(7, 3);
    std::uint64_t d[3] = {3, 0, 6};
    felt a = F.pack(std::span<const std::uint64_t>(d, 3));
    std::uint64_t out[3];
    F.unpack(a, out);
    CHECK(out[0] == 3);
    CHECK(out[1] == 0);
    CHECK(out[2] == 6);
}

TEST_CASE("polynomial arithmetic and roots") {
    Field F(101);
    poly::Poly f{1, 0, 1};  // x^2 + 1 = (x-10)(x+10)
    auto rts = poly::roots(F, f);
    REQUIRE(rts.size() == 2);
    CHECK(poly::eval(F, f, rts[0]) == 0);
    CHECK(poly::eval(F, f, rts[1]) == 0);

    poly::Poly g{2, 0, 1};  // irreducible
    CHECK(poly::roots(F, g).empty());
    CHECK(poly::is_irreducible(F, g));
    CHECK(!poly::is_irreducible(F, f));

    // gcd / divrem sanity
    poly::Poly a = poly::mul(F, f, g);
    CHECK(poly::deg(poly::gcd(F, a, f)) == 2);
    poly::Poly q, r;
    poly::divrem(F, a, g, q, r);
    CHECK(poly::is_zero(r));
    CHECK(q == f);
}

TEST_CASE("roots over extension fields") {
    Field F(101, 2);
    // the modulus itself must pick up both of its roots in F_{101^2}
    poly::Poly mod(F.desc().modulus_poly.begin(), F.desc().modulus_poly.end());
    auto rts = poly::roots(F, mod);
    REQUIRE(rts.size() == 2);
    for (felt r : rts) CHECK(poly::eval(F, mod, r) == 0);
}

TEST_CASE("power series helpers") {
    Field F(101);
    poly::Poly a{1, 3, 5, 7};
    auto inv = poly::series_inv(F, a, 6);
    auto prod = poly::series_mul(F, a, inv, 6);
    CHECK(prod[0] == 1);
    for (int i = 1; i < 6; ++i) CHECK(prod[i] == 0);

    poly::Poly sq{4, 1, 9};  // sqrt exists with seed 2
    auto rt = poly::series_sqrt(F, sq, 2, 5);
    auto back = poly::series_mul(F, rt, rt, 5);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == (i < 3 ? sq[i] : 0));

    // Newton root: y^2 - (1 + t) = 0, y(0) = 1
    std::vector<poly::Poly> coeff{poly::Poly{F.neg(1), F.neg(1)}, poly::Poly{}, poly::Poly{1}};
    auto y = poly::newton_series_root(F, coeff, 1, 5);
    auto ysq = poly::series_mul(F, y, y, 5);
    CHECK(ysq[0] == 1);
    CHECK(ysq[1] == 1);
    CHECK(ysq[2] == 0);
}
