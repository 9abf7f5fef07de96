#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syzlab/build_system.hpp"
#include "syzlab/errors.hpp"
#include "syzlab/section_system.hpp"

using namespace syzlab;

namespace {

FieldDesc fd(std::uint64_t p) {
    FieldDesc d;
    d.characteristic = p;
    return d;
}

}  // namespace

TEST_CASE("window dimensions: rational line") {
    auto line = CurveModel::rational_line(fd(101));
    SectionSystem ss = build_section_system(line, {0, {}}, {3, {}}, -1, 2);
    CHECK(ss.r == 3);
    CHECK(ss.wdim(-1) == 0);
    CHECK(ss.wdim(0) == 1);
    CHECK(ss.wdim(1) == 4);
    CHECK(ss.wdim(2) == 7);
    CHECK(ss.genus == 0);
    CHECK(ss.deg_L == 3);
    CHECK_THROWS_AS(ss.wdim(5), WindowTooSmallError);
}

TEST_CASE("window dimensions: hyperelliptic with B = K") {
    auto h2 = CurveModel::hyperelliptic(fd(101), {1, 0, 0, 0, 0, 0, 1});
    SectionSystem ss = build_section_system(h2, h2.canonical_bundle(), {4, {}}, 0, 2);
    // deg K = 2, deg L = 8: dims 2, 9, 17
    CHECK(ss.wdim(0) == 2);
    CHECK(ss.wdim(1) == 9);
    CHECK(ss.wdim(2) == 17);
    CHECK(ss.r == 6);
}

TEST_CASE("window dimensions: plane quartic with B = K") {
    auto q = CurveModel::plane_curve(fd(101), {{4, 0, 0, 1}, {0, 4, 0, 1}, {0, 0, 4, 1}});
    SectionSystem ss = build_section_system(q, q.canonical_bundle(), {4, {}}, 0, 2);
    CHECK(ss.wdim(0) == 3);
    CHECK(ss.wdim(1) == 18);
    CHECK(ss.wdim(2) == 34);
    CHECK(ss.r == 13);
    CHECK(validate_section_system(ss).pass);
}

TEST_CASE("validation catches injected faults") {
    auto line = CurveModel::rational_line(fd(101));
    SectionSystem ss = build_section_system(line, {0, {}}, {3, {}}, -1, 2);
    REQUIRE(validate_section_system(ss).pass);

    SectionSystem bad = ss;
    MuTensor& mu = bad.mu(0);
    mu.at(1, 0, 2) = bad.field.characteristic - 1;  // perturb one entry
    auto rep = validate_section_system(bad);
    CHECK(!rep.pass);
    REQUIRE(!rep.issues.empty());
    CHECK(rep.issues.front().find("commutativity") != std::string::npos);

    SectionSystem bad2 = ss;
    bad2.wdims[2] = 5;  // breaks Riemann-Roch and the tensor shape
    CHECK(!validate_section_system(bad2).pass);
}

TEST_CASE("json round trip") {
    auto h2 = CurveModel::hyperelliptic(fd(101), {1, 0, 0, 0, 0, 0, 1});
    SectionSystem ss = build_section_system(h2, {0, {}}, {4, {}}, -1, 3);
    std::string text = ss.to_json_string();
    SectionSystem back = SectionSystem::from_json_string(text);
    CHECK(back.r == ss.r);
    CHECK(back.wdims == ss.wdims);
    CHECK(back.q_min == ss.q_min);
    CHECK(back.q_max == ss.q_max);
    CHECK(back.field == ss.field);
    REQUIRE(back.mus.size() == ss.mus.size());
    for (std::size_t i = 0; i < ss.mus.size(); ++i) CHECK(back.mus[i].a == ss.mus[i].a);
    CHECK(validate_section_system(back).pass);
}

#include "syzlab/koszul.hpp"

TEST_CASE("the koszul engine runs on externally loaded systems") {
    auto h2 = CurveModel::hyperelliptic(fd(101), {1, 0, 0, 0, 0, 0, 1});
    SectionSystem ss = build_section_system(h2, {0, {}}, {4, {}}, -1, 3);
    SectionSystem loaded = SectionSystem::from_json_string(ss.to_json_string());
    for (int p = 0; p <= ss.n(); ++p)
        for (int q = 0; q <= 2; ++q) CHECK(koszul_dim(loaded, p, q) == koszul_dim(ss, p, q));
}

TEST_CASE("low-degree L warning") {
    auto h2 = CurveModel::hyperelliptic(fd(101), {1, 0, 0, 0, 0, 0, 1});
    SectionSystem ss = build_section_system(h2, {0, {}}, {2, {}}, 0, 1);  // deg 4 < 2g+1
    CHECK(!ss.warnings.empty());
    SectionSystem ok = build_section_system(h2, {0, {}}, {3, {}}, 0, 1);  // deg 6 >= 5
    CHECK(ok.warnings.empty());
}

TEST_CASE("marked points on L restrict the window") {
    auto h2 = CurveModel::hyperelliptic(fd(101), {1, 0, 0, 0, 0, 0, 1});
    auto pts = h2.points_over(1);
    LineBundleSpec L{4, {pts[0]}};
    CHECK_NOTHROW(build_section_system(h2, {0, {}}, L, 0, 1));
    CHECK_THROWS_AS(build_section_system(h2, {0, {}}, L, 0, 2), UnsupportedError);
}
