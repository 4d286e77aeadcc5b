// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3fib/mordell.hpp"

using namespace k3fib;

static PolyGF9 P(const char* s) { return parse_poly(s); }
static SurfacePoint S(const char* s) { return parse_section(s); }

namespace {
HeightContext ctx1() {
    return make_height_context({P("2*t^3 + 2"), P("t^6"), P("0"), Field::F9});
}
HeightContext ctx5() { return make_height_context({P("2*t^3"), P("t^3"), P("0"), Field::F9}); }
HeightContext ctx12() {
    return make_height_context({P("1"), P("t^4"), P("t^8"), Field::F9});
}
HeightContext ctx18() { return make_height_context({P("2*t"), P("0"), P("t^9"), Field::F9}); }
HeightContext ctx19() {
    return make_height_context(
        {P("t^4 + 1"), PolyGF9() - P("t^2") * P("t^2 - 1"), P("t^4"), Field::F9});
}
HeightContext ctx41() {
    return make_height_context({P("0"), P("0"), P("t^10 + t^2"), Field::F9});
}
HeightContext ctx29() {
    return make_height_context({P("t^3 + 1") * P("t - 1"),
                                PolyGF9() - P("t^6") * P("t - 1").pow(2),
                                PolyGF9() - P("t^6") * P("t^6 - 1"), Field::F9});
}
}  // namespace

TEST_CASE("intersection with the zero section") {
    CHECK(intersect_with_zero(ctx5(), S("(1 ; 1)")) == 0);
    // polynomial x of degree <= 4: no contribution anywhere
    CHECK(intersect_with_zero(ctx18(), S("(t^4 ; t^6)")) == 0);
    // pole of order 2 at t = 0
    CHECK(intersect_with_zero(ctx41(), S("(1/t^2 ; t^5 - 1/t^3)")) == 1);
    // x of degree 6: pole of order 2 on the weight-4 chart at infinity
    CHECK(intersect_with_zero(ctx41(), S("(t^6 ; t*(t^8-1))")) == 1);
}

TEST_CASE("heights") {
    HeightContext c5 = ctx5();
    CHECK(height(c5, S("(0 ; 0)")) == Rational(0));  // torsion
    CHECK(height(c5, S("(1 ; 1)")) == Rational(3, 2));
    CHECK(height(c5, S("(1 ; -1)")) == Rational(3, 2));  // h(P) = h(-P)

    // all quasi-elliptic sections are torsion, so their heights vanish,
    // including the ones meeting O
    HeightContext c41 = ctx41();
    for (const char* lit :
         {"(t^2 ; t*(t^4-1))", "(-t^2 ; t*(t^4+1))", "(t^6 ; t*(t^8-1))",
          "(1/t^2 ; t^5 - 1/t^3)"}) {
        CHECK(height(c41, S(lit)) == Rational(0));
    }

    // a positive height with a far D-component correction
    Rational h18 = height(ctx18(), S("(t^4 ; t^6)"));
    CHECK(h18 == Rational(3, 2));
    CHECK(h18 > Rational(0));
}

TEST_CASE("height pairing") {
    HeightContext c12 = ctx12();
    SurfacePoint p = S("(t^2 ; t^4 + t^2)");
    SurfacePoint q = S("(-t^2 ; t^2 - t^4)");
    REQUIRE(is_on_curve(c12.model, p));
    REQUIRE(is_on_curve(c12.model, q));
    CHECK(height_pairing(c12, p, q) == height_pairing(c12, q, p));
    CHECK(height_pairing(c12, p, p) == height(c12, p));
    CHECK(height_pairing(c12, p, negate_point(p)) == -height(c12, p));  // <P,-P> = -h

    // adding torsion does not change the height (tenth catalog model)
    HeightContext c10 = make_height_context(
        {P("0"), P("t^3") * P("t + 1").pow(2), P("0"), Field::F9});
    SurfacePoint u = S("(t + 1 ; t^3 + 1)");
    SurfacePoint tor = S("(0 ; 0)");
    SurfacePoint w = add_points(c10.model, u, tor);
    REQUIRE(is_on_curve(c10.model, u));
    CHECK(w == S("(t^3*(t+1) ; -t^3*(t^3+1))"));
    CHECK(height(c10, u) == height(c10, w));
}

TEST_CASE("torsion orders") {
    CHECK(torsion_order(ctx19(), S("(0 ; t^2)")) == 5);
    CHECK(torsion_order(ctx12(), S("(0 ; t^4)")) == 3);
    CHECK(torsion_order(ctx1(), S("(2*t^3 ; i*t^3)")) == 4);
    CHECK(torsion_order(ctx5(), S("(0 ; 0)")) == 2);
    CHECK(torsion_order(ctx41(), S("(t^2 ; t*(t^4-1))")) == 3);
    CHECK(!torsion_order(ctx5(), S("(1 ; 1)")).has_value());  // non-torsion

    CHECK(height(ctx19(), S("(0 ; t^2)")) == Rational(0));
    CHECK(height(ctx19(), S("(-1 ; i*t)")) > Rational(0));
}

TEST_CASE("two-torsion discovery") {
    HeightContext c2 = make_height_context(
        {P("0"), PolyGF9() - (P("t") * P("t-1") * P("t+1")).pow(2), P("0"), Field::F9});
    CHECK(find_two_torsion(c2).size() == 3);

    auto tors1 = find_two_torsion(ctx1());
    REQUIRE(tors1.size() == 1);
    CHECK(tors1[0].x.is_zero());

    CHECK(find_two_torsion(ctx18()).empty());

    HeightContext c29 = ctx29();
    auto tors29 = find_two_torsion(c29);
    CHECK(tors29.size() == 3);
    for (auto& s : tors29) {
        CHECK(is_on_curve(c29.model, s));
        CHECK(torsion_order(c29, s) == 2);
        CHECK(height(c29, s) == Rational(0));
    }
}

TEST_CASE("ambient discriminant identity") {
    auto d1 = ns_disc_check(ctx1(), 4);
    CHECK(d1.pass);
    CHECK(d1.value == Rational(-9));

    HeightContext c29 = ctx29();
    CHECK(c29.mw_rank() == 0);
    CHECK(ns_disc_check(c29, 4).pass);  // |disc T| = 144, full 2-torsion

    HeightContext c38 = make_height_context(
        {P("0"), P("0"), P("t^3") * P("t + 1").pow(4), Field::F9});
    CHECK(ns_disc_check(c38, 1).pass);  // quasi-elliptic, no torsion

    HeightContext c40 = make_height_context({P("t^4 + t"), P("t^8"), P("0"), Field::F9});
    CHECK(c40.mw_rank() == 0);
    CHECK(ns_disc_check(c40, 2).pass);

    CHECK(ns_disc_check(ctx41(), 81).pass);  // quasi-elliptic, |tor| = 3^4

    // rank 1: the generator's height 3/2 closes the identity 24 h / 4 = 9
    HeightContext c5 = ctx5();
    CHECK(c5.mw_rank() == 1);
    CHECK(ns_disc_check(c5, 2, {{Rational(3, 2)}}).pass);
    CHECK_THROWS(ns_disc_check(c5, 2));

    // and a failing value is reported, not silently fixed
    auto bad = ns_disc_check(ctx1(), 2);
    CHECK(!bad.pass);
    CHECK(bad.value == Rational(-36));
}
