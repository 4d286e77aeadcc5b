// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "k3fib/model.hpp"

using namespace k3fib;

static PolyGF9 P(const char* s) { return parse_poly(s); }
static RatGF9 R(const char* s) { return parse_ratfunc(s); }

// ---------------------------------------------------------------------------
// Independent discriminant oracle: evaluate the universal integral formula
//   delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
// with b2 = 4 a2, b4 = 2 a4, b6 = 4 a6, b8 = 4 a2 a6 - a4^2 over Z[i][t]
// (coefficients lifted to Gaussian integers) and reduce mod 3 at the end.
// This never touches the reduced closed form used by the library.

namespace {

struct Zi {
    long long a = 0, b = 0;  // a + b*i
    friend Zi operator+(Zi x, Zi y) { return {x.a + y.a, x.b + y.b}; }
    friend Zi operator-(Zi x, Zi y) { return {x.a - y.a, x.b - y.b}; }
    friend Zi operator*(Zi x, Zi y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    }
};

using ZiPoly = std::vector<Zi>;

ZiPoly lift(const PolyGF9& p) {
    ZiPoly r(p.degree() + 1);
    for (int k = 0; k <= p.degree(); ++k) r[k] = {p.coeff(k).re(), p.coeff(k).im()};
    return r;
}
ZiPoly mul(const ZiPoly& x, const ZiPoly& y) {
    if (x.empty() || y.empty()) return {};
    ZiPoly r(x.size() + y.size() - 1);
    for (size_t j = 0; j < x.size(); ++j)
        for (size_t k = 0; k < y.size(); ++k) r[j + k] = r[j + k] + x[j] * y[k];
    return r;
}
ZiPoly add(ZiPoly x, const ZiPoly& y) {
    if (y.size() > x.size()) x.resize(y.size());
    for (size_t k = 0; k < y.size(); ++k) x[k] = x[k] + y[k];
    return x;
}
ZiPoly scale(long long c, ZiPoly x) {
    for (auto& e : x) e = Zi{c, 0} * e;
    return x;
}
PolyGF9 reduce(const ZiPoly& x) {
    PolyGF9 r;
    for (size_t k = 0; k < x.size(); ++k) {
        int a = static_cast<int>(((x[k].a % 3) + 3) % 3);
        int b = static_cast<int>(((x[k].b % 3) + 3) % 3);
        r.set_coeff(static_cast<int>(k), GF9(a, b));
    }
    return r;
}

PolyGF9 discriminant_oracle(const WeierstrassModel& m) {
    ZiPoly a2 = lift(m.a2), a4 = lift(m.a4), a6 = lift(m.a6);
    ZiPoly b2 = scale(4, a2);
    ZiPoly b4 = scale(2, a4);
    ZiPoly b6 = scale(4, a6);
    ZiPoly b8 = add(scale(4, mul(a2, a6)), scale(-1, mul(a4, a4)));
    ZiPoly d = scale(-1, mul(mul(b2, b2), b8));
    d = add(d, scale(-8, mul(mul(b4, b4), b4)));
    d = add(d, scale(-27, mul(b6, b6)));
    d = add(d, scale(9, mul(mul(b2, b4), b6)));
    return reduce(d);
}

WeierstrassModel fib1() { return {P("2*t^3 + 2"), P("t^6"), P("0"), Field::F9}; }
WeierstrassModel fib2() {
    return {P("0"), PolyGF9() - (P("t") * P("t-1") * P("t+1")).pow(2), P("0"), Field::F9};
}
WeierstrassModel fib41() { return {P("0"), P("0"), P("t^10 + t^2"), Field::F9}; }

}  // namespace

TEST_CASE("reduced discriminant agrees with the integral-formula oracle") {
    std::vector<WeierstrassModel> samples = {
        fib1(),
        fib2(),
        fib41(),
        {P("2*t^3"), P("t^3"), P("0"), Field::F9},
        {P("t^4 - t + 1"), P("t^2") * P("t-1") * P("1 + t - t^2"),
         P("t^4") * P("t-1").pow(2), Field::F9},
        {P("i*t^3 + 2"), P("(1+i)*t^5"), P("t^11 + i*t"), Field::F9},
    };
    for (auto& m : samples) CHECK(discriminant(m) == discriminant_oracle(m));
}

TEST_CASE("catalog discriminants") {
    // first catalog model: delta = t^12 (1 - t)^3 exactly
    CHECK(discriminant(fib1()) == P("t^12") * P("1 - t").pow(3));
    // quasi-elliptic model: identically zero
    CHECK(discriminant(fib41()).is_zero());
    // degenerate constant-j family
    WeierstrassModel deg{P("1"), P("0"), P("0"), Field::F9};
    CHECK(discriminant(deg).is_zero());
    CHECK(validate_k3(deg).verdict == K3Verdict::Invalid);
}

TEST_CASE("validate_k3") {
    CHECK(validate_k3(fib1()).verdict == K3Verdict::Elliptic);
    CHECK(validate_k3(fib41()).verdict == K3Verdict::QuasiElliptic);
    WeierstrassModel cst{P("0"), P("1"), P("0"), Field::F9};
    CHECK(validate_k3(cst).verdict == K3Verdict::Invalid);  // no singular fiber
    WeierstrassModel rat{P("t"), P("t^2"), P("t^3"), Field::F9};
    CHECK(validate_k3(rat).verdict == K3Verdict::RationalSurface);
    WeierstrassModel toobig{P("t^5"), P("0"), P("0"), Field::F9};
    CHECK(validate_k3(toobig).verdict == K3Verdict::Invalid);
}

TEST_CASE("points on and off the curve") {
    CHECK(is_on_curve(fib41(), SurfacePoint::affine(R("t^2"), R("t*(t^4 - 1)"))));
    CHECK(!is_on_curve(fib1(), SurfacePoint::affine(R("t^3"), R("0"))));
    CHECK(is_on_curve(fib1(), SurfacePoint::zero()));
    // corrected 4-torsion of the first model
    CHECK(is_on_curve(fib1(), SurfacePoint::affine(R("2*t^3"), R("i*t^3"))));
}

TEST_CASE("group law") {
    SurfacePoint O = SurfacePoint::zero();
    SurfacePoint p = SurfacePoint::affine(R("0"), R("0"));
    CHECK(add_points(fib2(), p, O) == p);
    CHECK(add_points(fib2(), p, p) == O);  // 2-torsion

    // quasi-elliptic: P + P = -P for every affine section
    WeierstrassModel q = fib41();
    for (const char* lit : {"(t^2 ; t*(t^4-1))", "(t^6 ; t*(t^8-1))", "(1/t^2 ; t^5 - 1/t^3)"}) {
        SurfacePoint s = parse_section(lit);
        REQUIRE(is_on_curve(q, s));
        CHECK(add_points(q, s, s) == negate_point(s));
        CHECK(multiply_point(q, s, 3) == O);
    }

    WeierstrassModel m2 = fib2();
    SurfacePoint t1 = parse_section("(t^3 - t ; 0)");
    SurfacePoint t2 = parse_section("(-t^3 + t ; 0)");
    REQUIRE(is_on_curve(m2, t1));
    REQUIRE(is_on_curve(m2, t2));
    CHECK(add_points(m2, t1, t2) == p);  // the 2-torsions sum into each other
    CHECK(add_points(m2, add_points(m2, t1, t2), t2) == t1);
}

TEST_CASE("model maps") {
    WeierstrassModel m = fib1();
    ModelMap id = ModelMap::identity();
    CHECK(apply_map(m, id) == m);

    // delta transforms by u^-12
    WeierstrassModel s{P("t^3"), P("t^6"), P("t^9"), Field::F9};
    ModelMap ut{R("t"), R("0")};
    WeierstrassModel su = apply_map(s, ut);
    CHECK(discriminant(s) == discriminant(su) * P("t^12"));

    // x -> x + 1 makes a6 vanish at t = 1 on the first model
    ModelMap shift{R("1"), R("1")};
    WeierstrassModel m1 = apply_map(m, shift);
    CHECK(m1.a6.eval(GF9(1)).is_zero());

    // point transforms round-trip and stay on the curve
    SurfacePoint pt = SurfacePoint::affine(R("2*t^3"), R("i*t^3"));
    CHECK(shift.pushforward(shift.pullback(pt)) == pt);
    CHECK(is_on_curve(m1, shift.pullback(pt)));

    ModelMap a{R("t"), R("t^2")};
    ModelMap b{R("2"), R("1")};
    ModelMap ab = ModelMap::compose(a, b);
    CHECK(ab.pushforward(pt) == a.pushforward(b.pushforward(pt)));
}

TEST_CASE("model at infinity") {
    WeierstrassModel f5{P("2*t^3"), P("t^3"), P("0"), Field::F9};
    WeierstrassModel inf = model_at_infinity(f5);
    CHECK(inf.a2 == P("2*t"));
    CHECK(inf.a4 == P("t^5"));
    CHECK(model_at_infinity(inf) == f5);

    WeierstrassModel c{P("0"), P("0"), P("1"), Field::F9};
    CHECK(model_at_infinity(c).a6 == P("t^12"));
}

TEST_CASE("model and section text io") {
    WeierstrassModel m = fib1();
    WeierstrassModel back = parse_model(model_to_string(m));
    CHECK(back == m);
    CHECK(back.field == Field::F9);

    SurfacePoint s = parse_section("(1/t^2 ; t^5 - 1/t^3)");
    CHECK(parse_section(section_to_string(s)) == s);
    CHECK(parse_section("O").is_zero());
    CHECK_THROWS(parse_model(std::string("a2 = t^5 + i\nfield = F3\n")));
}
