// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "k3fib/lattice.hpp"

using namespace k3fib;

TEST_CASE("gram determinants match the closed forms") {
    for (int n = 1; n <= 24; ++n) CHECK(gram_det(RootLabel('A', n)) == gram_det_formula(RootLabel('A', n)));
    for (int n = 4; n <= 24; ++n) CHECK(gram_det(RootLabel('D', n)) == gram_det_formula(RootLabel('D', n)));
    CHECK(gram_det(RootLabel('E', 6)) == 3);
    CHECK(gram_det(RootLabel('E', 7)) == -2);
    CHECK(gram_det(RootLabel('E', 8)) == 1);
    CHECK(gram_det(RootLabel('A', 2)) == 3);
    CHECK(gram_det(RootLabel('D', 7)) == -4);
    CHECK_THROWS(RootLabel('D', 3));
    CHECK_THROWS(RootLabel('E', 9));
}

TEST_CASE("contribution table") {
    // A11 fiber (12 components), i = j = 3
    CHECK(contribution(RootLabel('A', 11), {CompId::Cyclic, 3}, {CompId::Cyclic, 3}) ==
          Rational(9, 4));
    CHECK(contribution(RootLabel('E', 7), {CompId::Simple, 0}, {CompId::Simple, 0}) ==
          Rational(3, 2));
    // D10 = D_{n+4} with n = 6, equal far components
    CHECK(contribution(RootLabel('D', 10), {CompId::Far, 1}, {CompId::Far, 1}) ==
          Rational(5, 2));
    CHECK(contribution(RootLabel('D', 10), {CompId::Near, 0}, {CompId::Near, 0}) == Rational(1));
    CHECK(contribution(RootLabel('D', 10), {CompId::Near, 0}, {CompId::Far, 0}) ==
          Rational(1, 2));
    CHECK(contribution(RootLabel('D', 10), {CompId::Far, 0}, {CompId::Far, 1}) ==
          Rational(1, 2) + Rational(6, 4));
    CHECK(contribution(RootLabel('E', 6), {CompId::Simple, 0}, {CompId::Simple, 0}) ==
          Rational(4, 3));
    CHECK(contribution(RootLabel('E', 6), {CompId::Simple, 0}, {CompId::Simple, 1}) ==
          Rational(2, 3));
    CHECK(contribution(RootLabel('A', 11), CompId::identity(), {CompId::Cyclic, 5}) ==
          Rational(0));

    // symmetry and range for the cyclic case
    for (int n = 2; n <= 16; ++n)
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                Rational c = contribution(RootLabel('A', n - 1), {CompId::Cyclic, i},
                                          {CompId::Cyclic, j});
                CHECK(c == contribution(RootLabel('A', n - 1), {CompId::Cyclic, j},
                                        {CompId::Cyclic, i}));
                CHECK(c > Rational(0));
                CHECK(!(c > Rational(n, 4)));
            }
}

TEST_CASE("complement tables") {
    CHECK(a2_complement(RootLabel('E', 8)).value() == RootSystem{RootLabel('E', 6)});
    CHECK(a2sq_complement(RootLabel('E', 8)).value() ==
          (RootSystem{RootLabel('A', 2), RootLabel('A', 2)}));
    CHECK(a2sq_complement(RootLabel('D', 8)).value() ==
          (RootSystem{RootLabel('A', 1), RootLabel('A', 1)}));
    CHECK(a2_complement(RootLabel('A', 2)).value() == RootSystem{});
    CHECK(a2_complement(RootLabel('A', 3)).value() == RootSystem{});
    CHECK(a2_complement(RootLabel('A', 7)).value() == RootSystem{RootLabel('A', 4)});
    CHECK(a2_complement(RootLabel('D', 4)).value() == RootSystem{});
    CHECK(a2_complement(RootLabel('D', 5)).value() ==
          (RootSystem{RootLabel('A', 1), RootLabel('A', 1)}));
    CHECK(a2_complement(RootLabel('D', 6)).value() == RootSystem{RootLabel('A', 3)});
    CHECK(a2_complement(RootLabel('D', 9)).value() == RootSystem{RootLabel('D', 6)});
    CHECK(a2_complement(RootLabel('E', 6)).value() ==
          (RootSystem{RootLabel('A', 2), RootLabel('A', 2)}));
    CHECK(a2_complement(RootLabel('E', 7)).value() == RootSystem{RootLabel('A', 5)});
    CHECK(!a2_complement(RootLabel('A', 1)).has_value());
    CHECK(!a2sq_complement(RootLabel('A', 4)).has_value());
    CHECK(!a2sq_complement(RootLabel('D', 5)).has_value());
    CHECK(a2sq_complement(RootLabel('A', 5)).value() == RootSystem{});
    CHECK(a2sq_complement(RootLabel('A', 6)).value() == RootSystem{});
    CHECK(a2sq_complement(RootLabel('A', 11)).value() == RootSystem{RootLabel('A', 5)});
    CHECK(a2sq_complement(RootLabel('D', 6)).value() == RootSystem{});
    CHECK(a2sq_complement(RootLabel('D', 7)).value() == RootSystem{});
    CHECK(a2sq_complement(RootLabel('D', 9)).value() == RootSystem{RootLabel('A', 3)});
    CHECK(a2sq_complement(RootLabel('D', 12)).value() == RootSystem{RootLabel('D', 6)});
    CHECK(a2sq_complement(RootLabel('E', 6)).value() == RootSystem{RootLabel('A', 2)});
    CHECK(a2sq_complement(RootLabel('E', 7)).value() == RootSystem{RootLabel('A', 2)});
}

TEST_CASE("niemeier root systems") {
    auto all = niemeier_roots();
    CHECK(all.size() == 23);
    for (auto& rs : all) CHECK(rs.total_rank() == 24);
    RootSystem target = RootSystem::parse("A11 D7 E6");
    bool found = false;
    for (auto& rs : all) found = found || rs == target;
    CHECK(found);
}

TEST_CASE("fibration lattice enumeration") {
    auto rows = enumerate_fibration_lattices();
    CHECK(rows.size() == 52);
    for (auto& r : rows) {
        CHECK(r.mw_rank >= 0);
        CHECK(r.mw_rank == 20 - r.roots.total_rank());
    }
    auto has_row = [&](const char* src, const char* roots, int rank) {
        RootSystem s = RootSystem::parse(src), t = RootSystem::parse(roots);
        for (auto& r : rows)
            if (r.source == s && r.roots == t && r.mw_rank == rank) return true;
        return false;
    };
    CHECK(has_row("E8^3", "A2^2 E8^2", 0));
    CHECK(has_row("D4^6", "D4^4", 4));
    CHECK(has_row("A2^12", "A2^10", 0));
    CHECK(has_row("E8 D16", "E6 D13", 1));
    CHECK(has_row("A11 D7 E6", "E6 A11", 3));
    CHECK(has_row("A11 D7 E6", "E6 D7 A5", 2));
    CHECK(has_row("A24", "A18", 2));
    CHECK(has_row("D10 E7^2", "A5^2 D10", 0));
}

TEST_CASE("shioda-tate accounting") {
    // hyperbolic plane + A11 + A2 + D7 (first catalog entry)
    std::vector<RootLabel> f1{RootLabel('A', 11), RootLabel('A', 2), RootLabel('D', 7)};
    auto t1 = trivial_lattice_of(f1);
    CHECK(t1.rank == 22);
    CHECK(t1.disc == -144);
    CHECK(shioda_tate_mw_rank(f1) == 0);

    std::vector<RootLabel> f2(4, RootLabel('D', 4));
    auto t2 = trivial_lattice_of(f2);
    CHECK(t2.rank == 18);
    CHECK(t2.disc == -256);
    CHECK(shioda_tate_mw_rank(f2) == 4);

    std::vector<RootLabel> f6(3, RootLabel('D', 6));
    CHECK(shioda_tate_mw_rank(f6) == 2);

    auto t0 = trivial_lattice_of({});
    CHECK(t0.rank == 2);
    CHECK(t0.disc == -1);
}
