#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lcdt/dickson.hpp"

using namespace lcdt;

TEST_CASE("dickson evaluation") {
    auto f3 = FiniteField::create(3, 1);
    auto f4 = FiniteField::create(2, 2);
    auto f5 = FiniteField::create(5, 1);

    for (const auto& f : {f3, f4, f5})
        for (bigint v = 0; v < f->order(); ++v) {
            auto x = f->from_value(v);
            CHECK(dickson_eval(0, x) == f->one());
            CHECK(dickson_eval(1, x) == x);
            CHECK(dickson_eval(2, x) == x * x - f->one());
        }

    CHECK(dickson_eval(4, f3->from_int(1)) == f3->from_int(2));
    // E_n(1) over F_3 for n = 0..5
    std::vector<long long> seq{1, 1, 0, 2, 2, 0};
    for (u64 n = 0; n < seq.size(); ++n)
        CHECK(dickson_eval(n, f3->one()) == f3->from_int(seq[n]));
}

TEST_CASE("dickson coefficients") {
    auto f3 = FiniteField::create(3, 1);
    auto f7 = FiniteField::create(7, 1);

    CHECK(dickson_poly(0, f7) == Poly::constant(f7->one()));
    CHECK(dickson_poly(2, f7) ==
          Poly(f7, {f7->from_int(-1), f7->zero(), f7->one()}));
    CHECK(dickson_poly(3, f3) ==
          Poly(f3, {f3->zero(), f3->one(), f3->zero(), f3->one()}));  // x^3 + x

    for (u64 n = 0; n <= 12; ++n) CHECK(dickson_poly(n, f7).degree() == (int)n);

    // evaluation agrees with the coefficient form, every x, several fields
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {3, 2}}) {
        auto f = FiniteField::create(p, s);
        for (u64 n = 0; n <= 12; ++n) {
            Poly en = dickson_poly(n, f);
            for (bigint v = 0; v < f->order(); ++v) {
                auto x = f->from_value(v);
                CHECK(dickson_eval(n, x) == en.eval(x));
            }
        }
    }
}

TEST_CASE("factorization profile") {
    auto fp = factor_profile(3, 2);
    CHECK(fp.r == 2);
    CHECK(fp.m == 0);
    CHECK(fp.pr() == 4);

    fp = factor_profile(4, 3);
    CHECK(fp.r == 0);
    CHECK(fp.m == 4);

    fp = factor_profile(8, 3);
    CHECK(fp.r == 2);
    CHECK(fp.m == 0);

    fp = factor_profile(58, 2);
    CHECK(fp.r == 0);
    CHECK(fp.m == 58);

    fp = factor_profile(4, 5);
    CHECK(fp.r == 1);
    CHECK(fp.m == 0);

    fp = factor_profile(17, 3);
    CHECK(fp.r == 2);
    CHECK(fp.m == 1);
    CHECK((fp.m + 1) * fp.pr() == fp.n + 1);
}

TEST_CASE("root multisets on pinned cases") {
    auto f2 = FiniteField::create(2, 1);
    auto f3 = FiniteField::create(3, 1);

    // n = 3 over F_3: roots {0, theta^6, theta^2} in F_9, multiplicity 1
    auto r33 = dickson_roots(3, f3);
    CHECK(r33.ext->order() == 9);
    REQUIRE(r33.theta.has_value());
    auto theta = *r33.theta;
    CHECK(theta.mult_order() == 8);
    REQUIRE(r33.items.size() == 3);
    CHECK(r33.items[0].first == r33.ext->zero());
    CHECK(r33.items[1].first == theta.pow(6));
    CHECK(r33.items[2].first == theta.pow(2));
    for (const auto& it : r33.items) CHECK(it.second == 1);

    // n = 2 over F_2: E_2 = (x+1)^2, the root is 1 = theta + theta^2 in F_4
    auto r22 = dickson_roots(2, f2);
    CHECK(r22.ext->order() == 4);
    REQUIRE(r22.items.size() == 1);
    CHECK(r22.items[0].first == r22.ext->one());
    CHECK(r22.items[0].second == 2);

    // n = 3 over F_2: r = 2, m = 0, E_3 = x^3
    auto r32 = dickson_roots(3, f2);
    CHECK(r32.ext == f2);
    CHECK(!r32.theta.has_value());
    REQUIRE(r32.items.size() == 1);
    CHECK(r32.items[0].first.is_zero());
    CHECK(r32.items[0].second == 3);

    // n = 8 over F_3: r = 2, m = 0, E_8 = (x-2)^4 (x+2)^4
    auto r83 = dickson_roots(8, f3);
    CHECK(r83.ext == f3);
    REQUIRE(r83.items.size() == 2);
    CHECK(r83.items[0].first == f3->one());  // -2 = 1
    CHECK(r83.items[0].second == 4);
    CHECK(r83.items[1].first == f3->from_int(2));
    CHECK(r83.items[1].second == 4);

    // n = 5 over F_2: r = 1, m = 2, E_5 = x (x+1)^4
    auto r52 = dickson_roots(5, f2);
    CHECK(r52.ext->order() == 4);
    REQUIRE(r52.items.size() == 2);
    CHECK(r52.items[0].first.is_zero());
    CHECK(r52.items[0].second == 1);
    CHECK(r52.items[1].first == r52.ext->one());
    CHECK(r52.items[1].second == 4);
}

TEST_CASE("factorization identity up to n = 25") {
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
        auto f = FiniteField::create(p, s);
        for (u64 n = 1; n <= 25; ++n) {
            auto rm = dickson_roots(n, f);
            u64 total = 0;
            for (const auto& it : rm.items) total += it.second;
            REQUIRE(total == n);
            Poly expanded = Poly::from_roots(rm.ext, rm.items);
            Poly expected = dickson_poly(n, f).map(rm.emb);
            REQUIRE(expanded == expected);
        }
    }
}

TEST_CASE("theta choice invariance") {
    // n = 4 over F_3: theta is a primitive 10th root in F_81; any theta^j
    // with gcd(j, 10) = 1 yields the same root set
    auto f3 = FiniteField::create(3, 1);
    auto rm = dickson_roots(4, f3);
    REQUIRE(rm.theta.has_value());
    auto theta = *rm.theta;
    CHECK(theta.mult_order() == 10);

    std::set<bigint> reference;
    for (const auto& it : rm.items) reference.insert(it.first.value());

    for (u64 j : {3u, 7u, 9u}) {
        auto tj = theta.pow(j);
        std::set<bigint> alt;
        for (u64 i = 1; i <= 4; ++i) {
            auto ti = tj.pow(i);
            alt.insert((ti + ti.inverse()).value());
        }
        CHECK(alt == reference);
    }
}
