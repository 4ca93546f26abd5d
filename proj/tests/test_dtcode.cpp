#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lcdt/dtcode.hpp"

using namespace lcdt;

namespace {

std::vector<bigint> values(const std::vector<FieldElement>& v) {
    std::vector<bigint> out;
    for (const auto& x : v) out.push_back(x.value());
    return out;
}

}  // namespace

TEST_CASE("tridiagonal construction") {
    auto f4 = FiniteField::create(2, 2);
    auto w = f4->element_x();

    Matrix t = build_tridiag({f4, 2, w, f4->one()});
    CHECK(t == Matrix(f4, 2, 2, {w, f4->one(), f4->one(), w}));

    Matrix t3 = build_tridiag({f4, 3, f4->zero(), w});
    CHECK(t3 == Matrix(f4, 3, 3,
                       {f4->zero(), w, f4->zero(),
                        w, f4->zero(), w,
                        f4->zero(), w, f4->zero()}));

    // n = 4 band pattern: zero outside the three central diagonals
    Matrix t4 = build_tridiag({f4, 4, w, f4->one()});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) CHECK(t4.at(i, j) == w);
            else if (i + 1 == j || j + 1 == i) CHECK(t4.at(i, j) == f4->one());
            else CHECK(t4.at(i, j).is_zero());
        }
    CHECK(t4 == t4.transpose());

    // T_1 = [a]; b is irrelevant
    Matrix t1 = build_tridiag({f4, 1, w, f4->zero()});
    CHECK(t1 == Matrix(f4, 1, 1, {w}));

    CHECK_THROWS_AS(build_tridiag({f4, 2, w, f4->zero()}), ZeroOffDiagonal);
    auto f2 = FiniteField::create(2, 1);
    CHECK_THROWS_AS(build_tridiag({f4, 2, f2->one(), f4->one()}), MixedFields);
}

TEST_CASE("DT generator") {
    auto f4 = FiniteField::create(2, 2);
    auto w = f4->element_x();

    Matrix g = dt_generator({f4, 2, w, f4->one()});
    CHECK(g == Matrix(f4, 2, 4,
                      {f4->one(), f4->zero(), w, f4->one(),
                       f4->zero(), f4->one(), f4->one(), w}));
    CHECK(g.rank() == 2);

    Matrix g1 = dt_generator({f4, 1, w, f4->one()});
    CHECK(g1 == Matrix(f4, 1, 2, {f4->one(), w}));

    CHECK_THROWS_AS(dt_generator({f4, 2, f4->zero(), f4->zero()}), ZeroOffDiagonal);
}

TEST_CASE("spectra") {
    auto f2 = FiniteField::create(2, 1);
    auto f4 = FiniteField::create(2, 2);
    auto w = f4->element_x();

    auto s1 = spectrum({f2, 2, f2->zero(), f2->one()});
    REQUIRE(s1.items.size() == 1);
    CHECK(s1.items[0].first == s1.ext->one());
    CHECK(s1.items[0].second == 2);

    auto s2 = spectrum({f4, 2, w, f4->one()});
    REQUIRE(s2.items.size() == 1);
    CHECK(s2.items[0].first == w * w);
    CHECK(s2.items[0].second == 2);

    // scaling: spectrum(a=0, b=w) = w * spectrum(T_2(0))
    auto s3 = spectrum({f4, 2, f4->zero(), w});
    REQUIRE(s3.items.size() == 1);
    CHECK(s3.items[0].first == w);

    CHECK_THROWS_AS(spectrum({f4, 2, w, f4->zero()}), ZeroOffDiagonal);
}

TEST_CASE("spectral consistency with char_poly") {
    // the eigenvalue multiset {a - b rho} equals the root multiset of
    // char_poly(T^) scanned in the same extension
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto f = FiniteField::create(p, s);
        auto g = f->primitive_element();
        for (u64 n = 2; n <= 6; ++n) {
            DTParams params{f, n, g, f->one()};
            auto sp = spectrum(params);
            Poly cp = char_poly(build_tridiag(params));
            auto roots = cp.roots_in(sp.emb);
            REQUIRE(roots.size() == sp.items.size());
            for (std::size_t i = 0; i < roots.size(); ++i) {
                CHECK(roots[i].first == sp.items[i].first);
                CHECK(roots[i].second == sp.items[i].second);
            }
        }
    }
}

TEST_CASE("forbidden sets on pinned cases") {
    auto f2 = FiniteField::create(2, 1);
    auto f3 = FiniteField::create(3, 1);
    auto f4 = FiniteField::create(2, 2);
    auto f5 = FiniteField::create(5, 1);
    auto f7 = FiniteField::create(7, 1);
    auto f8 = FiniteField::create(2, 3);

    // F_3, n = 3: full set {0, theta^6, theta^2} in F_9, base {0}
    auto fs33 = forbidden_set(f3, 3, f3->one());
    CHECK(fs33.profile.r == 0);
    CHECK(fs33.profile.m == 3);
    CHECK(fs33.ext->order() == 9);
    REQUIRE(fs33.theta.has_value());
    REQUIRE(fs33.mu.has_value());
    CHECK(fs33.theta->mult_order() == 8);
    CHECK(*fs33.mu == fs33.theta->pow(2));
    REQUIRE(fs33.full_set.size() == 3);
    CHECK(fs33.full_set[0].is_zero());
    CHECK(fs33.full_set[1] == fs33.theta->pow(6));
    CHECK(fs33.full_set[2] == fs33.theta->pow(2));
    CHECK(values(fs33.base_intersection) == std::vector<bigint>{0});

    // F_2, n = 2: base {0}
    auto fs22 = forbidden_set(f2, 2, f2->one());
    CHECK(values(fs22.base_intersection) == std::vector<bigint>{0});

    // F_3, n = 4: six ratios in F_81, base {1, 2}
    auto fs34 = forbidden_set(f3, 4, f3->one());
    CHECK(fs34.ext->order() == 81);
    CHECK(fs34.full_set.size() == 6);
    CHECK(values(fs34.base_intersection) == std::vector<bigint>{1, 2});
    REQUIRE(fs34.mu.has_value());
    CHECK((*fs34.mu * *fs34.mu + fs34.ext->one()).is_zero());
    CHECK(fs34.theta->mult_order() == 10);

    // F_5, n = 4: r = 1, m = 0, base {0, 1, 4}
    auto fs54 = forbidden_set(f5, 4, f5->one());
    CHECK(fs54.profile.r == 1);
    CHECK(fs54.profile.m == 0);
    CHECK(fs54.ext == f5);
    CHECK(!fs54.theta.has_value());
    CHECK(values(fs54.base_intersection) == std::vector<bigint>{0, 1, 4});

    // F_4, n = 2: base {0}
    CHECK(values(forbidden_set(f4, 2, f4->one()).base_intersection) ==
          std::vector<bigint>{0});

    // F_8, n = 4: empty for every b
    for (bigint v = 1; v < 8; ++v)
        CHECK(forbidden_set(f8, 4, f8->from_value(v)).base_intersection.empty());

    // F_7, n = 2 and F_3, n = 2: empty
    CHECK(forbidden_set(f7, 2, f7->one()).base_intersection.empty());
    CHECK(forbidden_set(f3, 2, f3->one()).base_intersection.empty());

    CHECK_THROWS_AS(forbidden_set(f3, 1, f3->one()), LengthTooShort);
    CHECK_THROWS_AS(forbidden_set(f3, 3, f3->zero()), ZeroOffDiagonal);
    CHECK_THROWS_AS(forbidden_set(f3, 3, f2->one()), MixedFields);
}

TEST_CASE("LCD verdicts") {
    auto f2 = FiniteField::create(2, 1);
    auto f3 = FiniteField::create(3, 1);
    auto f4 = FiniteField::create(2, 2);
    auto w = f4->element_x();

    CHECK(!is_lcd_theorem({f3, 3, f3->from_int(0), f3->one()}));
    CHECK(is_lcd_theorem({f3, 3, f3->from_int(1), f3->one()}));
    CHECK(is_lcd_theorem({f3, 3, f3->from_int(2), f3->one()}));
    CHECK(is_lcd_theorem({f4, 2, w, f4->one()}));

    // direct oracle basics
    CHECK(is_lcd_direct(dt_generator({f2, 2, f2->one(), f2->one()})));
    CHECK(!is_lcd_direct(dt_generator({f2, 2, f2->zero(), f2->one()})));
    CHECK_THROWS_AS(is_lcd_direct(Matrix(f2, 2, 4)), RankDeficientGenerator);

    // n = 1 falls through to the oracle: [1 | a]
    CHECK(!is_lcd_theorem({f2, 1, f2->one(), f2->one()}));
    CHECK(is_lcd_theorem({f2, 1, f2->zero(), f2->one()}));
}

TEST_CASE("oracle agreement mini sweep") {
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto f = FiniteField::create(p, s);
        for (u64 n = 2; n <= 6; ++n)
            for (bigint av = 0; av < f->order(); ++av)
                for (bigint bv = 1; bv < f->order(); ++bv) {
                    DTParams params{f, n, f->from_value(av), f->from_value(bv)};
                    bool thm = is_lcd_theorem(params);
                    bool direct = is_lcd_direct(dt_generator(params));
                    REQUIRE(thm == direct);
                }
    }
}

TEST_CASE("square-root-of-minus-one membership matches the spectrum") {
    // non-LCD iff some eigenvalue of T^ squares to -1
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto f = FiniteField::create(p, s);
        for (u64 n = 2; n <= 5; ++n)
            for (bigint av = 0; av < f->order(); ++av) {
                DTParams params{f, n, f->from_value(av), f->one()};
                auto sp = spectrum(params);
                auto minus_one = -sp.ext->one();
                bool hit = false;
                for (const auto& [lam, mult] : sp.items)
                    if (lam * lam == minus_one) hit = true;
                CHECK(is_lcd_theorem(params) == !hit);
            }
    }
}

TEST_CASE("existence diagnosis") {
    auto f3 = FiniteField::create(3, 1);
    auto f5 = FiniteField::create(5, 1);
    auto f7 = FiniteField::create(7, 1);
    auto f8 = FiniteField::create(2, 3);

    // F_8, n = 4: gcd(5, 8*63) = 1, arithmetic-even certifies all a
    auto d84 = existence_diagnosis(f8, 4);
    bool found = false;
    for (const auto& rec : d84.records)
        if (rec.id == "arithmetic-even") {
            found = true;
            CHECK(rec.applicable);
            CHECK(rec.kind == "all_but");
            CHECK(rec.exceptions.empty());
            CHECK(rec.exact);
        }
    CHECK(found);

    // F_3, n = 3: nothing applies
    auto d33 = existence_diagnosis(f3, 3);
    for (const auto& rec : d33.records) CHECK(!rec.applicable);

    // F_7, n = 2: counting-odd (7 > 4)
    auto d72 = existence_diagnosis(f7, 2);
    for (const auto& rec : d72.records)
        if (rec.id == "counting-odd") CHECK(rec.applicable);

    // F_5, n = 4: arithmetic-odd-ext applies with exact exceptions {0, 1, 4}
    auto d54 = existence_diagnosis(f5, 4);
    for (const auto& rec : d54.records)
        if (rec.id == "arithmetic-odd-ext") {
            CHECK(rec.applicable);
            CHECK(rec.exact);
            CHECK(values(rec.exceptions) == std::vector<bigint>{0, 1, 4});
        }

    CHECK_THROWS_AS(existence_diagnosis(f3, 3, f3->zero()), ZeroOffDiagonal);
}

TEST_CASE("diagnosis soundness mini sweep") {
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}}) {
        auto f = FiniteField::create(p, s);
        for (u64 n = 2; n <= 6; ++n)
            for (bigint bv = 1; bv < f->order(); ++bv) {
                auto b = f->from_value(bv);
                auto fs = forbidden_set(f, n, b);
                auto diag = existence_diagnosis(f, n, b);
                for (const auto& rec : diag.records) {
                    if (!rec.applicable) continue;
                    if (rec.kind == "exists") {
                        REQUIRE(fs.base_intersection.size() <
                                static_cast<std::size_t>(f->order_u64()));
                    } else {
                        // every forbidden a must be in the exception list
                        for (const auto& a : fs.base_intersection) {
                            bool listed = false;
                            for (const auto& e : rec.exceptions)
                                if (e == a) listed = true;
                            REQUIRE(listed);
                        }
                        if (rec.exact)
                            REQUIRE(rec.exceptions.size() == fs.base_intersection.size());
                    }
                }
            }
    }
}
