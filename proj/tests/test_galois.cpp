#include <catch2/catch_amalgamated.hpp>

#include "lcdt/galois.hpp"

#include <set>

using namespace lcdt;

namespace {
std::vector<u32> vec(std::initializer_list<u32> v) { return std::vector<u32>(v); }
}

TEST_CASE("integer utilities") {
    CHECK(ipow(2, 10) == 1024);
    CHECK(is_probable_prime(bigint(2)));
    CHECK(is_probable_prime(bigint("2305843009213693951")));  // 2^61 - 1
    CHECK(!is_probable_prime(bigint("4611686018427387903")));  // 2^62 - 1 = 3*715827883*2147483647

    auto f = factorize(bigint("600851475143"));
    std::vector<bigint> primes;
    for (auto& [p, e] : f) {
        primes.push_back(p);
        CHECK(e == 1);
    }
    CHECK(primes == std::vector<bigint>{71, 839, 1471, 6857});

    auto phi = cyclotomic_values(2, 6);
    CHECK(phi.at(1) == 1);
    CHECK(phi.at(2) == 3);
    CHECK(phi.at(3) == 7);
    CHECK(phi.at(6) == 3);

    auto ps = prime_factors_of_order(2, 6);  // 63 = 3^2 * 7
    CHECK(ps == std::vector<bigint>{3, 7});

    CHECK(mult_order_mod(bigint(3), 8) == 2);
    CHECK(mult_order_mod(bigint(8), 59) == 58);
    CHECK(mult_order_mod(bigint(3), 10) == 4);
    CHECK_THROWS_AS(mult_order_mod(bigint(2), 8), std::invalid_argument);

    // p^D - 1 assembled from its cyclotomic pieces
    bigint prod = 1;
    for (auto& [d, v] : cyclotomic_values(3, 12)) prod *= v;
    CHECK(prod == ipow(3, 12) - 1);
}

TEST_CASE("field construction and canonical moduli") {
    CHECK(FiniteField::create(2, 1)->modulus() == vec({0, 1}));
    CHECK(FiniteField::create(3, 1)->modulus() == vec({0, 1}));
    CHECK(FiniteField::create(2, 2)->modulus() == vec({1, 1, 1}));
    CHECK(FiniteField::create(2, 3)->modulus() == vec({1, 1, 0, 1}));
    CHECK(FiniteField::create(3, 2)->modulus() == vec({1, 0, 1}));
    CHECK(FiniteField::create(3, 4)->modulus() == vec({2, 1, 0, 0, 1}));

    auto f4 = FiniteField::create(2, 2, {1, 1, 1});
    CHECK(f4->order() == 4);
    CHECK(f4->spec() == "2^2/1,1,1");
    CHECK(f4 == FiniteField::create(2, 2));  // interned

    auto f9 = FiniteField::create(3, 2, {2, 2, 1});
    CHECK(f9->spec() == "3^2/2,2,1");
    CHECK(!f9->same_structure(*FiniteField::create(3, 2)));

    CHECK_THROWS_AS(FiniteField::create(2, 2, {1, 0, 1}), ReducibleModulus);
    CHECK_THROWS_AS(FiniteField::create(4, 1), NonPrimeCharacteristic);
    CHECK_THROWS_AS(FiniteField::create(2, 2, {1, 1}), DegreeMismatch);
    CHECK_THROWS_AS(FiniteField::create(2, 2, {1, 1, 2}), DegreeMismatch);  // leading 0 mod 2
    CHECK_THROWS_AS(FiniteField::create(2, 0), DegreeMismatch);
}

TEST_CASE("field spec parsing") {
    for (const char* s : {"2^2/1,1,1", "3^2/2,2,1", "2^3/1,1,0,1", "3^4/2,0,0,2,1", "2^1/0,1"}) {
        auto f = FiniteField::parse_spec(s);
        CHECK(f->spec() == s);
    }
    CHECK(FiniteField::parse_spec("3^2")->modulus() == vec({1, 0, 1}));
    CHECK_THROWS_AS(FiniteField::parse_spec("nonsense"), ParseError);
    CHECK_THROWS_AS(FiniteField::parse_spec("2^x/1,1"), ParseError);
    CHECK_THROWS_AS(FiniteField::parse_spec("2^2/"), ParseError);
    CHECK_THROWS_AS(FiniteField::parse_spec("2^2/1,z,1"), ParseError);
}

TEST_CASE("element arithmetic in F_4") {
    auto f4 = FiniteField::create(2, 2);
    auto w = f4->from_coeffs({0, 1});
    auto one = f4->one();

    CHECK((w * w).coeffs() == vec({1, 1}));
    CHECK(w.inverse().coeffs() == vec({1, 1}));
    CHECK((w * w.inverse()) == one);
    CHECK(w.pow(3) == one);
    CHECK(w.pow(-1) == w.inverse());
    CHECK((w + f4->zero()) == w);
    CHECK((w - w).is_zero());
    CHECK((-w) == w);  // char 2

    auto f9 = FiniteField::create(3, 2);
    auto x = f9->element_x();
    CHECK((-x) + x == f9->zero());
    CHECK((x / x) == f9->one());
    CHECK_THROWS_AS(x / f9->zero(), DivisionByZero);
    CHECK_THROWS_AS(f9->zero().inverse(), DivisionByZero);
    CHECK_THROWS_AS(x + f4->one(), MixedFields);
}

TEST_CASE("Frobenius fixes every field element") {
    for (auto [p, s] : std::vector<std::pair<u64, std::size_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {3, 3}, {3, 4}, {5, 2}}) {
        auto f = FiniteField::create(p, s);
        for (bigint v = 0; v < f->order(); ++v) {
            auto e = f->from_value(v);
            CHECK(e.pow(f->order()) == e);
        }
    }
}

TEST_CASE("value round trip and ordering") {
    auto f9 = FiniteField::create(3, 2);
    for (bigint v = 0; v < 9; ++v) CHECK(f9->from_value(v).value() == v);
    CHECK(value_less(f9->from_value(3), f9->from_value(4)));
    CHECK(!value_less(f9->from_value(4), f9->from_value(3)));
    CHECK(!value_less(f9->from_value(5), f9->from_value(5)));

    auto e = f9->from_coeffs({1, 2});
    CHECK(e.str() == "1,2");
    CHECK(f9->parse_element("1,2") == e);
    CHECK(f9->parse_element("0").is_zero());
    CHECK(f9->parse_element("2") == f9->from_int(2));
    CHECK(f9->parse_element("-1") == f9->from_int(2));
}

TEST_CASE("deterministic primitive elements") {
    struct Row {
        u64 p;
        std::size_t s;
        std::vector<u32> g;
    };
    for (const Row& r : {Row{2, 1, {1}}, Row{3, 1, {2}}, Row{5, 1, {2}}, Row{7, 1, {3}},
                         Row{2, 2, {0, 1}}, Row{2, 3, {0, 1, 0}}, Row{3, 2, {1, 1}}}) {
        auto f = FiniteField::create(r.p, r.s);
        auto g = f->primitive_element();
        CHECK(g.coeffs() == r.g);
        CHECK(g.mult_order() == f->order() - 1);
    }
    auto f9 = FiniteField::create(3, 2);
    CHECK(f9->parse_element("g^2") == f9->primitive_element().pow(2));
    CHECK(f9->parse_element("g") == f9->primitive_element());
    CHECK_THROWS_AS(f9->parse_element("g^"), ParseError);
    CHECK_THROWS_AS(f9->parse_element(""), ParseError);
    CHECK_THROWS_AS(f9->parse_element("1,2,3"), ParseError);
}

TEST_CASE("embeddings") {
    auto f2 = FiniteField::create(2, 1);
    auto f3 = FiniteField::create(3, 1);
    auto f4 = FiniteField::create(2, 2);
    auto f8 = FiniteField::create(2, 3);
    auto f9 = FiniteField::create(3, 2);
    auto f16 = FiniteField::create(2, 4);

    auto e24 = Embedding::build(f2, f4);
    CHECK(e24.apply(f2->one()) == f4->one());
    CHECK(e24.relative_degree() == 2);

    auto e39 = Embedding::build(f3, f9);
    CHECK(e39.apply(f3->from_int(2)).coeffs() == vec({2, 0}));

    CHECK_THROWS_AS(Embedding::build(f4, f8), NoEmbedding);
    CHECK_THROWS_AS(Embedding::build(f2, f9), NoEmbedding);

    auto e = Embedding::build(f4, f16);
    CHECK(e.generator_image().value() == 6);  // x^5, the smaller cube root of unity
    // ring homomorphism on all pairs
    for (bigint u = 0; u < 4; ++u) {
        for (bigint v = 0; v < 4; ++v) {
            auto a = f4->from_value(u), b = f4->from_value(v);
            CHECK(e.apply(a * b) == e.apply(a) * e.apply(b));
            CHECK(e.apply(a + b) == e.apply(a) + e.apply(b));
        }
    }
    // preimage: exactly the 4 image points have one
    int hits = 0;
    for (bigint v = 0; v < 16; ++v) {
        auto y = f16->from_value(v);
        auto back = e.preimage(y);
        if (back) {
            ++hits;
            CHECK(e.apply(*back) == y);
        }
    }
    CHECK(hits == 4);

    auto id = Embedding::identity(f9);
    CHECK(id.apply(f9->element_x()) == f9->element_x());
    CHECK(id.trace(f9->element_x()) == f9->element_x());
}

TEST_CASE("relative trace") {
    auto f2 = FiniteField::create(2, 1);
    auto f4 = FiniteField::create(2, 2);
    auto f8 = FiniteField::create(2, 3);
    auto f3 = FiniteField::create(3, 1);
    auto f9 = FiniteField::create(3, 2);

    auto e24 = Embedding::build(f2, f4);
    auto w = f4->element_x();
    CHECK(e24.trace(w) == f2->one());
    CHECK(e24.trace(f4->zero()).is_zero());
    CHECK(e24.trace(f4->one()).is_zero());  // 1 + 1 = 0

    auto e28 = Embedding::build(f2, f8);
    CHECK(e28.trace(f8->element_x()).is_zero());  // w + w^2 + w^4 = 0

    // linearity and surjectivity for F_9 / F_3
    auto e39 = Embedding::build(f3, f9);
    std::set<bigint> seen;
    for (bigint u = 0; u < 9; ++u) {
        for (bigint v = 0; v < 9; ++v) {
            auto a = f9->from_value(u), b = f9->from_value(v);
            CHECK(e39.trace(a + b) == e39.trace(a) + e39.trace(b));
        }
        seen.insert(e39.trace(f9->from_value(u)).value());
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("primitive roots of unity") {
    auto f2 = FiniteField::create(2, 1);
    auto f3 = FiniteField::create(3, 1);
    auto f5 = FiniteField::create(5, 1);

    auto r = primitive_root_of_unity(f3, 8);
    CHECK(r.ext->degree() == 2);
    CHECK(r.theta == r.ext->primitive_element());
    CHECK(r.theta.mult_order() == 8);

    auto r2 = primitive_root_of_unity(f2, 3);
    CHECK(r2.ext->order() == 4);
    CHECK(r2.theta.coeffs() == vec({0, 1}));

    CHECK_THROWS_AS(primitive_root_of_unity(f2, 2), RootObstruction);
    CHECK_THROWS_AS(primitive_root_of_unity(f3, 6), RootObstruction);

    auto r3 = primitive_root_of_unity(f5, 2);
    CHECK(r3.ext == f5);
    CHECK(r3.theta == f5->from_int(-1));

    auto r4 = primitive_root_of_unity(f3, 1);
    CHECK(r4.theta == f3->one());
    CHECK(r4.ext == f3);
}

TEST_CASE("square roots of -1") {
    auto f3 = FiniteField::create(3, 1);
    auto s3 = sqrt_minus_one(f3);
    CHECK(s3.ext->order() == 9);
    CHECK((s3.mu * s3.mu + s3.ext->one()).is_zero());
    auto r = primitive_root_of_unity(f3, 8);
    CHECK(s3.mu == r.theta.pow(2));  // mu = theta^2 for the deterministic theta

    auto f5 = FiniteField::create(5, 1);
    auto s5 = sqrt_minus_one(f5);
    CHECK(s5.ext == f5);
    CHECK(s5.mu == f5->from_int(2));

    auto f4 = FiniteField::create(2, 2);
    auto s4 = sqrt_minus_one(f4);
    CHECK(s4.ext == f4);
    CHECK(s4.mu == f4->one());

    auto f9 = FiniteField::create(3, 2);
    auto s9 = sqrt_minus_one(f9);
    CHECK(s9.ext == f9);
    CHECK(s9.mu.coeffs() == vec({0, 2}));
}

TEST_CASE("dual bases") {
    auto f2 = FiniteField::create(2, 1);
    auto f4 = FiniteField::create(2, 2);
    auto emb = Embedding::build(f2, f4);
    auto w = f4->element_x();
    auto w2 = w * w;

    auto d = dual_basis(emb, {f4->one(), w});
    REQUIRE(d.size() == 2);
    CHECK(d[0] == w2);
    CHECK(d[1] == f4->one());

    // (w, w^2) is self-dual: its trace Gram matrix is the identity
    auto sd = dual_basis(emb, {w, w2});
    CHECK(sd[0] == w);
    CHECK(sd[1] == w2);

    CHECK_THROWS_AS(dual_basis(emb, {f4->one(), f4->one()}), NotABasis);
    CHECK_THROWS_AS(dual_basis(emb, {f4->one()}), NotABasis);
}
