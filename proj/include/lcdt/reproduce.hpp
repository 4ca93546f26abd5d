#pragma once

// End-to-end re-derivation of the worked numerical examples. Each report
// compares computed facts against the recorded reference claims; mismatches
// are reported, never thrown. The constructions use the explicit moduli the
// reference data was written with (w^2+w+1, w^3+w+1, w^2+2w+2, w^4+2w^3+2)
// so the w-power element labels line up.

#include <string>
#include <utility>
#include <vector>

#include "lcdt/concat.hpp"
#include "lcdt/dtcode.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/jsonio.hpp"

namespace lcdt {

struct ReproducedFact {
    std::string name;
    json claimed;
    json computed;
    bool match = false;
};

struct ReproduceReport {
    std::string example_id;
    std::vector<ReproducedFact> facts;
    std::vector<std::string> notes;

    bool all_match() const {
        for (const auto& f : facts)
            if (!f.match) return false;
        return true;
    }
};

inline json report_json(const ReproduceReport& rep) {
    json facts = json::array();
    for (const auto& f : rep.facts)
        facts.push_back(json{{"name", f.name},
                             {"claimed", f.claimed},
                             {"computed", f.computed},
                             {"match", f.match}});
    return json{{"example", rep.example_id},
                {"facts", std::move(facts)},
                {"notes", rep.notes},
                {"all_match", rep.all_match()}};
}

namespace detail {

inline void add_fact(ReproduceReport& rep, std::string name, json claimed, json computed) {
    bool m = claimed == computed;
    rep.facts.push_back({std::move(name), std::move(claimed), std::move(computed), m});
}

// "0" or "<sym>^k" with gen^k == x; the fields involved are tiny, so an
// exhaustive power scan suffices.
inline std::string power_label(const FieldElement& x, const FieldElement& gen,
                               const char* sym, u64* exponent_out = nullptr) {
    if (x.is_zero()) {
        if (exponent_out) *exponent_out = 0;
        return "0";
    }
    FieldElement acc = gen.field()->one();
    u64 bound = gen.field()->order_u64();
    for (u64 k = 0; k < bound; ++k) {
        if (acc == x) {
            if (exponent_out) *exponent_out = k;
            return std::string(sym) + "^" + std::to_string(k);
        }
        acc = acc * gen;
    }
    check(false, "element is not a power of the chosen generator");
    return {};
}

// labels sorted with "0" first, then ascending exponent
inline json power_labels_json(const std::vector<FieldElement>& elems,
                              const FieldElement& gen, const char* sym) {
    std::vector<std::pair<long long, std::string>> keyed;
    for (const auto& x : elems) {
        u64 e = 0;
        std::string lab = power_label(x, gen, sym, &e);
        keyed.emplace_back(x.is_zero() ? -1 : static_cast<long long>(e), std::move(lab));
    }
    std::sort(keyed.begin(), keyed.end());
    json out = json::array();
    for (auto& [e, lab] : keyed) out.push_back(std::move(lab));
    return out;
}

inline json code_params_json(std::size_t length, std::size_t k) {
    return json{{"length", length}, {"k", k}};
}

inline json code_params_json(std::size_t length, std::size_t k, u64 d) {
    return json{{"length", length}, {"k", k}, {"d", d}};
}

// shared skeleton for the three concatenation examples
struct ConcatClaims {
    json outer_params, inner_params, code_params;
    u64 bound = 0, distance = 0;
};

inline void add_concat_facts(ReproduceReport& rep, const DTParams& dt,
                             const IsometryMap& map, const ConcatClaims& want) {
    LinearCode outer(dt_generator(dt));
    add_fact(rep, "outer_params", want.outer_params,
             code_params_json(outer.length(), outer.k(), min_distance(outer)));
    add_fact(rep, "outer_lcd", true, is_lcd_theorem(dt));
    add_fact(rep, "inner_params", want.inner_params,
             code_params_json(map.inner.length(), map.inner.k(), map.inner_distance));

    ConcatenatedCode cc = concatenate(map, outer);
    add_fact(rep, "code_params", want.code_params,
             code_params_json(cc.result.length(), cc.result.k()));
    add_fact(rep, "distance_bound", want.bound, cc.bound);
    add_fact(rep, "distance",  want.distance,
             cc.actual_distance ? json(*cc.actual_distance) : json());
    add_fact(rep, "lcd", true, cc.hull == 0);
    add_fact(rep, "hull", 0, cc.hull);
}

}  // namespace detail

// n = 3 over F_3: the forbidden set is {0, theta^2, theta^6} for a primitive
// 8-th root of unity theta, and C_n(a) is LCD exactly for a in {1, 2}.
inline ReproduceReport reproduce_example_2_9() {
    ReproduceReport rep{"2.9", {}, {}};
    auto f3 = FiniteField::create(3, 1);
    ForbiddenSet fs = forbidden_set(f3, 3, f3->one());

    check(fs.theta.has_value(), "n = 3 over F_3 has m > 0");
    detail::add_fact(rep, "full_set", json::array({"0", "theta^2", "theta^6"}),
                     detail::power_labels_json(fs.full_set, *fs.theta, "theta"));
    detail::add_fact(rep, "base_intersection", json::array({"0"}),
                     element_list_json(fs.base_intersection));

    json claimed_verdicts{{"0", false}, {"1", true}, {"2", true}};
    json computed_verdicts = json::object();
    for (int a = 0; a < 3; ++a)
        computed_verdicts[std::to_string(a)] =
            is_lcd_theorem({f3, 3, f3->from_int(a), f3->one()});
    detail::add_fact(rep, "lcd_verdicts", claimed_verdicts, computed_verdicts);
    return rep;
}

// n = 4 over F_3, with roots tracked in F_81 presented by w^4 + 2w^3 + 2.
// The recorded claims use mu = theta^5; that element squares to 1, not -1,
// so the recorded set S and the all-a LCD conclusion do not survive
// recomputation with an actual square root of -1.
inline ReproduceReport reproduce_example_2_10() {
    ReproduceReport rep{"2.10", {}, {}};
    auto f3 = FiniteField::create(3, 1);
    auto f81 = FiniteField::create(3, 4, {2, 0, 0, 2, 1});
    FieldElement w = f81->element_x();

    // S assembled directly in the stated presentation
    RootOfUnity ru = primitive_root_of_unity(f81, 10);
    check(ru.ext->same_structure(*f81), "F_81 already contains 10-th roots of unity");
    SqrtMinusOne sm = sqrt_minus_one(f81);
    check(sm.ext->same_structure(*f81), "81 = 1 mod 4");
    std::vector<FieldElement> s_set;
    for (u64 i = 1; i <= 4; ++i) {
        FieldElement rho = ru.theta.pow(i) + ru.theta.pow(i).inverse();
        for (const FieldElement& mu : {sm.mu, -sm.mu}) {
            FieldElement cand = mu + rho;
            bool seen = false;
            for (const auto& x : s_set) seen = seen || x == cand;
            if (!seen) s_set.push_back(cand);
        }
    }
    detail::add_fact(
        rep, "full_set",
        json::array({"w^10", "w^20", "w^30", "w^50", "w^60", "w^70"}),
        detail::power_labels_json(s_set, w, "w"));

    ForbiddenSet fs = forbidden_set(f3, 4, f3->one());
    detail::add_fact(rep, "base_intersection", json::array(),
                     element_list_json(fs.base_intersection));

    json claimed_verdicts{{"0", true}, {"1", true}, {"2", true}};
    json computed_verdicts = json::object();
    for (int a = 0; a < 3; ++a)
        computed_verdicts[std::to_string(a)] =
            is_lcd_theorem({f3, 4, f3->from_int(a), f3->one()});
    detail::add_fact(rep, "lcd_verdicts", claimed_verdicts, computed_verdicts);

    rep.notes.push_back(
        "The recorded reference claims take mu = theta^5, which squares to 1 "
        "rather than -1 in characteristic 3; recomputing S with an element "
        "satisfying mu^2 = -1 changes the set and the verdicts.");
    return rep;
}

// [16,4]_2 concatenation: outer C^_2(w,1) over F_4 (w^2+w+1), inner the
// trace isometry with coefficients (w, w^2, 1, 1).
inline ReproduceReport reproduce_example_3_1() {
    ReproduceReport rep{"3.1", {}, {}};
    auto f2 = FiniteField::create(2, 1);
    auto f4 = FiniteField::create(2, 2, {1, 1, 1});
    auto emb = Embedding::build(f2, f4);
    FieldElement w = f4->element_x();

    IsometryMap map = isometry_from_coeffs(emb, {w, w.pow(2), f4->one(), f4->one()});
    detail::ConcatClaims want;
    want.outer_params = detail::code_params_json(4, 2, 3);
    want.inner_params = detail::code_params_json(4, 2, 2);
    want.code_params = detail::code_params_json(16, 4);
    want.bound = 6;
    want.distance = 7;
    detail::add_concat_facts(rep, {f4, 2, w, f4->one()}, map, want);

    rep.notes.push_back(
        "The construction is recorded with N = 4, but the stated parameters "
        "([4,2] outer, [16,4] result) force N = 2, which is used here.");
    rep.notes.push_back(
        "Recorded optimality claim, kept as an annotation: 7 is the largest "
        "minimum distance of any binary [16,4] LCD code.");
    return rep;
}

// [20,6]_2 concatenation: outer C^_2(w,w^6) over F_8 (w^3+w+1), inner the
// length-5 trace isometry with coefficients (w^3, w^5, w^6, 1, 1).
inline ReproduceReport reproduce_example_3_2() {
    ReproduceReport rep{"3.2", {}, {}};
    auto f2 = FiniteField::create(2, 1);
    auto f8 = FiniteField::create(2, 3, {1, 1, 0, 1});
    auto emb = Embedding::build(f2, f8);
    FieldElement w = f8->element_x();

    IsometryMap map = isometry_from_coeffs(
        emb, {w.pow(3), w.pow(5), w.pow(6), f8->one(), f8->one()});
    detail::ConcatClaims want;
    want.outer_params = detail::code_params_json(4, 2, 3);
    want.inner_params = detail::code_params_json(5, 3, 2);
    want.code_params = detail::code_params_json(20, 6);
    want.bound = 6;
    want.distance = 7;
    detail::add_concat_facts(rep, {f8, 2, w, w.pow(6)}, map, want);

    rep.notes.push_back(
        "The construction is recorded with N = 4, but the stated parameters "
        "([4,2] outer, [20,6] result) force N = 2, which is used here.");
    rep.notes.push_back(
        "The outer code is recorded with alphabet subscript 4 although its "
        "alphabet is F_8; the computed outer code is [4,2,3]_8.");
    rep.notes.push_back(
        "Recorded annotation: the largest minimum distance of a binary "
        "[20,6] LCD code is 8, so distance 7 is almost optimal.");
    return rep;
}

// [20,4]_3 concatenation: outer C^_2(2,w) over F_9 (w^2+2w+2), inner the
// trace isometry with coefficients (w, w, w^3, w^3, 2). The outer ratio
// a/b = w^3 is forbidden, so the LCD part of the record does not hold.
inline ReproduceReport reproduce_example_3_3() {
    ReproduceReport rep{"3.3", {}, {}};
    auto f3 = FiniteField::create(3, 1);
    auto f9 = FiniteField::create(3, 2, {2, 2, 1});
    auto emb = Embedding::build(f3, f9);
    FieldElement w = f9->element_x();

    IsometryMap map = isometry_from_coeffs(
        emb, {w, w, w.pow(3), w.pow(3), f9->from_int(2)});
    detail::ConcatClaims want;
    want.outer_params = detail::code_params_json(4, 2, 3);
    want.inner_params = detail::code_params_json(5, 2, 3);
    want.code_params = detail::code_params_json(20, 4);
    want.bound = 9;
    want.distance = 10;
    detail::add_concat_facts(rep, {f9, 2, f9->from_int(2), w}, map, want);

    rep.notes.push_back(
        "The construction is recorded with N = 4, but the stated parameters "
        "([4,2] outer, [20,4] result) force N = 2, which is used here.");
    rep.notes.push_back(
        "With a = 2 and b = w the ratio a/b = w^3 lies in the forbidden set, "
        "so the outer code is not LCD (hull dimension 1) and neither is the "
        "concatenation (hull dimension 2); lengths, dimensions, the bound "
        "and the actual distance still match the record.");
    rep.notes.push_back(
        "Recorded annotation: the largest minimum distance of a ternary "
        "[20,4] LCD code is 12.");
    return rep;
}

inline ReproduceReport reproduce_example(const std::string& id) {
    if (id == "2.9") return reproduce_example_2_9();
    if (id == "2.10") return reproduce_example_2_10();
    if (id == "3.1") return reproduce_example_3_1();
    if (id == "3.2") return reproduce_example_3_2();
    if (id == "3.3") return reproduce_example_3_3();
    throw NotFound("unknown example id '" + id + "' (expected 2.9, 2.10, 3.1, 3.2, 3.3)");
}

inline std::vector<ReproduceReport> reproduce_all() {
    return {reproduce_example_2_9(), reproduce_example_2_10(), reproduce_example_3_1(),
            reproduce_example_3_2(), reproduce_example_3_3()};
}

}  // namespace lcdt
