#pragma once

// Command-line front end. run() parses one subcommand, executes it, and
// prints a single JSON document on the output stream. Exit codes: 0 on
// success, 1 on domain errors (with {"error": {code, message}} on the
// output stream), 2 on usage errors (message on the error stream). The
// JSON is built completely before anything is printed, so an error path
// never emits a partial document.

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcdt/concat.hpp"
#include "lcdt/dickson.hpp"
#include "lcdt/dtcode.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/jsonio.hpp"
#include "lcdt/reproduce.hpp"

namespace lcdt::cli {

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline json profile_json(const FactorizationProfile& fp) {
    return json{{"r", fp.r}, {"m", fp.m}};
}

inline json cmd_field(const std::string& spec, const std::string& element) {
    FieldPtr f = FiniteField::parse_spec(spec);
    FieldElement g = f->primitive_element();
    json out{{"field", field_json(f)},
             {"primitive_element", g.str()},
             {"primitive_element_order", bigint_json(f->order() - 1)}};
    if (!element.empty()) {
        FieldElement x = f->parse_element(element);
        json coeffs = json::array();
        for (u64 c : x.coeffs()) coeffs.push_back(c);
        out["element"] = json{{"str", x.str()},
                              {"value", bigint_json(x.value())},
                              {"coeffs", std::move(coeffs)},
                              {"is_zero", x.is_zero()}};
    }
    return out;
}

inline json cmd_dickson(const std::string& spec, u64 n, bool want_roots,
                        bool want_coeffs) {
    FieldPtr f = FiniteField::parse_spec(spec);
    if (!want_roots && !want_coeffs) want_roots = want_coeffs = true;
    FactorizationProfile fp = factor_profile(n, f->characteristic());
    json out{{"field", f->spec()}, {"n", n}, {"profile", profile_json(fp)}};
    if (want_coeffs) out["coeffs"] = poly_json(dickson_poly(n, f))["coeffs"];
    if (want_roots) {
        RootMultiset rm = dickson_roots(n, f);
        json items = json::array();
        for (const auto& [root, mult] : rm.items)
            items.push_back(json{{"root", root.str()}, {"multiplicity", mult}});
        out["roots"] = json{{"field", rm.ext->spec()},
                            {"theta", rm.theta ? json(rm.theta->str()) : json()},
                            {"items", std::move(items)}};
    }
    return out;
}

inline json cmd_lcd_check(const std::string& spec, u64 n, const std::string& a_str,
                          const std::string& b_str) {
    FieldPtr f = FiniteField::parse_spec(spec);
    DTParams params{f, n, f->parse_element(a_str), f->parse_element(b_str)};
    bool theorem = is_lcd_theorem(params);
    bool direct = is_lcd_direct(dt_generator(params));
    json out{{"field", f->spec()},
             {"n", n},
             {"a", params.a.str()},
             {"b", params.b.str()},
             {"theorem", theorem},
             {"direct", direct}};
    if (n >= 2) {
        ForbiddenSet fs = forbidden_set(f, n, params.b);
        out["forbidden_base"] = element_list_json(fs.base_intersection);
        out["profile"] = profile_json(fs.profile);
        out["theta_field"] = fs.ext->spec();
    }
    return out;
}

inline json cmd_forbidden_set(const std::string& spec, u64 n, const std::string& b_str) {
    FieldPtr f = FiniteField::parse_spec(spec);
    ForbiddenSet fs = forbidden_set(f, n, f->parse_element(b_str));
    return json{{"field", f->spec()},
                {"n", n},
                {"b", fs.b.str()},
                {"profile", profile_json(fs.profile)},
                {"theta_field", fs.ext->spec()},
                {"theta", fs.theta ? json(fs.theta->str()) : json()},
                {"mu", fs.mu ? json(fs.mu->str()) : json()},
                {"full_set", element_list_json(fs.full_set)},
                {"base_intersection", element_list_json(fs.base_intersection)}};
}

inline json cmd_spectrum(const std::string& spec, u64 n, const std::string& a_str,
                         const std::string& b_str) {
    FieldPtr f = FiniteField::parse_spec(spec);
    DTParams params{f, n, f->parse_element(a_str), f->parse_element(b_str)};
    RootMultiset rm = spectrum(params);
    json items = json::array();
    for (const auto& [ev, mult] : rm.items)
        items.push_back(json{{"value", ev.str()}, {"multiplicity", mult}});
    return json{{"field", f->spec()},
                {"n", n},
                {"a", params.a.str()},
                {"b", params.b.str()},
                {"extension_field", rm.ext->spec()},
                {"eigenvalues", std::move(items)}};
}

inline json cmd_diagnose(const std::string& spec, u64 n, const std::string& b_str) {
    FieldPtr f = FiniteField::parse_spec(spec);
    CorollaryDiagnosis diag = existence_diagnosis(f, n, f->parse_element(b_str));
    json records = json::array();
    for (const auto& rec : diag.records)
        records.push_back(json{{"id", rec.id},
                               {"hypothesis", rec.hypothesis},
                               {"applicable", rec.applicable},
                               {"kind", rec.kind},
                               {"exceptions", element_list_json(rec.exceptions)},
                               {"exact", rec.exact}});
    return json{{"field", f->spec()},
                {"n", n},
                {"b", diag.b.str()},
                {"profile", profile_json(diag.profile)},
                {"records", std::move(records)}};
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline json cmd_distance(const std::string& spec, const std::string& gen_text,
                         bool with_weights) {
    FieldPtr f = FiniteField::parse_spec(spec);
    LinearCode code(matrix_from_json(f, parse_json_text(gen_text)));
    json out{{"field", f->spec()}, {"length", code.length()}, {"k", code.k()}};
    WeightDistribution wd = weight_distribution(code);
    json d;
    for (const auto& [w, c] : wd)
        if (w > 0) {
            d = w;
            break;
        }
    out["d"] = d;
    if (with_weights) out["counts"] = weights_json(wd);
    out["hull"] = hull_dimension(code);
    return out;
}

inline json inner_json(const IsometryMap& map) {
    return json{{"length", map.inner.length()},
                {"k", map.inner.k()},
                {"d", map.inner_distance}};
}

inline FieldPtr resolve_base(const FieldPtr& outer, const std::string& base_spec) {
    if (base_spec.empty()) return FiniteField::create(outer->characteristic(), 1);
    return FiniteField::parse_spec(base_spec);
}

inline json cmd_concat(const std::string& outer_spec, const std::string& base_spec,
                       u64 N, const std::string& a_str, const std::string& b_str,
                       const std::string& coeff_text) {
    FieldPtr outer_field = FiniteField::parse_spec(outer_spec);
    FieldPtr base = resolve_base(outer_field, base_spec);
    Embedding emb = Embedding::build(base, outer_field);

    std::vector<FieldElement> coeffs;
    for (const std::string& part : split(coeff_text, ';'))
        coeffs.push_back(outer_field->parse_element(part));
    IsometryMap map = isometry_from_coeffs(emb, coeffs);

    DTParams params{outer_field, N, outer_field->parse_element(a_str),
                    outer_field->parse_element(b_str)};
    LinearCode outer(dt_generator(params));
    ConcatenatedCode cc = concatenate(map, outer);
    return json{
        {"params", json{{"length", cc.result.length()},
                        {"k", cc.result.k()},
                        {"base_field", base->spec()}}},
        {"outer", json{{"field", outer_field->spec()},
                       {"n", N},
                       {"a", params.a.str()},
                       {"b", params.b.str()},
                       {"lcd_theorem", is_lcd_theorem(params)}}},
        {"inner", inner_json(map)},
        {"lcd", cc.hull == 0},
        {"hull", cc.hull},
        {"bound", cc.bound},
        {"distance", cc.actual_distance ? json(*cc.actual_distance) : json()}};
}

inline json cmd_search_isometry(const std::string& spec, const std::string& base_spec,
                                u64 n, u64 d, u64 seed, std::optional<u64> budget) {
    FieldPtr ext = FiniteField::parse_spec(spec);
    FieldPtr base = resolve_base(ext, base_spec);
    Embedding emb = Embedding::build(base, ext);
    IsometryMap map = search_isometry(emb, n, d, seed, budget);
    return json{{"field", ext->spec()},
                {"base_field", base->spec()},
                {"n", n},
                {"d_target", d},
                {"seed", seed},
                {"coeffs", element_list_json(map.coeffs)},
                {"inner", inner_json(map)}};
}

inline json cmd_reproduce(const std::string& example) {
    if (!example.empty()) return report_json(reproduce_example(example));
    json reports = json::array();
    bool all = true;
    for (const ReproduceReport& rep : reproduce_all()) {
        all = all && rep.all_match();
        reports.push_back(report_json(rep));
    }
    return json{{"reports", std::move(reports)}, {"all_match", all}};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"double-Toeplitz LCD code toolkit"};
    app.require_subcommand(1);

    struct {
        std::string field, base_field, element, generator, coeffs, example;
        std::string a = "1", b = "1";
        u64 n = 0, N = 0, d = 0, seed = 0;
        std::optional<u64> budget;
        bool roots = false, coeffs_flag = false;
    } o;

    json result;
    bool have_result = false;
    auto emit = [&](json j) {
        result = std::move(j);
        have_result = true;
    };

    auto* c_field = app.add_subcommand("field", "inspect a finite field");
    c_field->add_option("--field", o.field, "field spec p^s/c0,...,cs")->required();
    c_field->add_option("--element", o.element, "element to parse and echo");
    c_field->callback([&] { emit(detail::cmd_field(o.field, o.element)); });

    auto* c_dickson =
        app.add_subcommand("dickson", "Dickson polynomial of the second kind");
    c_dickson->add_option("--field", o.field)->required();
    c_dickson->add_option("--n", o.n)->required();
    c_dickson->add_flag("--roots", o.roots, "emit the root multiset");
    c_dickson->add_flag("--coeffs", o.coeffs_flag, "emit the coefficients");
    c_dickson->callback(
        [&] { emit(detail::cmd_dickson(o.field, o.n, o.roots, o.coeffs_flag)); });

    auto* c_lcd = app.add_subcommand("lcd-check", "LCD verdict for a DT code");
    c_lcd->add_option("--field", o.field)->required();
    c_lcd->add_option("--n", o.n)->required();
    c_lcd->add_option("--a", o.a)->required();
    c_lcd->add_option("--b", o.b, "off-diagonal entry (default 1)");
    c_lcd->callback([&] { emit(detail::cmd_lcd_check(o.field, o.n, o.a, o.b)); });

    auto* c_forb = app.add_subcommand("forbidden-set", "forbidden diagonal values");
    c_forb->add_option("--field", o.field)->required();
    c_forb->add_option("--n", o.n)->required();
    c_forb->add_option("--b", o.b, "off-diagonal entry (default 1)");
    c_forb->callback([&] { emit(detail::cmd_forbidden_set(o.field, o.n, o.b)); });

    auto* c_spec = app.add_subcommand("spectrum", "eigenvalues of the tridiagonal block");
    c_spec->add_option("--field", o.field)->required();
    c_spec->add_option("--n", o.n)->required();
    c_spec->add_option("--a", o.a)->required();
    c_spec->add_option("--b", o.b, "off-diagonal entry (default 1)");
    c_spec->callback([&] { emit(detail::cmd_spectrum(o.field, o.n, o.a, o.b)); });

    auto* c_diag = app.add_subcommand("diagnose", "existence corollary diagnosis");
    c_diag->add_option("--field", o.field)->required();
    c_diag->add_option("--n", o.n)->required();
    c_diag->add_option("--b", o.b, "off-diagonal entry (default 1)");
    c_diag->callback([&] { emit(detail::cmd_diagnose(o.field, o.n, o.b)); });

    auto* c_dist = app.add_subcommand("distance", "minimum distance of a linear code");
    c_dist->add_option("--field", o.field)->required();
    c_dist->add_option("--generator", o.generator, "generator matrix as JSON rows")
        ->required();
    c_dist->callback([&] { emit(detail::cmd_distance(o.field, o.generator, false)); });

    auto* c_wts = app.add_subcommand("weights", "full weight distribution");
    c_wts->add_option("--field", o.field)->required();
    c_wts->add_option("--generator", o.generator, "generator matrix as JSON rows")
        ->required();
    c_wts->callback([&] { emit(detail::cmd_distance(o.field, o.generator, true)); });

    auto* c_concat = app.add_subcommand("concat", "concatenate a DT code with an isometry");
    c_concat->add_option("--outer-field", o.field)->required();
    c_concat->add_option("--base-field", o.base_field,
                         "inner alphabet (default: prime subfield)");
    c_concat->add_option("--N", o.N, "outer DT block size")->required();
    c_concat->add_option("--a", o.a)->required();
    c_concat->add_option("--b", o.b)->required();
    c_concat->add_option("--coeffs", o.coeffs, "isometry coefficients e1;e2;...")
        ->required();
    c_concat->callback([&] {
        emit(detail::cmd_concat(o.field, o.base_field, o.N, o.a, o.b, o.coeffs));
    });

    auto* c_search = app.add_subcommand("search-isometry",
                                        "find an isometry meeting a distance target");
    c_search->add_option("--field", o.field, "extension field spec")->required();
    c_search->add_option("--base-field", o.base_field,
                         "inner alphabet (default: prime subfield)");
    c_search->add_option("--n", o.n)->required();
    c_search->add_option("--d", o.d, "inner distance target")->required();
    c_search->add_option("--seed", o.seed, "random seed (default 0)");
    c_search->add_option("--budget", o.budget, "trial budget override");
    c_search->callback([&] {
        emit(detail::cmd_search_isometry(o.field, o.base_field, o.n, o.d, o.seed,
                                         o.budget));
    });

    auto* c_repro = app.add_subcommand("reproduce", "re-derive the recorded examples");
    c_repro->add_option("--example", o.example, "one of 2.9, 2.10, 3.1, 3.2, 3.3");
    c_repro->callback([&] { emit(detail::cmd_reproduce(o.example)); });

    std::vector<const char*> argv;
    argv.push_back("lcdt");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        // CLI11 routes help text to `out` and usage errors to `err`
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        out << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump(2)
            << "\n";
        return 1;
    }

    if (have_result) out << result.dump(2) << "\n";
    return 0;
}

}  // namespace lcdt::cli
