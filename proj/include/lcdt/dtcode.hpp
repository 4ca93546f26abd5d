#pragma once

// Double Toeplitz codes C^_n(a,b) = [I_n | T^_n(a,b)] and their LCD theory.
//
// The spectral route: C^_n(a,b) fails LCD exactly when -1 is an eigenvalue of
// T^_n(a,b)^2, i.e. when a - b*rho is a square root of -1 for some root rho
// of E_n. The forbidden ratios a/b are therefore {+-mu/b + rho} with rho
// running over the root multiset of dickson.hpp (mu = 1 in characteristic 2,
// where the two signs coincide). All r/m case splits of the underlying
// statements are inherited from the root multiset itself.
//
// Everything b-independent (the splitting field W containing both mu and the
// roots, theta, mu, the root list) is cached per (field, n); per-b assembly
// is cheap.

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcdt/algebra.hpp"
#include "lcdt/dickson.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/galois.hpp"

namespace lcdt {

struct DTParams {
    FieldPtr field;
    u64 n;
    FieldElement a;
    FieldElement b;
};

inline void validate_params(const DTParams& p) {
    check(p.n >= 1, "DT codes need n >= 1");
    if (!p.a.field()->same_structure(*p.field) || !p.b.field()->same_structure(*p.field))
        throw MixedFields("DT parameters a, b must lie in the code alphabet");
}

// n x n symmetric Toeplitz tridiagonal: a on the diagonal, b adjacent.
inline Matrix build_tridiag(const DTParams& p) {
    validate_params(p);
    if (p.n >= 2 && p.b.is_zero())
        throw ZeroOffDiagonal("T^_n(a,b) needs b != 0 for n >= 2");
    Matrix t(p.field, p.n, p.n);
    for (u64 i = 0; i < p.n; ++i) {
        t.at(i, i) = p.a;
        if (i + 1 < p.n) {
            t.at(i, i + 1) = p.b;
            t.at(i + 1, i) = p.b;
        }
    }
    return t;
}

// [I_n | T^_n(a,b)], the generator of C^_n(a,b).
inline Matrix dt_generator(const DTParams& p) {
    Matrix t = build_tridiag(p);
    return Matrix::identity(p.field, p.n).augment(t);
}

// Eigenvalue multiset {a - b*rho : E_n(rho) = 0}, multiplicities carried.
inline RootMultiset spectrum(const DTParams& p) {
    validate_params(p);
    if (p.b.is_zero()) throw ZeroOffDiagonal("spectrum needs b != 0");
    RootMultiset rm = dickson_roots(p.n, p.field);
    FieldElement a_ext = rm.emb.apply(p.a);
    FieldElement b_ext = rm.emb.apply(p.b);
    for (auto& [root, mult] : rm.items) root = a_ext - b_ext * root;
    std::sort(rm.items.begin(), rm.items.end(),
              [](const auto& x, const auto& y) { return value_less(x.first, y.first); });
    return rm;
}

namespace detail {

// b-independent spectral data for (field, n): the splitting field W that
// holds both mu and every root of E_n, plus those elements themselves.
struct SpectralKernel {
    FactorizationProfile profile;
    FieldPtr ext;   // W
    Embedding emb;  // base -> W
    std::vector<FieldElement> roots;  // roots of E_n in W (set, no mults)
    std::optional<FieldElement> theta;
    std::optional<FieldElement> mu;  // odd characteristic only
};

inline std::shared_ptr<const SpectralKernel> spectral_kernel(const FieldPtr& field, u64 n) {
    static std::mutex mu_;
    static std::map<std::pair<std::string, u64>, std::shared_ptr<const SpectralKernel>> cache;
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(field->spec(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    u64 p = field->characteristic();
    bool even_char = p == 2;
    auto sk = std::make_shared<SpectralKernel>(
        SpectralKernel{factor_profile(n, p), field, Embedding::identity(field), {}, {}, {}});

    u64 m = sk->profile.m;
    u64 k = 0;  // root-of-unity order wanted, 0 if none
    u64 t = 1;  // degree of the theta field over the base
    if (m > 0) {
        k = even_char ? m + 1 : 2 * (m + 1);
        t = mult_order_mod(field->order(), k);
    }
    u64 mu_deg = (even_char || field->order() % 4 == 1) ? 1 : 2;
    u64 wdeg = std::lcm(t, mu_deg);

    if (wdeg > 1) {
        sk->ext = FiniteField::create(p, field->degree() * wdeg);
        sk->emb = Embedding::build(field, sk->ext);
    }
    const FieldPtr& w = sk->ext;

    if (even_char) {
        sk->mu = w->one();
    } else {
        check((w->order() - 1) % 4 == 0, "W must contain a 4th root of unity");
        FieldElement mu = w->primitive_element().pow((w->order() - 1) / 4);
        check((mu * mu + w->one()).is_zero(), "mu^2 must be -1");
        sk->mu = mu;
    }

    if (m > 0) {
        check((w->order() - 1) % k == 0, "W must contain the needed roots of unity");
        FieldElement theta = w->primitive_element().pow((w->order() - 1) / k);
        for (const auto& [l, e] : factorize(bigint(k)))
            check(!(theta.pow(bigint(k) / l) == w->one()), "theta order must be exactly k");
        sk->theta = theta;

        u64 top = even_char ? m / 2 : m;
        FieldElement ti = w->one();
        for (u64 i = 1; i <= top; ++i) {
            ti = ti * theta;
            sk->roots.push_back(ti + ti.inverse());
        }
    }
    if (sk->profile.r >= 1) {
        if (even_char) {
            sk->roots.push_back(w->zero());
        } else {
            sk->roots.push_back(w->from_int(2));
            sk->roots.push_back(w->from_int(-2));
        }
    }

    cache.emplace(key, sk);
    return sk;
}

struct ValueLess {
    bool operator()(const FieldElement& x, const FieldElement& y) const {
        return value_less(x, y);
    }
};

}  // namespace detail

struct ForbiddenSet {
    FieldPtr field;
    u64 n = 0;
    FieldElement b;
    FactorizationProfile profile;
    FieldPtr ext;   // splitting extension W
    Embedding emb;  // base -> W
    // Forbidden ratios a/b, as elements of W, deduplicated and value-sorted.
    std::vector<FieldElement> full_set;
    // The corresponding forbidden values of a that lie in the base field
    // (ratio * b mapped back), value-sorted.
    std::vector<FieldElement> base_intersection;
    std::optional<FieldElement> theta;
    std::optional<FieldElement> mu;

    bool forbids(const FieldElement& a) const {
        for (const auto& x : base_intersection)
            if (x == a) return true;
        return false;
    }
};

inline ForbiddenSet forbidden_set(const FieldPtr& field, u64 n, const FieldElement& b) {
    if (n < 2) throw LengthTooShort("forbidden sets are defined for n >= 2");
    if (!b.field()->same_structure(*field))
        throw MixedFields("off-diagonal b must lie in the code alphabet");
    if (b.is_zero()) throw ZeroOffDiagonal("forbidden set needs b != 0");

    auto sk = detail::spectral_kernel(field, n);
    ForbiddenSet fs{field, n, b, sk->profile, sk->ext, sk->emb, {}, {}, sk->theta, sk->mu};

    FieldElement mu_over_b = *sk->mu / sk->emb.apply(b);
    std::set<FieldElement, detail::ValueLess> ratios;
    for (const auto& rho : sk->roots) {
        ratios.insert(mu_over_b + rho);
        if (field->characteristic() != 2) ratios.insert(rho - mu_over_b);
    }
    fs.full_set.assign(ratios.begin(), ratios.end());

    for (const auto& ratio : fs.full_set) {
        auto pre = sk->emb.preimage(ratio);
        if (pre) fs.base_intersection.push_back(*pre * b);
    }
    std::sort(fs.base_intersection.begin(), fs.base_intersection.end(),
              [](const FieldElement& x, const FieldElement& y) { return value_less(x, y); });
    return fs;
}

// Direct oracle: LCD iff G G^T is invertible. Independent of everything
// Dickson-related.
inline bool is_lcd_direct(const Matrix& generator) {
    if (generator.rank() != generator.rows())
        throw RankDeficientGenerator("LCD oracle expects a full-row-rank generator");
    return !(generator * generator.transpose()).det().is_zero();
}

// Theorem-based verdict. n = 1 has no theorem coverage and falls through to
// the direct oracle.
inline bool is_lcd_theorem(const DTParams& p) {
    validate_params(p);
    if (p.n == 1) return is_lcd_direct(dt_generator(p));
    if (p.b.is_zero()) throw ZeroOffDiagonal("LCD theory needs b != 0");
    return !forbidden_set(p.field, p.n, p.b).forbids(p.a);
}

struct CorollaryRecord {
    std::string id;
    std::string hypothesis;  // the condition, with the concrete numbers
    bool applicable = false;
    // "exists": some a in F_q gives an LCD code. "all_but": every a outside
    // `exceptions` gives an LCD code; `exact` marks exception lists that are
    // known to equal the true non-LCD set rather than merely contain it.
    std::string kind;
    std::vector<FieldElement> exceptions;
    bool exact = false;
};

struct CorollaryDiagnosis {
    FieldPtr field;
    u64 n = 0;
    FieldElement b;
    FactorizationProfile profile;
    std::vector<CorollaryRecord> records;
};

inline CorollaryDiagnosis existence_diagnosis(const FieldPtr& field, u64 n,
                                              const FieldElement& b);

inline CorollaryDiagnosis existence_diagnosis(const FieldPtr& field, u64 n) {
    return existence_diagnosis(field, n, field->one());
}

inline CorollaryDiagnosis existence_diagnosis(const FieldPtr& field, u64 n,
                                              const FieldElement& b) {
    check(n >= 2, "diagnosis is defined for n >= 2");
    if (!b.field()->same_structure(*field))
        throw MixedFields("off-diagonal b must lie in the code alphabet");
    if (b.is_zero()) throw ZeroOffDiagonal("diagnosis needs b != 0");

    const bigint q = field->order();
    const bool even_char = field->characteristic() == 2;
    FactorizationProfile fp = factor_profile(n, field->characteristic());
    CorollaryDiagnosis diag{field, n, b, fp, {}};

    auto num = [](const bigint& v) { return v.str(); };
    using boost::multiprecision::gcd;
    const bigint np1 = bigint(n) + 1;
    const bigint mp1 = bigint(fp.m) + 1;

    {
        CorollaryRecord rec;
        rec.id = "counting-even";
        rec.hypothesis = "char 2, gcd(n+1, q) = 1, q > n/2 (q = " + num(q) +
                         ", n = " + std::to_string(n) + ")";
        rec.applicable = even_char && fp.r == 0 && 2 * q > n;
        rec.kind = "exists";
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "counting-odd";
        rec.hypothesis = "odd char, gcd(n+1, q) = 1, q > 2n (q = " + num(q) +
                         ", n = " + std::to_string(n) + ")";
        rec.applicable = !even_char && fp.r == 0 && q > 2 * bigint(n);
        rec.kind = "exists";
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "arithmetic-even";
        bigint g = gcd(np1, q * (q * q - 1));
        rec.hypothesis = "char 2, gcd(n+1, q(q^2-1)) = 1 (gcd = " + num(g) + ")";
        rec.applicable = even_char && g == 1;
        rec.kind = "all_but";
        rec.exact = true;  // no exceptions: all a work
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "arithmetic-odd";
        rec.kind = "all_but";
        if (!even_char && q % 4 == 1) {
            bigint g = gcd(np1, q * (q * q - 1) / 2);
            rec.hypothesis = "q = 1 mod 4, gcd(n+1, q(q^2-1)/2) = 1 (gcd = " + num(g) + ")";
            rec.applicable = g == 1;
            if (rec.applicable) {
                // mu lies in F_q; exceptions {+-mu +- 2b}. With r = 0 forced
                // by the gcd hypothesis, +-2 need not be roots of E_n, so
                // this list may strictly contain the true non-LCD set.
                FieldElement mu = sqrt_minus_one(field).mu;
                FieldElement two_b = b + b;
                std::set<FieldElement, detail::ValueLess> ex{mu + two_b, mu - two_b,
                                                             -mu + two_b, -mu - two_b};
                rec.exceptions.assign(ex.begin(), ex.end());
                rec.exact = false;
            }
        } else if (!even_char) {
            bigint g = gcd(np1, (q * q * q * q - 1) / 2);
            bigint half = (q - 1) / 2;
            rec.hypothesis = "q = 3 mod 4, gcd(n+1, q) = 1, gcd(n+1, (q^4-1)/2) | (q-1)/2 "
                             "(gcd = " + num(g) + ", (q-1)/2 = " + num(half) + ")";
            rec.applicable = fp.r == 0 && half % g == 0;
            rec.exact = true;  // no exceptions: mu is outside F_q entirely
        } else {
            rec.hypothesis = "odd characteristic only";
        }
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "counting-even-ext";
        rec.hypothesis = "char 2, r >= 1, q > m/2 + 1 (q = " + num(q) +
                         ", m = " + std::to_string(fp.m) + ")";
        rec.applicable = even_char && fp.r >= 1 && 2 * q > fp.m + 2;
        rec.kind = "exists";
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "counting-odd-ext";
        rec.hypothesis = "odd char, r >= 1, q > 2m + 4 (q = " + num(q) +
                         ", m = " + std::to_string(fp.m) + ")";
        rec.applicable = !even_char && fp.r >= 1 && q > 2 * bigint(fp.m) + 4;
        rec.kind = "exists";
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "arithmetic-even-ext";
        bigint g = gcd(mp1, q * q - 1);
        rec.hypothesis = "char 2, r >= 1, gcd(m+1, q^2-1) = 1 (gcd = " + num(g) + ")";
        rec.applicable = even_char && fp.r >= 1 && g == 1;
        rec.kind = "all_but";
        if (rec.applicable) {
            rec.exceptions.push_back(field->one());  // rho = 0 is a genuine root
            rec.exact = true;
        }
        diag.records.push_back(rec);
    }
    {
        CorollaryRecord rec;
        rec.id = "arithmetic-odd-ext";
        rec.kind = "all_but";
        if (!even_char && q % 4 == 1) {
            bigint g = gcd(mp1, (q * q - 1) / 2);
            rec.hypothesis = "q = 1 mod 4, r >= 1, gcd(m+1, (q^2-1)/2) = 1 (gcd = " +
                             num(g) + ")";
            rec.applicable = fp.r >= 1 && g == 1;
            if (rec.applicable) {
                // r >= 1 makes +-2 genuine roots of E_n, so all four values
                // +-mu +- 2b genuinely fail LCD: the list is exact.
                FieldElement mu = sqrt_minus_one(field).mu;
                FieldElement two_b = b + b;
                std::set<FieldElement, detail::ValueLess> ex{mu + two_b, mu - two_b,
                                                             -mu + two_b, -mu - two_b};
                rec.exceptions.assign(ex.begin(), ex.end());
                rec.exact = true;
            }
        } else if (!even_char) {
            bigint g = gcd(mp1, (q * q * q * q - 1) / 2);
            bigint half = (q - 1) / 2;
            rec.hypothesis = "q = 3 mod 4, r >= 1, gcd(m+1, (q^4-1)/2) | (q-1)/2 "
                             "(gcd = " + num(g) + ", (q-1)/2 = " + num(half) + ")";
            rec.applicable = fp.r >= 1 && half % g == 0;
            rec.exact = true;  // mu outside F_q: no exception survives in the base
        } else {
            rec.hypothesis = "odd characteristic only";
        }
        diag.records.push_back(rec);
    }
    return diag;
}

}  // namespace lcdt
