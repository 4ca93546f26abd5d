#pragma once

// Dickson polynomials of the second kind with alpha = 1:
//   E_0 = 1, E_1 = x, E_n = x E_{n-1} - E_{n-2},
// their factorization profile p^r || (n+1), and explicit root multisets over
// a splitting extension.
//
// Root multiplicities, characteristic p with n+1 = p^r (m+1), gcd(m+1,p)=1:
//   odd p:  theta^i + theta^{-i} (i = 1..m, theta a primitive 2(m+1)-th root)
//           each with multiplicity p^r, plus 2 and -2 each with multiplicity
//           (p^r - 1)/2.
//   p = 2:  theta^i + theta^{-i} (i = 1..m/2, theta a primitive (m+1)-th
//           root) each with multiplicity 2^{r+1}, plus 0 with multiplicity
//           2^r - 1.
// The reference statement this is drawn from carries exponent (p^r + 1)/2 on
// the (x + 2) factor; that makes the multiplicities sum to n + 1 instead of
// deg E_n = n, so the symmetric (p^r - 1)/2 is used for both (verified
// exhaustively against coefficient expansion).

#include <optional>
#include <utility>
#include <vector>

#include "lcdt/algebra.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/galois.hpp"

namespace lcdt {

struct FactorizationProfile {
    u64 n = 0;
    u64 p = 0;
    unsigned r = 0;  // p^r || (n+1)
    u64 m = 0;       // n+1 = p^r (m+1)

    u64 pr() const { return static_cast<u64>(ipow(bigint(p), r)); }
};

inline FactorizationProfile factor_profile(u64 n, u64 p) {
    check(n >= 1 && p >= 2, "factor_profile needs n >= 1 and a characteristic");
    FactorizationProfile fp;
    fp.n = n;
    fp.p = p;
    u64 rest = n + 1;
    while (rest % p == 0) {
        rest /= p;
        ++fp.r;
    }
    fp.m = rest - 1;
    return fp;
}

inline FieldElement dickson_eval(u64 n, const FieldElement& x) {
    const FieldPtr& f = x.field();
    FieldElement prev = f->one();  // E_0
    if (n == 0) return prev;
    FieldElement cur = x;  // E_1
    for (u64 i = 2; i <= n; ++i) {
        FieldElement next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline Poly dickson_poly(u64 n, const FieldPtr& field) {
    Poly prev = Poly::constant(field->one());
    if (n == 0) return prev;
    Poly x = Poly::x_power(field, 1);
    Poly cur = x;
    for (u64 i = 2; i <= n; ++i) {
        Poly next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct RootMultiset {
    FieldPtr ext;   // splitting extension the roots live in
    Embedding emb;  // base -> ext
    std::vector<std::pair<FieldElement, unsigned>> items;  // sorted by value
    std::optional<FieldElement> theta;  // root of unity used, when m > 0
};

inline RootMultiset dickson_roots(u64 n, const FieldPtr& base) {
    FactorizationProfile fp = factor_profile(n, base->characteristic());
    u64 pr = fp.pr();
    bool even_char = base->characteristic() == 2;

    // Both are consequences of p^r || (n+1); stated as checks because the
    // root formulas silently rely on them.
    if (even_char && fp.r == 0) check(fp.n % 2 == 0, "char 2, r = 0 forces n even");
    if (even_char && fp.r >= 1) check(fp.m % 2 == 0, "char 2, r >= 1 forces m even");

    RootMultiset out{base, Embedding::identity(base), {}, std::nullopt};
    if (fp.m > 0) {
        u64 k = even_char ? fp.m + 1 : 2 * (fp.m + 1);
        RootOfUnity ru = primitive_root_of_unity(base, k);
        out.ext = ru.ext;
        out.emb = ru.emb;
        out.theta = ru.theta;

        u64 top = even_char ? fp.m / 2 : fp.m;
        unsigned mult = static_cast<unsigned>(even_char ? 2 * pr : pr);
        FieldElement ti = out.ext->one();
        for (u64 i = 1; i <= top; ++i) {
            ti = ti * ru.theta;
            out.items.emplace_back(ti + ti.inverse(), mult);
        }
    }

    if (even_char) {
        if (pr > 1) out.items.emplace_back(out.ext->zero(), static_cast<unsigned>(pr - 1));
    } else if (pr > 1) {
        unsigned half = static_cast<unsigned>((pr - 1) / 2);
        out.items.emplace_back(out.ext->from_int(2), half);
        out.items.emplace_back(out.ext->from_int(-2), half);
    }

    std::sort(out.items.begin(), out.items.end(),
              [](const auto& x, const auto& y) { return value_less(x.first, y.first); });

    u64 total = 0;
    for (const auto& [root, mult] : out.items) total += mult;
    check(total == n, "root multiplicities must sum to deg E_n");
    return out;
}

}  // namespace lcdt
