#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lcdt {

using bigint = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;

inline bigint ipow(const bigint& base, u64 exp) {
    bigint r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline bigint powmod(bigint b, bigint e, const bigint& m) {
    if (m == 1) return 0;
    bigint r = 1;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if ((e & 1) != 0) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// Deterministic for n < 2^64 with this witness set; the extra bases keep the
// error probability negligible for the (rare) larger inputs.
inline bool is_probable_prime(const bigint& n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    bigint d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
        bigint x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Brent's cycle variant; returns a nontrivial factor of composite odd n.
inline bigint pollard_rho(const bigint& n) {
    if (n % 2 == 0) return 2;
    for (bigint c = 1;; ++c) {
        bigint x = 2, y = 2, d = 1;
        bigint saved_x = x, saved_y = y;
        auto step = [&](const bigint& v) { return (v * v + c) % n; };
        u64 batch = 0;
        bigint acc = 1;
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            bigint diff = x > y ? x - y : y - x;
            if (diff == 0) {
                d = 0;  // cycle without factor; retry with new c
                break;
            }
            acc = acc * diff % n;
            if (++batch % 128 == 0) {
                d = boost::multiprecision::gcd(acc, n);
                if (d == n) {
                    // overshoot inside the batch: replay one step at a time
                    x = saved_x;
                    y = saved_y;
                    d = 1;
                    while (d == 1) {
                        x = step(x);
                        y = step(step(y));
                        bigint df = x > y ? x - y : y - x;
                        d = df == 0 ? n : boost::multiprecision::gcd(df, n);
                    }
                    if (d == n) d = 0;
                    break;
                }
                saved_x = x;
                saved_y = y;
            }
        }
        if (d > 1 && d < n) return d;
    }
}

inline void factor_into(bigint n, std::map<bigint, unsigned>& out) {
    for (u64 p = 2; p < 10000 && bigint(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    bigint d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

inline std::map<bigint, unsigned> factorize(const bigint& n) {
    if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
    std::map<bigint, unsigned> out;
    if (n > 1) factor_into(n, out);
    return out;
}

// Values of the cyclotomic polynomials at p, indexed by divisor of D.
// Phi_d(p) = (p^d - 1) / prod_{e | d, e < d} Phi_e(p); the division is exact.
inline std::map<u64, bigint> cyclotomic_values(u64 p, u64 D) {
    std::vector<u64> divs;
    for (u64 d = 1; d <= D; ++d)
        if (D % d == 0) divs.push_back(d);
    std::map<u64, bigint> phi;
    for (u64 d : divs) {
        bigint v = ipow(p, d) - 1;
        for (u64 e = 1; e < d; ++e)
            if (d % e == 0) v /= phi.at(e);
        phi[d] = v;
    }
    return phi;
}

// Distinct prime divisors of p^D - 1, factoring one cyclotomic piece at a
// time so Pollard never sees the full product.
inline std::vector<bigint> prime_factors_of_order(u64 p, u64 D) {
    std::map<bigint, unsigned> merged;
    for (const auto& [d, v] : cyclotomic_values(p, D))
        if (v > 1) factor_into(v, merged);
    std::vector<bigint> primes;
    primes.reserve(merged.size());
    for (const auto& [q, e] : merged) primes.push_back(q);
    return primes;
}

// Multiplicative order of q modulo k; requires gcd(q, k) = 1.
inline u64 mult_order_mod(const bigint& q, u64 k) {
    if (k == 0) throw std::invalid_argument("mult_order_mod: zero modulus");
    if (k == 1) return 1;
    u64 r = static_cast<u64>(q % k);
    if (std::gcd(r, k) != 1) throw std::invalid_argument("mult_order_mod: arguments not coprime");
    unsigned __int128 cur = r % k;
    u64 ord = 1;
    while (cur != 1) {
        cur = cur * r % k;
        ++ord;
    }
    return ord;
}

} // namespace lcdt
