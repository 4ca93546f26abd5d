#pragma once

#include "lcdt/errors.hpp"
#include "lcdt/intmath.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lcdt {

using u32 = std::uint32_t;

// Raw kernels over F_p. Coefficient vectors are little-endian; "element"
// vectors have fixed length equal to the field degree, "poly" vectors are
// trimmed (no trailing zeros, zero polynomial = empty vector). p < 2^31 so
// products fit in u64.
namespace fpk {

using Vec = std::vector<u32>;

inline u64 powp(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline u64 invp(u64 a, u64 p) { return powp(a % p, p - 2, p); }

inline void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline int degree(const Vec& v) {
    for (std::size_t i = v.size(); i > 0; --i)
        if (v[i - 1] != 0) return static_cast<int>(i) - 1;
    return -1;
}

inline Vec poly_add(const Vec& a, const Vec& b, u64 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 s = (i < a.size() ? a[i] : 0) + static_cast<u64>(i < b.size() ? b[i] : 0);
        r[i] = static_cast<u32>(s % p);
    }
    trim(r);
    return r;
}

inline Vec poly_sub(const Vec& a, const Vec& b, u64 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = static_cast<u32>((x + p - y) % p);
    }
    trim(r);
    return r;
}

inline Vec poly_mul(const Vec& a, const Vec& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        u64 ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<u32>((r[i + j] + ai * b[j]) % p);
    }
    trim(r);
    return r;
}

inline std::pair<Vec, Vec> poly_divmod(Vec num, const Vec& den, u64 p) {
    int dd = degree(den);
    assert(dd >= 0);
    trim(num);
    int dn = degree(num);
    if (dn < dd) return {{}, num};
    u64 li = invp(den[dd], p);
    Vec q(dn - dd + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        u64 c = num[dd + k] * li % p;
        q[k] = static_cast<u32>(c);
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) {
            u64 cur = num[k + j];
            num[k + j] = static_cast<u32>((cur + p * p - c * den[j]) % p);
        }
    }
    trim(num);
    trim(q);
    return {q, num};
}

inline Vec poly_gcd(Vec a, Vec b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = poly_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// product of fixed-length elements, reduced by the monic modulus
inline Vec elem_mul(const Vec& a, const Vec& b, const Vec& mod, u64 p) {
    std::size_t s = mod.size() - 1;
    if (s == 1) return {static_cast<u32>(static_cast<u64>(a[0]) * b[0] % p)};
    std::vector<u64> buf(2 * s - 1, 0);
    for (std::size_t i = 0; i < s; ++i) {
        if (a[i] == 0) continue;
        u64 ai = a[i];
        for (std::size_t j = 0; j < s; ++j) buf[i + j] = (buf[i + j] + ai * b[j]) % p;
    }
    for (std::size_t i = 2 * s - 2; i >= s; --i) {
        u64 c = buf[i];
        if (c) {
            for (std::size_t j = 0; j < s; ++j)
                buf[i - s + j] = (buf[i - s + j] + (p - c) * mod[j]) % p;
        }
    }
    Vec r(s);
    for (std::size_t j = 0; j < s; ++j) r[j] = static_cast<u32>(buf[j]);
    return r;
}

inline Vec elem_pow(const Vec& a, bigint e, const Vec& mod, u64 p) {
    std::size_t s = mod.size() - 1;
    Vec r(s, 0);
    r[0] = static_cast<u32>(1 % p);
    if (e == 0) return r;
    unsigned bits = boost::multiprecision::msb(e) + 1;
    for (unsigned i = bits; i-- > 0;) {
        r = elem_mul(r, r, mod, p);
        if (boost::multiprecision::bit_test(e, i)) r = elem_mul(r, a, mod, p);
    }
    return r;
}

// inverse mod f via extended Euclid; a must be nonzero mod f
inline Vec elem_inv(const Vec& a, const Vec& f, u64 p) {
    Vec r0 = f, r1 = a, s0 = {}, s1 = {1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r2] = poly_divmod(r0, r1, p);
        Vec s2 = poly_sub(s0, poly_mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    assert(degree(r0) == 0);
    u64 c = invp(r0[0], p);
    Vec out(f.size() - 1, 0);
    for (std::size_t i = 0; i < s0.size(); ++i) out[i] = static_cast<u32>(s0[i] * c % p);
    return out;
}

// h^e mod f on trimmed polynomials
inline Vec poly_powmod(Vec h, u64 e, const Vec& f, u64 p) {
    Vec r = {1};
    while (e) {
        if (e & 1) r = poly_divmod(poly_mul(r, h, p), f, p).second;
        h = poly_divmod(poly_mul(h, h, p), f, p).second;
        e >>= 1;
    }
    return r;
}

// f monic; a factor of degree d <= s/2 divides x^{p^d} - x and is caught by
// the gcd at step d, so the scan is complete
inline bool is_irreducible(const Vec& f, u64 p) {
    int s = degree(f);
    if (s < 1) return false;
    if (s == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    Vec x = {0, 1};
    Vec h = x;
    for (int i = 1; i <= s / 2; ++i) {
        h = poly_powmod(h, p, f, p);
        Vec g = poly_gcd(poly_sub(h, x, p), f, p);
        if (degree(g) > 0) return false;
    }
    return true;
}

} // namespace fpk

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FieldElement {
public:
    FieldElement() = default;  // invalid placeholder for containers

    const FieldPtr& field() const { return f_; }
    const fpk::Vec& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bigint value() const;
    std::string str() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(const bigint& e) const;
    bigint mult_order() const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    friend class FiniteField;
    FieldElement(FieldPtr f, fpk::Vec c) : f_(std::move(f)), c_(std::move(c)) {}
    FieldPtr f_;
    fpk::Vec c_;
};

// value order: compare base-p digit vectors most-significant first
inline bool value_less(const FieldElement& a, const FieldElement& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    assert(x.size() == y.size());
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i]) return x[i] < y[i];
    }
    return false;
}

class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
    // canonical modulus: first irreducible monic polynomial in ascending
    // little-endian value order
    static FieldPtr create(u64 p, std::size_t s);
    static FieldPtr create(u64 p, std::size_t s, const std::vector<long long>& modulus);
    // "p^s/c0,c1,...,cs"; the modulus part may be omitted for the canonical field
    static FieldPtr parse_spec(const std::string& spec);

    u64 characteristic() const { return p_; }
    std::size_t degree() const { return s_; }
    const bigint& order() const { return q_; }
    bool order_fits_u64() const { return q_ <= bigint(UINT64_MAX); }
    u64 order_u64() const { return static_cast<u64>(q_); }
    const fpk::Vec& modulus() const { return mod_; }
    std::string spec() const;
    bool same_structure(const FiniteField& o) const { return p_ == o.p_ && mod_ == o.mod_; }

    FieldElement zero() const { return make(fpk::Vec(s_, 0)); }
    FieldElement one() const { return from_int(1); }
    FieldElement from_int(long long v) const;
    FieldElement from_coeffs(const std::vector<long long>& c) const;
    // already-reduced coefficient vector of full length (internal fast path)
    FieldElement from_raw(fpk::Vec c) const {
        check(c.size() == s_, "raw coefficient vector has wrong length");
        return make(std::move(c));
    }
    FieldElement from_value(bigint v) const;
    FieldElement element_x() const;  // class of x
    FieldElement primitive_element() const;
    const std::vector<bigint>& order_prime_factors() const;  // distinct primes of q-1

    // element syntax: "c0,c1,...", "g^k", "g", or "0"
    FieldElement parse_element(const std::string& text) const;

private:
    FiniteField(u64 p, std::size_t s, fpk::Vec mod)
        : p_(p), s_(s), mod_(std::move(mod)), q_(ipow(p, s)) {}

    FieldElement make(fpk::Vec c) const { return FieldElement(shared_from_this(), std::move(c)); }
    static fpk::Vec canonical_modulus(u64 p, std::size_t s);
    static FieldPtr intern(u64 p, std::size_t s, fpk::Vec mod);

    friend class FieldElement;
    u64 p_;
    std::size_t s_;
    fpk::Vec mod_;
    bigint q_;

    mutable std::mutex cache_mu_;
    mutable std::optional<fpk::Vec> primitive_;
    mutable std::optional<std::vector<bigint>> order_primes_;
};

// ---- FieldElement definitions ----

inline bool FieldElement::is_zero() const {
    for (u32 c : c_)
        if (c) return false;
    return true;
}

inline bool FieldElement::is_one() const { return *this == f_->one(); }

inline bigint FieldElement::value() const {
    bigint v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * f_->characteristic() + c_[i];
    return v;
}

inline std::string FieldElement::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    return os.str();
}

namespace detail {
inline void require_same_field(const FieldElement& a, const FieldElement& b, const char* op) {
    if (!a.field() || !b.field() || !a.field()->same_structure(*b.field()))
        throw MixedFields(std::string("operands of '") + op + "' belong to different fields");
}
} // namespace detail

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
    detail::require_same_field(*this, o, "+");
    fpk::Vec r(c_.size());
    u64 p = f_->characteristic();
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = static_cast<u32>((static_cast<u64>(c_[i]) + o.c_[i]) % p);
    return FieldElement(f_, std::move(r));
}

inline FieldElement FieldElement::operator-(const FieldElement& o) const {
    detail::require_same_field(*this, o, "-");
    fpk::Vec r(c_.size());
    u64 p = f_->characteristic();
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = static_cast<u32>((static_cast<u64>(c_[i]) + p - o.c_[i]) % p);
    return FieldElement(f_, std::move(r));
}

inline FieldElement FieldElement::operator*(const FieldElement& o) const {
    detail::require_same_field(*this, o, "*");
    return FieldElement(f_, fpk::elem_mul(c_, o.c_, f_->modulus(), f_->characteristic()));
}

inline FieldElement FieldElement::operator/(const FieldElement& o) const {
    detail::require_same_field(*this, o, "/");
    return *this * o.inverse();
}

inline FieldElement FieldElement::operator-() const {
    fpk::Vec r(c_.size());
    u64 p = f_->characteristic();
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<u32>((p - c_[i]) % p);
    return FieldElement(f_, std::move(r));
}

inline FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return FieldElement(f_, fpk::elem_inv(c_, f_->modulus(), f_->characteristic()));
}

inline FieldElement FieldElement::pow(const bigint& e) const {
    if (e < 0) return inverse().pow(-e);
    return FieldElement(f_, fpk::elem_pow(c_, e, f_->modulus(), f_->characteristic()));
}

inline bigint FieldElement::mult_order() const {
    if (is_zero()) throw DivisionByZero("multiplicative order of zero");
    bigint ord = f_->order() - 1;
    for (const bigint& l : f_->order_prime_factors()) {
        while (ord % l == 0 && pow(ord / l).is_one()) ord /= l;
    }
    return ord;
}

inline bool FieldElement::operator==(const FieldElement& o) const {
    if (!f_ || !o.f_) return f_ == o.f_ && c_ == o.c_;
    return f_->same_structure(*o.f_) && c_ == o.c_;
}

// ---- FiniteField definitions ----

inline fpk::Vec FiniteField::canonical_modulus(u64 p, std::size_t s) {
    static std::mutex mu;
    static std::map<std::pair<u64, std::size_t>, fpk::Vec> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({p, s});
        if (it != cache.end()) return it->second;
    }
    fpk::Vec f(s + 1, 0);
    f[s] = 1;
    const bigint bound = ipow(p, static_cast<u64>(s));
    for (bigint v = 0;; ++v) {
        check(v < bound, "no irreducible modulus found in range");
        bigint t = v;
        for (std::size_t i = 0; i < s; ++i) {
            f[i] = static_cast<u32>(t % p);
            t /= p;
        }
        if (fpk::is_irreducible(f, p)) break;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(p, s), f);
    return f;
}

inline FieldPtr FiniteField::intern(u64 p, std::size_t s, fpk::Vec mod) {
    static std::mutex mu;
    static std::map<std::pair<u64, fpk::Vec>, FieldPtr> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, mod);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldPtr f(new FiniteField(p, s, std::move(mod)));
    cache.emplace(std::move(key), f);
    return f;
}

inline FieldPtr FiniteField::create(u64 p, std::size_t s) {
    if (p < 2 || !is_probable_prime(bigint(p)))
        throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
    if (p >> 31)
        throw NonPrimeCharacteristic("characteristic too large (must fit in 31 bits)");
    if (s < 1) throw DegreeMismatch("degree must be at least 1");
    return intern(p, s, canonical_modulus(p, s));
}

inline FieldPtr FiniteField::create(u64 p, std::size_t s, const std::vector<long long>& modulus) {
    if (p < 2 || !is_probable_prime(bigint(p)))
        throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
    if (p >> 31)
        throw NonPrimeCharacteristic("characteristic too large (must fit in 31 bits)");
    if (s < 1) throw DegreeMismatch("degree must be at least 1");
    if (modulus.size() != s + 1)
        throw DegreeMismatch("modulus must have exactly degree+1 coefficients");
    fpk::Vec f(s + 1);
    for (std::size_t i = 0; i <= s; ++i) {
        long long c = modulus[i] % static_cast<long long>(p);
        if (c < 0) c += static_cast<long long>(p);
        f[i] = static_cast<u32>(c);
    }
    if (f[s] != 1) throw DegreeMismatch("modulus must be monic");
    if (!fpk::is_irreducible(f, p)) {
        std::ostringstream os;
        os << "modulus ";
        for (std::size_t i = 0; i <= s; ++i) os << (i ? "," : "") << f[i];
        os << " is reducible over F_" << p;
        throw ReducibleModulus(os.str());
    }
    return intern(p, s, std::move(f));
}

inline FieldElement FiniteField::from_int(long long v) const {
    long long c = v % static_cast<long long>(p_);
    if (c < 0) c += static_cast<long long>(p_);
    fpk::Vec r(s_, 0);
    r[0] = static_cast<u32>(c);
    return make(std::move(r));
}

inline FieldElement FiniteField::from_coeffs(const std::vector<long long>& c) const {
    if (c.size() > s_) throw DegreeMismatch("too many coefficients for this field");
    fpk::Vec r(s_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        long long v = c[i] % static_cast<long long>(p_);
        if (v < 0) v += static_cast<long long>(p_);
        r[i] = static_cast<u32>(v);
    }
    return make(std::move(r));
}

inline FieldElement FiniteField::from_value(bigint v) const {
    v %= q_;
    if (v < 0) v += q_;
    fpk::Vec r(s_, 0);
    for (std::size_t i = 0; i < s_; ++i) {
        r[i] = static_cast<u32>(v % p_);
        v /= p_;
    }
    return make(std::move(r));
}

inline FieldElement FiniteField::element_x() const {
    if (s_ == 1) return from_int(-static_cast<long long>(mod_[0]));
    fpk::Vec r(s_, 0);
    r[1] = 1;
    return make(std::move(r));
}

inline const std::vector<bigint>& FiniteField::order_prime_factors() const {
    std::lock_guard<std::mutex> lk(cache_mu_);
    if (!order_primes_) {
        order_primes_ = prime_factors_of_order(p_, static_cast<u64>(s_));
    }
    return *order_primes_;
}

inline FieldElement FiniteField::primitive_element() const {
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        if (primitive_) return make(*primitive_);
    }
    const std::vector<bigint>& primes = order_prime_factors();
    bigint qm1 = q_ - 1;
    FieldElement g = zero();
    for (bigint v = 1;; ++v) {
        check(v < q_, "no primitive element found");
        FieldElement cand = from_value(v);
        bool ok = true;
        for (const bigint& l : primes) {
            if (cand.pow(qm1 / l).is_one()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    std::lock_guard<std::mutex> lk(cache_mu_);
    primitive_ = g.coeffs();
    return g;
}

inline std::string FiniteField::spec() const {
    std::ostringstream os;
    os << p_ << '^' << s_ << '/';
    for (std::size_t i = 0; i <= s_; ++i) os << (i ? "," : "") << mod_[i];
    return os.str();
}

inline FieldPtr FiniteField::parse_spec(const std::string& spec) {
    auto caret = spec.find('^');
    if (caret == std::string::npos) throw ParseError("field spec must look like p^s/c0,...,cs");
    auto slash = spec.find('/', caret);
    u64 p = 0;
    std::size_t s = 0;
    try {
        p = std::stoull(spec.substr(0, caret));
        std::string deg = slash == std::string::npos ? spec.substr(caret + 1)
                                                     : spec.substr(caret + 1, slash - caret - 1);
        s = std::stoull(deg);
    } catch (const std::exception&) {
        throw ParseError("invalid field spec '" + spec + "'");
    }
    if (slash == std::string::npos) return create(p, s);
    std::vector<long long> mod;
    std::string rest = spec.substr(slash + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            mod.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw ParseError("invalid modulus coefficient '" + tok + "'");
        }
    }
    if (rest.empty()) throw ParseError("empty modulus in field spec");
    return create(p, s, mod);
}

inline FieldElement FiniteField::parse_element(const std::string& text) const {
    if (text.empty()) throw ParseError("empty element literal");
    if (text[0] == 'g') {
        if (text == "g") return primitive_element();
        if (text.size() < 3 || text[1] != '^') throw ParseError("invalid element literal '" + text + "'");
        bigint k;
        try {
            k = bigint(text.substr(2));
        } catch (const std::exception&) {
            throw ParseError("invalid exponent in '" + text + "'");
        }
        return primitive_element().pow(k);
    }
    std::vector<long long> c;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            c.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw ParseError("invalid element literal '" + text + "'");
        }
    }
    if (c.size() > s_) throw ParseError("too many coefficients in element literal '" + text + "'");
    return from_coeffs(c);
}

// ---- Embedding ----

class Embedding {
public:
    // deterministic: the generator of sub maps to the smallest root (in value
    // order) of sub's modulus inside sup
    static Embedding build(const FieldPtr& sub, const FieldPtr& sup);
    static Embedding identity(const FieldPtr& f);

    const FieldPtr& sub() const { return sub_; }
    const FieldPtr& sup() const { return sup_; }
    std::size_t relative_degree() const { return sup_->degree() / sub_->degree(); }
    const FieldElement& generator_image() const { return gen_img_; }

    FieldElement apply(const FieldElement& x) const;
    std::optional<FieldElement> preimage(const FieldElement& y) const;
    // relative trace from sup onto (the image of) sub, returned as a sub element
    FieldElement trace(const FieldElement& x) const;

private:
    Embedding(FieldPtr sub, FieldPtr sup, std::vector<fpk::Vec> basis_img, FieldElement gen_img)
        : sub_(std::move(sub)), sup_(std::move(sup)), basis_img_(std::move(basis_img)),
          gen_img_(std::move(gen_img)) {}
    FieldPtr sub_, sup_;
    std::vector<fpk::Vec> basis_img_;  // images of x^j for j < sub.degree
    FieldElement gen_img_;
};

inline Embedding Embedding::identity(const FieldPtr& f) {
    std::vector<fpk::Vec> basis;
    FieldElement xs = f->element_x();
    FieldElement cur = f->one();
    for (std::size_t j = 0; j < f->degree(); ++j) {
        basis.push_back(cur.coeffs());
        cur = cur * xs;
    }
    return Embedding(f, f, std::move(basis), xs);
}

inline Embedding Embedding::build(const FieldPtr& sub, const FieldPtr& sup) {
    if (sub->characteristic() != sup->characteristic())
        throw NoEmbedding("characteristics differ");
    if (sup->degree() % sub->degree() != 0)
        throw NoEmbedding("degree " + std::to_string(sub->degree()) + " does not divide " +
                          std::to_string(sup->degree()));
    u64 p = sub->characteristic();
    std::size_t s = sub->degree();
    std::size_t d = sup->degree();

    if (s == 1) {
        std::vector<fpk::Vec> basis = {sup->one().coeffs()};
        FieldElement gen = sup->from_int(-static_cast<long long>(sub->modulus()[0]));
        return Embedding(sub, sup, std::move(basis), std::move(gen));
    }
    if (sub->same_structure(*sup)) return identity(sub);

    if (!sub->order_fits_u64() || sub->order_u64() > (1u << 22))
        throw NoEmbedding("subfield too large for the deterministic root scan");

    // kernel of y -> y^{p^s} - y, an F_p-linear map on sup
    FieldElement t0 = sup->element_x().pow(sub->order());
    std::vector<fpk::Vec> cols(d);
    FieldElement pow_t0 = sup->one();
    FieldElement pow_x = sup->one();
    FieldElement xs = sup->element_x();
    for (std::size_t j = 0; j < d; ++j) {
        FieldElement diff = pow_t0 - pow_x;
        cols[j] = diff.coeffs();
        pow_t0 = pow_t0 * t0;
        pow_x = pow_x * xs;
    }
    // Gaussian elimination on the d x d matrix whose columns are cols
    std::vector<fpk::Vec> m(d, fpk::Vec(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i][j] = cols[j][i];
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < d; ++col) {
        std::size_t pr = row;
        while (pr < d && m[pr][col] == 0) ++pr;
        if (pr == d) continue;
        std::swap(m[pr], m[row]);
        u64 inv = fpk::invp(m[row][col], p);
        for (std::size_t j = col; j < d; ++j)
            m[row][j] = static_cast<u32>(m[row][j] * inv % p);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == row || m[i][col] == 0) continue;
            u64 c = m[i][col];
            for (std::size_t j = col; j < d; ++j)
                m[i][j] = static_cast<u32>((m[i][j] + (p - c) * m[row][j]) % p);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(d, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<fpk::Vec> kernel;
    for (std::size_t free_col = 0; free_col < d; ++free_col) {
        if (is_pivot[free_col]) continue;
        fpk::Vec v(d, 0);
        v[free_col] = 1;
        for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2) {
            u64 c = m[r2][free_col];
            v[pivot_col[r2]] = static_cast<u32>((p - c) % p);
        }
        kernel.push_back(std::move(v));
    }
    check(kernel.size() == s, "Frobenius kernel has unexpected dimension");

    // scan the subfield of sup for roots of sub's modulus
    const fpk::Vec& f = sub->modulus();
    std::optional<FieldElement> best;
    u64 count = sub->order_u64();
    for (u64 idx = 1; idx < count; ++idx) {
        fpk::Vec cand(d, 0);
        u64 t = idx;
        for (std::size_t ki = 0; ki < kernel.size(); ++ki) {
            u64 c = t % p;
            t /= p;
            if (c == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
                cand[j] = static_cast<u32>((cand[j] + c * kernel[ki][j]) % p);
        }
        FieldElement y = sup->from_raw(std::move(cand));
        // Horner evaluation of f at y
        FieldElement acc = sup->from_int(static_cast<long long>(f[s]));
        for (std::size_t i = s; i-- > 0;) acc = acc * y + sup->from_int(static_cast<long long>(f[i]));
        if (acc.is_zero()) {
            if (!best || value_less(y, *best)) best = y;
        }
    }
    if (!best) throw NoEmbedding("no root of the subfield modulus found");

    std::vector<fpk::Vec> basis;
    FieldElement cur = sup->one();
    for (std::size_t j = 0; j < s; ++j) {
        basis.push_back(cur.coeffs());
        cur = cur * *best;
    }
    Embedding e(sub, sup, std::move(basis), *best);
    check(e.apply(sub->one()) == sup->one(), "embedding does not fix 1");
    return e;
}

inline FieldElement Embedding::apply(const FieldElement& x) const {
    if (!x.field()->same_structure(*sub_))
        throw MixedFields("embedding applied to an element of a different field");
    u64 p = sup_->characteristic();
    fpk::Vec acc(sup_->degree(), 0);
    const auto& c = x.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        u64 cj = c[j];
        const fpk::Vec& img = basis_img_[j];
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] = static_cast<u32>((acc[i] + cj * img[i]) % p);
    }
    return sup_->from_raw(std::move(acc));
}

inline std::optional<FieldElement> Embedding::preimage(const FieldElement& y) const {
    if (!y.field()->same_structure(*sup_))
        throw MixedFields("preimage argument lies in a different field");
    u64 p = sup_->characteristic();
    std::size_t d = sup_->degree();
    std::size_t s = sub_->degree();
    // solve basis_img * c = y over F_p
    std::vector<fpk::Vec> aug(d, fpk::Vec(s + 1, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < s; ++j) aug[i][j] = basis_img_[j][i];
        aug[i][s] = y.coeffs()[i];
    }
    std::size_t row = 0;
    std::vector<int> pivot_of_col(s, -1);
    for (std::size_t col = 0; col < s && row < d; ++col) {
        std::size_t pr = row;
        while (pr < d && aug[pr][col] == 0) ++pr;
        if (pr == d) continue;
        std::swap(aug[pr], aug[row]);
        u64 inv = fpk::invp(aug[row][col], p);
        for (std::size_t j = col; j <= s; ++j)
            aug[row][j] = static_cast<u32>(aug[row][j] * inv % p);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            u64 c = aug[i][col];
            for (std::size_t j = col; j <= s; ++j)
                aug[i][j] = static_cast<u32>((aug[i][j] + (p - c) * aug[row][j]) % p);
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    // consistency: rows beyond the pivots must have zero rhs
    for (std::size_t i = row; i < d; ++i)
        if (aug[i][s] != 0) return std::nullopt;
    std::vector<long long> c(s, 0);
    for (std::size_t col = 0; col < s; ++col)
        if (pivot_of_col[col] >= 0) c[col] = aug[pivot_of_col[col]][s];
    FieldElement back = sub_->from_coeffs(c);
    // basis images always have full column rank, so the solve is exact;
    // verify to catch misuse
    if (!(apply(back) == y)) return std::nullopt;
    return back;
}

inline FieldElement Embedding::trace(const FieldElement& x) const {
    if (!x.field()->same_structure(*sup_))
        throw MixedFields("trace argument lies in a different field");
    std::size_t t = relative_degree();
    const bigint& qs = sub_->order();
    FieldElement acc = x;
    FieldElement cur = x;
    for (std::size_t i = 1; i < t; ++i) {
        cur = cur.pow(qs);
        acc = acc + cur;
    }
    auto back = preimage(acc);
    check(back.has_value(), "trace landed outside the subfield image");
    return *back;
}

inline FieldElement trace_to(const Embedding& emb, const FieldElement& x) { return emb.trace(x); }

// ---- roots of unity and sqrt(-1) ----

struct RootOfUnity {
    FieldElement theta;
    FieldPtr ext;
    Embedding emb;
    u64 k;
};

inline RootOfUnity primitive_root_of_unity(const FieldPtr& base, u64 k) {
    if (k == 0) throw RootObstruction("k must be positive");
    u64 p = base->characteristic();
    if (std::gcd(k, p) != 1)
        throw RootObstruction("no primitive " + std::to_string(k) +
                              "-th root of unity in characteristic " + std::to_string(p));
    if (k == 1) return {base->one(), base, Embedding::identity(base), 1};
    u64 t = mult_order_mod(base->order(), k);
    FieldPtr ext = t == 1 ? base : FiniteField::create(p, base->degree() * t);
    Embedding emb = t == 1 ? Embedding::identity(base) : Embedding::build(base, ext);
    FieldElement g = ext->primitive_element();
    FieldElement theta = g.pow((ext->order() - 1) / k);
    check(theta.pow(k).is_one(), "root of unity has wrong order");
    for (const auto& [l, e] : factorize(k)) {
        (void)e;
        check(!theta.pow(k / static_cast<u64>(l)).is_one(), "root of unity order is not exact");
    }
    return {std::move(theta), std::move(ext), std::move(emb), k};
}

struct SqrtMinusOne {
    FieldElement mu;
    FieldPtr ext;
    Embedding emb;
};

inline SqrtMinusOne sqrt_minus_one(const FieldPtr& base) {
    u64 p = base->characteristic();
    if (p == 2) return {base->one(), base, Embedding::identity(base)};
    if (base->order() % 4 == 1) {
        FieldElement mu = base->primitive_element().pow((base->order() - 1) / 4);
        check((mu * mu + base->one()).is_zero(), "mu^2 != -1");
        return {std::move(mu), base, Embedding::identity(base)};
    }
    FieldPtr ext = FiniteField::create(p, base->degree() * 2);
    Embedding emb = Embedding::build(base, ext);
    FieldElement mu = ext->primitive_element().pow((ext->order() - 1) / 4);
    check((mu * mu + ext->one()).is_zero(), "mu^2 != -1");
    return {std::move(mu), std::move(ext), std::move(emb)};
}

// ---- dual basis ----

inline std::vector<FieldElement> dual_basis(const Embedding& emb,
                                            const std::vector<FieldElement>& basis) {
    std::size_t t = emb.relative_degree();
    if (basis.size() != t)
        throw NotABasis("expected " + std::to_string(t) + " elements, got " +
                        std::to_string(basis.size()));
    const FieldPtr& sub = emb.sub();
    const FieldPtr& sup = emb.sup();
    for (const auto& e : basis)
        if (!e.field()->same_structure(*sup)) throw MixedFields("basis element in a different field");

    // Gram matrix of the trace form over sub, then invert (augmented Gaussian)
    std::vector<std::vector<FieldElement>> aug(t, std::vector<FieldElement>(2 * t, sub->zero()));
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) aug[i][j] = emb.trace(basis[i] * basis[j]);
        aug[i][t + i] = sub->one();
    }
    for (std::size_t col = 0; col < t; ++col) {
        std::size_t pr = col;
        while (pr < t && aug[pr][col].is_zero()) ++pr;
        if (pr == t) throw NotABasis("trace Gram matrix is singular");
        std::swap(aug[pr], aug[col]);
        FieldElement inv = aug[col][col].inverse();
        for (std::size_t j = 0; j < 2 * t; ++j) aug[col][j] = aug[col][j] * inv;
        for (std::size_t i = 0; i < t; ++i) {
            if (i == col || aug[i][col].is_zero()) continue;
            FieldElement c = aug[i][col];
            for (std::size_t j = 0; j < 2 * t; ++j) aug[i][j] = aug[i][j] - c * aug[col][j];
        }
    }
    std::vector<FieldElement> dual;
    dual.reserve(t);
    for (std::size_t j = 0; j < t; ++j) {
        FieldElement acc = sup->zero();
        for (std::size_t kk = 0; kk < t; ++kk) acc = acc + emb.apply(aug[kk][t + j]) * basis[kk];
        dual.push_back(std::move(acc));
    }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            FieldElement tr = emb.trace(basis[i] * dual[j]);
            check(tr == (i == j ? sub->one() : sub->zero()), "dual basis pairing check failed");
        }
    return dual;
}

} // namespace lcdt
