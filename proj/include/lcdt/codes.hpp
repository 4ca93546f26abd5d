#pragma once

// Generic linear-code machinery: canonicalized generator matrices, exact
// minimum distance and weight distribution by full message-space
// enumeration, dual codes, hull dimension.
//
// Enumeration walks the message odometer incrementally: stepping message
// index by one adds generator row i to the running codeword once for every
// digit i that wraps or increments, so the amortized cost per codeword is
// q/(q-1) row additions. For small fields (q <= 512) value-indexed add
// tables replace element arithmetic. The space is split into contiguous
// index ranges across workers; merging minima and weight counts is
// associative, so the result is independent of the partitioning.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lcdt/algebra.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/galois.hpp"

namespace lcdt {

inline u64 default_budget() {
    if (const char* s = std::getenv("LCDT_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<u64>(v);
    }
    return u64(1) << 24;
}

inline unsigned default_threads() {
    if (const char* s = std::getenv("LCDT_THREADS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Weight -> number of codewords of that weight.
using WeightDistribution = std::map<u64, u64>;

class LinearCode {
public:
    // The generator is canonicalized to reduced row echelon form with zero
    // rows dropped, so k is the row rank and equality is row-space equality.
    explicit LinearCode(const Matrix& generator)
        : f_(generator.field()), gen_(canonicalize(generator)) {}

    const FieldPtr& field() const { return f_; }
    std::size_t k() const { return gen_.rows(); }
    std::size_t length() const { return gen_.cols(); }
    const Matrix& generator() const { return gen_; }

    bool operator==(const LinearCode& o) const {
        return f_->same_structure(*o.f_) && gen_ == o.gen_;
    }

private:
    static Matrix canonicalize(const Matrix& g) {
        Matrix r = g.rref();
        std::size_t rank = 0;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            bool nonzero = false;
            for (std::size_t j = 0; j < r.cols(); ++j)
                if (!r.at(i, j).is_zero()) nonzero = true;
            if (nonzero) ++rank;
        }
        // RREF sinks zero rows to the bottom
        Matrix out(g.field(), rank, r.cols());
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) out.at(i, j) = r.at(i, j);
        return out;
    }

    FieldPtr f_;
    Matrix gen_;
};

namespace detail {

// One worker's pass over message indices [lo, hi), all nonzero. Codewords
// are value vectors; stepping the odometer adds row i once per carried
// digit. Returns (min positive weight seen or N+1, weight counts).
struct SweepResult {
    u64 min_weight;
    std::vector<u64> counts;  // indexed by weight
};

class SmallFieldSweeper {
public:
    SmallFieldSweeper(const LinearCode& code) : q_(code.field()->order_u64()) {
        const Matrix& g = code.generator();
        k_ = g.rows();
        n_ = g.cols();
        const FieldPtr& f = code.field();
        add_.assign(q_ * q_, 0);
        for (u64 x = 0; x < q_; ++x)
            for (u64 y = 0; y < q_; ++y)
                add_[x * q_ + y] = static_cast<u32>(
                    (f->from_value(bigint(x)) + f->from_value(bigint(y))).value());
        // rows_[i][c] = value vector of c * row_i, for seeding a range start.
        // deltas_[i][c] = (elem((c+1) mod q) - elem(c)) * row_i, the odometer
        // step for digit i moving off value c. Element values are base-p
        // digit encodings, so the step is not simply "+ row_i" beyond F_p.
        rows_.assign(k_, {});
        deltas_.assign(k_, {});
        for (std::size_t i = 0; i < k_; ++i) {
            rows_[i].assign(q_, std::vector<u32>(n_, 0));
            deltas_[i].assign(q_, std::vector<u32>(n_, 0));
            for (u64 c = 0; c < q_; ++c) {
                auto ce = f->from_value(bigint(c));
                auto de = f->from_value(bigint((c + 1) % q_)) - ce;
                for (std::size_t j = 0; j < n_; ++j) {
                    rows_[i][c][j] = static_cast<u32>((ce * g.at(i, j)).value());
                    deltas_[i][c][j] = static_cast<u32>((de * g.at(i, j)).value());
                }
            }
        }
    }

    SweepResult sweep(u64 lo, u64 hi) const {
        SweepResult res{n_ + 1, std::vector<u64>(n_ + 1, 0)};
        if (lo >= hi) return res;
        std::vector<u64> digits(k_, 0);
        std::vector<u32> cw(n_, 0);
        u64 rest = lo;
        for (std::size_t i = 0; i < k_ && rest; ++i) {
            digits[i] = rest % q_;
            rest /= q_;
            if (digits[i]) add_row(cw, rows_[i][digits[i]]);
        }
        for (u64 idx = lo;;) {
            u64 wt = 0;
            for (std::size_t j = 0; j < n_; ++j)
                if (cw[j]) ++wt;
            ++res.counts[wt];
            if (wt && wt < res.min_weight) res.min_weight = wt;
            if (++idx >= hi) break;
            // odometer step: apply each touched digit's delta row
            for (std::size_t i = 0; i < k_; ++i) {
                add_row(cw, deltas_[i][digits[i]]);
                if (++digits[i] < q_) break;
                digits[i] = 0;
            }
        }
        return res;
    }

private:
    void add_row(std::vector<u32>& cw, const std::vector<u32>& row) const {
        for (std::size_t j = 0; j < n_; ++j) cw[j] = add_[cw[j] * q_ + row[j]];
    }

    u64 q_;
    std::size_t k_, n_;
    std::vector<u32> add_;
    std::vector<std::vector<std::vector<u32>>> rows_, deltas_;
};

// Fallback for large fields: recompute each codeword from its digits.
inline SweepResult big_field_sweep(const LinearCode& code, u64 lo, u64 hi) {
    const FieldPtr& f = code.field();
    const Matrix& g = code.generator();
    u64 q = f->order_u64();
    std::size_t k = g.rows(), n = g.cols();
    SweepResult res{n + 1, std::vector<u64>(n + 1, 0)};
    for (u64 idx = lo; idx < hi; ++idx) {
        std::vector<FieldElement> cw(n, f->zero());
        u64 rest = idx;
        for (std::size_t i = 0; i < k && rest; ++i) {
            u64 d = rest % q;
            rest /= q;
            if (!d) continue;
            auto de = f->from_value(bigint(d));
            for (std::size_t j = 0; j < n; ++j) cw[j] = cw[j] + de * g.at(i, j);
        }
        u64 wt = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (!cw[j].is_zero()) ++wt;
        ++res.counts[wt];
        if (wt && wt < res.min_weight) res.min_weight = wt;
    }
    return res;
}

inline SweepResult full_sweep(const LinearCode& code, u64 budget) {
    const FieldPtr& f = code.field();
    bigint total_big = ipow(f->order(), code.k());
    if (total_big > budget)
        throw BudgetExceeded("message space q^k = " + total_big.str() +
                             " exceeds the enumeration budget " + std::to_string(budget));
    u64 total = static_cast<u64>(total_big);

    unsigned workers = default_threads();
    if (total < (u64(1) << 16)) workers = 1;
    if (workers > total) workers = static_cast<unsigned>(total);

    std::optional<SmallFieldSweeper> sweeper;
    if (f->order_fits_u64() && f->order_u64() <= 512) sweeper.emplace(code);
    auto run = [&](u64 lo, u64 hi) {
        return sweeper ? sweeper->sweep(lo, hi) : big_field_sweep(code, lo, hi);
    };

    if (workers <= 1) return run(1, total);

    std::vector<SweepResult> parts(workers);
    std::vector<std::thread> pool;
    u64 span = (total - 1) / workers + 1;
    for (unsigned w = 0; w < workers; ++w) {
        u64 lo = 1 + w * span;
        u64 hi = std::min<u64>(total, lo + span);
        if (lo >= hi) {
            parts[w] = SweepResult{static_cast<u64>(code.length()) + 1,
                                   std::vector<u64>(code.length() + 1, 0)};
            continue;
        }
        pool.emplace_back([&parts, w, lo, hi, &run]() { parts[w] = run(lo, hi); });
    }
    for (auto& t : pool) t.join();

    SweepResult merged{static_cast<u64>(code.length()) + 1,
                       std::vector<u64>(code.length() + 1, 0)};
    for (const auto& part : parts) {
        merged.min_weight = std::min(merged.min_weight, part.min_weight);
        for (std::size_t wgt = 0; wgt < part.counts.size(); ++wgt)
            merged.counts[wgt] += part.counts[wgt];
    }
    return merged;
}

}  // namespace detail

inline u64 min_distance(const LinearCode& code, std::optional<u64> budget = {}) {
    if (code.k() == 0)
        throw EmptyCode("minimum distance of the zero-dimensional code");
    auto res = detail::full_sweep(code, budget.value_or(default_budget()));
    check(res.min_weight <= code.length(), "nonzero codeword must exist when k > 0");
    return res.min_weight;
}

inline WeightDistribution weight_distribution(const LinearCode& code,
                                              std::optional<u64> budget = {}) {
    WeightDistribution wd;
    if (code.k() == 0) {
        wd[0] = 1;
        return wd;
    }
    auto res = detail::full_sweep(code, budget.value_or(default_budget()));
    check(res.counts[0] == 0, "nonzero message mapped to the zero codeword");
    wd[0] = 1;  // the zero codeword, not visited by the sweep
    for (std::size_t w = 1; w < res.counts.size(); ++w)
        if (res.counts[w]) wd[w] += res.counts[w];
    return wd;
}

inline LinearCode dual_code(const LinearCode& code) {
    return LinearCode(code.generator().nullspace());
}

inline u64 hull_dimension(const LinearCode& code) {
    if (code.k() == 0) return 0;
    const Matrix& g = code.generator();
    return code.k() - (g * g.transpose()).rank();
}

}  // namespace lcdt
