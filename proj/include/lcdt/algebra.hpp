#pragma once

// Dense matrices and univariate polynomials over a FiniteField.
//
// Everything here is exact: Gaussian elimination for rank / det / inverse /
// nullspace, and characteristic polynomials by evaluation-interpolation
// (division-free methods misbehave in small characteristic, so we evaluate
// det(m - lambda*I) at deg+1 points of a large enough extension and
// interpolate).

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "lcdt/errors.hpp"
#include "lcdt/galois.hpp"

namespace lcdt {

class Matrix {
public:
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : f_(std::move(field)), rows_(rows), cols_(cols),
          e_(rows * cols, f_->zero()) {}

    Matrix(FieldPtr field, std::size_t rows, std::size_t cols,
           std::vector<FieldElement> entries)
        : f_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
        check(e_.size() == rows_ * cols_, "matrix entry count mismatch");
        for (const auto& x : e_)
            if (!x.field()->same_structure(*f_))
                throw MixedFields("matrix entry from a different field");
    }

    static Matrix identity(const FieldPtr& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
        return m;
    }

    const FieldPtr& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const FieldElement& at(std::size_t i, std::size_t j) const {
        check(i < rows_ && j < cols_, "matrix index out of range");
        return e_[i * cols_ + j];
    }
    FieldElement& at(std::size_t i, std::size_t j) {
        check(i < rows_ && j < cols_, "matrix index out of range");
        return e_[i * cols_ + j];
    }
    const std::vector<FieldElement>& entries() const { return e_; }

    std::vector<FieldElement> row(std::size_t i) const {
        check(i < rows_, "row index out of range");
        return std::vector<FieldElement>(e_.begin() + i * cols_,
                                         e_.begin() + (i + 1) * cols_);
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_field(o);
        check(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in +");
        Matrix r(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_field(o);
        check(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in -");
        Matrix r(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        require_same_field(o);
        check(cols_ == o.rows_, "matrix shape mismatch in *");
        Matrix r(f_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FieldElement& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + a * o.at(k, j);
            }
        return r;
    }

    Matrix scaled(const FieldElement& c) const {
        Matrix r(f_, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // Horizontal concatenation [this | o].
    Matrix augment(const Matrix& o) const {
        require_same_field(o);
        check(rows_ == o.rows_, "row count mismatch in augment");
        Matrix r(f_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    std::size_t rank() const {
        Matrix m(*this);
        return m.echelonize(false);
    }

    std::size_t nullspace_dim() const { return cols_ - rank(); }

    FieldElement det() const {
        if (rows_ != cols_) throw NotSquare("determinant of a non-square matrix");
        Matrix m(*this);
        bool flip = false;
        std::size_t r = m.echelonize(false, &flip);
        if (r < rows_) return f_->zero();
        FieldElement d = f_->one();
        for (std::size_t i = 0; i < rows_; ++i) d = d * m.at(i, i);
        return flip ? -d : d;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw NotSquare("inverse of a non-square matrix");
        Matrix aug = augment(identity(f_, rows_));
        if (aug.echelonize(true, nullptr, cols_) < rows_)
            throw SingularMatrix("inverse of a rank-deficient matrix");
        Matrix r(f_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
        return r;
    }

    // Reduced row echelon form; trailing zero rows are kept so the shape is
    // unchanged.
    Matrix rref() const {
        Matrix m(*this);
        m.echelonize(true);
        return m;
    }

    // Rows span { v : this * v^T = 0 }. The basis is the standard one read off
    // the RREF (one row per free column), so it is deterministic.
    Matrix nullspace() const {
        Matrix m = rref();
        std::vector<std::size_t> pivot_col;
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!m.at(i, j).is_zero()) {
                    pivot_col.push_back(j);
                    is_pivot[j] = true;
                    break;
                }
            }
        }
        std::vector<std::size_t> free_col;
        for (std::size_t j = 0; j < cols_; ++j)
            if (!is_pivot[j]) free_col.push_back(j);

        Matrix basis(f_, free_col.size(), cols_);
        for (std::size_t b = 0; b < free_col.size(); ++b) {
            std::size_t fc = free_col[b];
            basis.at(b, fc) = f_->one();
            for (std::size_t i = 0; i < pivot_col.size(); ++i)
                basis.at(b, pivot_col[i]) = -m.at(i, fc);
        }
        return basis;
    }

private:
    void require_same_field(const Matrix& o) const {
        if (!f_->same_structure(*o.f_))
            throw MixedFields("matrices over different fields");
    }

    // In-place elimination. Returns the rank; records row swaps in *flip when
    // given (for determinant sign); full reduction when reduce is set. Pivots
    // are only sought in the first col_limit columns (augmented solves).
    std::size_t echelonize(bool reduce, bool* flip = nullptr,
                           std::size_t col_limit = SIZE_MAX) {
        std::size_t r = 0;
        for (std::size_t c = 0; c < std::min(cols_, col_limit) && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && at(piv, c).is_zero()) ++piv;
            if (piv == rows_) continue;
            if (piv != r) {
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap(at(piv, j), at(r, j));
                if (flip) *flip = !*flip;
            }
            if (reduce) {
                FieldElement inv = at(r, c).inverse();
                for (std::size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
            }
            for (std::size_t i = reduce ? 0 : r + 1; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                FieldElement factor = at(i, c) / at(r, c);
                for (std::size_t j = c; j < cols_; ++j)
                    at(i, j) = at(i, j) - factor * at(r, j);
            }
            ++r;
        }
        return r;
    }

    FieldPtr f_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> e_;
};

// Univariate polynomial, little-endian coefficients, no trailing zeros.
// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    explicit Poly(FieldPtr field) : f_(std::move(field)) {}

    Poly(FieldPtr field, std::vector<FieldElement> coeffs)
        : f_(std::move(field)), c_(std::move(coeffs)) {
        for (const auto& x : c_)
            if (!x.field()->same_structure(*f_))
                throw MixedFields("polynomial coefficient from a different field");
        trim();
    }

    static Poly constant(const FieldElement& c) {
        return Poly(c.field(), std::vector<FieldElement>{c});
    }

    static Poly x_power(const FieldPtr& field, std::size_t k) {
        std::vector<FieldElement> c(k + 1, field->zero());
        c[k] = field->one();
        return Poly(field, std::move(c));
    }

    static Poly from_roots(const FieldPtr& field,
                           const std::vector<std::pair<FieldElement, unsigned>>& roots) {
        Poly p = constant(field->one());
        for (const auto& [root, mult] : roots) {
            Poly lin(field, {-root, field->one()});
            for (unsigned i = 0; i < mult; ++i) p = p * lin;
        }
        return p;
    }

    const FieldPtr& field() const { return f_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    FieldElement coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : f_->zero();
    }

    bool operator==(const Poly& o) const {
        return f_->same_structure(*o.f_) && c_ == o.c_;
    }

    Poly operator+(const Poly& o) const {
        require_same_field(o);
        std::vector<FieldElement> r;
        std::size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
        return Poly(f_, std::move(r));
    }

    Poly operator-(const Poly& o) const {
        require_same_field(o);
        std::vector<FieldElement> r;
        std::size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) - o.coeff(i));
        return Poly(f_, std::move(r));
    }

    Poly operator*(const Poly& o) const {
        require_same_field(o);
        if (is_zero() || o.is_zero()) return Poly(f_);
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, f_->zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return Poly(f_, std::move(r));
    }

    Poly pow(unsigned k) const {
        Poly acc = constant(f_->one());
        Poly base = *this;
        while (k) {
            if (k & 1u) acc = acc * base;
            base = base * base;
            k >>= 1u;
        }
        return acc;
    }

    FieldElement eval(const FieldElement& x) const {
        if (!x.field()->same_structure(*f_))
            throw MixedFields("evaluation point from a different field");
        FieldElement acc = f_->zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Coefficient-wise image under an embedding whose subfield is this
    // polynomial's field.
    Poly map(const Embedding& emb) const {
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(emb.apply(x));
        return Poly(emb.sup(), std::move(r));
    }

    // Exact quotient and remainder (rhs nonzero).
    std::pair<Poly, Poly> divmod(const Poly& o) const {
        require_same_field(o);
        if (o.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (degree() < o.degree()) return {Poly(f_), *this};
        std::vector<FieldElement> rem = c_;
        std::size_t dq = c_.size() - o.c_.size();
        std::vector<FieldElement> quo(dq + 1, f_->zero());
        FieldElement lead_inv = o.c_.back().inverse();
        for (std::size_t k = dq + 1; k-- > 0;) {
            FieldElement q = rem[k + o.c_.size() - 1] * lead_inv;
            if (q.is_zero()) continue;
            quo[k] = q;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                rem[k + j] = rem[k + j] - q * o.c_[j];
        }
        return {Poly(f_, std::move(quo)), Poly(f_, std::move(rem))};
    }

    // All roots in the embedding's superfield, with multiplicities from
    // repeated synthetic division. Exhaustive scan; the superfield must be
    // small enough to enumerate. Result sorted by element value.
    std::vector<std::pair<FieldElement, unsigned>> roots_in(const Embedding& emb) const {
        check(!is_zero(), "root scan of the zero polynomial");
        const FieldPtr& ext = emb.sup();
        check(ext->order_fits_u64() && ext->order_u64() <= (u64(1) << 22),
              "root scan field too large to enumerate");
        Poly p = map(emb);
        std::vector<std::pair<FieldElement, unsigned>> out;
        for (u64 v = 0; v < ext->order_u64() && p.degree() > 0; ++v) {
            FieldElement cand = ext->from_value(bigint(v));
            if (!p.eval(cand).is_zero()) continue;
            unsigned mult = 0;
            Poly lin(ext, {-cand, ext->one()});
            while (true) {
                auto [q, r] = p.divmod(lin);
                if (!r.is_zero()) break;
                p = q;
                ++mult;
            }
            check(mult > 0, "eval says root but division disagrees");
            out.emplace_back(cand, mult);
        }
        return out;
    }

    // Lagrange interpolation through distinct points.
    static Poly interpolate(const FieldPtr& field,
                            const std::vector<FieldElement>& xs,
                            const std::vector<FieldElement>& ys) {
        check(xs.size() == ys.size() && !xs.empty(), "interpolation arity mismatch");
        Poly acc(field);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Poly num = constant(field->one());
            FieldElement den = field->one();
            for (std::size_t j = 0; j < xs.size(); ++j) {
                if (j == i) continue;
                num = num * Poly(field, {-xs[j], field->one()});
                den = den * (xs[i] - xs[j]);
            }
            acc = acc + num.scaled(ys[i] / den);
        }
        return acc;
    }

    Poly scaled(const FieldElement& c) const {
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(x * c);
        return Poly(f_, std::move(r));
    }

private:
    void require_same_field(const Poly& o) const {
        if (!f_->same_structure(*o.f_))
            throw MixedFields("polynomials over different fields");
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldPtr f_;
    std::vector<FieldElement> c_;
};

// The characteristic polynomial with the sign convention
// char_poly(m)(lambda) = det(m - lambda * I); leading coefficient (-1)^n.
// Computed by evaluating the determinant at n+1 distinct points and
// interpolating, moving to an extension when the base field is too small.
inline Poly char_poly(const Matrix& m) {
    if (m.rows() != m.cols())
        throw NotSquare("characteristic polynomial of a non-square matrix");
    const FieldPtr& f = m.field();
    std::size_t n = m.rows();
    if (n == 0) return Poly::constant(f->one());

    std::size_t e = 1;
    while (ipow(bigint(f->characteristic()), f->degree() * e) < bigint(n) + 1) ++e;

    if (e == 1) {
        std::vector<FieldElement> xs, ys;
        for (std::size_t i = 0; i <= n; ++i) {
            FieldElement lam = f->from_value(bigint(i));
            Matrix shifted = m - Matrix::identity(f, n).scaled(lam);
            xs.push_back(lam);
            ys.push_back(shifted.det());
        }
        return Poly::interpolate(f, xs, ys);
    }

    FieldPtr ext = FiniteField::create(f->characteristic(), f->degree() * e);
    Embedding emb = Embedding::build(f, ext);
    Matrix lifted(ext, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lifted.at(i, j) = emb.apply(m.at(i, j));

    std::vector<FieldElement> xs, ys;
    for (std::size_t i = 0; i <= n; ++i) {
        FieldElement lam = ext->from_value(bigint(i));
        Matrix shifted = lifted - Matrix::identity(ext, n).scaled(lam);
        xs.push_back(lam);
        ys.push_back(shifted.det());
    }
    Poly over_ext = Poly::interpolate(ext, xs, ys);

    std::vector<FieldElement> back;
    back.reserve(over_ext.coeffs().size());
    for (const auto& c : over_ext.coeffs()) {
        auto pre = emb.preimage(c);
        check(pre.has_value(), "characteristic polynomial coefficient outside base field");
        back.push_back(*pre);
    }
    return Poly(f, std::move(back));
}

}  // namespace lcdt
