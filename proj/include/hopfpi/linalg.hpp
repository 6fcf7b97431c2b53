#pragma once

#include "hopfpi/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hopfpi {

using Index = std::int64_t;

struct dimension_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct inconsistent_system : std::domain_error {
    using std::domain_error::domain_error;
};

// Sparse vector over a fixed scalar field. Stored entries are always nonzero.
class Vec {
public:
    Vec(ScalarField f, Index dim) : field_(std::move(f)), dim_(dim) {
        if (dim < 0) throw std::invalid_argument("Vec: negative dimension");
    }

    static Vec basis(const ScalarField& f, Index dim, Index i) {
        Vec v(f, dim);
        v.set(i, Scalar::one(f));
        return v;
    }

    const ScalarField& field() const { return field_; }
    Index dim() const { return dim_; }
    const std::map<Index, Scalar>& entries() const { return e_; }
    Index nnz() const { return static_cast<Index>(e_.size()); }
    bool is_zero() const { return e_.empty(); }

    Scalar at(Index i) const {
        check_index(i);
        auto it = e_.find(i);
        return it == e_.end() ? Scalar::zero(field_) : it->second;
    }

    void set(Index i, Scalar s) {
        check_index(i);
        if (s.is_zero())
            e_.erase(i);
        else
            e_.insert_or_assign(i, std::move(s));
    }

    void add_at(Index i, const Scalar& s) {
        check_index(i);
        if (s.is_zero()) return;
        auto [it, fresh] = e_.try_emplace(i, s);
        if (!fresh) {
            it->second += s;
            if (it->second.is_zero()) e_.erase(it);
        }
    }

    Vec& operator+=(const Vec& o) {
        require_same_shape(o);
        for (const auto& [i, s] : o.e_) add_at(i, s);
        return *this;
    }

    Vec& operator-=(const Vec& o) {
        require_same_shape(o);
        for (const auto& [i, s] : o.e_) add_at(i, -s);
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }

    Vec scaled(const Scalar& s) const {
        Vec r(field_, dim_);
        if (s.is_zero()) return r;
        for (const auto& [i, v] : e_) r.set(i, v * s);
        return r;
    }

    void scale_by(const Scalar& s) { *this = scaled(s); }

    bool operator==(const Vec& o) const { return dim_ == o.dim_ && field_ == o.field_ && e_ == o.e_; }

private:
    void check_index(Index i) const {
        if (i < 0 || i >= dim_) throw dimension_mismatch("Vec: index out of range");
    }
    void require_same_shape(const Vec& o) const {
        if (dim_ != o.dim_ || field_ != o.field_) throw dimension_mismatch("Vec: shape or field mismatch");
    }

    ScalarField field_;
    Index dim_;
    std::map<Index, Scalar> e_;
};

// Sparse matrix, row-major entry order. Columns are the images of basis vectors.
class Mat {
public:
    Mat(ScalarField f, Index rows, Index cols) : field_(std::move(f)), rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    }

    static Mat identity(const ScalarField& f, Index n) {
        Mat m(f, n, n);
        for (Index i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
        return m;
    }

    const ScalarField& field() const { return field_; }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    const std::map<std::pair<Index, Index>, Scalar>& entries() const { return e_; }
    Index nnz() const { return static_cast<Index>(e_.size()); }

    Scalar at(Index i, Index j) const {
        check_index(i, j);
        auto it = e_.find({i, j});
        return it == e_.end() ? Scalar::zero(field_) : it->second;
    }

    void set(Index i, Index j, Scalar s) {
        check_index(i, j);
        if (s.is_zero())
            e_.erase({i, j});
        else
            e_.insert_or_assign({i, j}, std::move(s));
    }

    void add_at(Index i, Index j, const Scalar& s) {
        check_index(i, j);
        if (s.is_zero()) return;
        auto [it, fresh] = e_.try_emplace({i, j}, s);
        if (!fresh) {
            it->second += s;
            if (it->second.is_zero()) e_.erase(it);
        }
    }

    Vec apply(const Vec& v) const {
        if (v.dim() != cols_ || v.field() != field_) throw dimension_mismatch("Mat::apply: shape mismatch");
        Vec out(field_, rows_);
        if (v.nnz() == 0) return out;
        // iterate by column blocks of v
        std::vector<Vec> cols = columns();
        for (const auto& [j, s] : v.entries())
            for (const auto& [i, m] : cols[static_cast<std::size_t>(j)].entries()) out.add_at(i, m * s);
        return out;
    }

    std::vector<Vec> columns() const {
        std::vector<Vec> cols(static_cast<std::size_t>(cols_), Vec(field_, rows_));
        for (const auto& [ij, s] : e_) cols[static_cast<std::size_t>(ij.second)].set(ij.first, s);
        return cols;
    }

    Vec column(Index j) const {
        Vec c(field_, rows_);
        for (Index i = 0; i < rows_; ++i) {
            auto it = e_.find({i, j});
            if (it != e_.end()) c.set(i, it->second);
        }
        return c;
    }

    Vec row(Index i) const {
        Vec r(field_, cols_);
        auto it = e_.lower_bound({i, 0});
        for (; it != e_.end() && it->first.first == i; ++it) r.set(it->first.second, it->second);
        return r;
    }

    void set_column(Index j, const Vec& v) {
        if (v.dim() != rows_ || v.field() != field_) throw dimension_mismatch("set_column: shape mismatch");
        for (Index i = 0; i < rows_; ++i) e_.erase({i, j});
        for (const auto& [i, s] : v.entries()) set(i, j, s);
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_ || field_ != o.field_) throw dimension_mismatch("Mat product: shape mismatch");
        Mat out(field_, rows_, o.cols_);
        for (const auto& [ik, s] : e_) {
            const auto [i, k] = ik;
            auto it = o.e_.lower_bound({k, 0});
            for (; it != o.e_.end() && it->first.first == k; ++it) out.add_at(i, it->first.second, s * it->second);
        }
        return out;
    }

    Mat transpose() const {
        Mat out(field_, cols_, rows_);
        for (const auto& [ij, s] : e_) out.set(ij.second, ij.first, s);
        return out;
    }

    Mat scaled(const Scalar& s) const {
        Mat out(field_, rows_, cols_);
        if (s.is_zero()) return out;
        for (const auto& [ij, v] : e_) out.set(ij.first, ij.second, v * s);
        return out;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_)
            throw dimension_mismatch("Mat sum: shape mismatch");
        Mat out = a;
        for (const auto& [ij, s] : b.e_) out.add_at(ij.first, ij.second, s);
        return out;
    }

    friend Mat operator-(const Mat& a, const Mat& b) { return a + b.scaled(-Scalar::one(a.field_)); }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && e_ == o.e_;
    }

private:
    void check_index(Index i, Index j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw dimension_mismatch("Mat: index out of range");
    }

    ScalarField field_;
    Index rows_, cols_;
    std::map<std::pair<Index, Index>, Scalar> e_;
};

// Kronecker product on the lexicographic (left-factor-major) tensor basis:
// (A (x) B)(v (x) w) = Av (x) Bw.
inline Mat kron(const Mat& a, const Mat& b) {
    if (a.field() != b.field()) throw dimension_mismatch("kron: field mismatch");
    Mat out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (const auto& [ij, s] : a.entries())
        for (const auto& [kl, t] : b.entries())
            out.set(ij.first * b.rows() + kl.first, ij.second * b.cols() + kl.second, s * t);
    return out;
}

inline Vec tensor(const Vec& a, const Vec& b) {
    if (a.field() != b.field()) throw dimension_mismatch("tensor: field mismatch");
    Vec out(a.field(), a.dim() * b.dim());
    for (const auto& [i, s] : a.entries())
        for (const auto& [j, t] : b.entries()) out.set(i * b.dim() + j, s * t);
    return out;
}

// The permutation e_i (x) e_j -> e_j (x) e_i as a matrix on the tensor basis.
inline Mat flip_map(const ScalarField& f, Index d1, Index d2) {
    Mat out(f, d1 * d2, d1 * d2);
    for (Index i = 0; i < d1; ++i)
        for (Index j = 0; j < d2; ++j) out.set(j * d1 + i, i * d2 + j, Scalar::one(f));
    return out;
}

inline Vec flip2(const Vec& v, Index d1, Index d2) {
    if (v.dim() != d1 * d2) throw dimension_mismatch("flip2: dimension mismatch");
    Vec out(v.field(), v.dim());
    for (const auto& [ij, s] : v.entries()) out.set((ij % d2) * d1 + ij / d2, s);
    return out;
}

// Apply a linear map to one leg of a multi-leg tensor vector. The leg's
// dimension is replaced by M.rows(); other legs are untouched.
inline Vec apply_on_leg(const Mat& m, const Vec& v, std::span<const Index> dims, std::size_t leg) {
    Index total = 1;
    for (Index d : dims) total *= d;
    if (total != v.dim()) throw dimension_mismatch("apply_on_leg: dims do not match vector");
    if (leg >= dims.size() || dims[leg] != m.cols()) throw dimension_mismatch("apply_on_leg: leg mismatch");
    Index post = 1;
    for (std::size_t k = leg + 1; k < dims.size(); ++k) post *= dims[k];
    const std::vector<Vec> cols = m.columns();
    Vec out(v.field(), total / dims[leg] * m.rows());
    for (const auto& [idx, s] : v.entries()) {
        const Index pre = idx / (dims[leg] * post);
        const Index mid = (idx / post) % dims[leg];
        const Index suf = idx % post;
        for (const auto& [r, t] : cols[static_cast<std::size_t>(mid)].entries())
            out.add_at((pre * m.rows() + r) * post + suf, t * s);
    }
    return out;
}

// The three insertion conventions for r in P (x) Q into a triple tensor:
// r_{12c} = r (x) 1, r_{a23} = 1 (x) r, r_{1b3} = sum p (x) 1 (x) q.
inline Vec leg_embed_12(const Vec& r, Index dp, Index dq, const Vec& unit_last) {
    if (r.dim() != dp * dq) throw dimension_mismatch("leg_embed_12: shape mismatch");
    return tensor(r, unit_last);
}

inline Vec leg_embed_23(const Vec& r, Index dp, Index dq, const Vec& unit_first) {
    if (r.dim() != dp * dq) throw dimension_mismatch("leg_embed_23: shape mismatch");
    return tensor(unit_first, r);
}

inline Vec leg_embed_13(const Vec& r, Index dp, Index dq, const Vec& unit_middle) {
    if (r.dim() != dp * dq) throw dimension_mismatch("leg_embed_13: shape mismatch");
    const Index dm = unit_middle.dim();
    Vec out(r.field(), dp * dm * dq);
    for (const auto& [ij, s] : r.entries()) {
        const Index i = ij / dq, j = ij % dq;
        for (const auto& [k, t] : unit_middle.entries()) out.set((i * dm + k) * dq + j, s * t);
    }
    return out;
}

namespace detail {

// Fraction-free (Bareiss) row echelon over Q: rows are cleared to integers,
// then eliminated with exact integer division to control coefficient growth.
struct BareissEchelon {
    std::vector<std::vector<mpz_class>> rows; // echelon rows (integral)
    std::vector<Index> pivot_cols;

    static std::vector<mpz_class> clear_denominators(const Vec& v) {
        std::vector<mpz_class> r(static_cast<std::size_t>(v.dim()), mpz_class(0));
        mpz_class l(1);
        for (const auto& [i, s] : v.entries()) {
            (void)i;
            mpz_class den = s.rational_value().get_den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
            l = l / g * den;
        }
        for (const auto& [i, s] : v.entries()) {
            const mpq_class& q = s.rational_value();
            r[static_cast<std::size_t>(i)] = q.get_num() * (l / q.get_den());
        }
        return r;
    }
};

// Forward Bareiss elimination of an integral matrix, in place. Returns pivot
// columns in order. Deterministic: scans columns left to right, picks the
// first row with a nonzero entry.
inline std::vector<Index> bareiss_forward(std::vector<std::vector<mpz_class>>& m) {
    std::vector<Index> pivots;
    if (m.empty()) return pivots;
    const std::size_t ncols = m[0].size();
    mpz_class prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t sel = r;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[r], m[sel]);
        const mpz_class piv = m[r][c];
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            const mpz_class mic = m[i][c];
            for (std::size_t j = c; j < ncols; ++j) {
                mpz_class t = m[i][j] * piv - mic * m[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
        }
        prev = piv;
        pivots.push_back(static_cast<Index>(c));
        ++r;
    }
    return pivots;
}

// Back-substitute a forward-eliminated integral matrix into rational RREF.
inline std::vector<std::vector<mpq_class>> to_rref(const std::vector<std::vector<mpz_class>>& m,
                                                   const std::vector<Index>& pivots) {
    const std::size_t rank = pivots.size();
    const std::size_t ncols = m.empty() ? 0 : m[0].size();
    std::vector<std::vector<mpq_class>> rr(rank, std::vector<mpq_class>(ncols, mpq_class(0)));
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < ncols; ++j) rr[i][j] = mpq_class(m[i][j]);
    for (std::size_t i = rank; i-- > 0;) {
        const std::size_t pc = static_cast<std::size_t>(pivots[i]);
        const mpq_class piv = rr[i][pc];
        for (std::size_t j = 0; j < ncols; ++j)
            if (rr[i][j] != 0) rr[i][j] /= piv;
        for (std::size_t k = 0; k < i; ++k) {
            const mpq_class f = rr[k][pc];
            if (f == 0) continue;
            for (std::size_t j = 0; j < ncols; ++j)
                if (rr[i][j] != 0) rr[k][j] -= f * rr[i][j];
        }
    }
    return rr;
}

// Dense Gauss-Jordan RREF for prime fields and truncated series. Pivots must
// be units; a nonzero pivot-free column over a non-field ring signals
// degeneracy at the working precision.
inline std::vector<Index> gauss_jordan(std::vector<std::vector<Scalar>>& m, const ScalarField& f) {
    std::vector<Index> pivots;
    if (m.empty()) return pivots;
    const std::size_t ncols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t sel = m.size();
        bool saw_nonzero = false;
        for (std::size_t i = r; i < m.size(); ++i) {
            if (m[i][c].is_zero()) continue;
            saw_nonzero = true;
            if (m[i][c].is_unit()) {
                sel = i;
                break;
            }
        }
        if (sel == m.size()) {
            if (saw_nonzero && f.kind() == FieldKind::TruncSeries)
                throw non_invertible("elimination: non-unit pivot (degenerate at working precision)");
            continue;
        }
        std::swap(m[r], m[sel]);
        const Scalar inv = m[r][c].inv();
        for (std::size_t j = 0; j < ncols; ++j)
            if (!m[r][j].is_zero()) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const Scalar factor = m[i][c];
            for (std::size_t j = 0; j < ncols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(static_cast<Index>(c));
        ++r;
    }
    return pivots;
}

} // namespace detail

// Reduced row echelon form of a list of row vectors. Field-generic front end:
// rationals go through fraction-free Bareiss, the rest through Gauss-Jordan.
struct Rref {
    std::vector<Vec> rows;
    std::vector<Index> pivots;
    Index cols = 0;

    Index rank() const { return static_cast<Index>(rows.size()); }

    std::vector<Index> free_columns() const {
        std::vector<Index> out;
        std::size_t k = 0;
        for (Index c = 0; c < cols; ++c) {
            if (k < pivots.size() && pivots[k] == c)
                ++k;
            else
                out.push_back(c);
        }
        return out;
    }

    // v reduced modulo the row space.
    Vec reduce(Vec v) const {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Scalar c = v.at(pivots[k]);
            if (!c.is_zero()) v -= rows[k].scaled(c);
        }
        return v;
    }

    bool contains(const Vec& v) const { return reduce(v).is_zero(); }
};

inline Rref rref(const ScalarField& f, Index cols, const std::vector<Vec>& input_rows) {
    Rref out;
    out.cols = cols;
    if (input_rows.empty()) return out;
    if (f.kind() == FieldKind::Rationals) {
        std::vector<std::vector<mpz_class>> m;
        m.reserve(input_rows.size());
        for (const auto& v : input_rows) {
            if (v.dim() != cols) throw dimension_mismatch("rref: row dimension mismatch");
            m.push_back(detail::BareissEchelon::clear_denominators(v));
        }
        out.pivots = detail::bareiss_forward(m);
        auto rr = detail::to_rref(m, out.pivots);
        for (const auto& row : rr) {
            Vec v(f, cols);
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) v.set(static_cast<Index>(j), Scalar::rational(row[j]));
            out.rows.push_back(std::move(v));
        }
    } else {
        std::vector<std::vector<Scalar>> m;
        m.reserve(input_rows.size());
        for (const auto& v : input_rows) {
            if (v.dim() != cols) throw dimension_mismatch("rref: row dimension mismatch");
            std::vector<Scalar> row(static_cast<std::size_t>(cols), Scalar::zero(f));
            for (const auto& [i, s] : v.entries()) row[static_cast<std::size_t>(i)] = s;
            m.push_back(std::move(row));
        }
        out.pivots = detail::gauss_jordan(m, f);
        for (std::size_t i = 0; i < out.pivots.size(); ++i) {
            Vec v(f, cols);
            for (std::size_t j = 0; j < m[i].size(); ++j)
                if (!m[i][j].is_zero()) v.set(static_cast<Index>(j), m[i][j]);
            out.rows.push_back(std::move(v));
        }
    }
    return out;
}

inline Rref rref_of_rows(const Mat& a) {
    std::vector<Vec> rows;
    rows.reserve(static_cast<std::size_t>(a.rows()));
    for (Index i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    return rref(a.field(), a.cols(), rows);
}

// Exact nullspace basis: one vector per free column, in column order.
inline std::vector<Vec> kernel(const Mat& a) {
    const Rref r = rref_of_rows(a);
    std::vector<Vec> basis;
    for (Index fc : r.free_columns()) {
        Vec v(a.field(), a.cols());
        v.set(fc, Scalar::one(a.field()));
        for (std::size_t k = 0; k < r.rows.size(); ++k) {
            const Scalar c = r.rows[k].at(fc);
            if (!c.is_zero()) v.set(r.pivots[k], -c);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Index rank(const Mat& a) { return rref_of_rows(a).rank(); }

// Exact solve of A x = b (particular solution with free variables zero).
// Throws inconsistent_system when no solution exists; over truncated series a
// non-unit pivot throws non_invertible.
inline Vec solve(const Mat& a, const Vec& b) {
    if (b.dim() != a.rows() || b.field() != a.field()) throw dimension_mismatch("solve: shape mismatch");
    std::vector<Vec> rows;
    rows.reserve(static_cast<std::size_t>(a.rows()));
    for (Index i = 0; i < a.rows(); ++i) {
        Vec row(a.field(), a.cols() + 1);
        auto ar = a.row(i);
        for (const auto& [j, s] : ar.entries()) row.set(j, s);
        row.set(a.cols(), b.at(i));
        rows.push_back(std::move(row));
    }
    const Rref r = rref(a.field(), a.cols() + 1, rows);
    Vec x(a.field(), a.cols());
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        if (r.pivots[k] == a.cols()) throw inconsistent_system("solve: inconsistent system");
        x.set(r.pivots[k], r.rows[k].at(a.cols()));
    }
    return x;
}

inline std::optional<Mat> try_inverse(const Mat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const Index n = a.rows();
    std::vector<Vec> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        Vec row(a.field(), 2 * n);
        auto ar = a.row(i);
        for (const auto& [j, s] : ar.entries()) row.set(j, s);
        row.set(n + i, Scalar::one(a.field()));
        rows.push_back(std::move(row));
    }
    Rref r;
    try {
        r = rref(a.field(), 2 * n, rows);
    } catch (const non_invertible&) {
        return std::nullopt;
    }
    if (r.rank() < n) return std::nullopt;
    for (Index i = 0; i < n; ++i)
        if (r.pivots[static_cast<std::size_t>(i)] != i) return std::nullopt;
    Mat inv(a.field(), n, n);
    for (Index i = 0; i < n; ++i) {
        const Vec& row = r.rows[static_cast<std::size_t>(i)];
        for (const auto& [j, s] : row.entries())
            if (j >= n) inv.set(i, j - n, s);
    }
    return inv;
}

inline Mat inverse(const Mat& a) {
    auto inv = try_inverse(a);
    if (!inv) throw non_invertible("inverse: singular matrix");
    return *inv;
}

} // namespace hopfpi
