#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hopfpi {

// Thrown when operands of a scalar operation live in different fields
// (including truncated-series operands of different precision).
struct field_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown on division by a non-unit (zero, or a series with zero constant term).
struct non_invertible : std::domain_error {
    using std::domain_error::domain_error;
};

enum class FieldKind { Rationals, PrimeField, TruncSeries };

namespace detail {

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace detail

// Descriptor of the coefficient ring: Q, F_p (p an odd prime), or Q[[h]]/(h^N).
class ScalarField {
public:
    static ScalarField rationals() { return ScalarField(FieldKind::Rationals, 0, 0); }

    static ScalarField prime_field(long p) {
        if (!detail::is_prime(p)) throw std::invalid_argument("prime_field: modulus " + std::to_string(p) + " is not prime");
        if (p == 2) throw std::invalid_argument("prime_field: characteristic 2 is not supported");
        return ScalarField(FieldKind::PrimeField, p, 0);
    }

    static ScalarField trunc_series(int precision) {
        if (precision < 1) throw std::invalid_argument("trunc_series: precision must be >= 1");
        return ScalarField(FieldKind::TruncSeries, 0, precision);
    }

    FieldKind kind() const { return kind_; }
    long modulus() const { return modulus_; }
    int precision() const { return precision_; }

    bool operator==(const ScalarField&) const = default;

    std::string describe() const {
        switch (kind_) {
            case FieldKind::Rationals: return "Q";
            case FieldKind::PrimeField: return "F" + std::to_string(modulus_);
            case FieldKind::TruncSeries: return "Q[[h]]/h^" + std::to_string(precision_);
        }
        return "?";
    }

private:
    ScalarField(FieldKind k, long p, int n) : kind_(k), modulus_(p), precision_(n) {}

    FieldKind kind_;
    long modulus_;
    int precision_;
};

namespace detail {

struct FpVal {
    long p;
    long v; // in [0, p)
    bool operator==(const FpVal&) const = default;
};

struct SeriesVal {
    std::vector<mpq_class> c; // coefficient of h^0 .. h^{N-1}; size() == precision
    bool operator==(const SeriesVal& o) const { return c == o.c; }
};

inline long fp_norm(long p, long v) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

inline long fp_inv(long p, long a) {
    // extended Euclid; a in [0, p)
    if (a == 0) throw non_invertible("inverse of 0 in F" + std::to_string(p));
    long t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return fp_norm(p, t);
}

} // namespace detail

// Immutable exact scalar: a rational, a prime-field element, or a truncated
// power series over Q. All arithmetic is exact; mixed-field operands throw.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar zero(const ScalarField& f) { return from_int(f, 0); }
    static Scalar one(const ScalarField& f) { return from_int(f, 1); }

    static Scalar from_int(const ScalarField& f, long n) {
        switch (f.kind()) {
            case FieldKind::Rationals: return Scalar(mpq_class(n));
            case FieldKind::PrimeField: return Scalar(detail::FpVal{f.modulus(), detail::fp_norm(f.modulus(), n)});
            case FieldKind::TruncSeries: {
                detail::SeriesVal s;
                s.c.assign(static_cast<std::size_t>(f.precision()), mpq_class(0));
                s.c[0] = n;
                return Scalar(std::move(s));
            }
        }
        throw std::logic_error("from_int: bad field kind");
    }

    static Scalar rational(mpq_class q) {
        q.canonicalize();
        return Scalar(std::move(q));
    }

    static Scalar fp(long p, long v) { return Scalar(detail::FpVal{p, detail::fp_norm(p, v)}); }

    static Scalar series(std::vector<mpq_class> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("series: empty coefficient list");
        for (auto& c : coeffs) c.canonicalize();
        return Scalar(detail::SeriesVal{std::move(coeffs)});
    }

    // `coeffs` holds the low coefficients of a polynomial in h; missing high
    // coefficients are zero. Errors if the polynomial does not fit mod h^N.
    static Scalar series_from_poly(int precision, const std::vector<mpq_class>& coeffs) {
        for (std::size_t k = static_cast<std::size_t>(precision); k < coeffs.size(); ++k)
            if (coeffs[k] != 0)
                throw std::invalid_argument("series_from_poly: degree exceeds precision");
        std::vector<mpq_class> c(static_cast<std::size_t>(precision), mpq_class(0));
        for (std::size_t k = 0; k < coeffs.size() && k < c.size(); ++k) c[k] = coeffs[k];
        return series(std::move(c));
    }

    ScalarField field() const {
        if (std::holds_alternative<mpq_class>(v_)) return ScalarField::rationals();
        if (const auto* f = std::get_if<detail::FpVal>(&v_)) return ScalarField::prime_field(f->p);
        return ScalarField::trunc_series(static_cast<int>(std::get<detail::SeriesVal>(v_).c.size()));
    }

    bool is_zero() const {
        if (const auto* q = std::get_if<mpq_class>(&v_)) return *q == 0;
        if (const auto* f = std::get_if<detail::FpVal>(&v_)) return f->v == 0;
        for (const auto& c : std::get<detail::SeriesVal>(v_).c)
            if (c != 0) return false;
        return true;
    }

    bool is_one() const { return *this == one(field()); }

    // Units: any nonzero element of a field; a series iff its h^0 coefficient is nonzero.
    bool is_unit() const {
        if (const auto* s = std::get_if<detail::SeriesVal>(&v_)) return s->c[0] != 0;
        return !is_zero();
    }

    bool operator==(const Scalar& o) const { return v_ == o.v_; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return a.zip(b, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x + y); },
                     [](long p, long x, long y) { return detail::fp_norm(p, x + y); });
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return a.zip(b, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x - y); },
                     [](long p, long x, long y) { return detail::fp_norm(p, x - y); });
    }

    friend Scalar operator-(const Scalar& a) { return Scalar::zero(a.field()) - a; }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.v_.index() != b.v_.index()) throw field_mismatch("scalar product across different fields");
        if (const auto* x = std::get_if<mpq_class>(&a.v_)) return Scalar(mpq_class(*x * std::get<mpq_class>(b.v_)));
        if (const auto* x = std::get_if<detail::FpVal>(&a.v_)) {
            const auto& y = std::get<detail::FpVal>(b.v_);
            if (x->p != y.p) throw field_mismatch("scalar product across different prime fields");
            return Scalar(detail::FpVal{x->p, static_cast<long>((static_cast<std::int64_t>(x->v) * y.v) % x->p)});
        }
        const auto& x = std::get<detail::SeriesVal>(a.v_);
        const auto& y = std::get<detail::SeriesVal>(b.v_);
        if (x.c.size() != y.c.size()) throw field_mismatch("series product across different precisions");
        const std::size_t n = x.c.size();
        detail::SeriesVal r;
        r.c.assign(n, mpq_class(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (x.c[i] == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j)
                if (y.c[j] != 0) r.c[i + j] += x.c[i] * y.c[j];
        }
        return Scalar(std::move(r));
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inv() const {
        if (const auto* q = std::get_if<mpq_class>(&v_)) {
            if (*q == 0) throw non_invertible("inverse of 0 in Q");
            return Scalar(mpq_class(1 / *q));
        }
        if (const auto* f = std::get_if<detail::FpVal>(&v_)) return Scalar(detail::FpVal{f->p, detail::fp_inv(f->p, f->v)});
        const auto& s = std::get<detail::SeriesVal>(v_);
        if (s.c[0] == 0) throw non_invertible("inverse of a series with zero constant term");
        // b_0 = 1/a_0, b_k = -(sum_{j=1..k} a_j b_{k-j}) / a_0
        const std::size_t n = s.c.size();
        detail::SeriesVal r;
        r.c.assign(n, mpq_class(0));
        r.c[0] = 1 / s.c[0];
        for (std::size_t k = 1; k < n; ++k) {
            mpq_class acc(0);
            for (std::size_t j = 1; j <= k; ++j)
                if (s.c[j] != 0) acc += s.c[j] * r.c[k - j];
            r.c[k] = -acc / s.c[0];
        }
        return Scalar(std::move(r));
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    // --- series accessors ---

    int precision() const { return static_cast<int>(series().c.size()); }

    // Index of the lowest nonzero coefficient; N for the zero series.
    int valuation() const {
        const auto& s = series();
        for (std::size_t k = 0; k < s.c.size(); ++k)
            if (s.c[k] != 0) return static_cast<int>(k);
        return static_cast<int>(s.c.size());
    }

    const std::vector<mpq_class>& series_coeffs() const { return series().c; }

    // Explicit precision reduction; the only sanctioned way to mix precisions.
    Scalar truncated(int new_precision) const {
        const auto& s = series();
        if (new_precision < 1 || new_precision > static_cast<int>(s.c.size()))
            throw std::invalid_argument("truncated: precision out of range");
        return Scalar(detail::SeriesVal{std::vector<mpq_class>(s.c.begin(), s.c.begin() + new_precision)});
    }

    // Divide by h^k, reducing precision by k. Requires valuation >= k.
    Scalar shifted_down(int k) const {
        const auto& s = series();
        if (valuation() < k) throw std::domain_error("shifted_down: valuation too small");
        if (k >= static_cast<int>(s.c.size())) throw std::domain_error("shifted_down: no precision left");
        return Scalar(detail::SeriesVal{std::vector<mpq_class>(s.c.begin() + k, s.c.end())});
    }

    const mpq_class& rational_value() const {
        if (const auto* q = std::get_if<mpq_class>(&v_)) return *q;
        throw field_mismatch("not a rational scalar");
    }

    long fp_value() const {
        if (const auto* f = std::get_if<detail::FpVal>(&v_)) return f->v;
        throw field_mismatch("not a prime-field scalar");
    }

    // Canonical printable form (used in labels, reports and serialization keys).
    std::string str() const {
        if (const auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
        if (const auto* f = std::get_if<detail::FpVal>(&v_)) return std::to_string(f->v);
        const auto& s = std::get<detail::SeriesVal>(v_);
        std::string out = "[";
        for (std::size_t k = 0; k < s.c.size(); ++k) {
            if (k) out += ",";
            out += s.c[k].get_str();
        }
        out += "]";
        return out;
    }

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(detail::FpVal f) : v_(f) {}
    explicit Scalar(detail::SeriesVal s) : v_(std::move(s)) {}

    const detail::SeriesVal& series() const {
        if (const auto* s = std::get_if<detail::SeriesVal>(&v_)) return *s;
        throw field_mismatch("not a truncated-series scalar");
    }

    template <typename FQ, typename FP>
    Scalar zip(const Scalar& o, FQ fq, FP fp_op) const {
        if (v_.index() != o.v_.index()) throw field_mismatch("scalar operation across different fields");
        if (const auto* x = std::get_if<mpq_class>(&v_)) return Scalar(fq(*x, std::get<mpq_class>(o.v_)));
        if (const auto* x = std::get_if<detail::FpVal>(&v_)) {
            const auto& y = std::get<detail::FpVal>(o.v_);
            if (x->p != y.p) throw field_mismatch("scalar operation across different prime fields");
            return Scalar(detail::FpVal{x->p, fp_op(x->p, x->v, y.v)});
        }
        const auto& x = std::get<detail::SeriesVal>(v_);
        const auto& y = std::get<detail::SeriesVal>(o.v_);
        if (x.c.size() != y.c.size()) throw field_mismatch("series operation across different precisions");
        detail::SeriesVal r;
        r.c.resize(x.c.size());
        for (std::size_t k = 0; k < x.c.size(); ++k) r.c[k] = fq(x.c[k], y.c[k]);
        return Scalar(std::move(r));
    }

    std::variant<mpq_class, detail::FpVal, detail::SeriesVal> v_;
};

// exp of a series with zero constant term: sum_{k<N} x^k / k!.
inline Scalar series_exp(const Scalar& x) {
    const int n = x.precision();
    if (x.valuation() < 1) throw std::domain_error("series_exp: nonzero constant term");
    const ScalarField f = x.field();
    Scalar acc = Scalar::one(f);
    Scalar term = Scalar::one(f);
    mpq_class factorial(1);
    for (int k = 1; k < n; ++k) {
        term *= x;
        if (term.is_zero()) break;
        factorial *= k;
        acc += term * Scalar::series_from_poly(n, {mpq_class(1) / factorial});
    }
    return acc;
}

// Exact division of series: q with q*den = num, reported at the reduced
// precision N - valuation(den). The quotient's higher coefficients are
// genuinely undetermined, so they are not invented.
inline Scalar series_div_exact(const Scalar& num, const Scalar& den) {
    if (num.field() != den.field()) throw field_mismatch("series_div_exact: different precisions");
    if (den.is_zero()) throw non_invertible("series_div_exact: division by zero series");
    const int v = den.valuation();
    if (num.valuation() < v)
        throw std::domain_error("series_div_exact: numerator valuation " + std::to_string(num.valuation()) +
                                " < denominator valuation " + std::to_string(v));
    if (v >= num.precision()) throw std::domain_error("series_div_exact: no precision left after shifting");
    const Scalar n2 = num.shifted_down(v);
    const Scalar d2 = den.shifted_down(v);
    return n2 * d2.inv();
}

} // namespace hopfpi
