#pragma once

#include "hopfpi/linalg.hpp"
#include "hopfpi/report.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace hopfpi {

// Colors of the rank-1 graded quantum group live in the additive group of
// Q[[h]]; they enter as exact rational-coefficient polynomials in h, so they
// lift losslessly to any working precision.
using HPoly = std::vector<mpq_class>;

inline std::string hpoly_str(const HPoly& p) {
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        std::string term;
        const mpq_class c = p[k];
        if (k == 0) {
            term = c.get_str();
        } else {
            if (c == 1)
                term = "";
            else if (c == -1)
                term = "-";
            else
                term = c.get_str();
            term += "h";
            if (k > 1) term += "^" + std::to_string(k);
        }
        if (!out.empty() && term.rfind('-', 0) != 0) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

// Rational-coefficient polynomial in h: "0", "1+2h", "-3/2h^2+h".
inline HPoly parse_hpoly(const std::string& text) {
    HPoly out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    auto set_coeff = [&](std::size_t deg, const mpq_class& c) {
        if (out.size() <= deg) out.resize(deg + 1, mpq_class(0));
        out[deg] += c;
    };
    skip_ws();
    if (i >= text.size()) throw std::invalid_argument("parse_hpoly: empty color");
    while (i < text.size()) {
        skip_ws();
        mpq_class sign(1);
        if (text[i] == '+') {
            ++i;
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
        }
        skip_ws();
        std::string digits;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) digits += text[i++];
        mpq_class coeff(1);
        if (!digits.empty()) {
            coeff = mpq_class(digits);
            coeff.canonicalize();
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        std::size_t deg = 0;
        if (i < text.size() && text[i] == 'h') {
            ++i;
            deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::string expo;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) expo += text[i++];
                if (expo.empty()) throw std::invalid_argument("parse_hpoly: missing exponent");
                deg = static_cast<std::size_t>(std::stol(expo));
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("parse_hpoly: expected coefficient or h at '" + text.substr(i) + "'");
        }
        set_coeff(deg, sign * coeff);
        skip_ws();
    }
    if (out.empty()) out.push_back(mpq_class(0));
    return out;
}

namespace sl2 {

inline Scalar h_power(int precision, int k) {
    std::vector<mpq_class> c(static_cast<std::size_t>(precision), mpq_class(0));
    if (k < precision) c[static_cast<std::size_t>(k)] = 1;
    return Scalar::series(std::move(c));
}

inline Scalar exp_h_multiple(int precision, const mpq_class& m) {
    std::vector<mpq_class> c(static_cast<std::size_t>(precision), mpq_class(0));
    if (precision > 1) c[1] = m;
    return series_exp(Scalar::series(std::move(c)));
}

// q-integer [k]_q = q^{k-1} + q^{k-3} + ... + q^{1-k} with q = e^h; the
// geometric-sum form is exact at full precision (no division). Equality with
// (q^k - q^{-k})/(q - q^{-1}) is tested against series_div_exact.
inline Scalar qint(int precision, int k) {
    Scalar acc = Scalar::zero(ScalarField::trunc_series(precision));
    for (int j = 0; j < k; ++j) acc += exp_h_multiple(precision, k - 1 - 2 * j);
    return acc;
}

inline Scalar qfact(int precision, int k) {
    Scalar acc = Scalar::one(ScalarField::trunc_series(precision));
    for (int j = 1; j <= k; ++j) acc *= qint(precision, j);
    return acc;
}

inline Mat truncated(const Mat& m, int precision) {
    Mat out(ScalarField::trunc_series(precision), m.rows(), m.cols());
    for (const auto& [ij, s] : m.entries()) out.set(ij.first, ij.second, s.truncated(precision));
    return out;
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

// exp(c * D) of a diagonal matrix, entrywise; c*D_jj must have valuation >= 1.
inline Mat exp_diag(const Mat& d, const Scalar& c) {
    Mat out(d.field(), d.rows(), d.cols());
    for (Index j = 0; j < d.rows(); ++j) out.set(j, j, series_exp(c * d.at(j, j)));
    return out;
}

} // namespace sl2

// The n-dimensional representation of the rank-1 graded quantum group at
// color alpha, with its defining matrices over Q[[h]]/h^N:
//   H e_i = (n - 2i + 1 - alpha/2) e_i
//   E e_i = e^{h alpha/2} [n-i+1]_q e_{i-1}   (zero on e_1)
//   F e_i = [i]_q e_{i+1}                      (zero on e_n)
struct SL2RepData {
    int n;
    Scalar alpha; // color, at working precision
    int precision;
    Mat h;
    Mat e;
    Mat f;
};

namespace sl2 {

inline SL2RepData rho_unchecked(int n, const HPoly& alpha, int precision) {
    const ScalarField field = ScalarField::trunc_series(precision);
    const Scalar a = Scalar::series_from_poly(precision, alpha);
    const Scalar two = Scalar::from_int(field, 2);
    Mat mh(field, n, n), me(field, n, n), mf(field, n, n);
    for (int j = 0; j < n; ++j) mh.set(j, j, Scalar::from_int(field, n - 2 * j - 1) - a / two);
    const Scalar h_half_alpha = h_power(precision, 1) * a / two;
    const Scalar ehalf = series_exp(h_half_alpha);
    for (int j = 1; j < n; ++j) me.set(j - 1, j, ehalf * qint(precision, n - j));
    for (int j = 0; j + 1 < n; ++j) mf.set(j + 1, j, qint(precision, j + 1));
    return SL2RepData{n, a, precision, std::move(mh), std::move(me), std::move(mf)};
}

} // namespace sl2

// The four defining relations and nilpotency, exactly mod h^N. The relation
// [E,F] = (e^{h alpha} e^{hH} - e^{-hH}) / (e^h - e^{-h}) divides by a
// valuation-1 series, so it is computed one order higher and compared at N.
inline VerificationReport check_uh_relations(int n, const HPoly& alpha, int precision) {
    VerificationReport rep;
    const int inner = precision + 1;
    const SL2RepData r = sl2::rho_unchecked(n, alpha, inner);
    const std::vector<std::string> colors{hpoly_str(alpha) + ";n=" + std::to_string(n)};

    {
        CheckEntry e{"uh1-cartan", colors, true, {}, ""};
        if (!(sl2::commutator(r.h, r.h) == Mat(r.h.field(), n, n))) e.pass = false;
        rep.add(std::move(e));
    }
    {
        CheckEntry e{"uh2-he", colors, true, {}, ""};
        const Mat lhs = sl2::commutator(r.h, r.e);
        if (!(sl2::truncated(lhs, precision) == sl2::truncated(r.e.scaled(Scalar::from_int(r.e.field(), 2)), precision)))
            e.pass = false;
        rep.add(std::move(e));
    }
    {
        CheckEntry e{"uh3-hf", colors, true, {}, ""};
        const Mat lhs = sl2::commutator(r.h, r.f);
        if (!(sl2::truncated(lhs, precision) == sl2::truncated(r.f.scaled(Scalar::from_int(r.f.field(), -2)), precision)))
            e.pass = false;
        rep.add(std::move(e));
    }
    {
        CheckEntry e{"uh4-ef", colors, true, {}, ""};
        const Mat lhs = sl2::truncated(sl2::commutator(r.e, r.f), precision);
        const Scalar hh = sl2::h_power(inner, 1);
        const Scalar eha = series_exp(hh * r.alpha);
        const Scalar den = sl2::exp_h_multiple(inner, 1) - sl2::exp_h_multiple(inner, -1);
        Mat rhs(ScalarField::trunc_series(precision), n, n);
        for (int j = 0; j < n; ++j) {
            const Scalar hj = r.h.at(j, j);
            const Scalar num = eha * series_exp(hh * hj) - series_exp(-(hh * hj));
            rhs.set(j, j, series_div_exact(num, den));
        }
        if (!(lhs == rhs)) e.pass = false;
        rep.add(std::move(e));
    }
    {
        CheckEntry e{"nilpotency", colors, true, {}, ""};
        Mat epow = Mat::identity(r.e.field(), n);
        Mat fpow = Mat::identity(r.f.field(), n);
        for (int k = 0; k < n; ++k) {
            epow = epow * r.e;
            fpow = fpow * r.f;
        }
        if (!(epow == Mat(r.e.field(), n, n)) || !(fpow == Mat(r.f.field(), n, n))) e.pass = false;
        rep.add(std::move(e));
    }
    return rep;
}

// rho with all representation invariants asserted.
inline SL2RepData rho(int n, const HPoly& alpha, int precision) {
    if (n < 1) throw std::invalid_argument("rho: n must be >= 1");
    if (precision < 2) throw std::invalid_argument("rho: precision must be >= 2");
    require_pass(check_uh_relations(n, alpha, precision), "rho(" + std::to_string(n) + ", " + hpoly_str(alpha) + ")");
    return sl2::rho_unchecked(n, alpha, precision);
}

// phi_beta at the representation level: E -> e^{h beta} E, F -> e^{-h beta} F.
inline SL2RepData crossing_rep(const SL2RepData& r, const HPoly& beta) {
    const Scalar b = Scalar::series_from_poly(r.precision, beta);
    const Scalar hh = sl2::h_power(r.precision, 1);
    const Scalar scale = series_exp(hh * b);
    return SL2RepData{r.n, r.alpha, r.precision, r.h, r.e.scaled(scale), r.f.scaled(scale.inv())};
}

// The colored R-matrix on V_{n1} (x) V_{n2}:
//   R = e^{h (H (x) H) / 2} sum_k R_k(h) E^k (x) F^k,
//   R_k(h) = q^{k(k+1)/2} (1 - q^{-2})^k / [k]_q!,
// the sum terminating at min(n1,n2)-1 by nilpotency. The constant term is the
// identity matrix, so R is invertible over the truncated series ring.
inline Mat r_matrix_rep(const SL2RepData& r1, const SL2RepData& r2) {
    if (r1.precision != r2.precision) throw field_mismatch("r_matrix_rep: precision mismatch");
    const int p = r1.precision;
    const ScalarField field = ScalarField::trunc_series(p);
    const Index dim = static_cast<Index>(r1.n) * r2.n;

    Mat sum(field, dim, dim);
    Mat epow = Mat::identity(field, r1.n);
    Mat fpow = Mat::identity(field, r2.n);
    const Scalar one_minus_qm2 = Scalar::one(field) - sl2::exp_h_multiple(p, -2);
    for (int k = 0; k < std::min(r1.n, r2.n); ++k) {
        if (k > 0) {
            epow = epow * r1.e;
            fpow = fpow * r2.f;
        }
        Scalar rk = sl2::exp_h_multiple(p, mpq_class(k) * (k + 1) / 2);
        for (int j = 0; j < k; ++j) rk *= one_minus_qm2;
        rk = rk / sl2::qfact(p, k);
        sum = sum + kron(epow, fpow).scaled(rk);
    }
    const Mat cartan = sl2::exp_diag(kron(r1.h, r2.h), sl2::h_power(p, 1) / Scalar::from_int(field, 2));
    Mat r = cartan * sum;
    if (!(sl2::truncated(r, 1) == Mat::identity(ScalarField::trunc_series(1), dim)))
        throw construction_failure("r_matrix_rep: constant term is not the identity");
    return r;
}

namespace sl2 {

// M acting on legs 1 and 3 of V_{n1} (x) V_mid (x) V_{n3}.
inline Mat kron13(const Mat& m, Index n1, Index mid, Index n3) {
    Mat out(m.field(), n1 * mid * n3, n1 * mid * n3);
    for (const auto& [ij, s] : m.entries()) {
        const Index i1 = ij.first / n3, i3 = ij.first % n3;
        const Index j1 = ij.second / n3, j3 = ij.second % n3;
        for (Index k = 0; k < mid; ++k) out.set((i1 * mid + k) * n3 + i3, (j1 * mid + k) * n3 + j3, s);
    }
    return out;
}

} // namespace sl2

// The intertwiner identity on generators: R (rho^a (x) rho^b)(Delta_{a,b}(x))
// = (rho^a (x) rho^b)(flip (phi_{-a} (x) id) Delta_{b,a}(x)) R, mod h^N,
// for x in {H, E, F}. Everything is evaluated through the representation
// matrices; pi is abelian, so conjugation of colors is trivial.
inline VerificationReport check_qt1_rep(int n1, int n2, const HPoly& alpha, const HPoly& beta, int precision) {
    VerificationReport rep;
    const SL2RepData r1 = sl2::rho_unchecked(n1, alpha, precision);
    const SL2RepData r2 = sl2::rho_unchecked(n2, beta, precision);
    const ScalarField field = ScalarField::trunc_series(precision);
    const Scalar hh = sl2::h_power(precision, 1);
    const Mat r = r_matrix_rep(r1, r2);
    const Mat i1 = Mat::identity(field, n1);
    const Mat i2 = Mat::identity(field, n2);
    const Scalar eb = series_exp(hh * Scalar::series_from_poly(precision, beta));
    const Scalar ea = series_exp(hh * Scalar::series_from_poly(precision, alpha));
    const std::vector<std::string> colors{hpoly_str(alpha) + ";n=" + std::to_string(n1),
                                          hpoly_str(beta) + ";n=" + std::to_string(n2)};

    const Mat exp_h1 = sl2::exp_diag(r1.h, hh);
    const Mat exp_h2 = sl2::exp_diag(r2.h, hh);
    const Mat exp_h1_neg = sl2::exp_diag(r1.h, -hh);
    const Mat exp_h2_neg = sl2::exp_diag(r2.h, -hh);

    struct GenCheck {
        const char* axiom;
        Mat lhs;
        Mat rhs;
    };
    std::vector<GenCheck> checks;
    checks.push_back({"qt1-H", kron(r1.h, i2) + kron(i1, r2.h), kron(r1.h, i2) + kron(i1, r2.h)});
    checks.push_back({"qt1-E", kron(r1.e.scaled(eb), exp_h2) + kron(i1, r2.e), kron(exp_h1, r2.e) + kron(r1.e, i2)});
    checks.push_back({"qt1-F", kron(r1.f, i2) + kron(exp_h1_neg, r2.f), kron(i1, r2.f.scaled(ea)) + kron(r1.f, exp_h2_neg)});
    for (auto& c : checks) {
        CheckEntry e{c.axiom, colors, true, {}, ""};
        if (!(r * c.lhs == c.rhs * r)) e.pass = false;
        rep.add(std::move(e));
    }
    return rep;
}

// The colored Yang-Baxter equation on V_{n1} (x) V_{n2} (x) V_{n3}:
//   (R_{b,c})_{23} (R_{a,c})_{13} (R_{a,b})_{12}
//     = (R_{a,b})_{12} [(id (x) phi_{-b})(R_{a,c})]_{13} (R_{b,c})_{23}.
inline VerificationReport check_colored_ybe_rep(int n1, int n2, int n3, const HPoly& alpha, const HPoly& beta,
                                                const HPoly& gamma, int precision) {
    VerificationReport rep;
    const SL2RepData r1 = sl2::rho_unchecked(n1, alpha, precision);
    const SL2RepData r2 = sl2::rho_unchecked(n2, beta, precision);
    const SL2RepData r3 = sl2::rho_unchecked(n3, gamma, precision);
    const ScalarField field = ScalarField::trunc_series(precision);
    const std::vector<std::string> colors{hpoly_str(alpha) + ";n=" + std::to_string(n1),
                                          hpoly_str(beta) + ";n=" + std::to_string(n2),
                                          hpoly_str(gamma) + ";n=" + std::to_string(n3)};

    HPoly minus_beta = beta;
    for (auto& c : minus_beta) c = -c;

    const Mat r12 = kron(r_matrix_rep(r1, r2), Mat::identity(field, n3));
    const Mat r23 = kron(Mat::identity(field, n1), r_matrix_rep(r2, r3));
    const Mat r13 = sl2::kron13(r_matrix_rep(r1, r3), n1, n2, n3);
    const Mat r13_twisted = sl2::kron13(r_matrix_rep(r1, crossing_rep(r3, minus_beta)), n1, n2, n3);

    CheckEntry e{"eq20-colored-ybe", colors, true, {}, ""};
    const Mat lhs = r23 * r13 * r12;
    const Mat rhs = r12 * r13_twisted * r23;
    if (!(lhs == rhs)) e.pass = false;
    rep.add(std::move(e));
    return rep;
}

} // namespace hopfpi
