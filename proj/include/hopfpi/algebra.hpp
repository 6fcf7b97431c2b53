#pragma once

#include "hopfpi/linalg.hpp"
#include "hopfpi/report.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hopfpi {

// Structure constants of a bilinear map H (x) H -> H, stored sparsely:
// (i, j) -> the nonzero terms of e_i * e_j.
class MultTensor {
public:
    using Terms = std::vector<std::pair<Index, Scalar>>;

    explicit MultTensor(Index dim) : dim_(dim) {}

    Index dim() const { return dim_; }

    void add(Index i, Index j, Index k, const Scalar& s) {
        if (s.is_zero()) return;
        Terms& t = table_[key(i, j)];
        for (auto& [idx, c] : t) {
            if (idx == k) {
                c += s;
                if (c.is_zero()) {
                    t.erase(std::find_if(t.begin(), t.end(), [&](const auto& p) { return p.first == k; }));
                    if (t.empty()) table_.erase(key(i, j));
                }
                return;
            }
        }
        t.emplace_back(k, s);
    }

    const Terms* find(Index i, Index j) const {
        auto it = table_.find(key(i, j));
        return it == table_.end() ? nullptr : &it->second;
    }

    void accumulate(Vec& out, Index i, Index j, const Scalar& coeff) const {
        if (const Terms* t = find(i, j))
            for (const auto& [k, s] : *t) out.add_at(k, s * coeff);
    }

    Vec mul(const ScalarField& f, const Vec& u, const Vec& v) const {
        Vec out(f, dim_);
        for (const auto& [i, a] : u.entries())
            for (const auto& [j, b] : v.entries()) accumulate(out, i, j, a * b);
        return out;
    }

    // The multiplication as a matrix H(x)H -> H on the lexicographic basis.
    Mat as_matrix(const ScalarField& f) const {
        Mat m(f, dim_, dim_ * dim_);
        for (const auto& [ij, terms] : table_)
            for (const auto& [k, s] : terms) m.add_at(k, static_cast<Index>(ij), s);
        return m;
    }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& [ij, terms] : table_) n += terms.size();
        return n;
    }

    const std::unordered_map<std::uint64_t, Terms>& raw() const { return table_; }

private:
    std::uint64_t key(Index i, Index j) const { return static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(j); }

    Index dim_;
    std::unordered_map<std::uint64_t, Terms> table_;
};

// Finite-dimensional associative unital algebra by structure constants.
struct FinAlgebra {
    ScalarField field;
    Index dim;
    std::vector<std::string> labels;
    MultTensor mult;
    Vec unit;

    FinAlgebra(ScalarField f, Index d, std::vector<std::string> lab)
        : field(std::move(f)), dim(d), labels(std::move(lab)), mult(d), unit(field, d) {
        if (static_cast<Index>(labels.size()) != d) throw std::invalid_argument("FinAlgebra: label count != dim");
    }

    Vec mul(const Vec& u, const Vec& v) const { return mult.mul(field, u, v); }

    Vec basis(Index i) const { return Vec::basis(field, dim, i); }

    // Associativity on all basis triples and two-sided unit laws.
    VerificationReport verify_algebra() const {
        VerificationReport rep;
        CheckEntry unit_e{"alg-unit", {}, true, {}, ""};
        for (Index i = 0; i < dim && unit_e.pass; ++i) {
            const Vec b = basis(i);
            if (mul(unit, b) != b || mul(b, unit) != b) {
                unit_e.pass = false;
                unit_e.witness = {i};
            }
        }
        rep.add(std::move(unit_e));

        CheckEntry assoc{"alg-assoc", {}, true, {}, ""};
        for (Index i = 0; i < dim && assoc.pass; ++i) {
            for (Index j = 0; j < dim && assoc.pass; ++j) {
                const MultTensor::Terms* ij = mult.find(i, j);
                for (Index k = 0; k < dim; ++k) {
                    Vec lhs(field, dim);
                    if (ij)
                        for (const auto& [t, s] : *ij) mult.accumulate(lhs, t, k, s);
                    Vec rhs(field, dim);
                    if (const MultTensor::Terms* jk = mult.find(j, k))
                        for (const auto& [t, s] : *jk) mult.accumulate(rhs, i, t, s);
                    if (!(lhs == rhs)) {
                        assoc.pass = false;
                        assoc.witness = {i, j, k};
                        break;
                    }
                }
            }
        }
        rep.add(std::move(assoc));
        return rep;
    }
};

// Multiply two elements of a tensor product of algebras, leg by leg.
inline Vec algebra_tensor_mul(std::span<const FinAlgebra* const> legs, const Vec& u, const Vec& v) {
    Index total = 1;
    for (const FinAlgebra* a : legs) total *= a->dim;
    if (u.dim() != total || v.dim() != total) throw dimension_mismatch("algebra_tensor_mul: dimension mismatch");
    const std::size_t n = legs.size();
    std::vector<Index> strides(n, 1);
    for (std::size_t k = n; k-- > 1;) strides[k - 1] = strides[k] * legs[k]->dim;
    const ScalarField& f = u.field();
    Vec out(f, total);
    std::vector<const MultTensor::Terms*> terms(n);
    std::vector<std::size_t> cursor(n);
    for (const auto& [iu, su] : u.entries()) {
        for (const auto& [iv, sv] : v.entries()) {
            bool alive = true;
            for (std::size_t k = 0; k < n; ++k) {
                const Index a = (iu / strides[k]) % legs[k]->dim;
                const Index b = (iv / strides[k]) % legs[k]->dim;
                terms[k] = legs[k]->mult.find(a, b);
                if (!terms[k]) {
                    alive = false;
                    break;
                }
            }
            if (!alive) continue;
            const Scalar base = su * sv;
            // odometer over the cartesian product of per-leg terms
            std::fill(cursor.begin(), cursor.end(), 0);
            while (true) {
                Index idx = 0;
                Scalar c = base;
                for (std::size_t k = 0; k < n; ++k) {
                    const auto& [bk, sk] = (*terms[k])[cursor[k]];
                    idx += bk * strides[k];
                    c *= sk;
                }
                out.add_at(idx, c);
                std::size_t k = n;
                while (k-- > 0) {
                    if (++cursor[k] < terms[k]->size()) break;
                    cursor[k] = 0;
                    if (k == 0) goto done_pair;
                }
            }
        done_pair:;
        }
    }
    return out;
}

inline Vec algebra_tensor_mul(const FinAlgebra& a, const FinAlgebra& b, const Vec& u, const Vec& v) {
    const FinAlgebra* legs[2] = {&a, &b};
    return algebra_tensor_mul(std::span<const FinAlgebra* const>(legs, 2), u, v);
}

inline Vec algebra_tensor_mul(const FinAlgebra& a, const FinAlgebra& b, const FinAlgebra& c, const Vec& u,
                              const Vec& v) {
    const FinAlgebra* legs[3] = {&a, &b, &c};
    return algebra_tensor_mul(std::span<const FinAlgebra* const>(legs, 3), u, v);
}

// Finite-dimensional Hopf algebra: algebra plus comultiplication (H -> H(x)H),
// counit (H -> k) and antipode (H -> H), all as matrices on the fixed basis.
struct FinHopfAlgebra {
    FinAlgebra alg;
    Mat comult;
    Mat counit;
    Mat antipode;

    FinHopfAlgebra(FinAlgebra a, Mat cm, Mat cu, Mat s)
        : alg(std::move(a)), comult(std::move(cm)), counit(std::move(cu)), antipode(std::move(s)) {
        if (comult.rows() != alg.dim * alg.dim || comult.cols() != alg.dim)
            throw dimension_mismatch("FinHopfAlgebra: comult shape");
        if (counit.rows() != 1 || counit.cols() != alg.dim) throw dimension_mismatch("FinHopfAlgebra: counit shape");
        if (antipode.rows() != alg.dim || antipode.cols() != alg.dim)
            throw dimension_mismatch("FinHopfAlgebra: antipode shape");
    }

    const ScalarField& field() const { return alg.field; }
    Index dim() const { return alg.dim; }

    Scalar counit_of(const Vec& v) const {
        Scalar acc = Scalar::zero(field());
        for (const auto& [i, s] : v.entries()) acc += counit.at(0, i) * s;
        return acc;
    }
};

using HopfPtr = std::shared_ptr<const FinHopfAlgebra>;

// (k-1)-fold iterated comultiplication as a matrix H -> H^{(x)k}; the
// bracketing is immaterial by coassociativity (and tested to be).
inline Mat iterated_comult(const FinHopfAlgebra& h, int k) {
    if (k < 1) throw std::invalid_argument("iterated_comult: k must be >= 1");
    const Index d = h.dim();
    Mat out = Mat::identity(h.field(), d);
    Index legs = 1;
    std::vector<Index> dims{d};
    for (int step = 1; step < k; ++step) {
        // expand the last leg with Delta
        Mat next(h.field(), out.rows() * d, d);
        for (Index c = 0; c < d; ++c) {
            const Vec col = out.column(c);
            const Vec expanded = apply_on_leg(h.comult, col, dims, static_cast<std::size_t>(legs - 1));
            next.set_column(c, expanded);
        }
        out = std::move(next);
        dims.push_back(d);
        ++legs;
    }
    return out;
}

// Classical Hopf axiom suite: associativity/unit, coassociativity, counit
// laws, Delta and epsilon multiplicative, and the antipode convolution
// identity m(S (x) id)Delta = unit . counit = m(id (x) S)Delta.
inline VerificationReport verify_hopf(const FinHopfAlgebra& h) {
    VerificationReport rep = h.alg.verify_algebra();
    const Index d = h.dim();
    const ScalarField& f = h.field();
    const std::vector<Index> dims2{d, d};

    CheckEntry coassoc{"coassoc", {}, true, {}, ""};
    CheckEntry counit_law{"counit", {}, true, {}, ""};
    CheckEntry antipode_law{"antipode", {}, true, {}, ""};
    for (Index i = 0; i < d; ++i) {
        const Vec di = h.comult.column(i);
        if (coassoc.pass) {
            const Vec a = apply_on_leg(h.comult, di, dims2, 0);
            const Vec b = apply_on_leg(h.comult, di, dims2, 1);
            if (!(a == b)) {
                coassoc.pass = false;
                coassoc.witness = {i};
            }
        }
        if (counit_law.pass) {
            const Vec l = apply_on_leg(h.counit, di, dims2, 0);
            const Vec r = apply_on_leg(h.counit, di, dims2, 1);
            if (!(l == h.alg.basis(i)) || !(r == h.alg.basis(i))) {
                counit_law.pass = false;
                counit_law.witness = {i};
            }
        }
        if (antipode_law.pass) {
            Vec left(f, d), right(f, d);
            for (const auto& [pq, s] : di.entries()) {
                const Index p = pq / d, q = pq % d;
                const Vec sp_col = h.antipode.column(p);
                for (const auto& [sp, c] : sp_col.entries()) h.alg.mult.accumulate(left, sp, q, s * c);
                const Vec sq_col = h.antipode.column(q);
                for (const auto& [sq, c] : sq_col.entries()) h.alg.mult.accumulate(right, p, sq, s * c);
            }
            const Vec expected = h.alg.unit.scaled(h.counit.at(0, i));
            if (!(left == expected) || !(right == expected)) {
                antipode_law.pass = false;
                antipode_law.witness = {i};
            }
        }
    }
    rep.add(std::move(coassoc));
    rep.add(std::move(counit_law));
    rep.add(std::move(antipode_law));

    CheckEntry dmult{"comult-multiplicative", {}, true, {}, ""};
    {
        const Vec du = h.comult.apply(h.alg.unit);
        if (!(du == tensor(h.alg.unit, h.alg.unit))) {
            dmult.pass = false;
            dmult.detail = "Delta(1) != 1(x)1";
        }
    }
    const std::vector<Vec> dcols = h.comult.columns();
    for (Index i = 0; i < d && dmult.pass; ++i)
        for (Index j = 0; j < d; ++j) {
            Vec prod(f, d);
            h.alg.mult.accumulate(prod, i, j, Scalar::one(f));
            const Vec lhs = h.comult.apply(prod);
            const Vec rhs = algebra_tensor_mul(h.alg, h.alg, dcols[static_cast<std::size_t>(i)],
                                               dcols[static_cast<std::size_t>(j)]);
            if (!(lhs == rhs)) {
                dmult.pass = false;
                dmult.witness = {i, j};
                break;
            }
        }
    rep.add(std::move(dmult));

    CheckEntry emult{"counit-multiplicative", {}, true, {}, ""};
    if (!(h.counit_of(h.alg.unit) == Scalar::one(f))) {
        emult.pass = false;
        emult.detail = "eps(1) != 1";
    }
    for (Index i = 0; i < d && emult.pass; ++i)
        for (Index j = 0; j < d; ++j) {
            Vec prod(f, d);
            h.alg.mult.accumulate(prod, i, j, Scalar::one(f));
            if (!(h.counit_of(prod) == h.counit.at(0, i) * h.counit.at(0, j))) {
                emult.pass = false;
                emult.witness = {i, j};
                break;
            }
        }
    rep.add(std::move(emult));
    rep.sort();
    return rep;
}

// S is an algebra anti-homomorphism (a consequence of the axioms; checked
// directly where the spec calls for it).
inline VerificationReport verify_antipode_antimult(const FinHopfAlgebra& h) {
    VerificationReport rep;
    CheckEntry e{"antipode-antimultiplicative", {}, true, {}, ""};
    const Index d = h.dim();
    if (!(h.antipode.apply(h.alg.unit) == h.alg.unit)) {
        e.pass = false;
        e.detail = "S(1) != 1";
    }
    const std::vector<Vec> scols = h.antipode.columns();
    for (Index i = 0; i < d && e.pass; ++i)
        for (Index j = 0; j < d; ++j) {
            Vec prod(h.field(), d);
            h.alg.mult.accumulate(prod, i, j, Scalar::one(h.field()));
            const Vec lhs = h.antipode.apply(prod);
            const Vec rhs = h.alg.mul(scols[static_cast<std::size_t>(j)], scols[static_cast<std::size_t>(i)]);
            if (!(lhs == rhs)) {
                e.pass = false;
                e.witness = {i, j};
                break;
            }
        }
    rep.add(std::move(e));
    return rep;
}

// Opposite-coproduct Hopf algebra: same algebra, flipped Delta, inverse antipode.
inline FinHopfAlgebra cop(const FinHopfAlgebra& h) {
    const Index d = h.dim();
    Mat cm(h.field(), d * d, d);
    for (const auto& [pq_c, s] : h.comult.entries()) {
        const Index pq = pq_c.first, c = pq_c.second;
        cm.set((pq % d) * d + pq / d, c, s);
    }
    return FinHopfAlgebra(h.alg, std::move(cm), h.counit, inverse(h.antipode));
}

// Checks that tau (a matrix H1 -> H2) is an isomorphism of Hopf algebras.
inline VerificationReport verify_hopf_isomorphism(const Mat& tau, const FinHopfAlgebra& h1, const FinHopfAlgebra& h2) {
    VerificationReport rep;
    CheckEntry inv{"iso-invertible", {}, true, {}, ""};
    if (h1.dim() != h2.dim() || !try_inverse(tau)) {
        inv.pass = false;
    }
    rep.add(std::move(inv));
    if (!rep.all_pass()) return rep;

    CheckEntry mult{"iso-multiplicative", {}, true, {}, ""};
    const std::vector<Vec> tcols = tau.columns();
    if (!(tau.apply(h1.alg.unit) == h2.alg.unit)) {
        mult.pass = false;
        mult.detail = "unit not preserved";
    }
    for (Index i = 0; i < h1.dim() && mult.pass; ++i)
        for (Index j = 0; j < h1.dim(); ++j) {
            Vec prod(h1.field(), h1.dim());
            h1.alg.mult.accumulate(prod, i, j, Scalar::one(h1.field()));
            const Vec lhs = tau.apply(prod);
            const Vec rhs = h2.alg.mul(tcols[static_cast<std::size_t>(i)], tcols[static_cast<std::size_t>(j)]);
            if (!(lhs == rhs)) {
                mult.pass = false;
                mult.witness = {i, j};
                break;
            }
        }
    rep.add(std::move(mult));

    CheckEntry com{"iso-comultiplicative", {}, true, {}, ""};
    if (!(kron(tau, tau) * h1.comult == h2.comult * tau)) com.pass = false;
    rep.add(std::move(com));

    CheckEntry cu{"iso-counit", {}, true, {}, ""};
    if (!(h1.counit == h2.counit * tau)) cu.pass = false;
    rep.add(std::move(cu));

    CheckEntry an{"iso-antipode", {}, true, {}, ""};
    if (!(tau * h1.antipode == h2.antipode * tau)) an.pass = false;
    rep.add(std::move(an));
    return rep;
}

} // namespace hopfpi
