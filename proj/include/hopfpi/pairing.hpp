#pragma once

#include "hopfpi/algebra.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hopfpi {

// Bilinear form sigma: A x B -> k given by its matrix on the fixed bases;
// sigma[i][j] = sigma(a_i, b_j). The Hopf pairing axioms are machine-checked,
// never assumed.
struct PairingTable {
    HopfPtr A;
    HopfPtr B;
    Mat sigma;

    PairingTable(HopfPtr a, HopfPtr b, Mat s) : A(std::move(a)), B(std::move(b)), sigma(std::move(s)) {
        if (sigma.rows() != A->dim() || sigma.cols() != B->dim())
            throw dimension_mismatch("PairingTable: sigma shape mismatch");
        if (A->field() != B->field() || A->field() != sigma.field())
            throw field_mismatch("PairingTable: field mismatch");
    }

    const ScalarField& field() const { return sigma.field(); }

    Scalar eval(const Vec& a, const Vec& b) const {
        Scalar acc = Scalar::zero(field());
        for (const auto& [i, s] : a.entries())
            for (const auto& [j, t] : b.entries()) {
                const Scalar m = sigma.at(i, j);
                if (!m.is_zero()) acc += s * t * m;
            }
        return acc;
    }
};

// The four Hopf pairing axioms plus the antipode identity
// sigma(S(a), S(b)) = sigma(a, b), all on basis tuples:
//   sigma(a, bb')  = sigma(a_(1), b) sigma(a_(2), b')
//   sigma(aa', b)  = sigma(a, b_(2)) sigma(a', b_(1))
//   sigma(a, 1)    = eps(a),  sigma(1, b) = eps(b)
inline VerificationReport verify_pairing(const PairingTable& p) {
    VerificationReport rep;
    const FinHopfAlgebra& A = *p.A;
    const FinHopfAlgebra& B = *p.B;
    const ScalarField& f = p.field();
    const Index da = A.dim(), db = B.dim();
    const std::vector<Vec> dA = A.comult.columns();
    const std::vector<Vec> dB = B.comult.columns();

    CheckEntry right_mult{"pairing-mult-right", {}, true, {}, ""};
    // sigma(a, b b') against the Sweedler expansion of a
    for (Index i = 0; i < da && right_mult.pass; ++i) {
        for (Index j = 0; j < db && right_mult.pass; ++j)
            for (Index j2 = 0; j2 < db; ++j2) {
                Vec prod(f, db);
                B.alg.mult.accumulate(prod, j, j2, Scalar::one(f));
                const Scalar lhs = p.eval(A.alg.basis(i), prod);
                Scalar rhs = Scalar::zero(f);
                for (const auto& [pq, s] : dA[static_cast<std::size_t>(i)].entries())
                    rhs += s * p.sigma.at(pq / da, j) * p.sigma.at(pq % da, j2);
                if (!(lhs == rhs)) {
                    right_mult.pass = false;
                    right_mult.witness = {i, j, j2};
                    break;
                }
            }
    }
    rep.add(std::move(right_mult));

    CheckEntry left_mult{"pairing-mult-left", {}, true, {}, ""};
    // sigma(a a', b) = sigma(a, b_(2)) sigma(a', b_(1))
    for (Index i = 0; i < da && left_mult.pass; ++i) {
        for (Index i2 = 0; i2 < da && left_mult.pass; ++i2)
            for (Index j = 0; j < db; ++j) {
                Vec prod(f, da);
                A.alg.mult.accumulate(prod, i, i2, Scalar::one(f));
                const Scalar lhs = p.eval(prod, B.alg.basis(j));
                Scalar rhs = Scalar::zero(f);
                for (const auto& [pq, s] : dB[static_cast<std::size_t>(j)].entries())
                    rhs += s * p.sigma.at(i, pq % db) * p.sigma.at(i2, pq / db);
                if (!(lhs == rhs)) {
                    left_mult.pass = false;
                    left_mult.witness = {i, i2, j};
                    break;
                }
            }
    }
    rep.add(std::move(left_mult));

    CheckEntry units{"pairing-unit", {}, true, {}, ""};
    for (Index i = 0; i < da; ++i)
        if (!(p.eval(A.alg.basis(i), B.alg.unit) == A.counit.at(0, i))) {
            units.pass = false;
            units.witness = {i, -1};
            break;
        }
    if (units.pass)
        for (Index j = 0; j < db; ++j)
            if (!(p.eval(A.alg.unit, B.alg.basis(j)) == B.counit.at(0, j))) {
                units.pass = false;
                units.witness = {-1, j};
                break;
            }
    rep.add(std::move(units));

    CheckEntry antip{"pairing-antipode", {}, true, {}, ""};
    // sigma(S(a), S(b)) = sigma(a, b): as matrices, S_A^T sigma S_B = sigma
    if (!(A.antipode.transpose() * p.sigma * B.antipode == p.sigma)) antip.pass = false;
    rep.add(std::move(antip));
    rep.sort();
    return rep;
}

// Is `span` a Hopf ideal of H? Checks: two-sided ideal, eps(I) = 0,
// Delta(I) subset I(x)H + H(x)I (via the complement projection), S(I) subset I.
// On failure the report names the closure condition that broke.
inline VerificationReport verify_hopf_ideal(const FinHopfAlgebra& h, const std::vector<Vec>& span) {
    VerificationReport rep;
    const Index d = h.dim();
    const ScalarField& f = h.field();
    const Rref basis = rref(f, d, span);

    CheckEntry ideal{"ideal-closed", {}, true, {}, ""};
    for (std::size_t k = 0; k < basis.rows.size() && ideal.pass; ++k)
        for (Index i = 0; i < d; ++i) {
            const Vec b = h.alg.basis(i);
            if (!basis.contains(h.alg.mul(b, basis.rows[k])) || !basis.contains(h.alg.mul(basis.rows[k], b))) {
                ideal.pass = false;
                ideal.witness = {static_cast<Index>(k), i};
                break;
            }
        }
    rep.add(std::move(ideal));

    CheckEntry counit_zero{"ideal-counit", {}, true, {}, ""};
    for (std::size_t k = 0; k < basis.rows.size(); ++k)
        if (!h.counit_of(basis.rows[k]).is_zero()) {
            counit_zero.pass = false;
            counit_zero.witness = {static_cast<Index>(k)};
            break;
        }
    rep.add(std::move(counit_zero));

    // x in I(x)H + H(x)I  iff  (pi (x) pi)(x) = 0 for the reduction pi mod I
    CheckEntry coideal{"ideal-coideal", {}, true, {}, ""};
    for (std::size_t k = 0; k < basis.rows.size(); ++k) {
        Vec cur = h.comult.apply(basis.rows[k]);
        for (int leg = 0; leg < 2; ++leg) {
            for (std::size_t r = 0; r < basis.rows.size(); ++r) {
                const Index piv = basis.pivots[r];
                for (Index other = 0; other < d; ++other) {
                    const Index idx = leg == 0 ? piv * d + other : other * d + piv;
                    const Scalar c = cur.at(idx);
                    if (c.is_zero()) continue;
                    for (const auto& [col, s] : basis.rows[r].entries()) {
                        const Index tgt = leg == 0 ? col * d + other : other * d + col;
                        cur.add_at(tgt, -(c * s));
                    }
                }
            }
        }
        if (!cur.is_zero()) {
            coideal.pass = false;
            coideal.witness = {static_cast<Index>(k)};
            break;
        }
    }
    rep.add(std::move(coideal));

    CheckEntry stable{"ideal-antipode", {}, true, {}, ""};
    for (std::size_t k = 0; k < basis.rows.size(); ++k)
        if (!basis.contains(h.antipode.apply(basis.rows[k]))) {
            stable.pass = false;
            stable.witness = {static_cast<Index>(k)};
            break;
        }
    rep.add(std::move(stable));
    rep.sort();
    return rep;
}

// Deterministic complement data for a quotient by an ideal: projection onto
// the non-pivot coordinates and the coordinate section back into H.
struct QuotientBasis {
    Rref ideal;                 // RREF of the ideal
    std::vector<Index> kept;    // non-pivot coordinates, in order
    Mat projection;             // H -> H/I on the kept-coordinate basis
    Mat section;                // H/I -> H, e_c -> e_{kept[c]}

    QuotientBasis(const ScalarField& f, Index dim, const std::vector<Vec>& span)
        : ideal(rref(f, dim, span)), projection(f, 0, 0), section(f, 0, 0) {
        kept = ideal.free_columns();
        const Index q = static_cast<Index>(kept.size());
        Mat proj(f, q, dim);
        for (Index c = 0; c < q; ++c) proj.set(c, kept[static_cast<std::size_t>(c)], Scalar::one(f));
        // reducing by the ideal rows first makes proj(v) the class of v
        // proj_full = proj . (I - sum of pivot eliminations)
        Mat reducer = Mat::identity(f, dim);
        for (std::size_t r = 0; r < ideal.rows.size(); ++r) {
            const Index piv = ideal.pivots[r];
            for (const auto& [col, s] : ideal.rows[r].entries()) reducer.add_at(col, piv, -s);
        }
        projection = proj * reducer;
        Mat sec(f, dim, q);
        for (Index c = 0; c < q; ++c) sec.set(kept[static_cast<std::size_t>(c)], c, Scalar::one(f));
        section = std::move(sec);
    }

    Index quotient_dim() const { return static_cast<Index>(kept.size()); }
};

// Quotient Hopf algebra H/I on the complement basis, with the projection map.
// The span is verified to be a Hopf ideal first.
inline std::pair<FinHopfAlgebra, Mat> quotient_hopf(const FinHopfAlgebra& h, const std::vector<Vec>& ideal_span) {
    {
        const VerificationReport ok = verify_hopf_ideal(h, ideal_span);
        if (!ok.all_pass()) throw construction_failure("quotient_hopf: span is not a Hopf ideal: " + ok.summary());
    }
    const ScalarField& f = h.field();
    const Index d = h.dim();
    QuotientBasis qb(f, d, ideal_span);
    const Index q = qb.quotient_dim();

    std::vector<std::string> labels;
    for (Index c = 0; c < q; ++c) labels.push_back(h.alg.labels[static_cast<std::size_t>(qb.kept[static_cast<std::size_t>(c)])]);
    FinAlgebra alg(f, q, std::move(labels));
    alg.unit = qb.projection.apply(h.alg.unit);
    for (Index i = 0; i < q; ++i)
        for (Index j = 0; j < q; ++j) {
            Vec prod(f, d);
            h.alg.mult.accumulate(prod, qb.kept[static_cast<std::size_t>(i)], qb.kept[static_cast<std::size_t>(j)],
                                  Scalar::one(f));
            const Vec img = qb.projection.apply(prod);
            for (const auto& [k, s] : img.entries()) alg.mult.add(i, j, k, s);
        }
    require_pass(alg.verify_algebra(), "quotient_hopf: quotient algebra");

    const Mat comult = kron(qb.projection, qb.projection) * h.comult * qb.section;
    const Mat counit = h.counit * qb.section;
    const Mat antipode = qb.projection * h.antipode * qb.section;
    FinHopfAlgebra quo(std::move(alg), comult, counit, antipode);
    require_pass(verify_hopf(quo), "quotient_hopf: quotient Hopf axioms");
    return {std::move(quo), qb.projection};
}

// Annihilator ideals I_A = ker(sigma: A -> B*), I_B = ker(sigma^T), both as
// exact bases, each verified to be a Hopf ideal.
inline std::pair<std::vector<Vec>, std::vector<Vec>> pairing_annihilators(const PairingTable& p) {
    std::vector<Vec> ia = kernel(p.sigma.transpose());
    std::vector<Vec> ib = kernel(p.sigma);
    if (!ia.empty()) {
        const VerificationReport ok = verify_hopf_ideal(*p.A, ia);
        if (!ok.all_pass())
            throw construction_failure("pairing_annihilators: I_A is not a Hopf ideal (invalid pairing table): " +
                                       ok.summary());
    }
    if (!ib.empty()) {
        const VerificationReport ok = verify_hopf_ideal(*p.B, ib);
        if (!ok.all_pass())
            throw construction_failure("pairing_annihilators: I_B is not a Hopf ideal (invalid pairing table): " +
                                       ok.summary());
    }
    return {std::move(ia), std::move(ib)};
}

// The dual Hopf algebra with opposite comultiplication, A^{*cop}, together
// with the canonical pairing sigma(a_i, a^j) = delta_{ij} against A.
inline std::pair<HopfPtr, PairingTable> dual_cop_hopf_with_pairing(HopfPtr a) {
    const FinHopfAlgebra& h = *a;
    const ScalarField& f = h.field();
    const Index d = h.dim();

    std::vector<std::string> labels;
    for (Index i = 0; i < d; ++i) labels.push_back(h.alg.labels[static_cast<std::size_t>(i)] + "^");
    FinAlgebra alg(f, d, std::move(labels));
    // product of duals is transpose-of-comultiplication, unit is the counit
    for (const auto& [pq_c, s] : h.comult.entries()) {
        const Index pq = pq_c.first, c = pq_c.second;
        alg.mult.add(pq / d, pq % d, c, s);
    }
    for (Index i = 0; i < d; ++i) alg.unit.set(i, h.counit.at(0, i));

    // cop coproduct of the dual: Delta(e^k) = sum m^k_{ji} e^i (x) e^j
    Mat comult(f, d * d, d);
    for (const auto& [ij, terms] : h.alg.mult.raw()) {
        const Index i = static_cast<Index>(ij) / d;
        const Index j = static_cast<Index>(ij) % d;
        for (const auto& [k, s] : terms) comult.add_at(j * d + i, k, s);
    }
    Mat counit(f, 1, d);
    for (const auto& [i, s] : h.alg.unit.entries()) counit.set(0, i, s);
    const Mat antipode = inverse(h.antipode).transpose();

    FinHopfAlgebra dual(std::move(alg), std::move(comult), std::move(counit), antipode);
    require_pass(verify_hopf(dual), "dual_cop_hopf: dual Hopf axioms");

    auto dual_ptr = std::make_shared<const FinHopfAlgebra>(std::move(dual));
    PairingTable canonical(std::move(a), dual_ptr, Mat::identity(f, d));
    require_pass(verify_pairing(canonical), "dual_cop_hopf: canonical pairing");
    return {dual_ptr, std::move(canonical)};
}

inline FinHopfAlgebra dual_cop_hopf(HopfPtr a) { return *dual_cop_hopf_with_pairing(std::move(a)).first; }

} // namespace hopfpi
