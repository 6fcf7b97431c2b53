#include "hopfpi/pairing.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hopfpi;

namespace {

// k[Z/n] assembled by hand (the families header builds these from tables;
// here we want an independent construction for the core Hopf machinery).
FinHopfAlgebra cyclic_group_algebra(int n, const ScalarField& f) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    FinAlgebra alg(f, n, std::move(labels));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) alg.mult.add(i, j, (i + j) % n, Scalar::one(f));
    alg.unit.set(0, Scalar::one(f));
    Mat comult(f, static_cast<Index>(n) * n, n);
    Mat counit(f, 1, n);
    Mat antipode(f, n, n);
    for (Index i = 0; i < n; ++i) {
        comult.set(i * n + i, i, Scalar::one(f));
        counit.set(0, i, Scalar::one(f));
        antipode.set((n - i) % n, i, Scalar::one(f));
    }
    return FinHopfAlgebra(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
}

// F(Z/n): functions on the cyclic group, with the standard structure maps.
FinHopfAlgebra cyclic_function_algebra(int n, const ScalarField& f) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    FinAlgebra alg(f, n, std::move(labels));
    for (Index i = 0; i < n; ++i) {
        alg.mult.add(i, i, i, Scalar::one(f));
        alg.unit.set(i, Scalar::one(f));
    }
    Mat comult(f, static_cast<Index>(n) * n, n);
    Mat counit(f, 1, n);
    Mat antipode(f, n, n);
    for (Index g = 0; g < n; ++g) {
        for (Index x = 0; x < n; ++x) comult.set(x * n + ((g - x + n) % n), g, Scalar::one(f));
        antipode.set((n - g) % n, g, Scalar::one(f));
    }
    counit.set(0, 0, Scalar::one(f));
    return FinHopfAlgebra(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
}

} // namespace

TEST_CASE("verify_hopf accepts k[Z/2] and F(Z/3)") {
    const ScalarField q = ScalarField::rationals();
    CHECK(verify_hopf(cyclic_group_algebra(2, q)).all_pass());
    CHECK(verify_hopf(cyclic_function_algebra(3, q)).all_pass());
    CHECK(verify_antipode_antimult(cyclic_group_algebra(6, q)).all_pass());
}

TEST_CASE("verify_hopf reports a witness for a corrupted counit") {
    const ScalarField q = ScalarField::rationals();
    FinHopfAlgebra h = cyclic_group_algebra(2, q);
    h.counit.set(0, 1, Scalar::from_int(q, -1)); // negate eps(g)
    const auto rep = verify_hopf(h);
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.has_failure("counit"));
    for (const auto& e : rep.entries)
        if (!e.pass && e.axiom == "counit") CHECK(e.witness == std::vector<std::int64_t>{1});
}

TEST_CASE("iterated comultiplication") {
    const ScalarField q = ScalarField::rationals();
    const FinHopfAlgebra h = cyclic_group_algebra(2, q);
    CHECK(iterated_comult(h, 1) == Mat::identity(q, 2));
    CHECK(iterated_comult(h, 2) == h.comult);
    const Mat d3 = iterated_comult(h, 3);
    // grouplike: g -> g(x)g(x)g
    CHECK(d3.column(1) == tensor(tensor(h.alg.basis(1), h.alg.basis(1)), h.alg.basis(1)));
    // both bracketings agree
    const Index dims[] = {2, 2};
    for (Index c = 0; c < 2; ++c) {
        const Vec di = h.comult.column(c);
        CHECK(d3.column(c) == apply_on_leg(h.comult, di, dims, 0));
        CHECK(d3.column(c) == apply_on_leg(h.comult, di, dims, 1));
    }
}

TEST_CASE("duality pairing of k[Z/2] with its dual passes and is non-degenerate") {
    const ScalarField q = ScalarField::rationals();
    auto kz2 = std::make_shared<const FinHopfAlgebra>(cyclic_group_algebra(2, q));
    auto [dual, pairing] = dual_cop_hopf_with_pairing(kz2);
    CHECK(verify_pairing(pairing).all_pass());
    auto [ia, ib] = pairing_annihilators(pairing);
    CHECK(ia.empty());
    CHECK(ib.empty());
    // abelian group: the dual-cop of k[Z/2] is F(Z/2) on the dual basis
    const FinHopfAlgebra fz2 = cyclic_function_algebra(2, q);
    CHECK(dual->alg.mult.raw().size() == fz2.alg.mult.raw().size());
    CHECK(dual->comult == fz2.comult);
    CHECK(dual->antipode == fz2.antipode);
    CHECK(dual->counit == fz2.counit);
    CHECK(dual->alg.unit == fz2.alg.unit);
}

TEST_CASE("zero pairing has full annihilators") {
    const ScalarField q = ScalarField::rationals();
    auto a = std::make_shared<const FinHopfAlgebra>(cyclic_group_algebra(2, q));
    auto b = std::make_shared<const FinHopfAlgebra>(cyclic_group_algebra(2, q));
    // sigma(g^i, g^j) = 1 identically is the counit-degenerate pairing; its
    // annihilators are spanned by 1 - g on both sides.
    Mat sigma(q, 2, 2);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) sigma.set(i, j, Scalar::one(q));
    PairingTable p(a, b, sigma);
    CHECK(verify_pairing(p).all_pass());
    auto [ia, ib] = pairing_annihilators(p);
    CHECK(ia.size() == 1);
    CHECK(ib.size() == 1);
    // quotient both sides: the transported pairing on the quotients has full
    // rank equal to the common quotient dimension
    auto [qa, pa] = quotient_hopf(*a, ia);
    auto [qb, pb] = quotient_hopf(*b, ib);
    CHECK(qa.dim() == 1);
    CHECK(qb.dim() == 1);
    const QuotientBasis qba(q, 2, ia);
    const QuotientBasis qbb(q, 2, ib);
    const Mat transported = qba.section.transpose() * sigma * qbb.section;
    CHECK(rank(transported) == qa.dim());
    auto qa_ptr = std::make_shared<const FinHopfAlgebra>(qa);
    auto qb_ptr = std::make_shared<const FinHopfAlgebra>(qb);
    CHECK(verify_pairing(PairingTable(qa_ptr, qb_ptr, transported)).all_pass());
}

TEST_CASE("quotient of k[Z/2] by span{1 - g} is the trivial Hopf algebra") {
    const ScalarField q = ScalarField::rationals();
    const FinHopfAlgebra h = cyclic_group_algebra(2, q);
    Vec v(q, 2);
    v.set(0, Scalar::one(q));
    v.set(1, Scalar::from_int(q, -1));
    auto [quo, proj] = quotient_hopf(h, {v});
    CHECK(quo.dim() == 1);
    CHECK(verify_hopf(quo).all_pass());
    CHECK(proj.apply(h.alg.basis(0)) == proj.apply(h.alg.basis(1)));
}

TEST_CASE("quotient by the zero ideal is an isomorphic copy") {
    const ScalarField q = ScalarField::rationals();
    const FinHopfAlgebra h = cyclic_group_algebra(4, q);
    auto [quo, proj] = quotient_hopf(h, {});
    CHECK(quo.dim() == h.dim());
    CHECK(proj == Mat::identity(q, 4));
    CHECK(quo.comult == h.comult);
}

TEST_CASE("span that is not a Hopf ideal is rejected with the failed condition") {
    const ScalarField q = ScalarField::rationals();
    const FinHopfAlgebra h = cyclic_group_algebra(2, q);
    Vec v(q, 2);
    v.set(1, Scalar::one(q)); // span{g}: not eps-annihilated
    const auto rep = verify_hopf_ideal(h, {v});
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.has_failure("ideal-counit"));
    CHECK_THROWS_AS(quotient_hopf(h, {v}), construction_failure);
}

TEST_CASE("dual_cop of a 1-dimensional Hopf algebra is itself") {
    const ScalarField q = ScalarField::rationals();
    auto triv = std::make_shared<const FinHopfAlgebra>(cyclic_group_algebra(1, q));
    const FinHopfAlgebra dual = dual_cop_hopf(triv);
    CHECK(dual.dim() == 1);
    CHECK(dual.comult == triv->comult);
}
