#include "hopfpi/sl2.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hopfpi;

namespace {

const HPoly kZero{mpq_class(0)};
const HPoly kOne{mpq_class(1)};
const HPoly kH{mpq_class(0), mpq_class(1)};
const HPoly kOnePlus2H{mpq_class(1), mpq_class(2)};

} // namespace

TEST_CASE("hpoly parsing and formatting") {
    CHECK(parse_hpoly("0") == kZero);
    CHECK(parse_hpoly("1+2h") == kOnePlus2H);
    CHECK(parse_hpoly("h") == kH);
    CHECK(parse_hpoly("-3/2h^2+h") == HPoly{mpq_class(0), mpq_class(1), mpq_class(-3, 2)});
    CHECK(parse_hpoly("2*h") == HPoly{mpq_class(0), mpq_class(2)});
    CHECK(hpoly_str(kOnePlus2H) == "1+2h");
    CHECK(hpoly_str(kZero) == "0");
    CHECK(hpoly_str(HPoly{mpq_class(0), mpq_class(-1), mpq_class(1, 2)}) == "-h+1/2h^2");
    CHECK(parse_hpoly(hpoly_str(HPoly{mpq_class(3, 4), mpq_class(-2)})) ==
          HPoly{mpq_class(3, 4), mpq_class(-2)});
    CHECK_THROWS_AS(parse_hpoly(""), std::invalid_argument);
}

TEST_CASE("q-integers as truncated series") {
    const int p = 6;
    // [2]_q = q + q^-1 = 2 + h^2 + h^4/12 + ...
    const Scalar two_q = sl2::qint(p, 2);
    const auto& c = two_q.series_coeffs();
    CHECK(c[0] == 2);
    CHECK(c[1] == 0);
    CHECK(c[2] == 1);
    CHECK(c[3] == 0);
    CHECK(c[4] == mpq_class(1, 12));

    // the geometric-sum form equals the defining quotient (q^k-q^-k)/(q-q^-1)
    const Scalar den = sl2::exp_h_multiple(p, 1) - sl2::exp_h_multiple(p, -1);
    for (int k = 0; k <= 4; ++k) {
        const Scalar num = sl2::exp_h_multiple(p, k) - sl2::exp_h_multiple(p, -k);
        const Scalar quotient = series_div_exact(num, den);
        CHECK(quotient == sl2::qint(p, k).truncated(p - 1));
    }
}

TEST_CASE("rho at n = 1 is scalar with E = F = 0") {
    const SL2RepData r = rho(1, kOnePlus2H, 6);
    CHECK(r.e.nnz() == 0);
    CHECK(r.f.nnz() == 0);
    const ScalarField f = ScalarField::trunc_series(6);
    // H = -alpha/2
    CHECK(r.h.at(0, 0) == -(r.alpha / Scalar::from_int(f, 2)));
}

TEST_CASE("rho at n = 2, alpha = 0 reproduces the classical matrices") {
    const SL2RepData r = rho(2, kZero, 6);
    const ScalarField f = ScalarField::trunc_series(6);
    CHECK(r.h.at(0, 0) == Scalar::one(f));
    CHECK(r.h.at(1, 1) == -Scalar::one(f));
    CHECK(r.e.at(0, 1) == Scalar::one(f)); // e^{0} [1]_q = 1
    CHECK(r.f.at(1, 0) == Scalar::one(f));
    // [E,F] = diag(1,-1) exactly
    const Mat comm = sl2::commutator(r.e, r.f);
    CHECK(comm == r.h);
}

TEST_CASE("uh relations hold mod h^6 for n <= 4 and the four colors") {
    for (int n = 1; n <= 4; ++n)
        for (const HPoly& a : {kZero, kOne, kH, kOnePlus2H}) {
            const auto rep = check_uh_relations(n, a, 6);
            INFO("n=" << n << " alpha=" << hpoly_str(a) << ": " << rep.summary());
            CHECK(rep.all_pass());
        }
}

TEST_CASE("colored R-matrix starts at I + h((H(x)H)/2 + 2 E(x)F)") {
    const int p = 6;
    const SL2RepData r1 = rho(2, kZero, p);
    const SL2RepData r2 = rho(2, kZero, p);
    const Mat r = r_matrix_rep(r1, r2);
    const ScalarField f = ScalarField::trunc_series(p);
    const Scalar hh = sl2::h_power(p, 1);
    const Mat linear =
        Mat::identity(f, 4) + kron(r1.h, r2.h).scaled(hh / Scalar::from_int(f, 2)) +
        kron(r1.e, r2.f).scaled(hh * Scalar::from_int(f, 2));
    CHECK(sl2::truncated(r, 2) == sl2::truncated(linear, 2));
    // mod h^1 it is the identity
    CHECK(sl2::truncated(r, 1) == Mat::identity(ScalarField::trunc_series(1), 4));
}

TEST_CASE("crossing at the representation level") {
    const SL2RepData r = rho(3, kOne, 6);
    SECTION("beta = 0 is the identity") {
        const SL2RepData c = crossing_rep(r, kZero);
        CHECK(c.e == r.e);
        CHECK(c.f == r.f);
        CHECK(c.h == r.h);
    }
    SECTION("beta then -beta round-trips") {
        HPoly minus = kOnePlus2H;
        for (auto& x : minus) x = -x;
        const SL2RepData c = crossing_rep(crossing_rep(r, kOnePlus2H), minus);
        CHECK(c.e == r.e);
        CHECK(c.f == r.f);
    }
    SECTION("the commutator [E,F] is invariant under the crossing") {
        const SL2RepData c = crossing_rep(r, kOnePlus2H);
        CHECK(sl2::commutator(c.e, c.f) == sl2::commutator(r.e, r.f));
    }
    SECTION("composition in beta is additive") {
        const SL2RepData c1 = crossing_rep(crossing_rep(r, kOne), kH);
        HPoly sum{mpq_class(1), mpq_class(1)};
        const SL2RepData c2 = crossing_rep(r, sum);
        CHECK(c1.e == c2.e);
        CHECK(c1.f == c2.f);
    }
}

TEST_CASE("qt1 intertwiner identity on generators") {
    SECTION("classical case alpha = beta = 0, n = 2") {
        CHECK(check_qt1_rep(2, 2, kZero, kZero, 6).all_pass());
    }
    SECTION("scalar legs are trivial") { CHECK(check_qt1_rep(1, 1, kOne, kH, 6).all_pass()); }
    SECTION("colored grid") {
        for (int n1 : {2, 3})
            for (int n2 : {2, 3})
                for (const HPoly& a : {kZero, kOne, kH, kOnePlus2H})
                    for (const HPoly& b : {kZero, kOnePlus2H}) {
                        const auto rep = check_qt1_rep(n1, n2, a, b, 6);
                        INFO("n1=" << n1 << " n2=" << n2 << " a=" << hpoly_str(a) << " b=" << hpoly_str(b)
                                   << ": " << rep.summary());
                        CHECK(rep.all_pass());
                    }
    }
    SECTION("precision refinement never flips a pass") {
        for (const HPoly& a : {kZero, kOnePlus2H}) {
            CHECK(check_qt1_rep(2, 2, a, kH, 4).all_pass());
            CHECK(check_qt1_rep(2, 2, a, kH, 6).all_pass());
        }
    }
}

TEST_CASE("colored Yang-Baxter at the representation level") {
    SECTION("classical YBE") { CHECK(check_colored_ybe_rep(2, 2, 2, kZero, kZero, kZero, 6).all_pass()); }
    SECTION("colored YBE at (1, h, 1+2h)") {
        CHECK(check_colored_ybe_rep(2, 2, 2, kOne, kH, kOnePlus2H, 6).all_pass());
    }
    SECTION("a scalar leg collapses both sides") {
        CHECK(check_colored_ybe_rep(1, 2, 2, kOne, kH, kZero, 6).all_pass());
        CHECK(check_colored_ybe_rep(2, 1, 2, kOne, kH, kZero, 6).all_pass());
    }
    SECTION("mixed dimensions") { CHECK(check_colored_ybe_rep(2, 3, 2, kOne, kH, kOnePlus2H, 6).all_pass()); }
}

TEST_CASE("a perturbed E matrix breaks the commutation relation") {
    // scale one E entry by 2: [H,E] scaling still holds but [E,F] changes
    const int p = 6;
    SL2RepData r = sl2::rho_unchecked(2, kZero, p);
    r.e.set(0, 1, r.e.at(0, 1) * Scalar::from_int(r.e.field(), 2));
    const Mat lhs = sl2::commutator(r.e, r.f);
    CHECK_FALSE(lhs == r.h); // at alpha = 0 the rhs equals H
}
