#pragma once

#include "hopfpi/double.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hopfpi {

// ---------------------------------------------------------------------------
// Group algebra k[G] and function algebra F(G) of a finite group
// ---------------------------------------------------------------------------

// k[G]: Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1.
inline FinHopfAlgebra group_algebra(const FiniteGroupTable& t, const ScalarField& f) {
    const Index n = t.order;
    std::vector<std::string> labels(t.names.begin(), t.names.end());
    FinAlgebra alg(f, n, std::move(labels));
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) alg.mult.add(a, b, t.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], Scalar::one(f));
    alg.unit.set(t.identity, Scalar::one(f));
    Mat comult(f, n * n, n), counit(f, 1, n), antipode(f, n, n);
    for (Index a = 0; a < n; ++a) {
        comult.set(a * n + a, a, Scalar::one(f));
        counit.set(0, a, Scalar::one(f));
        antipode.set(t.inv[static_cast<std::size_t>(a)], a, Scalar::one(f));
    }
    FinHopfAlgebra h(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
    require_pass(verify_hopf(h), "group_algebra");
    return h;
}

// F(G): e_g e_h = delta e_g, 1 = sum e_g, Delta(e_g) = sum_{xy=g} e_x (x) e_y,
// eps(e_g) = delta_{g,1}, S(e_g) = e_{g^-1}.
inline FinHopfAlgebra functions_hopf(const FiniteGroupTable& t, const ScalarField& f) {
    const Index n = t.order;
    std::vector<std::string> labels;
    for (const auto& name : t.names) labels.push_back("e_" + name);
    FinAlgebra alg(f, n, std::move(labels));
    for (Index a = 0; a < n; ++a) {
        alg.mult.add(a, a, a, Scalar::one(f));
        alg.unit.set(a, Scalar::one(f));
    }
    Mat comult(f, n * n, n), counit(f, 1, n), antipode(f, n, n);
    for (Index gidx = 0; gidx < n; ++gidx) {
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                if (t.mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == gidx)
                    comult.set(x * n + y, gidx, Scalar::one(f));
        antipode.set(t.inv[static_cast<std::size_t>(gidx)], gidx, Scalar::one(f));
    }
    counit.set(0, t.identity, Scalar::one(f));
    FinHopfAlgebra h(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
    require_pass(verify_hopf(h), "functions_hopf");
    return h;
}

// Conjugation action of G on k[G]: phi_b(g) = b g b^-1 (grouplikes map to
// grouplikes, so this is a Hopf automorphism family).
inline HopfAction conjugation_action(const FiniteGroupTable& t, HopfPtr kg) {
    GroupOracle oracle = GroupOracle::finite(t);
    const ScalarField f = kg->field();
    auto table = std::make_shared<const FiniteGroupTable>(t);
    return HopfAction(oracle, std::move(kg), [table, f](const GroupElem& b) {
        const Index n = table->order;
        Mat m(f, n, n);
        const int bi = static_cast<int>(b.index());
        for (Index g = 0; g < n; ++g) {
            const int target =
                table->mul[static_cast<std::size_t>(table->mul[static_cast<std::size_t>(bi)][static_cast<std::size_t>(g)])]
                          [static_cast<std::size_t>(table->inv[static_cast<std::size_t>(bi)])];
            m.set(target, g, Scalar::one(f));
        }
        return m;
    });
}

// ---------------------------------------------------------------------------
// D_G(G): the twisted double of k[G], in closed form
// ---------------------------------------------------------------------------

// Closed-form D_G(G), including the ribbon twist. Basis of every component is
// g (x) e_h at index g*|G| + h.
inline HopfPiCoalgebra build_dg(const FiniteGroupTable& t, const ScalarField& f) {
    auto tbl = std::make_shared<const FiniteGroupTable>(t);
    GroupOracle oracle = GroupOracle::finite(t);
    const Index n = t.order;
    const Index dim = n * n;

    auto mul_of = [tbl](Index a, Index b) {
        return static_cast<Index>(tbl->mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    };
    auto inv_of = [tbl](Index a) { return static_cast<Index>(tbl->inv[static_cast<std::size_t>(a)]); };

    HopfPiCoalgebra d(
        oracle,
        [tbl, f, n, dim, mul_of, inv_of](const GroupElem& alpha) {
            const Index al = alpha.index();
            std::vector<std::string> labels;
            for (Index g = 0; g < n; ++g)
                for (Index h = 0; h < n; ++h)
                    labels.push_back(tbl->names[static_cast<std::size_t>(g)] + "(x)e_" +
                                     tbl->names[static_cast<std::size_t>(h)]);
            FinAlgebra alg(f, dim, std::move(labels));
            // (g (x) e_h)(g' (x) e_{h'}) = [alpha g' alpha^-1 = h^-1 g' h'] gg' (x) e_{h'}
            for (Index g = 0; g < n; ++g)
                for (Index h = 0; h < n; ++h)
                    for (Index gp = 0; gp < n; ++gp) {
                        const Index conj = mul_of(mul_of(al, gp), inv_of(al));
                        const Index hp = mul_of(inv_of(gp), mul_of(h, conj));
                        alg.mult.add(g * n + h, gp * n + hp, mul_of(g, gp) * n + hp, Scalar::one(f));
                    }
            for (Index h = 0; h < n; ++h) alg.unit.set(static_cast<Index>(tbl->identity) * n + h, Scalar::one(f));
            require_pass(alg.verify_algebra(), "build_dg component");
            return alg;
        },
        [tbl, f, n, dim, mul_of, inv_of](const GroupElem&, const GroupElem& beta) {
            const Index be = beta.index();
            Mat out(f, dim * dim, dim);
            // Delta_{a,b}(g (x) e_h) = sum_{xy=h} (bgb^-1 (x) e_y) (x) (g (x) e_x)
            for (Index g = 0; g < n; ++g) {
                const Index bg = mul_of(mul_of(be, g), inv_of(be));
                for (Index h = 0; h < n; ++h)
                    for (Index x = 0; x < n; ++x) {
                        const Index y = mul_of(inv_of(x), h);
                        out.set((bg * n + y) * dim + (g * n + x), g * n + h, Scalar::one(f));
                    }
            }
            return out;
        },
        [tbl, f, n, dim]() {
            Mat out(f, 1, dim);
            for (Index g = 0; g < n; ++g) out.set(0, g * n + static_cast<Index>(tbl->identity), Scalar::one(f));
            return out;
        },
        [tbl, f, n, dim, mul_of, inv_of](const GroupElem& alpha) {
            const Index al = alpha.index();
            Mat out(f, dim, dim);
            // S_a(g (x) e_h) = a g^-1 a^-1 (x) e_{a g a^-1 h^-1 g^-1}
            for (Index g = 0; g < n; ++g)
                for (Index h = 0; h < n; ++h) {
                    const Index gi = mul_of(mul_of(al, inv_of(g)), inv_of(al));
                    const Index tgt = mul_of(mul_of(mul_of(al, g), inv_of(al)), mul_of(inv_of(h), inv_of(g)));
                    out.set(gi * n + tgt, g * n + h, Scalar::one(f));
                }
            return out;
        });

    d.set_crossing([tbl, f, n, dim, mul_of, inv_of](const GroupElem& beta, const GroupElem&) {
        const Index be = beta.index();
        Mat out(f, dim, dim);
        for (Index g = 0; g < n; ++g)
            for (Index h = 0; h < n; ++h)
                out.set(mul_of(mul_of(be, g), inv_of(be)) * n + mul_of(mul_of(be, h), inv_of(be)), g * n + h,
                        Scalar::one(f));
        return out;
    });

    {
        Vec value(f, dim * dim), inverse(f, dim * dim);
        for (Index g = 0; g < n; ++g)
            for (Index h = 0; h < n; ++h) {
                const Index right = static_cast<Index>(t.identity) * n + g;
                value.set((g * n + h) * dim + right, Scalar::one(f));
                inverse.set((static_cast<Index>(t.inv[static_cast<std::size_t>(g)]) * n + h) * dim + right,
                            Scalar::one(f));
            }
        auto r = std::make_shared<const RMatrix>(RMatrix{std::move(value), std::move(inverse)});
        d.set_rmatrix([r](const GroupElem&, const GroupElem&) { return *r; });
    }

    d.set_twist([tbl, f, n, dim, mul_of, inv_of](const GroupElem& alpha) {
        const Index al = alpha.index();
        Vec th(f, dim);
        for (Index g = 0; g < n; ++g) th.set(mul_of(mul_of(inv_of(al), g), al) * n + g, Scalar::one(f));
        return th;
    });

    return d;
}

// theta_a^n in closed form: sum_g a^{-n} (g a)^n (x) e_g, any integer n.
inline Vec dg_twist_power(const FiniteGroupTable& t, const ScalarField& f, const GroupElem& alpha, long n) {
    const Index order = t.order;
    auto mul_of = [&](Index a, Index b) { return static_cast<Index>(t.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]); };
    auto inv_of = [&](Index a) { return static_cast<Index>(t.inv[static_cast<std::size_t>(a)]); };
    auto power = [&](Index a, long k) {
        Index acc = t.identity;
        const Index base = k >= 0 ? a : inv_of(a);
        for (long i = 0; i < (k >= 0 ? k : -k); ++i) acc = mul_of(acc, base);
        return acc;
    };
    const Index al = alpha.index();
    Vec out(f, order * order);
    for (Index g = 0; g < order; ++g)
        out.set(mul_of(power(al, -n), power(mul_of(g, al), n)) * order + g, Scalar::one(f));
    return out;
}

// The generic twisted-double pipeline applied to (k[G], dual-cop, duality,
// conjugation); produces the same family as build_dg, map by map.
struct DgBundle {
    HopfPtr A;
    HopfPtr B;
    PairingTable sigma;
    HopfAction phi;
    HopfAction psi;
    DualBases bases;
    HopfPiCoalgebra d;
};

inline DgBundle build_dg_generic(const FiniteGroupTable& t, const ScalarField& f) {
    auto a = std::make_shared<const FinHopfAlgebra>(group_algebra(t, f));
    auto [b, sigma] = dual_cop_hopf_with_pairing(a);
    HopfAction phi = conjugation_action(t, a);
    HopfPiCoalgebra d = double_picoalgebra(a, b, sigma, phi);
    HopfAction psi = dual_action(sigma, phi);
    install_crossing(d, sigma, phi, psi);
    DualBases bases = dual_bases(sigma);
    install_r_matrix(d, sigma, bases);
    return DgBundle{a, b, sigma, phi, psi, std::move(bases), std::move(d)};
}

// Install the closed-form twist on a pipeline-built D_G(G).
inline void install_dg_twist(HopfPiCoalgebra& d, const FiniteGroupTable& t, const ScalarField& f) {
    auto tbl = std::make_shared<const FiniteGroupTable>(t);
    d.set_twist([tbl, f](const GroupElem& alpha) {
        const Index n = tbl->order;
        auto mul_of = [&](Index x, Index y) {
            return static_cast<Index>(tbl->mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
        };
        const Index al = alpha.index();
        const Index ali = static_cast<Index>(tbl->inv[static_cast<std::size_t>(al)]);
        Vec th(f, n * n);
        for (Index g = 0; g < n; ++g) th.set(mul_of(mul_of(ali, g), al) * n + g, Scalar::one(f));
        return th;
    });
}

// ---------------------------------------------------------------------------
// A_n, B_n = A_n^cop and the GL_n-colored quotient family
// ---------------------------------------------------------------------------

namespace detail {

// Basis bookkeeping for the 2^{n+1}-dimensional algebra on g^k x_S:
// index = k * 2^n + S with S a bitmask over {1..n}.
struct AnBasis {
    int n;

    Index dim() const { return Index{2} << n; }
    Index subsets() const { return Index{1} << n; }
    Index idx(int k, unsigned s) const { return static_cast<Index>(k) * subsets() + static_cast<Index>(s); }
    int kpart(Index i) const { return static_cast<int>(i / subsets()); }
    unsigned spart(Index i) const { return static_cast<unsigned>(i % subsets()); }

    static int popcount(unsigned s) { return __builtin_popcount(s); }

    // #{(s,t) : s in S, t in T, s > t}
    static int inversions(unsigned s, unsigned t) {
        int total = 0;
        for (int b = 0; 1u << b <= t; ++b)
            if (t & (1u << b)) total += popcount(s & ~((2u << b) - 1));
        return total;
    }

    std::string label(Index i, const char* gname, const char* xname) const {
        std::string out;
        if (kpart(i)) out = gname;
        const unsigned s = spart(i);
        for (int b = 0; b < n; ++b)
            if (s & (1u << b)) {
                if (!out.empty()) out += "*";
                out += std::string(xname) + std::to_string(b + 1);
            }
        return out.empty() ? "1" : out;
    }

    // (g^k x_S)(g^l x_T): zero when S and T meet, else a signed basis element.
    void mult_into(MultTensor& m, const ScalarField& f) const {
        for (Index i = 0; i < dim(); ++i)
            for (Index j = 0; j < dim(); ++j) {
                const unsigned s = spart(i), t = spart(j);
                if (s & t) continue;
                const int k = kpart(i), l = kpart(j);
                const int sign_flips = l * popcount(s) + inversions(s, t);
                const Scalar c = (sign_flips % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);
                m.add(i, j, idx((k + l) % 2, s | t), c);
            }
    }
};

} // namespace detail

// A_n: generated by g, x_1..x_n with g^2 = 1, x_i^2 = 0, gx = -xg, xx = -xx;
// Delta(g) = g(x)g, Delta(x_i) = x_i(x)g + 1(x)x_i, S(g) = g, S(x_i) = g x_i.
inline FinHopfAlgebra build_an(int n, const ScalarField& f) {
    if (n < 1) throw std::invalid_argument("build_an: n must be >= 1");
    if (f.kind() == FieldKind::PrimeField && f.modulus() == 2)
        throw std::invalid_argument("build_an: characteristic 2 excluded");
    const detail::AnBasis basis{n};
    const Index d = basis.dim();
    std::vector<std::string> labels;
    for (Index i = 0; i < d; ++i) labels.push_back(basis.label(i, "g", "x"));
    FinAlgebra alg(f, d, std::move(labels));
    basis.mult_into(alg.mult, f);
    alg.unit.set(basis.idx(0, 0), Scalar::one(f));

    // Delta by multiplicativity: Delta(g^k x_S) = (g^k (x) g^k) prod Delta(x_i)
    Mat comult(f, d * d, d);
    for (Index i = 0; i < d; ++i) {
        const int k = basis.kpart(i);
        const unsigned s = basis.spart(i);
        Vec v(f, d * d);
        v.set(basis.idx(k, 0) * d + basis.idx(k, 0), Scalar::one(f));
        for (int b = 0; b < n; ++b) {
            if (!(s & (1u << b))) continue;
            Vec dx(f, d * d);
            dx.set(basis.idx(0, 1u << b) * d + basis.idx(1, 0), Scalar::one(f)); // x_i (x) g
            dx.set(basis.idx(0, 0) * d + basis.idx(0, 1u << b), Scalar::one(f)); // 1 (x) x_i
            v = algebra_tensor_mul(alg, alg, v, dx);
        }
        comult.set_column(i, v);
    }

    Mat counit(f, 1, d);
    counit.set(0, basis.idx(0, 0), Scalar::one(f));
    counit.set(0, basis.idx(1, 0), Scalar::one(f));

    // S(g^k x_S) = S(x_{s_m}) ... S(x_{s_1}) g^k with S(x_i) = g x_i
    Mat antipode(f, d, d);
    for (Index i = 0; i < d; ++i) {
        const int k = basis.kpart(i);
        const unsigned s = basis.spart(i);
        Vec v = Vec::basis(f, d, basis.idx(k, 0));
        for (int b = 0; b < n; ++b) {
            if (!(s & (1u << b))) continue;
            const Vec gx = Vec::basis(f, d, basis.idx(1, 1u << b));
            v = alg.mul(gx, v);
        }
        antipode.set_column(i, v);
    }

    FinHopfAlgebra h(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
    require_pass(verify_hopf(h), "build_an");
    return h;
}

inline FinHopfAlgebra relabel(FinHopfAlgebra h, std::vector<std::string> labels) {
    h.alg.labels = std::move(labels);
    return h;
}

struct AnPair {
    int n;
    HopfPtr A;
    HopfPtr B;
    PairingTable sigma;
    HopfAction phi;
};

// The GL_n(k) action on A_n: phi_a(g) = g, phi_a(x_i) = sum_k a_{k,i} x_k,
// extended multiplicatively to the monomial basis.
inline HopfAction an_gl_action(int n, const ScalarField& f, HopfPtr a) {
    GroupOracle oracle = GroupOracle::general_linear(n, f);
    const detail::AnBasis basis{n};
    return HopfAction(oracle, std::move(a), [n, f, basis](const GroupElem& color) {
        const Mat& alpha = color.matrix();
        const Index d = basis.dim();
        detail::AnBasis bb = basis;
        std::vector<std::string> labels;
        for (Index i = 0; i < d; ++i) labels.push_back(bb.label(i, "g", "x"));
        FinAlgebra alg(f, d, std::move(labels));
        bb.mult_into(alg.mult, f);
        alg.unit.set(bb.idx(0, 0), Scalar::one(f));

        Mat m(f, d, d);
        for (Index i = 0; i < d; ++i) {
            const int k = bb.kpart(i);
            const unsigned s = bb.spart(i);
            Vec v = Vec::basis(f, d, bb.idx(k, 0));
            for (int b = 0; b < n; ++b) {
                if (!(s & (1u << b))) continue;
                Vec img(f, d);
                for (int r = 0; r < n; ++r) img.add_at(bb.idx(0, 1u << r), alpha.at(r, b));
                v = alg.mul(v, img);
            }
            m.set_column(i, v);
        }
        return m;
    });
}

// A_n, B_n = A_n^cop (g -> h, x -> y) and the closed-form Hopf pairing
// sigma(g^k x_S, h^l y_T) = (-1)^{kl} delta_{S,T}, machine-verified.
inline AnPair build_an_pair(int n, const ScalarField& f) {
    auto a = std::make_shared<const FinHopfAlgebra>(build_an(n, f));
    const detail::AnBasis basis{n};
    const Index d = basis.dim();
    std::vector<std::string> blabels;
    for (Index i = 0; i < d; ++i) blabels.push_back(basis.label(i, "h", "y"));
    auto b = std::make_shared<const FinHopfAlgebra>(relabel(cop(*a), std::move(blabels)));
    require_pass(verify_hopf(*b), "build_an_pair: B_n");

    Mat sig(f, d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            if (basis.spart(i) != basis.spart(j)) continue;
            const int kl = basis.kpart(i) * basis.kpart(j);
            sig.set(i, j, kl % 2 == 0 ? Scalar::one(f) : -Scalar::one(f));
        }
    PairingTable sigma(a, b, std::move(sig));
    require_pass(verify_pairing(sigma), "build_an_pair: sigma");

    HopfAction phi = an_gl_action(n, f, a);
    return AnPair{n, a, b, std::move(sigma), std::move(phi)};
}

// Default GL_n test colors: identity, a diagonal, an elementary unipotent and
// a permutation; contains non-commuting pairs for n >= 2.
inline std::vector<GroupElem> gl_test_colors(int n, const ScalarField& f) {
    std::vector<GroupElem> out;
    out.push_back(GroupElem(Mat::identity(f, n)));
    {
        Mat diag = Mat::identity(f, n);
        diag.set(0, 0, Scalar::from_int(f, 2));
        out.push_back(GroupElem(std::move(diag)));
    }
    if (n == 1) {
        Mat m1(f, 1, 1);
        m1.set(0, 0, Scalar::from_int(f, -1));
        out.push_back(GroupElem(std::move(m1)));
        Mat m3(f, 1, 1);
        m3.set(0, 0, Scalar::from_int(f, 3));
        out.push_back(GroupElem(std::move(m3)));
    } else {
        Mat uni = Mat::identity(f, n);
        uni.set(0, 1, Scalar::one(f));
        out.push_back(GroupElem(std::move(uni)));
        Mat perm(f, n, n);
        perm.set(0, 1, Scalar::one(f));
        perm.set(1, 0, Scalar::one(f));
        for (Index i = 2; i < n; ++i) perm.set(i, i, Scalar::one(f));
        out.push_back(GroupElem(std::move(perm)));
    }
    return out;
}

struct AnDouble {
    AnPair pair;
    HopfAction psi;
    DualBases bases;
    HopfPiCoalgebra d;
    CoidealFamily ideal;
};

namespace detail {

// Two-sided ideal closure of a seed vector inside a finite algebra.
inline std::vector<Vec> ideal_closure(const FinAlgebra& alg, const Vec& seed) {
    std::vector<Vec> gens{seed};
    while (true) {
        const Rref span = rref(alg.field, alg.dim, gens);
        std::vector<Vec> fresh;
        for (const Vec& row : span.rows)
            for (Index x = 0; x < alg.dim; ++x) {
                const Vec bx = alg.basis(x);
                for (Vec w : {alg.mul(bx, row), alg.mul(row, bx)}) {
                    if (!span.contains(w)) fresh.push_back(std::move(w));
                }
            }
        if (fresh.empty()) return span.rows;
        for (auto& w : fresh) gens.push_back(std::move(w));
    }
}

} // namespace detail

// D(A_n, B_n; sigma, phi) with crossing from the dual action and the
// dual-basis R-matrix, plus the coideal generated by g - h.
inline AnDouble build_an_double(int n, const ScalarField& f) {
    AnPair pair = build_an_pair(n, f);
    HopfPiCoalgebra d = double_picoalgebra(pair.A, pair.B, pair.sigma, pair.phi);
    HopfAction psi = dual_action(pair.sigma, pair.phi);
    install_crossing(d, pair.sigma, pair.phi, psi);
    DualBases bases = dual_bases(pair.sigma);
    install_r_matrix(d, pair.sigma, bases);

    const detail::AnBasis basis{n};
    const Index da = basis.dim();
    HopfPiCoalgebra d_copy = d;
    CoidealFamily ideal{[d_copy, basis, da, f](const GroupElem& color) {
        const FinAlgebra& comp = d_copy.component(color);
        Vec seed(f, comp.dim);
        seed.set(basis.idx(1, 0) * da + basis.idx(0, 0), Scalar::one(f));  // g (x) 1
        seed.add_at(basis.idx(0, 0) * da + basis.idx(1, 0), -Scalar::one(f)); // 1 (x) h
        return detail::ideal_closure(comp, seed);
    }};
    return AnDouble{std::move(pair), std::move(psi), std::move(bases), std::move(d), std::move(ideal)};
}

// The quotient family: components of dimension 2^{2n+1}, quasitriangular over
// GL_n. The coideal conditions are verified on the given colors first.
inline HopfPiCoalgebra build_an_coalgebra(const AnDouble& dd, std::span<const GroupElem> colors) {
    return quotient_picoalgebra(dd.d, dd.ideal, colors);
}

// ---------------------------------------------------------------------------
// Closed-form quotient family on the monomial basis g^a x_S y_T
// ---------------------------------------------------------------------------

namespace detail {

// Basis of the quotient component: index = a*4^n + S*2^n + T.
struct AnQBasis {
    int n;

    Index subsets() const { return Index{1} << n; }
    Index dim() const { return Index{2} << (2 * n); }
    Index idx(int a, unsigned s, unsigned t) const {
        return (static_cast<Index>(a) * subsets() + static_cast<Index>(s)) * subsets() + static_cast<Index>(t);
    }
    int apart(Index i) const { return static_cast<int>(i / (subsets() * subsets())); }
    unsigned spart(Index i) const { return static_cast<unsigned>((i / subsets()) % subsets()); }
    unsigned tpart(Index i) const { return static_cast<unsigned>(i % subsets()); }

    std::string label(Index i) const {
        std::string out;
        if (apart(i)) out = "g";
        for (int b = 0; b < n; ++b)
            if (spart(i) & (1u << b)) {
                if (!out.empty()) out += "*";
                out += "x" + std::to_string(b + 1);
            }
        for (int b = 0; b < n; ++b)
            if (tpart(i) & (1u << b)) {
                if (!out.empty()) out += "*";
                out += "y" + std::to_string(b + 1);
            }
        return out.empty() ? "1" : out;
    }
};

// Right multiplication of normal-form monomials by generators, using the
// relations g^2=1, x^2=y^2=0, gx=-xg, gy=-yg, anticommuting x's and y's, and
// x_i y_j - y_j x_i = (alpha_{j,i} - delta_{ij}) g. The commutator sign is
// the one forced by the cross relation of the double (expanding
// (1(x)y_j)(x_i(x)1) against the pairing table); with the opposite sign the
// subset-sum R-matrix stops being quasitriangular.
struct AnQMult {
    AnQBasis basis;
    const Mat* alpha; // color matrix
    ScalarField field;

    Scalar commutator_coeff(int j, int i) const {
        // c(j,i) = alpha_{j,i} - delta_{ij}; indices are 0-based bit positions
        Scalar c = i == j ? Scalar::one(field) : Scalar::zero(field);
        return alpha->at(j, i) - c;
    }

    void rmul_g(Vec& v) const {
        Vec out(field, v.dim());
        for (const auto& [i, s] : v.entries()) {
            const int flips = AnBasis::popcount(basis.spart(i)) + AnBasis::popcount(basis.tpart(i));
            const Index target = basis.idx(1 - basis.apart(i), basis.spart(i), basis.tpart(i));
            out.add_at(target, flips % 2 == 0 ? s : -s);
        }
        v = std::move(out);
    }

    void rmul_y(Vec& v, int yi) const {
        Vec out(field, v.dim());
        for (const auto& [i, s] : v.entries()) {
            const unsigned t = basis.tpart(i);
            if (t & (1u << yi)) continue;
            const int flips = AnBasis::popcount(t & ~((2u << yi) - 1));
            out.add_at(basis.idx(basis.apart(i), basis.spart(i), t | (1u << yi)), flips % 2 == 0 ? s : -s);
        }
        v = std::move(out);
    }

    void rmul_x(Vec& v, int xi) const {
        Vec out(field, v.dim());
        for (const auto& [i, s] : v.entries()) rmul_x_term(out, i, s, xi);
        v = std::move(out);
    }

    void rmul_x_term(Vec& out, Index i, const Scalar& coeff, int xi) const {
        const unsigned t = basis.tpart(i);
        if (t == 0) {
            const unsigned s = basis.spart(i);
            if (s & (1u << xi)) return;
            const int flips = AnBasis::popcount(s & ~((2u << xi) - 1));
            out.add_at(basis.idx(basis.apart(i), s | (1u << xi), 0), flips % 2 == 0 ? coeff : -coeff);
            return;
        }
        // split off the highest y: g^a x_S y_{T'} y_t x_i
        //   = (g^a x_S y_{T'} x_i) y_t - c(t,i) g^a x_S y_{T'} g
        int top = 0;
        for (int b = 0; 1u << b <= t; ++b)
            if (t & (1u << b)) top = b;
        const Index without = basis.idx(basis.apart(i), basis.spart(i), t & ~(1u << top));
        Vec part(field, out.dim());
        rmul_x_term(part, without, coeff, xi);
        rmul_y(part, top);
        for (const auto& [k, s] : part.entries()) out.add_at(k, s);

        const Scalar c = commutator_coeff(top, xi);
        if (!c.is_zero()) {
            Vec gpart = Vec::basis(field, out.dim(), without);
            gpart.scale_by(-(c * coeff));
            rmul_g(gpart);
            for (const auto& [k, s] : gpart.entries()) out.add_at(k, s);
        }
    }

    Vec monomial_product(Index i, Index j) const {
        Vec v = Vec::basis(field, basis.dim(), i);
        for (int rep = 0; rep < basis.apart(j); ++rep) rmul_g(v);
        for (int b = 0; b < basis.n; ++b)
            if (basis.spart(j) & (1u << b)) rmul_x(v, b);
        for (int b = 0; b < basis.n; ++b)
            if (basis.tpart(j) & (1u << b)) rmul_y(v, b);
        return v;
    }
};

} // namespace detail

// Closed-form quotient family on the monomial basis: structure maps given on
// generators (Delta(g) = g(x)g, Delta(x_i) = 1(x)x_i + sum beta_{k,i} x_k(x)g,
// Delta(y_i) = y_i(x)1 + g(x)y_i, S(g)=g, S(x_i)=sum alpha_{k,i} g x_k,
// S(y_i)=-g y_i, phi(x_i)=sum alpha_{k,i} x_k, phi(y_i)=sum (alpha^-T)_{k,i} y_k)
// and extended (anti)multiplicatively; R-matrix in the closed subset-sum form.
inline HopfPiCoalgebra build_an_closed(int n, const ScalarField& f) {
    if (n < 1) throw std::invalid_argument("build_an_closed: n must be >= 1");
    GroupOracle oracle = GroupOracle::general_linear(n, f);
    const detail::AnQBasis basis{n};
    const Index d = basis.dim();

    // the A_n antipode is reused for the closed-form R inverse
    auto an = std::make_shared<const FinHopfAlgebra>(build_an(n, f));
    const detail::AnBasis abasis{n};

    auto component_of = [oracle, basis, f, d, n](const GroupElem& color) {
        std::vector<std::string> labels;
        for (Index i = 0; i < d; ++i) labels.push_back(basis.label(i));
        FinAlgebra alg(f, d, std::move(labels));
        const detail::AnQMult mult{basis, &color.matrix(), f};
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) {
                const Vec prod = mult.monomial_product(i, j);
                for (const auto& [k, s] : prod.entries()) alg.mult.add(i, j, k, s);
            }
        alg.unit.set(basis.idx(0, 0, 0), Scalar::one(f));
        require_pass(alg.verify_algebra(), "build_an_closed component");
        return alg;
    };

    HopfPiCoalgebra h(
        oracle, component_of,
        [basis, f, d, n](const GroupElem& al, const GroupElem& be) {
            // products in H_al (x) H_be; generator images depend on be
            const detail::AnQBasis bb = basis;
            const ScalarField field = f;
            // local component algebras for the two legs
            detail::AnQMult mult_a{bb, &al.matrix(), field};
            detail::AnQMult mult_b{bb, &be.matrix(), field};
            FinAlgebra ha(field, d, std::vector<std::string>(static_cast<std::size_t>(d), ""));
            FinAlgebra hb(field, d, std::vector<std::string>(static_cast<std::size_t>(d), ""));
            for (Index i = 0; i < d; ++i)
                for (Index j = 0; j < d; ++j) {
                    const Vec pa = mult_a.monomial_product(i, j);
                    for (const auto& [k, s] : pa.entries()) ha.mult.add(i, j, k, s);
                    const Vec pb = mult_b.monomial_product(i, j);
                    for (const auto& [k, s] : pb.entries()) hb.mult.add(i, j, k, s);
                }
            ha.unit.set(bb.idx(0, 0, 0), Scalar::one(field));
            hb.unit.set(bb.idx(0, 0, 0), Scalar::one(field));

            const Index g1 = bb.idx(1, 0, 0);
            Mat out(field, d * d, d);
            for (Index col = 0; col < d; ++col) {
                Vec v(field, d * d);
                const int a = bb.apart(col);
                if (a)
                    v.set(g1 * d + g1, Scalar::one(field));
                else
                    v.set(bb.idx(0, 0, 0) * d + bb.idx(0, 0, 0), Scalar::one(field));
                for (int b = 0; b < n; ++b) {
                    if (!(bb.spart(col) & (1u << b))) continue;
                    Vec dx(field, d * d);
                    dx.set(bb.idx(0, 0, 0) * d + bb.idx(0, 1u << b, 0), Scalar::one(field)); // 1 (x) x_i
                    for (int r = 0; r < n; ++r)
                        dx.add_at(bb.idx(0, 1u << r, 0) * d + g1, be.matrix().at(r, b)); // beta_{k,i} x_k (x) g
                    v = algebra_tensor_mul(ha, hb, v, dx);
                }
                for (int b = 0; b < n; ++b) {
                    if (!(bb.tpart(col) & (1u << b))) continue;
                    Vec dy(field, d * d);
                    dy.set(bb.idx(0, 0, 1u << b) * d + bb.idx(0, 0, 0), Scalar::one(field)); // y_i (x) 1
                    dy.set(g1 * d + bb.idx(0, 0, 1u << b), Scalar::one(field));              // g (x) y_i
                    v = algebra_tensor_mul(ha, hb, v, dy);
                }
                out.set_column(col, v);
            }
            return out;
        },
        [basis, f, d]() {
            Mat out(f, 1, d);
            out.set(0, basis.idx(0, 0, 0), Scalar::one(f));
            out.set(0, basis.idx(1, 0, 0), Scalar::one(f));
            return out;
        },
        [oracle, component_of, basis, f, d, n](const GroupElem& al) {
            // S_al, anti-multiplicative; products live in the alpha^-1 component
            const GroupElem ali = oracle.inv(al);
            const FinAlgebra target = component_of(ali);
            const Mat& am = al.matrix();
            Mat out(f, d, d);
            for (Index col = 0; col < d; ++col) {
                Vec v = Vec::basis(f, d, basis.idx(basis.apart(col), 0, 0)); // S(g)^a = g^a
                for (int b = 0; b < n; ++b) {
                    if (!(basis.spart(col) & (1u << b))) continue;
                    Vec sx(f, d);
                    for (int r = 0; r < n; ++r) sx.add_at(basis.idx(1, 1u << r, 0), am.at(r, b)); // alpha_{k,i} g x_k
                    v = target.mul(sx, v);
                }
                for (int b = 0; b < n; ++b) {
                    if (!(basis.tpart(col) & (1u << b))) continue;
                    Vec sy(f, d);
                    sy.set(basis.idx(1, 0, 1u << b), -Scalar::one(f)); // -g y_i
                    v = target.mul(sy, v);
                }
                out.set_column(col, v);
            }
            return out;
        });

    h.set_crossing([oracle, component_of, basis, f, d, n](const GroupElem& be, const GroupElem& al) {
        const GroupElem target_color = oracle.conj(be, al);
        const FinAlgebra target = component_of(target_color);
        const Mat& bm = be.matrix();
        const Mat binv_t = inverse(bm).transpose();
        Mat out(f, d, d);
        for (Index col = 0; col < d; ++col) {
            Vec v = Vec::basis(f, d, basis.idx(basis.apart(col), 0, 0));
            for (int b = 0; b < n; ++b) {
                if (!(basis.spart(col) & (1u << b))) continue;
                Vec px(f, d);
                for (int r = 0; r < n; ++r) px.add_at(basis.idx(0, 1u << r, 0), bm.at(r, b));
                v = target.mul(v, px);
            }
            for (int b = 0; b < n; ++b) {
                if (!(basis.tpart(col) & (1u << b))) continue;
                Vec py(f, d);
                for (int r = 0; r < n; ++r) py.add_at(basis.idx(0, 0, 1u << r), binv_t.at(r, b));
                v = target.mul(v, py);
            }
            out.set_column(col, v);
        }
        return out;
    });

    {
        // R = sum_S x_S (x) ((1+g)/2) y_S + g x_S (x) ((1-g)/2) y_S, i.e. the
        // image of the double's dual-basis R; the g x_S (x) g y_S summand
        // carries a minus sign. R^{-1} = sum_{k,S} iota(S_A(g^k x_S)) (x)
        // iota(z_k y_S).
        const Scalar half = Scalar::one(f) / Scalar::from_int(f, 2);
        Vec value(f, d * d);
        for (unsigned s = 0; s < static_cast<unsigned>(Index{1} << n); ++s)
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2)
                    value.add_at(basis.idx(a1, s, 0) * d + basis.idx(a2, 0, s),
                                 (a1 == 1 && a2 == 1) ? -half : half);

        Vec inverse_v(f, d * d);
        for (Index i = 0; i < abasis.dim(); ++i) {
            const Vec sa = an->antipode.column(i); // in the A_n basis (m, U)
            const int k = abasis.kpart(i);
            const unsigned s = abasis.spart(i);
            // z_k y_S = (1 + (-1)^k g)/2 y_S
            for (const auto& [ai, c] : sa.entries()) {
                const Index left = basis.idx(abasis.kpart(ai), abasis.spart(ai), 0);
                const Scalar cw = c * half;
                inverse_v.add_at(left * d + basis.idx(0, 0, s), cw);
                inverse_v.add_at(left * d + basis.idx(1, 0, s), k % 2 == 0 ? cw : -cw);
            }
        }
        auto r = std::make_shared<const RMatrix>(RMatrix{std::move(value), std::move(inverse_v)});
        h.set_rmatrix([r](const GroupElem&, const GroupElem&) { return *r; });
    }

    return h;
}

// Monomial-to-quotient transport iota(g^a x_S y_T) = p(g^a x_S (x) y_T) for a
// given color, computed from the same deterministic complement data the
// quotient construction uses.
inline Mat an_monomial_embedding(const AnDouble& dd, const GroupElem& color) {
    const FinAlgebra& comp = dd.d.component(color);
    const QuotientBasis qb(comp.field, comp.dim, dd.ideal.basis(color));
    const detail::AnBasis ab{dd.pair.n};
    const detail::AnQBasis qbasis{dd.pair.n};
    const Index da = ab.dim();
    Mat out(comp.field, qb.quotient_dim(), qbasis.dim());
    for (Index col = 0; col < qbasis.dim(); ++col) {
        const Index aidx = ab.idx(qbasis.apart(col), qbasis.spart(col));
        const Index bidx = ab.idx(0, qbasis.tpart(col));
        out.set_column(col, qb.projection.apply(Vec::basis(comp.field, comp.dim, aidx * da + bidx)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structure-map equivalence of two families through a per-color linear iso
// ---------------------------------------------------------------------------

struct EquivalenceOptions {
    bool crossing = true;
    bool rmatrix = true;
    bool twist = false;
};

// Entrywise comparison of two Hopf pi-coalgebras through iso(alpha):
// src-component -> dst-component. With identity isos this is literal matrix
// equality of all structure maps.
inline VerificationReport verify_equivalence(const HopfPiCoalgebra& src, const HopfPiCoalgebra& dst,
                                             const std::function<Mat(const GroupElem&)>& iso,
                                             std::span<const GroupElem> colors, EquivalenceOptions opt = {}) {
    VerificationReport rep;
    const GroupOracle& g = src.group();
    const GroupElem one = g.identity();
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    std::map<std::string, Mat> isos;
    auto iso_of = [&](const GroupElem& a) -> const Mat& {
        const std::string key = g.serialize(a);
        auto it = isos.find(key);
        if (it == isos.end()) it = isos.emplace(key, iso(a)).first;
        return it->second;
    };

    std::vector<GroupElem> all{one};
    for (const auto& a : colors) {
        all.push_back(a);
        all.push_back(g.inv(a));
        for (const auto& b : colors) {
            all.push_back(g.mul(a, b));
            all.push_back(g.conj(b, a));
        }
    }
    src.warm_components(all);
    dst.warm_components(all);

    for (const auto& a : all) {
        CheckEntry e{"equiv-component", {ser(a)}, true, {}, ""};
        const Mat& tau = iso_of(a);
        const FinAlgebra& s = src.component(a);
        const FinAlgebra& t = dst.component(a);
        if (!try_inverse(tau) || tau.rows() != t.dim || tau.cols() != s.dim) {
            e.pass = false;
            e.detail = "iso not invertible";
        } else if (!(tau.apply(s.unit) == t.unit)) {
            e.pass = false;
            e.detail = "unit mismatch";
        } else if (!(tau * s.mult.as_matrix(s.field) == t.mult.as_matrix(t.field) * kron(tau, tau))) {
            e.pass = false;
            e.detail = "multiplication mismatch";
        }
        rep.add(std::move(e));
    }

    for (const auto& a : colors)
        for (const auto& b : colors) {
            CheckEntry e{"equiv-comult", {ser(a), ser(b)}, true, {}, ""};
            const GroupElem ab = g.mul(a, b);
            if (!(kron(iso_of(a), iso_of(b)) * src.comult(a, b) == dst.comult(a, b) * iso_of(ab))) e.pass = false;
            rep.add(std::move(e));
        }

    {
        CheckEntry e{"equiv-counit", {ser(one)}, true, {}, ""};
        if (!(src.counit() == dst.counit() * iso_of(one))) e.pass = false;
        rep.add(std::move(e));
    }

    for (const auto& a : colors) {
        CheckEntry e{"equiv-antipode", {ser(a)}, true, {}, ""};
        if (!(iso_of(g.inv(a)) * src.antipode(a) == dst.antipode(a) * iso_of(a))) e.pass = false;
        rep.add(std::move(e));
    }

    if (opt.crossing)
        for (const auto& b : colors)
            for (const auto& a : colors) {
                CheckEntry e{"equiv-crossing", {ser(b), ser(a)}, true, {}, ""};
                if (!(iso_of(g.conj(b, a)) * src.crossing(b, a) == dst.crossing(b, a) * iso_of(a))) e.pass = false;
                rep.add(std::move(e));
            }

    if (opt.rmatrix)
        for (const auto& a : colors)
            for (const auto& b : colors) {
                CheckEntry e{"equiv-rmatrix", {ser(a), ser(b)}, true, {}, ""};
                const RMatrix& rs = src.rmatrix(a, b);
                const RMatrix& rd = dst.rmatrix(a, b);
                const Index dims2[] = {src.component(a).dim, src.component(b).dim};
                auto transport = [&](const Vec& v) {
                    const Vec step = apply_on_leg(iso_of(a), v, dims2, 0);
                    const Index dims_s[] = {dst.component(a).dim, src.component(b).dim};
                    return apply_on_leg(iso_of(b), step, dims_s, 1);
                };
                if (!(transport(rs.value) == rd.value) || !(transport(rs.inverse) == rd.inverse)) e.pass = false;
                rep.add(std::move(e));
            }

    if (opt.twist)
        for (const auto& a : colors) {
            CheckEntry e{"equiv-twist", {ser(a)}, true, {}, ""};
            if (!(iso_of(a).apply(src.twist(a)) == dst.twist(a))) e.pass = false;
            rep.add(std::move(e));
        }

    rep.sort();
    return rep;
}

} // namespace hopfpi
