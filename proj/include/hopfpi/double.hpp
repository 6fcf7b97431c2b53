#pragma once

#include "hopfpi/picoalgebra.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hopfpi {

// Hopf-morphism conditions for a matrix src -> dst: unital multiplicative,
// comultiplicative, counit-preserving and antipode-intertwining.
inline VerificationReport verify_hopf_morphism(const Mat& m, const FinHopfAlgebra& src, const FinHopfAlgebra& dst) {
    VerificationReport rep;
    const ScalarField& f = src.field();

    CheckEntry mult{"morphism-multiplicative", {}, true, {}, ""};
    if (!(m.apply(src.alg.unit) == dst.alg.unit)) {
        mult.pass = false;
        mult.detail = "unit not preserved";
    }
    const std::vector<Vec> cols = m.columns();
    for (Index i = 0; i < src.dim() && mult.pass; ++i)
        for (Index j = 0; j < src.dim(); ++j) {
            Vec prod(f, src.dim());
            src.alg.mult.accumulate(prod, i, j, Scalar::one(f));
            if (!(m.apply(prod) == dst.alg.mul(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]))) {
                mult.pass = false;
                mult.witness = {i, j};
                break;
            }
        }
    rep.add(std::move(mult));

    CheckEntry com{"morphism-comultiplicative", {}, true, {}, ""};
    if (!(kron(m, m) * src.comult == dst.comult * m)) com.pass = false;
    rep.add(std::move(com));

    CheckEntry cu{"morphism-counit", {}, true, {}, ""};
    if (!(dst.counit * m == src.counit)) cu.pass = false;
    rep.add(std::move(cu));

    CheckEntry an{"morphism-antipode", {}, true, {}, ""};
    if (!(m * src.antipode == dst.antipode * m)) an.pass = false;
    rep.add(std::move(an));
    return rep;
}

// A group action by Hopf automorphisms: color -> automorphism matrix.
// Matrices are cached; each is checked to be a Hopf automorphism on first
// access, and matrix(1) = id is enforced.
class HopfAction {
public:
    HopfAction(GroupOracle group, HopfPtr target, std::function<Mat(const GroupElem&)> fn)
        : impl_(std::make_shared<Impl>()) {
        impl_->group = std::move(group);
        impl_->target = std::move(target);
        impl_->fn = std::move(fn);
    }

    const GroupOracle& group() const { return impl_->group; }
    const HopfPtr& target() const { return impl_->target; }

    const Mat& matrix(const GroupElem& b) const {
        const std::string key = impl_->group.serialize(b);
        return impl_->cache.get(key, [&] {
            Mat m = impl_->fn(b);
            const FinHopfAlgebra& h = *impl_->target;
            if (m.rows() != h.dim() || m.cols() != h.dim())
                throw dimension_mismatch("HopfAction(" + key + "): matrix shape");
            const VerificationReport hom = verify_hopf_morphism(m, h, h);
            if (!hom.all_pass())
                throw construction_failure("HopfAction(" + key + "): not a Hopf endomorphism: " + hom.summary());
            if (!try_inverse(m)) throw construction_failure("HopfAction(" + key + "): not invertible");
            if (impl_->group.is_identity(b) && !(m == Mat::identity(h.field(), h.dim())))
                throw construction_failure("HopfAction: matrix(1) != id");
            return m;
        });
    }

    // Action law on explicit tuples: matrix(a) matrix(b) = matrix(ab).
    VerificationReport check_action_law(std::span<const GroupElem> colors) const {
        VerificationReport rep;
        for (const auto& a : colors)
            for (const auto& b : colors) {
                CheckEntry e{"action-composition",
                             {impl_->group.serialize(a), impl_->group.serialize(b)},
                             true,
                             {},
                             ""};
                if (!(matrix(a) * matrix(b) == matrix(impl_->group.mul(a, b)))) e.pass = false;
                rep.add(std::move(e));
            }
        rep.sort();
        return rep;
    }

private:
    struct Impl {
        GroupOracle group = GroupOracle::finite(FiniteGroupTable::cyclic(1));
        HopfPtr target;
        std::function<Mat(const GroupElem&)> fn;
        detail::KeyedCache<Mat> cache;
    };
    std::shared_ptr<Impl> impl_;
};

inline HopfAction trivial_action(GroupOracle group, HopfPtr target) {
    const Index d = target->dim();
    const ScalarField f = target->field();
    return HopfAction(std::move(group), std::move(target),
                      [d, f](const GroupElem&) { return Mat::identity(f, d); });
}

namespace detail {

struct DoubleData {
    HopfPtr A;
    HopfPtr B;
    Mat sigma;     // pairing matrix
    Mat d3a;       // Delta^3 of A
    Mat d3b;       // Delta^3 of B
    Mat sigma_sb;  // sigma(. , S(.)) = sigma . S_B

    DoubleData(HopfPtr a, HopfPtr b, const Mat& s)
        : A(std::move(a)), B(std::move(b)), sigma(s), d3a(iterated_comult(*A, 3)), d3b(iterated_comult(*B, 3)),
          sigma_sb(sigma * B->antipode) {}
};

// Multiplication tensor of D(A,B;sigma,phi) for one twist endomorphism phi:
// (a (x) b)(a' (x) b') = sigma(phi(a'_(1)), S(b_(1))) sigma(a'_(3), b_(3))
//                        a a'_(2) (x) b_(2) b'.
inline FinAlgebra double_algebra_from(const DoubleData& dd, const Mat& phi, const std::string& tag) {
    const FinHopfAlgebra& A = *dd.A;
    const FinHopfAlgebra& B = *dd.B;
    const ScalarField& f = A.field();
    const Index da = A.dim(), db = B.dim();
    const Index dim = da * db;

    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(dim));
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < db; ++j)
            labels.push_back(A.alg.labels[static_cast<std::size_t>(i)] + "(x)" + B.alg.labels[static_cast<std::size_t>(j)]);
    FinAlgebra alg(f, dim, std::move(labels));
    alg.unit = tensor(A.alg.unit, B.alg.unit);

    // sigma(phi(.), S(.)) as a matrix
    const Mat m1 = phi.transpose() * dd.sigma_sb;
    const std::vector<Vec> d3a_cols = dd.d3a.columns();
    const std::vector<Vec> d3b_cols = dd.d3b.columns();

    for (Index ip = 0; ip < da; ++ip) {       // a' basis index
        const Vec& ta = d3a_cols[static_cast<std::size_t>(ip)];
        for (Index j = 0; j < db; ++j) {      // b basis index
            const Vec& tb = d3b_cols[static_cast<std::size_t>(j)];
            // accumulated pairing weights: (t2, u2) -> scalar
            std::map<std::pair<Index, Index>, Scalar> weights;
            for (const auto& [ia3, ca] : ta.entries()) {
                const Index t1 = ia3 / (da * da);
                const Index t2 = (ia3 / da) % da;
                const Index t3 = ia3 % da;
                for (const auto& [ib3, cb] : tb.entries()) {
                    const Index u1 = ib3 / (db * db);
                    const Index u2 = (ib3 / db) % db;
                    const Index u3 = ib3 % db;
                    const Scalar w = ca * cb * m1.at(t1, u1) * dd.sigma.at(t3, u3);
                    if (w.is_zero()) continue;
                    auto [it, fresh] = weights.try_emplace({t2, u2}, w);
                    if (!fresh) {
                        it->second += w;
                        if (it->second.is_zero()) weights.erase(it);
                    }
                }
            }
            if (weights.empty()) continue;
            for (Index i = 0; i < da; ++i)
                for (Index jp = 0; jp < db; ++jp) {
                    Vec out(f, dim);
                    for (const auto& [t2u2, w] : weights) {
                        const auto [t2, u2] = t2u2;
                        const MultTensor::Terms* am = A.alg.mult.find(i, t2);
                        const MultTensor::Terms* bm = B.alg.mult.find(u2, jp);
                        if (!am || !bm) continue;
                        for (const auto& [ka, sa] : *am)
                            for (const auto& [kb, sb] : *bm) out.add_at(ka * db + kb, w * sa * sb);
                    }
                    for (const auto& [k, s] : out.entries()) alg.mult.add(i * db + j, ip * db + jp, k, s);
                }
        }
    }

    require_pass(alg.verify_algebra(), "double_algebra(" + tag + ")");

    // the embeddings a -> a(x)1 and b -> 1(x)b are algebra morphisms
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) {
            Vec pa(f, da);
            A.alg.mult.accumulate(pa, i, j, Scalar::one(f));
            const Vec lhs = alg.mul(tensor(A.alg.basis(i), B.alg.unit), tensor(A.alg.basis(j), B.alg.unit));
            if (!(lhs == tensor(pa, B.alg.unit)))
                throw construction_failure("double_algebra(" + tag + "): A-embedding is not an algebra map");
        }
    for (Index i = 0; i < db; ++i)
        for (Index j = 0; j < db; ++j) {
            Vec pb(f, db);
            B.alg.mult.accumulate(pb, i, j, Scalar::one(f));
            const Vec lhs = alg.mul(tensor(A.alg.unit, B.alg.basis(i)), tensor(A.alg.unit, B.alg.basis(j)));
            if (!(lhs == tensor(A.alg.unit, pb)))
                throw construction_failure("double_algebra(" + tag + "): B-embedding is not an algebra map");
        }
    return alg;
}

} // namespace detail

// The twisted-double algebra D(A,B;sigma,phi) on A (x) B for a single Hopf
// endomorphism phi of A. Associativity, unit laws and the two embeddings are
// asserted at construction; sigma is machine-verified first.
inline FinAlgebra double_algebra(HopfPtr a, HopfPtr b, const PairingTable& sigma, const Mat& phi_alpha) {
    require_pass(verify_pairing(sigma), "double_algebra: sigma is not a Hopf pairing");
    const VerificationReport endo = verify_hopf_morphism(phi_alpha, *a, *a);
    if (!endo.all_pass())
        throw construction_failure("double_algebra: phi is not a Hopf endomorphism: " + endo.summary());
    detail::DoubleData dd(a, b, sigma.sigma);
    return detail::double_algebra_from(dd, phi_alpha, "explicit");
}

// The Hopf pi-coalgebra D(A,B;sigma,phi) = { D(A,B;sigma,phi_alpha) } with
//   Delta_{a,b}(x (x) y) = (phi_b(x_(1)) (x) y_(1)) (x) (x_(2) (x) y_(2)),
//   eps(x (x) y) = eps(x) eps(y),
//   S_a(x (x) y) = sigma(phi_a(x_(1)), y_(1)) sigma(x_(3), S(y_(3)))
//                  phi_a S(x_(2)) (x) S(y_(2)).
inline HopfPiCoalgebra double_picoalgebra(HopfPtr a, HopfPtr b, const PairingTable& sigma, HopfAction phi) {
    require_pass(verify_pairing(sigma), "double_picoalgebra: sigma is not a Hopf pairing");
    if (phi.target() != a) throw std::invalid_argument("double_picoalgebra: phi must act on A");

    auto dd = std::make_shared<const detail::DoubleData>(a, b, sigma.sigma);
    const GroupOracle group = phi.group();

    HopfPiCoalgebra d(
        group,
        [dd, phi, group](const GroupElem& al) {
            return detail::double_algebra_from(*dd, phi.matrix(al), group.serialize(al));
        },
        [dd, phi](const GroupElem&, const GroupElem& be) {
            const FinHopfAlgebra& A = *dd->A;
            const FinHopfAlgebra& B = *dd->B;
            const Index da = A.dim(), db = B.dim();
            const Index dim = da * db;
            const Mat& pb = phi.matrix(be);
            const std::vector<Vec> pb_cols = pb.columns();
            const std::vector<Vec> da_cols = A.comult.columns();
            const std::vector<Vec> db_cols = B.comult.columns();
            Mat out(A.field(), dim * dim, dim);
            for (Index i = 0; i < da; ++i)
                for (Index j = 0; j < db; ++j) {
                    const Index col = i * db + j;
                    for (const auto& [pq, cA] : da_cols[static_cast<std::size_t>(i)].entries()) {
                        const Index p = pq / da, q = pq % da;
                        for (const auto& [rs, cB] : db_cols[static_cast<std::size_t>(j)].entries()) {
                            const Index r = rs / db, s = rs % db;
                            const Scalar c = cA * cB;
                            for (const auto& [pp, cphi] : pb_cols[static_cast<std::size_t>(p)].entries())
                                out.add_at((pp * db + r) * dim + (q * db + s), col, c * cphi);
                        }
                    }
                }
            return out;
        },
        [dd]() {
            const FinHopfAlgebra& A = *dd->A;
            const FinHopfAlgebra& B = *dd->B;
            const Index da = A.dim(), db = B.dim();
            Mat out(A.field(), 1, da * db);
            for (Index i = 0; i < da; ++i)
                for (Index j = 0; j < db; ++j) out.set(0, i * db + j, A.counit.at(0, i) * B.counit.at(0, j));
            return out;
        },
        [dd, phi](const GroupElem& al) {
            const FinHopfAlgebra& A = *dd->A;
            const FinHopfAlgebra& B = *dd->B;
            const ScalarField& f = A.field();
            const Index da = A.dim(), db = B.dim();
            const Index dim = da * db;
            const Mat& pa = phi.matrix(al);
            const Mat m1 = pa.transpose() * dd->sigma;       // sigma(phi_a(.), .)
            const Mat& m3 = dd->sigma_sb;                    // sigma(., S(.))
            const Mat pa_s = pa * A.antipode;                // phi_a S
            const std::vector<Vec> pas_cols = pa_s.columns();
            const std::vector<Vec> sb_cols = B.antipode.columns();
            const std::vector<Vec> d3a_cols = dd->d3a.columns();
            const std::vector<Vec> d3b_cols = dd->d3b.columns();
            Mat out(f, dim, dim);
            for (Index i = 0; i < da; ++i)
                for (Index j = 0; j < db; ++j) {
                    Vec img(f, dim);
                    for (const auto& [ia3, ca] : d3a_cols[static_cast<std::size_t>(i)].entries()) {
                        const Index t1 = ia3 / (da * da);
                        const Index t2 = (ia3 / da) % da;
                        const Index t3 = ia3 % da;
                        for (const auto& [ib3, cb] : d3b_cols[static_cast<std::size_t>(j)].entries()) {
                            const Index u1 = ib3 / (db * db);
                            const Index u2 = (ib3 / db) % db;
                            const Index u3 = ib3 % db;
                            const Scalar w = ca * cb * m1.at(t1, u1) * m3.at(t3, u3);
                            if (w.is_zero()) continue;
                            for (const auto& [x, ex] : pas_cols[static_cast<std::size_t>(t2)].entries())
                                for (const auto& [y, ey] : sb_cols[static_cast<std::size_t>(u2)].entries())
                                    img.add_at(x * db + y, w * ex * ey);
                        }
                    }
                    out.set_column(i * db + j, img);
                }
            return out;
        });
    return d;
}

// sigma(phi_b(x), psi_b(y)) = sigma(x, y) on all basis pairs, per color.
inline VerificationReport check_compatible(const PairingTable& sigma, const HopfAction& phi, const HopfAction& psi,
                                           std::span<const GroupElem> colors) {
    VerificationReport rep;
    const GroupOracle& g = phi.group();
    for (const auto& b : colors) {
        CheckEntry e{"action-compatible", {g.serialize(b)}, true, {}, ""};
        const Mat lhs = phi.matrix(b).transpose() * sigma.sigma * psi.matrix(b);
        if (auto w = detail::first_col_diff(lhs, sigma.sigma)) {
            e.pass = false;
            // witness: first differing basis pair
            for (Index i = 0; i < sigma.sigma.rows() && e.witness.empty(); ++i)
                if (!(lhs.at(i, *w) == sigma.sigma.at(i, *w))) e.witness = {i, *w};
        }
        rep.add(std::move(e));
    }
    rep.sort();
    return rep;
}

// The unique (sigma,phi)-compatible action on B for non-degenerate sigma:
// sigma(x, psi_b(y)) = sigma(phi_{b^-1}(x), y), solved exactly against the
// sigma matrix.
inline HopfAction dual_action(const PairingTable& sigma, const HopfAction& phi) {
    {
        auto [ia, ib] = pairing_annihilators(sigma);
        if (!ia.empty() || !ib.empty()) throw non_invertible("dual_action: pairing is degenerate");
    }
    if (sigma.sigma.rows() != sigma.sigma.cols()) throw non_invertible("dual_action: sigma is not square");
    auto sigma_inv = std::make_shared<const Mat>(inverse(sigma.sigma));
    auto sig = std::make_shared<const Mat>(sigma.sigma);
    const GroupOracle group = phi.group();
    return HopfAction(group, sigma.B, [sig, sigma_inv, phi, group](const GroupElem& b) {
        const Mat& phi_inv = phi.matrix(group.inv(b));
        return (*sigma_inv) * phi_inv.transpose() * (*sig);
    });
}

// Crossing of the double from a compatible pair of actions:
// phi_b (x (x) y) = phi_b(x) (x) psi_b(y). Compatibility is checked lazily
// per color; the first failing color reports a witness basis pair.
inline void install_crossing(HopfPiCoalgebra& d, const PairingTable& sigma, const HopfAction& phi,
                             const HopfAction& psi) {
    d.set_crossing([sigma, phi, psi](const GroupElem& be, const GroupElem&) {
        const GroupElem single[] = {be};
        const VerificationReport comp = check_compatible(sigma, phi, psi, single);
        if (!comp.all_pass())
            throw construction_failure("install_crossing: psi is not (sigma,phi)-compatible: " + comp.summary());
        return kron(phi.matrix(be), psi.matrix(be));
    });
}

// Bases (e_i) of A and (f_i) of B with sigma(e_i, f_j) = delta_{ij}:
// e = standard basis, f = columns of sigma^{-1}.
struct DualBases {
    std::vector<Vec> e;
    std::vector<Vec> f;
};

inline DualBases dual_bases(const PairingTable& sigma) {
    if (sigma.sigma.rows() != sigma.sigma.cols()) throw non_invertible("dual_bases: sigma is not square");
    const Mat inv = inverse(sigma.sigma); // throws non_invertible when singular
    DualBases db;
    const Index n = sigma.sigma.rows();
    for (Index i = 0; i < n; ++i) db.e.push_back(Vec::basis(sigma.field(), n, i));
    for (Index j = 0; j < n; ++j) db.f.push_back(inv.column(j));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const Scalar expected = i == j ? Scalar::one(sigma.field()) : Scalar::zero(sigma.field());
            if (!(sigma.eval(db.e[static_cast<std::size_t>(i)], db.f[static_cast<std::size_t>(j)]) == expected))
                throw construction_failure("dual_bases: sigma(e_i, f_j) != delta");
        }
    return db;
}

// The three dual-basis identities of the untwisted quantum double:
//   UQD1: sum S(e_i) e_j (x) f_i f_j = 1 (x) 1
//   UQD2: sum e_i (x) Delta(f_i) = sum e_i e_j (x) f_j (x) f_i
//   UQD3: sum Delta(e_i) (x) f_i = sum e_i (x) e_j (x) f_i f_j
inline VerificationReport check_uqd(const PairingTable& p, const DualBases& db) {
    VerificationReport rep;
    const FinHopfAlgebra& A = *p.A;
    const FinHopfAlgebra& B = *p.B;
    const ScalarField& f = p.field();
    const Index da = A.dim(), dbim = B.dim();
    const std::size_t n = db.e.size();

    {
        CheckEntry e{"uqd1", {}, true, {}, ""};
        Vec acc(f, da * dbim);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec sei = A.antipode.apply(db.e[i]);
            for (std::size_t j = 0; j < n; ++j)
                acc += tensor(A.alg.mul(sei, db.e[j]), B.alg.mul(db.f[i], db.f[j]));
        }
        if (!(acc == tensor(A.alg.unit, B.alg.unit))) e.pass = false;
        rep.add(std::move(e));
    }
    {
        CheckEntry e{"uqd2", {}, true, {}, ""};
        Vec lhs(f, da * dbim * dbim), rhs(f, da * dbim * dbim);
        for (std::size_t i = 0; i < n; ++i) lhs += tensor(db.e[i], B.comult.apply(db.f[i]));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rhs += tensor(A.alg.mul(db.e[i], db.e[j]), tensor(db.f[j], db.f[i]));
        if (!(lhs == rhs)) e.pass = false;
        rep.add(std::move(e));
    }
    {
        CheckEntry e{"uqd3", {}, true, {}, ""};
        Vec lhs(f, da * da * dbim), rhs(f, da * da * dbim);
        for (std::size_t i = 0; i < n; ++i) lhs += tensor(A.comult.apply(db.e[i]), db.f[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rhs += tensor(tensor(db.e[i], db.e[j]), B.alg.mul(db.f[i], db.f[j]));
        if (!(lhs == rhs)) e.pass = false;
        rep.add(std::move(e));
    }
    return rep;
}

// R-matrix of the double from dual bases: R = sum (e_i (x) 1) (x) (1 (x) f_i)
// with inverse sum (S(e_i) (x) 1) (x) (1 (x) f_i). The element is the same
// for every color pair; the UQD identities are asserted here.
inline void install_r_matrix(HopfPiCoalgebra& d, const PairingTable& p, const DualBases& db) {
    if (!d.has_crossing()) throw std::logic_error("install_r_matrix: crossing must be installed first");
    require_pass(check_uqd(p, db), "install_r_matrix: dual-basis identities fail (inconsistent sigma/bases)");

    const FinHopfAlgebra& A = *p.A;
    const FinHopfAlgebra& B = *p.B;
    const ScalarField& f = p.field();
    const Index dim = A.dim() * B.dim();
    Vec value(f, dim * dim), inverse(f, dim * dim);
    for (std::size_t i = 0; i < db.e.size(); ++i) {
        const Vec left = tensor(db.e[i], B.alg.unit);
        const Vec left_s = tensor(A.antipode.apply(db.e[i]), B.alg.unit);
        const Vec right = tensor(A.alg.unit, db.f[i]);
        value += tensor(left, right);
        inverse += tensor(left_s, right);
    }
    auto r = std::make_shared<const RMatrix>(RMatrix{std::move(value), std::move(inverse)});
    d.set_rmatrix([r](const GroupElem&, const GroupElem&) { return *r; });
}

} // namespace hopfpi
