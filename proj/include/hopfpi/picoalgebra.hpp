#pragma once

#include "hopfpi/algebra.hpp"
#include "hopfpi/cache.hpp"
#include "hopfpi/group.hpp"
#include "hopfpi/pairing.hpp"
#include "hopfpi/parallel.hpp"
#include "hopfpi/report.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hopfpi {

// An R-matrix component: an invertible element of H_alpha (x) H_beta,
// carried together with its two-sided inverse.
struct RMatrix {
    Vec value;
    Vec inverse;
};

// A Hopf pi-coalgebra: a family of algebras indexed by a group oracle with
// comultiplication Delta_{a,b}: H_{ab} -> H_a (x) H_b, counit on H_1 and
// antipode S_a: H_a -> H_{a^-1}; optionally a crossing, R-matrix and twist.
// Components and structure maps are built lazily and cached by serialized
// color; every axiom is checked by the verify_* suite, none is assumed.
class HopfPiCoalgebra {
public:
    using ComponentFn = std::function<FinAlgebra(const GroupElem&)>;
    using ComultFn = std::function<Mat(const GroupElem&, const GroupElem&)>;
    using CounitFn = std::function<Mat()>;
    using AntipodeFn = std::function<Mat(const GroupElem&)>;
    using CrossingFn = std::function<Mat(const GroupElem&, const GroupElem&)>; // (beta, alpha)
    using RMatrixFn = std::function<RMatrix(const GroupElem&, const GroupElem&)>;
    using TwistFn = std::function<Vec(const GroupElem&)>;

    HopfPiCoalgebra(GroupOracle group, ComponentFn comp, ComultFn comult, CounitFn counit, AntipodeFn antipode)
        : impl_(std::make_shared<Impl>()) {
        impl_->group = std::move(group);
        impl_->component_fn = std::move(comp);
        impl_->comult_fn = std::move(comult);
        impl_->counit_fn = std::move(counit);
        impl_->antipode_fn = std::move(antipode);
    }

    const GroupOracle& group() const { return impl_->group; }

    void set_crossing(CrossingFn fn) { impl_->crossing_fn = std::move(fn); }
    void set_rmatrix(RMatrixFn fn) { impl_->rmatrix_fn = std::move(fn); }
    void set_twist(TwistFn fn) { impl_->twist_fn = std::move(fn); }

    bool has_crossing() const { return static_cast<bool>(impl_->crossing_fn); }
    bool has_rmatrix() const { return static_cast<bool>(impl_->rmatrix_fn); }
    bool has_twist() const { return static_cast<bool>(impl_->twist_fn); }

    std::string color_key(const GroupElem& a) const { return impl_->group.serialize(a); }

    const FinAlgebra& component(const GroupElem& a) const {
        return impl_->components.get(color_key(a), [&] { return impl_->component_fn(a); });
    }

    const Mat& comult(const GroupElem& a, const GroupElem& b) const {
        const std::string key = color_key(a) + "|" + color_key(b);
        return impl_->comults.get(key, [&] {
            Mat m = impl_->comult_fn(a, b);
            const Index da = component(a).dim, db = component(b).dim;
            const Index dab = component(impl_->group.mul(a, b)).dim;
            if (m.rows() != da * db || m.cols() != dab) throw dimension_mismatch("comult(" + key + "): shape mismatch");
            return m;
        });
    }

    const Mat& counit() const {
        return impl_->counit_cache.get("", [&] {
            Mat m = impl_->counit_fn();
            if (m.rows() != 1 || m.cols() != component(impl_->group.identity()).dim)
                throw dimension_mismatch("counit: shape mismatch");
            return m;
        });
    }

    const Mat& antipode(const GroupElem& a) const {
        return impl_->antipodes.get(color_key(a), [&] {
            Mat m = impl_->antipode_fn(a);
            if (m.cols() != component(a).dim || m.rows() != component(impl_->group.inv(a)).dim)
                throw dimension_mismatch("antipode(" + color_key(a) + "): shape mismatch");
            return m;
        });
    }

    // phi_beta restricted to H_alpha, landing in H_{beta alpha beta^-1}.
    const Mat& crossing(const GroupElem& beta, const GroupElem& alpha) const {
        if (!impl_->crossing_fn) throw std::logic_error("crossing: not installed");
        const std::string key = color_key(beta) + "|" + color_key(alpha);
        return impl_->crossings.get(key, [&] {
            Mat m = impl_->crossing_fn(beta, alpha);
            if (m.cols() != component(alpha).dim || m.rows() != component(impl_->group.conj(beta, alpha)).dim)
                throw dimension_mismatch("crossing(" + key + "): shape mismatch");
            return m;
        });
    }

    const RMatrix& rmatrix(const GroupElem& a, const GroupElem& b) const {
        if (!impl_->rmatrix_fn) throw std::logic_error("rmatrix: not installed");
        const std::string key = color_key(a) + "|" + color_key(b);
        return impl_->rmatrices.get(key, [&] {
            RMatrix r = impl_->rmatrix_fn(a, b);
            const Index d = component(a).dim * component(b).dim;
            if (r.value.dim() != d || r.inverse.dim() != d)
                throw dimension_mismatch("rmatrix(" + key + "): shape mismatch");
            return r;
        });
    }

    const Vec& twist(const GroupElem& a) const {
        if (!impl_->twist_fn) throw std::logic_error("twist: not installed");
        return impl_->twists.get(color_key(a), [&] {
            Vec t = impl_->twist_fn(a);
            if (t.dim() != component(a).dim) throw dimension_mismatch("twist(" + color_key(a) + "): shape mismatch");
            return t;
        });
    }

    // Materialize components for a batch of colors in parallel (construction
    // asserts associativity, which dominates build cost for big components).
    void warm_components(std::span<const GroupElem> colors) const {
        std::vector<GroupElem> todo;
        std::map<std::string, bool> seen;
        for (const auto& a : colors)
            if (seen.emplace(color_key(a), true).second) todo.push_back(a);
        parallel_for(todo.size(), [&](std::size_t i) { component(todo[i]); });
    }

    // Product in H_a (x) H_b.
    Vec mul2(const GroupElem& a, const GroupElem& b, const Vec& u, const Vec& v) const {
        return algebra_tensor_mul(component(a), component(b), u, v);
    }

    // Product in H_a (x) H_b (x) H_c.
    Vec mul3(const GroupElem& a, const GroupElem& b, const GroupElem& c, const Vec& u, const Vec& v) const {
        return algebra_tensor_mul(component(a), component(b), component(c), u, v);
    }

private:
    struct Impl {
        GroupOracle group = GroupOracle::finite(FiniteGroupTable::cyclic(1));
        ComponentFn component_fn;
        ComultFn comult_fn;
        CounitFn counit_fn;
        AntipodeFn antipode_fn;
        CrossingFn crossing_fn;
        RMatrixFn rmatrix_fn;
        TwistFn twist_fn;
        detail::KeyedCache<FinAlgebra> components;
        detail::KeyedCache<Mat> comults;
        detail::KeyedCache<Mat> counit_cache;
        detail::KeyedCache<Mat> antipodes;
        detail::KeyedCache<Mat> crossings;
        detail::KeyedCache<RMatrix> rmatrices;
        detail::KeyedCache<Vec> twists;
    };

    std::shared_ptr<Impl> impl_;
};

namespace detail {

inline Mat outer(const Vec& col, const Mat& row) {
    Mat out(col.field(), col.dim(), row.cols());
    for (const auto& [i, s] : col.entries())
        for (const auto& [jk, t] : row.entries()) out.set(i, jk.second, s * t);
    return out;
}

inline std::optional<Index> first_col_diff(const Mat& a, const Mat& b) {
    if (a == b) return std::nullopt;
    for (Index c = 0; c < a.cols(); ++c)
        if (!(a.column(c) == b.column(c))) return c;
    return a.cols(); // shape mismatch
}

// Runs one named check over a list of color tuples, in parallel, merging
// deterministically (the slot order is the tuple order).
template <typename F>
void run_instances(VerificationReport& rep, const std::vector<std::vector<GroupElem>>& tuples, F&& check) {
    std::vector<CheckEntry> slots(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t i) { slots[i] = check(tuples[i]); });
    for (auto& e : slots) rep.add(std::move(e));
}

inline std::vector<std::vector<GroupElem>> tuples_of(std::span<const GroupElem> t, int arity) {
    std::vector<std::vector<GroupElem>> out;
    if (arity == 1) {
        for (const auto& a : t) out.push_back({a});
    } else if (arity == 2) {
        for (const auto& a : t)
            for (const auto& b : t) out.push_back({a, b});
    } else {
        for (const auto& a : t)
            for (const auto& b : t)
                for (const auto& c : t) out.push_back({a, b, c});
    }
    return out;
}

} // namespace detail

// Hopf pi-coalgebra axiom suite on all tuples from the color set:
// coassociativity, counit, antipode, Delta/eps algebra homomorphisms and the
// antipode anti-(co)multiplicativity identities.
inline VerificationReport verify_picoalgebra(const HopfPiCoalgebra& h, std::span<const GroupElem> colors) {
    VerificationReport rep;
    const GroupOracle& g = h.group();
    const GroupElem one = g.identity();
    const ScalarField f = h.component(one).field;

    // components first, in parallel; then the cheap maps, serially
    {
        std::vector<GroupElem> needed{one};
        for (const auto& a : colors) {
            needed.push_back(a);
            needed.push_back(g.inv(a));
            for (const auto& b : colors) {
                needed.push_back(g.mul(a, b));
                needed.push_back(g.inv(g.mul(a, b)));
                for (const auto& c : colors) needed.push_back(g.mul(g.mul(a, b), c));
            }
        }
        h.warm_components(needed);
    }
    for (const auto& a : colors) {
        h.antipode(a);
        h.antipode(g.inv(a));
        h.comult(a, g.inv(a));
        h.comult(g.inv(a), a);
        h.comult(a, one);
        h.comult(one, a);
        for (const auto& b : colors) {
            h.comult(a, b);
            h.antipode(g.mul(a, b));
            h.comult(g.inv(b), g.inv(a));
            for (const auto& c : colors) {
                h.comult(g.mul(a, b), c);
                h.comult(a, g.mul(b, c));
                h.comult(b, c);
            }
        }
    }
    h.counit();

    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        const GroupElem &a = t[0], &b = t[1], &c = t[2];
        CheckEntry e{"eq1-coassoc", {ser(a), ser(b), ser(c)}, true, {}, ""};
        const Mat lhs = kron(h.comult(a, b), Mat::identity(f, h.component(c).dim)) * h.comult(g.mul(a, b), c);
        const Mat rhs = kron(Mat::identity(f, h.component(a).dim), h.comult(b, c)) * h.comult(a, g.mul(b, c));
        if (auto w = detail::first_col_diff(lhs, rhs)) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        const GroupElem& a = t[0];
        CheckEntry e{"eq2-counit", {ser(a)}, true, {}, ""};
        const Index da = h.component(a).dim;
        const Mat left = kron(Mat::identity(f, da), h.counit()) * h.comult(a, one);
        const Mat right = kron(h.counit(), Mat::identity(f, da)) * h.comult(one, a);
        const Mat id = Mat::identity(f, da);
        auto w = detail::first_col_diff(left, id);
        if (!w) w = detail::first_col_diff(right, id);
        if (w) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        const GroupElem& a = t[0];
        const GroupElem ai = g.inv(a);
        CheckEntry e{"eq3-antipode", {ser(a)}, true, {}, ""};
        const FinAlgebra& ha = h.component(a);
        const Mat mult = ha.mult.as_matrix(f);
        const Mat expected = detail::outer(ha.unit, h.counit());
        const Mat left = mult * kron(h.antipode(ai), Mat::identity(f, ha.dim)) * h.comult(ai, a);
        const Mat right = mult * kron(Mat::identity(f, ha.dim), h.antipode(ai)) * h.comult(a, ai);
        auto w = detail::first_col_diff(left, expected);
        if (!w) w = detail::first_col_diff(right, expected);
        if (w) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"alg-hom-comult", {ser(a), ser(b)}, true, {}, ""};
        const GroupElem ab = g.mul(a, b);
        const FinAlgebra& hab = h.component(ab);
        const Mat& d = h.comult(a, b);
        if (!(d.apply(hab.unit) == tensor(h.component(a).unit, h.component(b).unit))) {
            e.pass = false;
            e.detail = "Delta(1) != 1(x)1";
            return e;
        }
        const std::vector<Vec> cols = d.columns();
        for (Index i = 0; i < hab.dim; ++i)
            for (Index j = 0; j < hab.dim; ++j) {
                Vec prod(f, hab.dim);
                hab.mult.accumulate(prod, i, j, Scalar::one(f));
                const Vec lhs = d.apply(prod);
                const Vec rhs =
                    h.mul2(a, b, cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
                if (!(lhs == rhs)) {
                    e.pass = false;
                    e.witness = {i, j};
                    return e;
                }
            }
        return e;
    });

    {
        CheckEntry e{"alg-hom-counit", {ser(one)}, true, {}, ""};
        const FinAlgebra& h1 = h.component(one);
        const Mat& eps = h.counit();
        auto eps_of = [&](const Vec& v) {
            Scalar acc = Scalar::zero(f);
            for (const auto& [i, s] : v.entries()) acc += eps.at(0, i) * s;
            return acc;
        };
        if (!(eps_of(h1.unit) == Scalar::one(f))) {
            e.pass = false;
            e.detail = "eps(1) != 1";
        }
        for (Index i = 0; i < h1.dim && e.pass; ++i)
            for (Index j = 0; j < h1.dim; ++j) {
                Vec prod(f, h1.dim);
                h1.mult.accumulate(prod, i, j, Scalar::one(f));
                if (!(eps_of(prod) == eps.at(0, i) * eps.at(0, j))) {
                    e.pass = false;
                    e.witness = {i, j};
                    break;
                }
            }
        rep.add(std::move(e));
    }

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        const GroupElem& a = t[0];
        CheckEntry e{"antipode-antimult", {ser(a)}, true, {}, ""};
        const FinAlgebra& ha = h.component(a);
        const FinAlgebra& hai = h.component(g.inv(a));
        const Mat& s = h.antipode(a);
        if (!(s.apply(ha.unit) == hai.unit)) {
            e.pass = false;
            e.detail = "S(1) != 1";
            return e;
        }
        const std::vector<Vec> scols = s.columns();
        for (Index i = 0; i < ha.dim; ++i)
            for (Index j = 0; j < ha.dim; ++j) {
                Vec prod(f, ha.dim);
                ha.mult.accumulate(prod, i, j, Scalar::one(f));
                const Vec lhs = s.apply(prod);
                const Vec rhs = hai.mul(scols[static_cast<std::size_t>(j)], scols[static_cast<std::size_t>(i)]);
                if (!(lhs == rhs)) {
                    e.pass = false;
                    e.witness = {i, j};
                    return e;
                }
            }
        return e;
    });

    {
        CheckEntry e{"counit-antipode", {ser(one)}, true, {}, ""};
        if (!(h.counit() * h.antipode(one) == h.counit())) e.pass = false;
        rep.add(std::move(e));
    }

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"antipode-anticomult", {ser(a), ser(b)}, true, {}, ""};
        const GroupElem ab = g.mul(a, b);
        const Index dai = h.component(g.inv(a)).dim;
        const Index dbi = h.component(g.inv(b)).dim;
        const Mat lhs = h.comult(g.inv(b), g.inv(a)) * h.antipode(ab);
        const Mat rhs = flip_map(f, dai, dbi) * kron(h.antipode(a), h.antipode(b)) * h.comult(a, b);
        if (auto w = detail::first_col_diff(lhs, rhs)) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    rep.sort();
    return rep;
}

// Crossing axioms: compatibility with Delta and eps, the action law, and the
// derived identities phi_1 = id and phi_beta S_alpha = S_{beta alpha beta^-1}
// phi_beta; each phi_beta is checked to be an algebra isomorphism.
inline VerificationReport verify_crossing(const HopfPiCoalgebra& h, std::span<const GroupElem> colors) {
    if (!h.has_crossing()) throw std::logic_error("verify_crossing: crossing not installed");
    VerificationReport rep;
    const GroupOracle& g = h.group();
    const GroupElem one = g.identity();
    const ScalarField f = h.component(one).field;
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    {
        std::vector<GroupElem> needed{one};
        for (const auto& a : colors) {
            needed.push_back(a);
            needed.push_back(g.inv(a));
            for (const auto& b : colors) {
                needed.push_back(g.conj(b, a));
                needed.push_back(g.conj(b, g.inv(a)));
                needed.push_back(g.mul(a, b));
                for (const auto& c : colors) {
                    needed.push_back(g.mul(a, c));
                    needed.push_back(g.conj(b, c));
                    needed.push_back(g.conj(a, g.conj(b, c)));
                    needed.push_back(g.conj(g.mul(a, b), c));
                    needed.push_back(g.conj(b, g.mul(a, c)));
                }
            }
        }
        h.warm_components(needed);
    }
    for (const auto& b : colors) {
        h.crossing(one, b);
        h.crossing(b, one);
        for (const auto& a : colors) {
            h.crossing(b, a);
            h.crossing(b, g.inv(a));
            h.crossing(b, g.mul(a, g.inv(a)));
            h.antipode(g.conj(b, a));
            for (const auto& c : colors) {
                h.crossing(b, g.mul(a, c));
                h.comult(g.conj(b, a), g.conj(b, c));
                h.crossing(a, g.conj(b, c));
                h.crossing(g.mul(a, b), c);
            }
        }
    }

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        const GroupElem& a = t[0];
        CheckEntry e{"crossing-identity", {ser(a)}, true, {}, ""};
        if (!(h.crossing(one, a) == Mat::identity(f, h.component(a).dim))) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        // eq4 with tuple (beta, alpha, gamma)
        const GroupElem &b = t[0], &a = t[1], &c = t[2];
        CheckEntry e{"eq4-crossing-comult", {ser(b), ser(a), ser(c)}, true, {}, ""};
        const Mat lhs = kron(h.crossing(b, a), h.crossing(b, c)) * h.comult(a, c);
        const Mat rhs = h.comult(g.conj(b, a), g.conj(b, c)) * h.crossing(b, g.mul(a, c));
        if (auto w = detail::first_col_diff(lhs, rhs)) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        const GroupElem& b = t[0];
        CheckEntry e{"eq5-crossing-counit", {ser(b)}, true, {}, ""};
        if (!(h.counit() * h.crossing(b, one) == h.counit())) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        // eq6: phi_alpha phi_beta = phi_{alpha beta} on H_gamma
        const GroupElem &a = t[0], &b = t[1], &c = t[2];
        CheckEntry e{"eq6-crossing-action", {ser(a), ser(b), ser(c)}, true, {}, ""};
        const Mat lhs = h.crossing(a, g.conj(b, c)) * h.crossing(b, c);
        const Mat rhs = h.crossing(g.mul(a, b), c);
        if (auto w = detail::first_col_diff(lhs, rhs)) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // phi_beta S_alpha = S_{beta alpha beta^-1} phi_beta
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"crossing-antipode", {ser(a), ser(b)}, true, {}, ""};
        const Mat lhs = h.crossing(b, g.inv(a)) * h.antipode(a);
        const Mat rhs = h.antipode(g.conj(b, a)) * h.crossing(b, a);
        if (auto w = detail::first_col_diff(lhs, rhs)) {
            e.pass = false;
            e.witness = {*w};
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // each phi_beta: H_alpha -> H_{beta alpha beta^-1} is an algebra iso
        const GroupElem &b = t[0], &a = t[1];
        CheckEntry e{"crossing-alg-iso", {ser(b), ser(a)}, true, {}, ""};
        const Mat& phi = h.crossing(b, a);
        const FinAlgebra& src = h.component(a);
        const FinAlgebra& dst = h.component(g.conj(b, a));
        if (!try_inverse(phi)) {
            e.pass = false;
            e.detail = "not invertible";
            return e;
        }
        if (!(phi.apply(src.unit) == dst.unit)) {
            e.pass = false;
            e.detail = "unit not preserved";
            return e;
        }
        const std::vector<Vec> cols = phi.columns();
        for (Index i = 0; i < src.dim; ++i)
            for (Index j = 0; j < src.dim; ++j) {
                Vec prod(f, src.dim);
                src.mult.accumulate(prod, i, j, Scalar::one(f));
                if (!(phi.apply(prod) ==
                      dst.mul(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]))) {
                    e.pass = false;
                    e.witness = {i, j};
                    return e;
                }
            }
        return e;
    });

    rep.sort();
    return rep;
}

// Quasitriangularity: the R-matrix has a verified two-sided inverse and
// satisfies the intertwiner identity, the two coproduct factorizations and
// crossing-equivariance, on all tuples from the color set.
inline VerificationReport verify_quasitriangular(const HopfPiCoalgebra& h, std::span<const GroupElem> colors) {
    if (!h.has_crossing() || !h.has_rmatrix())
        throw std::logic_error("verify_quasitriangular: crossing and rmatrix must be installed");
    VerificationReport rep;
    const GroupOracle& g = h.group();
    const ScalarField f = h.component(g.identity()).field;
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    {
        std::vector<GroupElem> needed;
        for (const auto& a : colors)
            for (const auto& b : colors) {
                needed.push_back(a);
                needed.push_back(g.mul(a, b));
                needed.push_back(g.conj(a, b));
                for (const auto& c : colors) {
                    needed.push_back(g.mul(b, c));
                    needed.push_back(g.conj(b, c));
                    needed.push_back(g.conj(b, a));
                }
            }
        h.warm_components(needed);
    }
    for (const auto& a : colors)
        for (const auto& b : colors) {
            h.rmatrix(a, b);
            h.comult(a, b);
            const GroupElem abai = g.conj(a, b); // a b a^-1
            h.comult(abai, a);
            h.crossing(g.inv(a), abai);
            for (const auto& c : colors) {
                h.rmatrix(a, g.mul(b, c));
                h.rmatrix(g.mul(a, b), c);
                h.rmatrix(a, g.conj(b, c));
                h.crossing(g.inv(b), g.conj(b, c));
                h.rmatrix(g.conj(b, a), g.conj(b, c));
                h.crossing(b, a);
                h.crossing(b, c);
                h.comult(b, c);
                h.comult(a, b);
            }
        }

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"r-inverse", {ser(a), ser(b)}, true, {}, ""};
        const RMatrix& r = h.rmatrix(a, b);
        const Vec unit2 = tensor(h.component(a).unit, h.component(b).unit);
        if (!(h.mul2(a, b, r.value, r.inverse) == unit2) || !(h.mul2(a, b, r.inverse, r.value) == unit2)) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // eq7: R . Delta_{a,b}(x) = flip (phi_{a^-1} (x) id) Delta_{a b a^-1, a}(x) . R
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"eq7-qt1", {ser(a), ser(b)}, true, {}, ""};
        const GroupElem ab = g.mul(a, b);
        const GroupElem abai = g.conj(a, b);
        const Index da = h.component(a).dim, db = h.component(b).dim;
        const Index dabai = h.component(abai).dim;
        const Vec& r = h.rmatrix(a, b).value;
        const Mat& d1 = h.comult(a, b);
        const Mat& d2 = h.comult(abai, a);
        const Mat& phi = h.crossing(g.inv(a), abai);
        const Index dims2[] = {dabai, da};
        for (Index x = 0; x < h.component(ab).dim; ++x) {
            const Vec lhs = h.mul2(a, b, r, d1.column(x));
            const Vec mid = apply_on_leg(phi, d2.column(x), dims2, 0);
            const Vec rhs = h.mul2(a, b, flip2(mid, db, da), r);
            if (!(lhs == rhs)) {
                e.pass = false;
                e.witness = {x};
                return e;
            }
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        // eq8: (id (x) Delta_{b,c})(R_{a,bc}) = (R_{a,c})_{1b3} . (R_{a,b})_{12c}
        const GroupElem &a = t[0], &b = t[1], &c = t[2];
        CheckEntry e{"eq8-qt2", {ser(a), ser(b), ser(c)}, true, {}, ""};
        const GroupElem bc = g.mul(b, c);
        const Index da = h.component(a).dim, db = h.component(b).dim, dc = h.component(c).dim;
        const Index dims2[] = {da, h.component(bc).dim};
        const Vec lhs = apply_on_leg(h.comult(b, c), h.rmatrix(a, bc).value, dims2, 1);
        const Vec rac = leg_embed_13(h.rmatrix(a, c).value, da, dc, h.component(b).unit);
        const Vec rab = leg_embed_12(h.rmatrix(a, b).value, da, db, h.component(c).unit);
        const Vec rhs = h.mul3(a, b, c, rac, rab);
        if (!(lhs == rhs)) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        // eq9: (Delta_{a,b} (x) id)(R_{ab,c}) =
        //      [(id (x) phi_{b^-1})(R_{a, b c b^-1})]_{1b3} . (R_{b,c})_{a23}
        const GroupElem &a = t[0], &b = t[1], &c = t[2];
        CheckEntry e{"eq9-qt3", {ser(a), ser(b), ser(c)}, true, {}, ""};
        const GroupElem ab = g.mul(a, b);
        const GroupElem bcbi = g.conj(b, c);
        const Index da = h.component(a).dim, db = h.component(b).dim, dc = h.component(c).dim;
        const Index dims2[] = {h.component(ab).dim, dc};
        const Vec lhs = apply_on_leg(h.comult(a, b), h.rmatrix(ab, c).value, dims2, 0);
        const Index dims_r[] = {da, h.component(bcbi).dim};
        const Vec twisted = apply_on_leg(h.crossing(g.inv(b), bcbi), h.rmatrix(a, bcbi).value, dims_r, 1);
        const Vec mid = leg_embed_13(twisted, da, dc, h.component(b).unit);
        const Vec rbc = leg_embed_23(h.rmatrix(b, c).value, db, dc, h.component(a).unit);
        const Vec rhs = h.mul3(a, b, c, mid, rbc);
        if (!(lhs == rhs)) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        // eq10: (phi_b (x) phi_b)(R_{a,c}) = R_{b a b^-1, b c b^-1}
        const GroupElem &b = t[0], &a = t[1], &c = t[2];
        CheckEntry e{"eq10-qt4", {ser(b), ser(a), ser(c)}, true, {}, ""};
        const Index da = h.component(a).dim, dc = h.component(c).dim;
        const Index dims2[] = {da, dc};
        Vec img = apply_on_leg(h.crossing(b, a), h.rmatrix(a, c).value, dims2, 0);
        const Index dims2b[] = {h.component(g.conj(b, a)).dim, dc};
        img = apply_on_leg(h.crossing(b, c), img, dims2b, 1);
        if (!(img == h.rmatrix(g.conj(b, a), g.conj(b, c)).value)) e.pass = false;
        return e;
    });

    rep.sort();
    return rep;
}

// The four identities every R-matrix satisfies as consequences of the axioms;
// checked independently as cross-validation.
inline VerificationReport verify_r_derived(const HopfPiCoalgebra& h, std::span<const GroupElem> colors) {
    if (!h.has_crossing() || !h.has_rmatrix())
        throw std::logic_error("verify_r_derived: crossing and rmatrix must be installed");
    VerificationReport rep;
    const GroupOracle& g = h.group();
    const GroupElem one = g.identity();
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    {
        std::vector<GroupElem> needed{one};
        for (const auto& a : colors) {
            needed.push_back(a);
            needed.push_back(g.inv(a));
        }
        h.warm_components(needed);
    }
    for (const auto& a : colors) {
        h.rmatrix(one, a);
        h.rmatrix(a, one);
        for (const auto& b : colors) {
            h.rmatrix(a, b);
            h.rmatrix(g.inv(a), b);
            h.rmatrix(a, g.inv(b));
            h.rmatrix(g.inv(a), g.inv(b));
            h.crossing(a, g.inv(a));
            h.antipode(g.inv(a));
            h.antipode(b);
            h.antipode(a);
        }
    }
    h.counit();

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        const GroupElem& a = t[0];
        CheckEntry e{"rder1-counit", {ser(a)}, true, {}, ""};
        const Index d1 = h.component(one).dim, da = h.component(a).dim;
        const Index dims_l[] = {d1, da};
        const Vec left = apply_on_leg(h.counit(), h.rmatrix(one, a).value, dims_l, 0);
        const Index dims_r[] = {da, d1};
        const Vec right = apply_on_leg(h.counit(), h.rmatrix(a, one).value, dims_r, 1);
        if (!(left == h.component(a).unit) || !(right == h.component(a).unit)) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // (S_{a^-1} phi_a (x) id)(R_{a^-1, b}) = R_{a,b}^{-1}
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"rder2-antipode-crossing", {ser(a), ser(b)}, true, {}, ""};
        const GroupElem ai = g.inv(a);
        const Index dims2[] = {h.component(ai).dim, h.component(b).dim};
        const Mat m = h.antipode(ai) * h.crossing(a, ai);
        const Vec img = apply_on_leg(m, h.rmatrix(ai, b).value, dims2, 0);
        if (!(img == h.rmatrix(a, b).inverse)) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // (id (x) S_b)(R_{a,b}^{-1}) = R_{a, b^-1}
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"rder3-inverse-antipode", {ser(a), ser(b)}, true, {}, ""};
        const Index dims2[] = {h.component(a).dim, h.component(b).dim};
        const Vec img = apply_on_leg(h.antipode(b), h.rmatrix(a, b).inverse, dims2, 1);
        if (!(img == h.rmatrix(a, g.inv(b)).value)) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // (S_a (x) S_b)(R_{a,b}) = (phi_a (x) id)(R_{a^-1, b^-1})
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"rder4-antipode-both", {ser(a), ser(b)}, true, {}, ""};
        const GroupElem ai = g.inv(a), bi = g.inv(b);
        const Index dims2[] = {h.component(a).dim, h.component(b).dim};
        Vec lhs = apply_on_leg(h.antipode(a), h.rmatrix(a, b).value, dims2, 0);
        const Index dims_l2[] = {h.component(ai).dim, h.component(b).dim};
        lhs = apply_on_leg(h.antipode(b), lhs, dims_l2, 1);
        const Index dims_r[] = {h.component(ai).dim, h.component(bi).dim};
        const Vec rhs = apply_on_leg(h.crossing(a, ai), h.rmatrix(ai, bi).value, dims_r, 0);
        if (!(lhs == rhs)) e.pass = false;
        return e;
    });

    rep.sort();
    return rep;
}

// The pi-colored Yang-Baxter equation on all triples from the color set.
inline VerificationReport verify_colored_ybe(const HopfPiCoalgebra& h, std::span<const GroupElem> colors) {
    if (!h.has_crossing() || !h.has_rmatrix())
        throw std::logic_error("verify_colored_ybe: crossing and rmatrix must be installed");
    VerificationReport rep;
    const GroupOracle& g = h.group();
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    {
        std::vector<GroupElem> needed;
        for (const auto& a : colors) {
            needed.push_back(a);
            for (const auto& b : colors)
                for (const auto& c : colors) needed.push_back(g.conj(b, c));
        }
        h.warm_components(needed);
    }
    for (const auto& a : colors)
        for (const auto& b : colors)
            for (const auto& c : colors) {
                h.rmatrix(a, b);
                h.rmatrix(b, c);
                h.rmatrix(a, c);
                h.rmatrix(a, g.conj(b, c));
                h.crossing(g.inv(b), g.conj(b, c));
            }

    detail::run_instances(rep, detail::tuples_of(colors, 3), [&](const std::vector<GroupElem>& t) {
        const GroupElem &a = t[0], &b = t[1], &c = t[2];
        CheckEntry e{"eq20-colored-ybe", {ser(a), ser(b), ser(c)}, true, {}, ""};
        const Index da = h.component(a).dim, db = h.component(b).dim, dc = h.component(c).dim;
        const Vec rbc = leg_embed_23(h.rmatrix(b, c).value, db, dc, h.component(a).unit);
        const Vec rac = leg_embed_13(h.rmatrix(a, c).value, da, dc, h.component(b).unit);
        const Vec rab = leg_embed_12(h.rmatrix(a, b).value, da, db, h.component(c).unit);
        const Vec lhs = h.mul3(a, b, c, h.mul3(a, b, c, rbc, rac), rab);
        const GroupElem bcbi = g.conj(b, c);
        const Index dims_r[] = {da, h.component(bcbi).dim};
        const Vec twisted = apply_on_leg(h.crossing(g.inv(b), bcbi), h.rmatrix(a, bcbi).value, dims_r, 1);
        const Vec mid = leg_embed_13(twisted, da, dc, h.component(b).unit);
        const Vec rhs = h.mul3(a, b, c, h.mul3(a, b, c, rab, mid), rbc);
        if (!(lhs == rhs)) e.pass = false;
        return e;
    });

    rep.sort();
    return rep;
}

// Ribbon axioms: the twist is invertible, implements the crossing by
// conjugation, intertwines the antipode and crossing, and factorizes the
// comultiplication against the R-matrix.
inline VerificationReport verify_ribbon(const HopfPiCoalgebra& h, std::span<const GroupElem> colors) {
    if (!h.has_crossing() || !h.has_rmatrix() || !h.has_twist())
        throw std::logic_error("verify_ribbon: crossing, rmatrix and twist must be installed");
    VerificationReport rep;
    const GroupOracle& g = h.group();
    const ScalarField f = h.component(g.identity()).field;
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    {
        std::vector<GroupElem> needed;
        for (const auto& a : colors) {
            needed.push_back(a);
            needed.push_back(g.inv(a));
            for (const auto& b : colors) {
                needed.push_back(g.mul(a, b));
                needed.push_back(g.conj(b, a));
                needed.push_back(g.conj(a, b));
            }
        }
        h.warm_components(needed);
    }
    for (const auto& a : colors) {
        h.twist(a);
        h.twist(g.inv(a));
        for (const auto& b : colors) {
            h.twist(g.mul(a, b));
            h.twist(g.conj(b, a));
            h.rmatrix(a, b);
            h.rmatrix(g.conj(a, b), a);
            h.crossing(g.inv(a), g.conj(a, b));
            h.crossing(b, a);
            h.comult(a, b);
        }
    }

    // theta inverses, computed once per color by an exact linear solve
    std::map<std::string, Vec> theta_inv;
    for (const auto& a : colors) {
        const FinAlgebra& ha = h.component(a);
        const Vec& th = h.twist(a);
        Mat left_mult(f, ha.dim, ha.dim);
        for (Index j = 0; j < ha.dim; ++j) left_mult.set_column(j, ha.mul(th, ha.basis(j)));
        Vec inv(f, ha.dim);
        bool ok = true;
        try {
            inv = solve(left_mult, ha.unit);
        } catch (const std::exception&) {
            ok = false;
        }
        CheckEntry e{"twist-invertible", {ser(a)}, true, {}, ""};
        if (!ok || !(ha.mul(inv, th) == ha.unit) || !(ha.mul(th, inv) == ha.unit)) {
            e.pass = false;
            rep.add(std::move(e));
            rep.sort();
            return rep; // no inverse: the remaining twist checks are meaningless
        }
        rep.add(std::move(e));
        theta_inv.emplace(h.color_key(a), std::move(inv));
    }

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        // twist1: phi_a(x) = theta_a^{-1} x theta_a
        const GroupElem& a = t[0];
        CheckEntry e{"twist1-conjugation", {ser(a)}, true, {}, ""};
        const FinAlgebra& ha = h.component(a);
        const Vec& th = h.twist(a);
        const Vec& thi = theta_inv.at(h.color_key(a));
        const Mat& phi = h.crossing(a, a);
        for (Index x = 0; x < ha.dim; ++x) {
            const Vec rhs = ha.mul(thi, ha.mul(ha.basis(x), th));
            if (!(phi.column(x) == rhs)) {
                e.pass = false;
                e.witness = {x};
                return e;
            }
        }
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 1), [&](const std::vector<GroupElem>& t) {
        // twist2: S_a(theta_a) = theta_{a^-1}
        const GroupElem& a = t[0];
        CheckEntry e{"twist2-antipode", {ser(a)}, true, {}, ""};
        if (!(h.antipode(a).apply(h.twist(a)) == h.twist(g.inv(a)))) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // twist3: phi_b(theta_a) = theta_{b a b^-1}
        const GroupElem &b = t[0], &a = t[1];
        CheckEntry e{"twist3-crossing", {ser(b), ser(a)}, true, {}, ""};
        if (!(h.crossing(b, a).apply(h.twist(a)) == h.twist(g.conj(b, a)))) e.pass = false;
        return e;
    });

    detail::run_instances(rep, detail::tuples_of(colors, 2), [&](const std::vector<GroupElem>& t) {
        // twist4: Delta_{a,b}(theta_{ab}) =
        //         (theta_a (x) theta_b) . flip (phi_{a^-1} (x) id)(R_{a b a^-1, a}) . R_{a,b}
        const GroupElem &a = t[0], &b = t[1];
        CheckEntry e{"twist4-comult", {ser(a), ser(b)}, true, {}, ""};
        const GroupElem ab = g.mul(a, b);
        const GroupElem abai = g.conj(a, b);
        const Index da = h.component(a).dim, db = h.component(b).dim;
        const Vec lhs = h.comult(a, b).apply(h.twist(ab));
        const Index dims2[] = {h.component(abai).dim, da};
        const Vec mid = flip2(apply_on_leg(h.crossing(g.inv(a), abai), h.rmatrix(abai, a).value, dims2, 0), db, da);
        const Vec rhs =
            h.mul2(a, b, tensor(h.twist(a), h.twist(b)), h.mul2(a, b, mid, h.rmatrix(a, b).value));
        if (!(lhs == rhs)) e.pass = false;
        return e;
    });

    rep.sort();
    return rep;
}

// A family of ideals I_alpha, one per color.
struct CoidealFamily {
    std::function<std::vector<Vec>(const GroupElem&)> basis;
};

// Closure conditions for a (crossed) Hopf pi-coideal on the tested colors.
inline VerificationReport verify_coideal(const HopfPiCoalgebra& h, const CoidealFamily& ideal,
                                         std::span<const GroupElem> colors) {
    VerificationReport rep;
    const GroupOracle& g = h.group();
    const GroupElem one = g.identity();
    const ScalarField f = h.component(one).field;
    auto ser = [&](const GroupElem& a) { return g.serialize(a); };

    std::map<std::string, Rref> spans;
    auto span_of = [&](const GroupElem& a) -> const Rref& {
        const std::string key = h.color_key(a);
        auto it = spans.find(key);
        if (it == spans.end())
            it = spans.emplace(key, rref(f, h.component(a).dim, ideal.basis(a))).first;
        return it->second;
    };
    for (const auto& a : colors) {
        span_of(a);
        span_of(g.inv(a));
        for (const auto& b : colors) {
            span_of(g.mul(a, b));
            span_of(g.conj(b, a));
        }
    }

    for (const auto& a : colors) {
        CheckEntry e{"coideal-ideal", {ser(a)}, true, {}, ""};
        const FinAlgebra& ha = h.component(a);
        const Rref& ia = span_of(a);
        for (std::size_t k = 0; k < ia.rows.size() && e.pass; ++k)
            for (Index x = 0; x < ha.dim; ++x) {
                const Vec bx = ha.basis(x);
                if (!ia.contains(ha.mul(bx, ia.rows[k])) || !ia.contains(ha.mul(ia.rows[k], bx))) {
                    e.pass = false;
                    e.witness = {static_cast<Index>(k), x};
                    break;
                }
            }
        rep.add(std::move(e));
    }

    for (const auto& a : colors)
        for (const auto& b : colors) {
            CheckEntry e{"coideal-comult", {ser(a), ser(b)}, true, {}, ""};
            const GroupElem ab = g.mul(a, b);
            const Rref& iab = span_of(ab);
            const Rref& ia = span_of(a);
            const Rref& ib = span_of(b);
            const Index da = h.component(a).dim, db = h.component(b).dim;
            for (std::size_t k = 0; k < iab.rows.size() && e.pass; ++k) {
                Vec cur = h.comult(a, b).apply(iab.rows[k]);
                // reduce leg 1 mod I_a, then leg 2 mod I_b; zero iff membership
                for (std::size_t r = 0; r < ia.rows.size(); ++r) {
                    const Index piv = ia.pivots[r];
                    for (Index other = 0; other < db; ++other) {
                        const Scalar c = cur.at(piv * db + other);
                        if (c.is_zero()) continue;
                        for (const auto& [col, s] : ia.rows[r].entries()) cur.add_at(col * db + other, -(c * s));
                    }
                }
                for (std::size_t r = 0; r < ib.rows.size(); ++r) {
                    const Index piv = ib.pivots[r];
                    for (Index other = 0; other < da; ++other) {
                        const Scalar c = cur.at(other * db + piv);
                        if (c.is_zero()) continue;
                        for (const auto& [col, s] : ib.rows[r].entries()) cur.add_at(other * db + col, -(c * s));
                    }
                }
                if (!cur.is_zero()) {
                    e.pass = false;
                    e.witness = {static_cast<Index>(k)};
                }
            }
            rep.add(std::move(e));
        }

    {
        CheckEntry e{"coideal-counit", {ser(one)}, true, {}, ""};
        const Rref& i1 = span_of(one);
        const Mat& eps = h.counit();
        for (std::size_t k = 0; k < i1.rows.size(); ++k) {
            Scalar acc = Scalar::zero(f);
            for (const auto& [i, s] : i1.rows[k].entries()) acc += eps.at(0, i) * s;
            if (!acc.is_zero()) {
                e.pass = false;
                e.witness = {static_cast<Index>(k)};
                break;
            }
        }
        rep.add(std::move(e));
    }

    for (const auto& a : colors) {
        CheckEntry e{"coideal-antipode", {ser(a)}, true, {}, ""};
        const Rref& ia = span_of(a);
        const Rref& iai = span_of(g.inv(a));
        for (std::size_t k = 0; k < ia.rows.size(); ++k)
            if (!iai.contains(h.antipode(a).apply(ia.rows[k]))) {
                e.pass = false;
                e.witness = {static_cast<Index>(k)};
                break;
            }
        rep.add(std::move(e));
    }

    if (h.has_crossing())
        for (const auto& b : colors)
            for (const auto& a : colors) {
                CheckEntry e{"coideal-crossing", {ser(b), ser(a)}, true, {}, ""};
                const Rref& ia = span_of(a);
                const Rref& icj = span_of(g.conj(b, a));
                for (std::size_t k = 0; k < ia.rows.size(); ++k)
                    if (!icj.contains(h.crossing(b, a).apply(ia.rows[k]))) {
                        e.pass = false;
                        e.witness = {static_cast<Index>(k)};
                        break;
                    }
                rep.add(std::move(e));
            }

    rep.sort();
    return rep;
}

// Quotient by a verified Hopf pi-coideal; structure maps are induced through
// the deterministic complement basis of each component.
inline HopfPiCoalgebra quotient_picoalgebra(const HopfPiCoalgebra& h, CoidealFamily ideal,
                                            std::span<const GroupElem> verified_colors) {
    {
        const VerificationReport ok = verify_coideal(h, ideal, verified_colors);
        if (!ok.all_pass())
            throw construction_failure("quotient_picoalgebra: coideal conditions fail: " + ok.summary());
    }

    struct Shared {
        HopfPiCoalgebra base;
        CoidealFamily ideal;
        std::mutex mutex;
        std::map<std::string, QuotientBasis> bases;

        Shared(HopfPiCoalgebra b, CoidealFamily i) : base(std::move(b)), ideal(std::move(i)) {}

        const QuotientBasis& qb(const GroupElem& a) {
            const std::string key = base.color_key(a);
            {
                std::lock_guard<std::mutex> lock(mutex);
                auto it = bases.find(key);
                if (it != bases.end()) return it->second;
            }
            const FinAlgebra& comp = base.component(a);
            QuotientBasis fresh(comp.field, comp.dim, ideal.basis(a));
            std::lock_guard<std::mutex> lock(mutex);
            auto [it, inserted] = bases.try_emplace(key, std::move(fresh));
            (void)inserted;
            return it->second;
        }
    };
    auto shared = std::make_shared<Shared>(h, std::move(ideal));

    HopfPiCoalgebra out(
        h.group(),
        [shared](const GroupElem& a) {
            const FinAlgebra& big = shared->base.component(a);
            const QuotientBasis& qb = shared->qb(a);
            const Index q = qb.quotient_dim();
            std::vector<std::string> labels;
            for (Index c = 0; c < q; ++c)
                labels.push_back(big.labels[static_cast<std::size_t>(qb.kept[static_cast<std::size_t>(c)])]);
            FinAlgebra alg(big.field, q, std::move(labels));
            alg.unit = qb.projection.apply(big.unit);
            for (Index i = 0; i < q; ++i)
                for (Index j = 0; j < q; ++j) {
                    Vec prod(big.field, big.dim);
                    big.mult.accumulate(prod, qb.kept[static_cast<std::size_t>(i)],
                                        qb.kept[static_cast<std::size_t>(j)], Scalar::one(big.field));
                    const Vec img = qb.projection.apply(prod);
                    for (const auto& [k, s] : img.entries()) alg.mult.add(i, j, k, s);
                }
            require_pass(alg.verify_algebra(), "quotient component " + shared->base.color_key(a));
            return alg;
        },
        [shared](const GroupElem& a, const GroupElem& b) {
            const GroupElem ab = shared->base.group().mul(a, b);
            return kron(shared->qb(a).projection, shared->qb(b).projection) * shared->base.comult(a, b) *
                   shared->qb(ab).section;
        },
        [shared]() {
            const GroupElem one = shared->base.group().identity();
            return shared->base.counit() * shared->qb(one).section;
        },
        [shared](const GroupElem& a) {
            const GroupElem ai = shared->base.group().inv(a);
            return shared->qb(ai).projection * shared->base.antipode(a) * shared->qb(a).section;
        });

    if (h.has_crossing())
        out.set_crossing([shared](const GroupElem& b, const GroupElem& a) {
            const GroupElem target = shared->base.group().conj(b, a);
            return shared->qb(target).projection * shared->base.crossing(b, a) * shared->qb(a).section;
        });
    if (h.has_rmatrix())
        out.set_rmatrix([shared](const GroupElem& a, const GroupElem& b) {
            const RMatrix& r = shared->base.rmatrix(a, b);
            const Index da = shared->base.component(a).dim;
            const Index db = shared->base.component(b).dim;
            const Index dims2[] = {da, db};
            auto project = [&](const Vec& v) {
                const Vec step = apply_on_leg(shared->qb(a).projection, v, dims2, 0);
                const Index dims_s[] = {shared->qb(a).quotient_dim(), db};
                return apply_on_leg(shared->qb(b).projection, step, dims_s, 1);
            };
            return RMatrix{project(r.value), project(r.inverse)};
        });
    if (h.has_twist())
        out.set_twist([shared](const GroupElem& a) { return shared->qb(a).projection.apply(shared->base.twist(a)); });

    return out;
}

} // namespace hopfpi
