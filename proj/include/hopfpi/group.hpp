#pragma once

#include "hopfpi/linalg.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hopfpi {

// A color: an element of the structure group pi. Finite-group elements are
// table indices, GL_n colors are invertible matrices over the scalar field,
// series-tuple colors are tuples of truncated series (the additive group).
class GroupElem {
public:
    explicit GroupElem(long index) : v_(index) {}
    explicit GroupElem(Mat m) : v_(std::move(m)) {}
    explicit GroupElem(std::vector<Scalar> tuple) : v_(std::move(tuple)) {}

    long index() const { return std::get<long>(v_); }
    const Mat& matrix() const { return std::get<Mat>(v_); }
    const std::vector<Scalar>& tuple() const { return std::get<std::vector<Scalar>>(v_); }

    bool operator==(const GroupElem& o) const { return v_ == o.v_; }

private:
    std::variant<long, Mat, std::vector<Scalar>> v_;
};

// Finite group as explicit tables. Group axioms are validated exhaustively.
struct FiniteGroupTable {
    int order = 0;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    int identity = 0;
    std::vector<std::string> names;

    void validate() const {
        if (order <= 0) throw std::invalid_argument("group table: empty group");
        if (static_cast<int>(mul.size()) != order || static_cast<int>(inv.size()) != order ||
            static_cast<int>(names.size()) != order)
            throw std::invalid_argument("group table: inconsistent sizes");
        for (int a = 0; a < order; ++a) {
            if (static_cast<int>(mul[a].size()) != order) throw std::invalid_argument("group table: ragged row");
            for (int b = 0; b < order; ++b)
                if (mul[a][b] < 0 || mul[a][b] >= order) throw std::invalid_argument("group table: entry out of range");
        }
        for (int a = 0; a < order; ++a)
            if (mul[identity][a] != a || mul[a][identity] != a)
                throw std::invalid_argument("group table: identity law fails at " + names[a]);
        for (int a = 0; a < order; ++a)
            if (mul[a][inv[a]] != identity || mul[inv[a]][a] != identity)
                throw std::invalid_argument("group table: inverse law fails at " + names[a]);
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                        throw std::invalid_argument("group table: associativity fails at (" + names[a] + "," +
                                                    names[b] + "," + names[c] + ")");
        for (int a = 0; a < order; ++a)
            for (int b = a + 1; b < order; ++b)
                if (names[a] == names[b]) throw std::invalid_argument("group table: duplicate element name");
    }

    static FiniteGroupTable cyclic(int n) {
        FiniteGroupTable t;
        t.order = n;
        t.identity = 0;
        t.mul.assign(n, std::vector<int>(n));
        t.inv.assign(n, 0);
        t.names.resize(n);
        for (int a = 0; a < n; ++a) {
            t.names[a] = a == 0 ? "e" : (a == 1 ? "g" : "g" + std::to_string(a));
            t.inv[a] = (n - a) % n;
            for (int b = 0; b < n; ++b) t.mul[a][b] = (a + b) % n;
        }
        t.validate();
        return t;
    }

    // S_3 as permutations of {0,1,2}; r = (012), s = (01).
    static FiniteGroupTable symmetric3() {
        const std::vector<std::array<int, 3>> perms = {
            {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        const std::vector<std::string> names = {"e", "r", "r2", "s", "rs", "r2s"};
        FiniteGroupTable t;
        t.order = 6;
        t.identity = 0;
        t.names = names;
        t.mul.assign(6, std::vector<int>(6));
        t.inv.assign(6, 0);
        auto compose = [&](int a, int b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            for (int k = 0; k < 6; ++k)
                if (perms[k] == c) return k;
            throw std::logic_error("symmetric3: composition not found");
        };
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) t.mul[a][b] = compose(a, b);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                if (t.mul[a][b] == 0) t.inv[a] = b;
        t.validate();
        return t;
    }
};

// Group oracle: identity, product, inverse, equality and canonical
// serialization (used as component cache key). Finite groups also enumerate.
class GroupOracle {
public:
    static GroupOracle finite(FiniteGroupTable table) {
        table.validate();
        GroupOracle g;
        g.finite_ = std::make_shared<const FiniteGroupTable>(std::move(table));
        return g;
    }

    static GroupOracle general_linear(int n, ScalarField field) {
        if (n < 1) throw std::invalid_argument("general_linear: n must be >= 1");
        GroupOracle g;
        g.gl_ = GlData{n, std::move(field)};
        return g;
    }

    static GroupOracle series_tuple(int l, int precision) {
        if (l < 1) throw std::invalid_argument("series_tuple: rank must be >= 1");
        GroupOracle g;
        g.series_ = SeriesData{l, ScalarField::trunc_series(precision)};
        return g;
    }

    bool is_finite() const { return finite_ != nullptr; }
    bool is_general_linear() const { return gl_.has_value(); }
    bool is_series_tuple() const { return series_.has_value(); }
    const FiniteGroupTable& table() const { return *finite_; }
    int gl_rank() const { return gl_->n; }
    const ScalarField& gl_field() const { return gl_->field; }
    int series_rank() const { return series_->l; }
    const ScalarField& series_field() const { return series_->field; }

    GroupElem identity() const {
        if (finite_) return GroupElem(static_cast<long>(finite_->identity));
        if (gl_) return GroupElem(Mat::identity(gl_->field, gl_->n));
        std::vector<Scalar> t(static_cast<std::size_t>(series_->l), Scalar::zero(series_->field));
        return GroupElem(std::move(t));
    }

    GroupElem mul(const GroupElem& a, const GroupElem& b) const {
        if (finite_) return GroupElem(static_cast<long>(finite_->mul[a.index()][b.index()]));
        if (gl_) return GroupElem(a.matrix() * b.matrix());
        const auto& x = a.tuple();
        const auto& y = b.tuple();
        if (x.size() != y.size()) throw std::invalid_argument("series_tuple: rank mismatch");
        std::vector<Scalar> t;
        t.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) t.push_back(x[i] + y[i]);
        return GroupElem(std::move(t));
    }

    GroupElem inv(const GroupElem& a) const {
        if (finite_) return GroupElem(static_cast<long>(finite_->inv[a.index()]));
        if (gl_) {
            const std::string key = serialize(a);
            std::lock_guard<std::mutex> lock(gl_->cache_mutex);
            auto it = gl_->inverse_cache.find(key);
            if (it == gl_->inverse_cache.end()) {
                auto m = try_inverse(a.matrix());
                if (!m) throw non_invertible("general_linear: color matrix is singular");
                it = gl_->inverse_cache.emplace(key, GroupElem(std::move(*m))).first;
            }
            return it->second;
        }
        std::vector<Scalar> t;
        t.reserve(a.tuple().size());
        for (const auto& s : a.tuple()) t.push_back(-s);
        return GroupElem(std::move(t));
    }

    GroupElem conj(const GroupElem& b, const GroupElem& a) const {
        // b a b^{-1}
        return mul(mul(b, a), inv(b));
    }

    bool eq(const GroupElem& a, const GroupElem& b) const { return a == b; }

    bool is_identity(const GroupElem& a) const { return eq(a, identity()); }

    std::string serialize(const GroupElem& a) const {
        if (finite_) return finite_->names[static_cast<std::size_t>(a.index())];
        if (gl_) {
            const Mat& m = a.matrix();
            std::string out = "[";
            for (Index i = 0; i < m.rows(); ++i) {
                if (i) out += ";";
                for (Index j = 0; j < m.cols(); ++j) {
                    if (j) out += ",";
                    out += m.at(i, j).str();
                }
            }
            return out + "]";
        }
        std::string out = "(";
        for (std::size_t i = 0; i < a.tuple().size(); ++i) {
            if (i) out += ";";
            out += a.tuple()[i].str();
        }
        return out + ")";
    }

    std::optional<std::vector<GroupElem>> enumeration() const {
        if (!finite_) return std::nullopt;
        std::vector<GroupElem> all;
        for (int i = 0; i < finite_->order; ++i) all.emplace_back(static_cast<long>(i));
        return all;
    }

    GroupElem element_by_name(const std::string& name) const {
        if (!finite_) throw std::invalid_argument("element_by_name: not a finite group oracle");
        for (int i = 0; i < finite_->order; ++i)
            if (finite_->names[static_cast<std::size_t>(i)] == name) return GroupElem(static_cast<long>(i));
        throw std::invalid_argument("element_by_name: unknown element " + name);
    }

    // Group axioms on a sample of triples (hook for property tests over
    // infinite oracles; finite tables are validated exhaustively upfront).
    bool axioms_hold(std::span<const GroupElem> sample) const {
        const GroupElem e = identity();
        for (const auto& a : sample) {
            if (!eq(mul(a, e), a) || !eq(mul(e, a), a)) return false;
            if (!eq(mul(a, inv(a)), e) || !eq(mul(inv(a), a), e)) return false;
        }
        for (const auto& a : sample)
            for (const auto& b : sample)
                for (const auto& c : sample)
                    if (!eq(mul(mul(a, b), c), mul(a, mul(b, c)))) return false;
        return true;
    }

private:
    struct GlData {
        int n;
        ScalarField field;
        mutable std::mutex cache_mutex;
        mutable std::map<std::string, GroupElem> inverse_cache;

        GlData(int n_, ScalarField f) : n(n_), field(std::move(f)) {}
        GlData(const GlData& o) : n(o.n), field(o.field) {}
        GlData& operator=(const GlData& o) {
            n = o.n;
            field = o.field;
            return *this;
        }
    };
    struct SeriesData {
        int l;
        ScalarField field;
    };

    std::shared_ptr<const FiniteGroupTable> finite_;
    std::optional<GlData> gl_;
    std::optional<SeriesData> series_;
};

} // namespace hopfpi
