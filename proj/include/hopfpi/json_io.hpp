#pragma once

#include "hopfpi/families.hpp"
#include "hopfpi/sl2.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace hopfpi {

// Keys are emitted in insertion order and all containers iterate sorted, so
// identical inputs serialize to identical bytes.
using json = nlohmann::ordered_json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

inline void require_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
    if (!j.is_object()) throw io_error(what + ": expected an object");
    for (const char* k : keys)
        if (!j.contains(k)) throw io_error(what + ": missing key '" + k + "'");
}

inline json field_to_json(const ScalarField& f) {
    json j;
    switch (f.kind()) {
        case FieldKind::Rationals:
            j["kind"] = "rationals";
            break;
        case FieldKind::PrimeField:
            j["kind"] = "prime-field";
            j["p"] = f.modulus();
            break;
        case FieldKind::TruncSeries:
            j["kind"] = "trunc-series";
            j["N"] = f.precision();
            break;
    }
    return j;
}

inline ScalarField field_from_json(const json& j) {
    require_keys(j, {"kind"}, "field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return ScalarField::rationals();
    if (kind == "prime-field") {
        require_keys(j, {"p"}, "field");
        return ScalarField::prime_field(j.at("p").get<long>());
    }
    if (kind == "trunc-series") {
        require_keys(j, {"N"}, "field");
        return ScalarField::trunc_series(j.at("N").get<int>());
    }
    throw io_error("field: unknown kind '" + kind + "'");
}

inline mpq_class rational_from_string(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw io_error("scalar: bad rational '" + s + "'");
    }
}

// Rationals as "p/q" strings, prime-field elements as integers in [0,p),
// series as arrays of rational strings (h^0 first).
inline json scalar_to_json(const Scalar& s) {
    switch (s.field().kind()) {
        case FieldKind::Rationals:
            return s.rational_value().get_str();
        case FieldKind::PrimeField:
            return s.fp_value();
        case FieldKind::TruncSeries: {
            json arr = json::array();
            for (const auto& c : s.series_coeffs()) arr.push_back(c.get_str());
            return arr;
        }
    }
    throw io_error("scalar: bad kind");
}

inline Scalar scalar_from_json(const ScalarField& f, const json& j) {
    switch (f.kind()) {
        case FieldKind::Rationals:
            if (!j.is_string()) throw io_error("scalar: rationals are encoded as strings");
            return Scalar::rational(rational_from_string(j.get<std::string>()));
        case FieldKind::PrimeField: {
            if (!j.is_number_integer()) throw io_error("scalar: prime-field elements are integers");
            const long v = j.get<long>();
            if (v < 0 || v >= f.modulus()) throw io_error("scalar: prime-field element out of [0,p)");
            return Scalar::fp(f.modulus(), v);
        }
        case FieldKind::TruncSeries: {
            if (!j.is_array() || static_cast<int>(j.size()) != f.precision())
                throw io_error("scalar: series must list exactly N coefficients");
            std::vector<mpq_class> c;
            for (const auto& x : j) c.push_back(rational_from_string(x.get<std::string>()));
            return Scalar::series(std::move(c));
        }
    }
    throw io_error("scalar: bad kind");
}

inline json vec_to_json(const Vec& v) {
    json j;
    j["dim"] = v.dim();
    json entries = json::array();
    for (const auto& [i, s] : v.entries()) entries.push_back(json::array({i, scalar_to_json(s)}));
    j["entries"] = std::move(entries);
    return j;
}

inline Vec vec_from_json(const ScalarField& f, const json& j) {
    require_keys(j, {"dim", "entries"}, "vector");
    Vec v(f, j.at("dim").get<Index>());
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 2) throw io_error("vector: entries are [index, scalar]");
        v.set(e.at(0).get<Index>(), scalar_from_json(f, e.at(1)));
    }
    return v;
}

inline json mat_to_json(const Mat& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json entries = json::array();
    for (const auto& [ij, s] : m.entries())
        entries.push_back(json::array({ij.first, ij.second, scalar_to_json(s)}));
    j["entries"] = std::move(entries);
    return j;
}

inline Mat mat_from_json(const ScalarField& f, const json& j) {
    require_keys(j, {"rows", "cols", "entries"}, "matrix");
    Mat m(f, j.at("rows").get<Index>(), j.at("cols").get<Index>());
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw io_error("matrix: entries are [row, col, scalar]");
        m.set(e.at(0).get<Index>(), e.at(1).get<Index>(), scalar_from_json(f, e.at(2)));
    }
    return m;
}

inline json mult_to_json(const MultTensor& t) {
    json j;
    j["dim"] = t.dim();
    // deterministic entry order: sort by (i, j, k)
    std::map<std::tuple<Index, Index, Index>, Scalar> sorted;
    for (const auto& [key, terms] : t.raw()) {
        const Index i = static_cast<Index>(key) / t.dim();
        const Index jj = static_cast<Index>(key) % t.dim();
        for (const auto& [k, s] : terms) sorted.emplace(std::make_tuple(i, jj, k), s);
    }
    json entries = json::array();
    for (const auto& [ijk, s] : sorted) {
        const auto [i, jj, k] = ijk;
        entries.push_back(json::array({i, jj, k, scalar_to_json(s)}));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline MultTensor mult_from_json(const ScalarField& f, const json& j) {
    require_keys(j, {"dim", "entries"}, "mult tensor");
    MultTensor t(j.at("dim").get<Index>());
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 4) throw io_error("mult tensor: entries are [i, j, k, scalar]");
        t.add(e.at(0).get<Index>(), e.at(1).get<Index>(), e.at(2).get<Index>(), scalar_from_json(f, e.at(3)));
    }
    return t;
}

inline json algebra_to_json(const FinAlgebra& a) {
    json j;
    j["dim"] = a.dim;
    j["labels"] = a.labels;
    j["mult"] = mult_to_json(a.mult);
    j["unit"] = vec_to_json(a.unit);
    return j;
}

inline FinAlgebra algebra_from_json(const ScalarField& f, const json& j) {
    require_keys(j, {"dim", "labels", "mult", "unit"}, "algebra");
    FinAlgebra a(f, j.at("dim").get<Index>(), j.at("labels").get<std::vector<std::string>>());
    a.mult = mult_from_json(f, j.at("mult"));
    a.unit = vec_from_json(f, j.at("unit"));
    return a;
}

// Hopf algebra file: field + structure constants of all five maps.
inline json hopf_to_json(const FinHopfAlgebra& h) {
    json j;
    j["field"] = field_to_json(h.field());
    j["dim"] = h.dim();
    j["labels"] = h.alg.labels;
    j["mult"] = mult_to_json(h.alg.mult);
    j["unit"] = vec_to_json(h.alg.unit);
    j["comult"] = mat_to_json(h.comult);
    j["counit"] = mat_to_json(h.counit);
    j["antipode"] = mat_to_json(h.antipode);
    return j;
}

inline FinHopfAlgebra hopf_from_json(const json& j) {
    require_keys(j, {"field", "dim", "labels", "mult", "unit", "comult", "counit", "antipode"}, "hopf algebra");
    const ScalarField f = field_from_json(j.at("field"));
    FinAlgebra a(f, j.at("dim").get<Index>(), j.at("labels").get<std::vector<std::string>>());
    a.mult = mult_from_json(f, j.at("mult"));
    a.unit = vec_from_json(f, j.at("unit"));
    return FinHopfAlgebra(std::move(a), mat_from_json(f, j.at("comult")), mat_from_json(f, j.at("counit")),
                          mat_from_json(f, j.at("antipode")));
}

inline json group_table_to_json(const FiniteGroupTable& t) {
    json j;
    j["kind"] = "finite-table";
    j["order"] = t.order;
    j["names"] = t.names;
    j["identity"] = t.identity;
    j["mul"] = t.mul;
    j["inv"] = t.inv;
    return j;
}

inline FiniteGroupTable group_table_from_json(const json& j) {
    require_keys(j, {"order", "names", "identity", "mul", "inv"}, "group table");
    FiniteGroupTable t;
    t.order = j.at("order").get<int>();
    t.names = j.at("names").get<std::vector<std::string>>();
    t.identity = j.at("identity").get<int>();
    t.mul = j.at("mul").get<std::vector<std::vector<int>>>();
    t.inv = j.at("inv").get<std::vector<int>>();
    t.validate();
    return t;
}

inline json group_to_json(const GroupOracle& g) {
    if (g.is_finite()) return group_table_to_json(g.table());
    json j;
    if (g.is_general_linear()) {
        j["kind"] = "gl";
        j["n"] = g.gl_rank();
        j["field"] = field_to_json(g.gl_field());
        return j;
    }
    j["kind"] = "series-tuple";
    j["l"] = g.series_rank();
    j["prec"] = g.series_field().precision();
    return j;
}

inline GroupOracle group_from_json(const json& j) {
    require_keys(j, {"kind"}, "group");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite-table") return GroupOracle::finite(group_table_from_json(j));
    if (kind == "gl") {
        require_keys(j, {"n", "field"}, "group");
        return GroupOracle::general_linear(j.at("n").get<int>(), field_from_json(j.at("field")));
    }
    if (kind == "series-tuple") {
        require_keys(j, {"l", "prec"}, "group");
        return GroupOracle::series_tuple(j.at("l").get<int>(), j.at("prec").get<int>());
    }
    throw io_error("group: unknown kind '" + kind + "'");
}

inline json report_to_json(const VerificationReport& rep) {
    json arr = json::array();
    for (const auto& e : rep.entries) {
        json entry;
        entry["axiom"] = e.axiom;
        entry["colors"] = e.colors;
        entry["status"] = e.pass ? "pass" : "fail";
        if (!e.pass) {
            entry["witness"] = e.witness;
            if (!e.detail.empty()) entry["detail"] = e.detail;
        }
        arr.push_back(std::move(entry));
    }
    return arr;
}

inline std::string report_to_text(const VerificationReport& rep) {
    std::string out;
    for (const auto& e : rep.entries) {
        out += e.pass ? "pass " : "FAIL ";
        out += e.axiom;
        if (!e.colors.empty()) {
            out += " @ (";
            for (std::size_t i = 0; i < e.colors.size(); ++i) out += (i ? "," : "") + e.colors[i];
            out += ")";
        }
        if (!e.pass && !e.witness.empty()) {
            out += " witness [";
            for (std::size_t i = 0; i < e.witness.size(); ++i)
                out += (i ? "," : "") + std::to_string(e.witness[i]);
            out += "]";
        }
        if (!e.pass && !e.detail.empty()) out += " -- " + e.detail;
        out += "\n";
    }
    return out;
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("parse error in " + path.string() + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

} // namespace io

// ---------------------------------------------------------------------------
// Bundles: a pi-coalgebra serialized as manifest + per-color component and
// structure-map files.
// ---------------------------------------------------------------------------

struct Bundle {
    json manifest;
    GroupOracle group = GroupOracle::finite(FiniteGroupTable::cyclic(1));
    ScalarField field = ScalarField::rationals();
    std::vector<std::pair<std::string, GroupElem>> colors; // name -> element
    std::map<std::string, json> components;                // by color name
    std::map<std::string, json> maps;                      // by file stem
};

namespace io {

inline std::string color_name_of(const Bundle& b, const GroupElem& e) {
    for (const auto& [name, elem] : b.colors)
        if (b.group.eq(elem, e)) return name;
    throw io_error("bundle: color not materialized: " + b.group.serialize(e));
}

// Bundle as one json value: {"manifest":..., "components":{name:...},
// "maps":{stem:...}, "inputs":{...}}. Directory form splits the sections
// into manifest.json, components/<name>.json, maps/<stem>.json and
// root-level input files.
inline json bundle_to_json(const HopfPiCoalgebra& h, const std::string& kind, const ScalarField& field,
                           const std::vector<std::pair<std::string, GroupElem>>& colors,
                           const json& manifest_extra = json::object(), const json& inputs = json::object()) {
    json manifest;
    manifest["format"] = "hopfpi-bundle";
    manifest["version"] = 1;
    manifest["kind"] = kind;
    manifest["field"] = field_to_json(field);
    manifest["group"] = group_to_json(h.group());
    json cj = json::array();
    for (const auto& [name, elem] : colors) {
        json c;
        c["name"] = name;
        c["value"] = h.group().serialize(elem);
        if (h.group().is_general_linear()) c["matrix"] = mat_to_json(elem.matrix());
        cj.push_back(std::move(c));
    }
    manifest["colors"] = std::move(cj);
    manifest["has_crossing"] = h.has_crossing();
    manifest["has_rmatrix"] = h.has_rmatrix();
    manifest["has_twist"] = h.has_twist();
    for (auto it = manifest_extra.begin(); it != manifest_extra.end(); ++it) manifest[it.key()] = it.value();

    json components = json::object();
    json maps = json::object();
    for (const auto& [name, elem] : colors) {
        components[name] = algebra_to_json(h.component(elem));
        maps["antipode__" + name] = mat_to_json(h.antipode(elem));
        if (h.has_twist()) maps["twist__" + name] = vec_to_json(h.twist(elem));
    }
    maps["counit"] = mat_to_json(h.counit());
    for (const auto& [na, ea] : colors)
        for (const auto& [nb, eb] : colors) {
            maps["comult__" + na + "__" + nb] = mat_to_json(h.comult(ea, eb));
            if (h.has_crossing()) maps["crossing__" + na + "__" + nb] = mat_to_json(h.crossing(ea, eb));
            if (h.has_rmatrix()) {
                const RMatrix& r = h.rmatrix(ea, eb);
                json rj;
                rj["value"] = vec_to_json(r.value);
                rj["inverse"] = vec_to_json(r.inverse);
                maps["rmatrix__" + na + "__" + nb] = std::move(rj);
            }
        }

    json out;
    out["manifest"] = std::move(manifest);
    out["components"] = std::move(components);
    out["maps"] = std::move(maps);
    if (!inputs.empty()) out["inputs"] = inputs;
    return out;
}

inline void save_bundle_dir(const std::filesystem::path& dir, const json& bundle) {
    write_json_file(dir / "manifest.json", bundle.at("manifest"));
    for (auto it = bundle.at("components").begin(); it != bundle.at("components").end(); ++it)
        write_json_file(dir / "components" / (it.key() + ".json"), it.value());
    for (auto it = bundle.at("maps").begin(); it != bundle.at("maps").end(); ++it)
        write_json_file(dir / "maps" / (it.key() + ".json"), it.value());
    if (bundle.contains("inputs"))
        for (auto it = bundle.at("inputs").begin(); it != bundle.at("inputs").end(); ++it)
            write_json_file(dir / (it.key() + ".json"), it.value());
}

inline void save_bundle_file(const std::filesystem::path& path, const json& bundle) {
    write_json_file(path, bundle);
}

inline Bundle bundle_from_json(json whole) {
    Bundle b;
    if (!whole.contains("manifest")) throw io_error("bundle: missing manifest");
    b.manifest = whole.at("manifest");
    require_keys(b.manifest, {"format", "version", "kind", "field", "group", "colors"}, "manifest");
    if (b.manifest.at("format").get<std::string>() != "hopfpi-bundle") throw io_error("manifest: not a hopfpi bundle");
    b.field = field_from_json(b.manifest.at("field"));
    b.group = group_from_json(b.manifest.at("group"));
    for (const auto& c : b.manifest.at("colors")) {
        require_keys(c, {"name", "value"}, "manifest color");
        const std::string name = c.at("name").get<std::string>();
        const std::string value = c.at("value").get<std::string>();
        if (b.group.is_finite()) {
            b.colors.emplace_back(name, b.group.element_by_name(value));
        } else if (c.contains("matrix")) {
            b.colors.emplace_back(name, GroupElem(mat_from_json(b.field, c.at("matrix"))));
        } else {
            throw io_error("manifest color '" + name + "': non-finite colors need an explicit matrix");
        }
    }
    if (whole.contains("components"))
        for (auto it = whole.at("components").begin(); it != whole.at("components").end(); ++it)
            b.components.emplace(it.key(), it.value());
    if (whole.contains("maps"))
        for (auto it = whole.at("maps").begin(); it != whole.at("maps").end(); ++it)
            b.maps.emplace(it.key(), it.value());
    if (whole.contains("inputs")) b.manifest["__inputs"] = whole.at("inputs");
    return b;
}

inline Bundle load_bundle(const std::filesystem::path& path) {
    if (std::filesystem::is_regular_file(path)) return bundle_from_json(read_json_file(path));
    if (!std::filesystem::is_directory(path)) throw io_error("bundle: no such file or directory: " + path.string());
    json whole;
    whole["manifest"] = read_json_file(path / "manifest.json");
    json components = json::object();
    if (std::filesystem::exists(path / "components")) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(path / "components"))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) components[f.stem().string()] = read_json_file(f);
    }
    whole["components"] = std::move(components);
    json maps = json::object();
    if (std::filesystem::exists(path / "maps")) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(path / "maps"))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) maps[f.stem().string()] = read_json_file(f);
    }
    whole["maps"] = std::move(maps);
    json inputs = json::object();
    for (const char* name : {"A", "B", "sigma", "action"})
        if (std::filesystem::exists(path / (std::string(name) + ".json")))
            inputs[name] = read_json_file(path / (std::string(name) + ".json"));
    if (!inputs.empty()) whole["inputs"] = std::move(inputs);
    return bundle_from_json(std::move(whole));
}

// A pi-coalgebra whose structure maps are looked up from bundle files.
// A needed color or map that was not materialized is an error.
inline HopfPiCoalgebra picoalgebra_from_bundle(const Bundle& bundle) {
    auto b = std::make_shared<const Bundle>(bundle);
    auto map_of = [b](const std::string& stem) -> const json& {
        auto it = b->maps.find(stem);
        if (it == b->maps.end()) throw io_error("bundle: missing map file " + stem + ".json");
        return it->second;
    };
    HopfPiCoalgebra h(
        b->group,
        [b](const GroupElem& a) {
            const std::string name = color_name_of(*b, a);
            auto it = b->components.find(name);
            if (it == b->components.end()) throw io_error("bundle: missing component for color " + name);
            return algebra_from_json(b->field, it->second);
        },
        [b, map_of](const GroupElem& a, const GroupElem& be) {
            return mat_from_json(b->field,
                                 map_of("comult__" + color_name_of(*b, a) + "__" + color_name_of(*b, be)));
        },
        [b, map_of]() { return mat_from_json(b->field, map_of("counit")); },
        [b, map_of](const GroupElem& a) {
            return mat_from_json(b->field, map_of("antipode__" + color_name_of(*b, a)));
        });
    if (b->manifest.value("has_crossing", false))
        h.set_crossing([b, map_of](const GroupElem& be, const GroupElem& a) {
            return mat_from_json(b->field,
                                 map_of("crossing__" + color_name_of(*b, be) + "__" + color_name_of(*b, a)));
        });
    if (b->manifest.value("has_rmatrix", false))
        h.set_rmatrix([b, map_of](const GroupElem& a, const GroupElem& be) {
            const json& j = map_of("rmatrix__" + color_name_of(*b, a) + "__" + color_name_of(*b, be));
            require_keys(j, {"value", "inverse"}, "rmatrix");
            return RMatrix{vec_from_json(b->field, j.at("value")), vec_from_json(b->field, j.at("inverse"))};
        });
    if (b->manifest.value("has_twist", false))
        h.set_twist([b, map_of](const GroupElem& a) {
            return vec_from_json(b->field, map_of("twist__" + color_name_of(*b, a)));
        });
    return h;
}

// Action file: group + either explicit per-color matrices or a named builtin
// generator rule ("conjugation", "trivial", "an-gl").
inline json action_to_json(const GroupOracle& g, const std::string& rule) {
    json j;
    j["group"] = group_to_json(g);
    j["generator-rule"] = rule;
    return j;
}

inline HopfAction action_from_json(const json& j, HopfPtr target) {
    require_keys(j, {"group"}, "action");
    GroupOracle g = group_from_json(j.at("group"));
    if (j.contains("generator-rule")) {
        const std::string rule = j.at("generator-rule").get<std::string>();
        if (rule == "trivial") return trivial_action(g, std::move(target));
        if (rule == "conjugation") {
            if (!g.is_finite()) throw io_error("action: 'conjugation' needs a finite group");
            return conjugation_action(g.table(), std::move(target));
        }
        if (rule == "an-gl") {
            if (!g.is_general_linear()) throw io_error("action: 'an-gl' needs a gl group");
            const ScalarField f = target->field();
            return an_gl_action(g.gl_rank(), f, std::move(target));
        }
        throw io_error("action: unknown generator-rule '" + rule + "'");
    }
    require_keys(j, {"matrices"}, "action");
    const ScalarField f = target->field();
    auto mats = std::make_shared<std::map<std::string, Mat>>();
    for (auto it = j.at("matrices").begin(); it != j.at("matrices").end(); ++it)
        mats->emplace(it.key(), mat_from_json(f, it.value()));
    GroupOracle oracle = g;
    return HopfAction(g, std::move(target), [mats, oracle](const GroupElem& b) {
        auto it = mats->find(oracle.serialize(b));
        if (it == mats->end()) throw io_error("action: no matrix for color " + oracle.serialize(b));
        return it->second;
    });
}

} // namespace io

} // namespace hopfpi
