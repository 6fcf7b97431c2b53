#include "hopfpi/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace hopfpi;
namespace fs = std::filesystem;

ScalarField parse_field(const std::string& text) {
    if (text == "q") return ScalarField::rationals();
    if (text.rfind("fp:", 0) == 0) return ScalarField::prime_field(std::stol(text.substr(3)));
    throw io_error("unknown field '" + text + "' (use q or fp:P)");
}

FiniteGroupTable resolve_group(const std::string& text) {
    if (text == "z2") return FiniteGroupTable::cyclic(2);
    if (text == "z4") return FiniteGroupTable::cyclic(4);
    if (text == "s3") return FiniteGroupTable::symmetric3();
    if (text.rfind("z", 0) == 0 && text.size() > 1 && std::isdigit(static_cast<unsigned char>(text[1])))
        return FiniteGroupTable::cyclic(std::stoi(text.substr(1)));
    if (text.rfind("table:", 0) == 0) return io::group_table_from_json(io::read_json_file(text.substr(6)));
    throw io_error("unknown group '" + text + "' (use z2, z4, zN, s3 or table:FILE)");
}

std::vector<std::pair<std::string, GroupElem>> enumerate_colors(const GroupOracle& g) {
    std::vector<std::pair<std::string, GroupElem>> out;
    const auto all = g.enumeration();
    if (!all) throw io_error("group is not enumerable");
    for (const auto& e : *all) out.emplace_back(g.serialize(e), e);
    return out;
}

int cmd_build_dg(const std::string& group, const std::string& field_text, const std::string& out) {
    const FiniteGroupTable table = resolve_group(group);
    const ScalarField field = parse_field(field_text);
    const HopfPiCoalgebra h = build_dg(table, field);
    io::save_bundle_dir(out, io::bundle_to_json(h, "dg", field, enumerate_colors(h.group())));
    std::cout << "wrote dg bundle for group of order " << table.order << " to " << out << "\n";
    return 0;
}

int cmd_build_an(int n, const std::string& field_text, const std::string& out) {
    const ScalarField field = parse_field(field_text);
    const AnDouble dd = build_an_double(n, field);
    std::vector<std::pair<std::string, GroupElem>> colors;
    {
        const auto elems = gl_test_colors(n, field);
        for (std::size_t i = 0; i < elems.size(); ++i) colors.emplace_back("c" + std::to_string(i), elems[i]);
    }
    std::vector<GroupElem> elems;
    for (const auto& [name, e] : colors) elems.push_back(e);
    const HopfPiCoalgebra quo = build_an_coalgebra(dd, elems);

    json inputs;
    inputs["A"] = io::hopf_to_json(*dd.pair.A);
    inputs["B"] = io::hopf_to_json(*dd.pair.B);
    json sigma;
    sigma["A"] = "A.json";
    sigma["B"] = "B.json";
    sigma["sigma"] = io::mat_to_json(dd.pair.sigma.sigma);
    inputs["sigma"] = std::move(sigma);
    inputs["action"] = io::action_to_json(dd.pair.phi.group(), "an-gl");

    // the coideal seed g (x) 1 - 1 (x) h in the double's coordinates
    const detail::AnBasis basis{n};
    const Index da = basis.dim();
    Vec seed(field, da * da);
    seed.set(basis.idx(1, 0) * da + basis.idx(0, 0), Scalar::one(field));
    seed.add_at(basis.idx(0, 0) * da + basis.idx(1, 0), -Scalar::one(field));
    json extra;
    extra["n"] = n;
    extra["quotient_seed"] = io::vec_to_json(seed);

    io::save_bundle_dir(out, io::bundle_to_json(quo, "an", field, colors, extra, inputs));
    std::cout << "wrote an bundle (n=" << n << ", component dim " << quo.component(elems[0]).dim << ") to " << out
              << "\n";
    return 0;
}

int cmd_build_double(const std::string& a_path, const std::string& b_path, const std::string& sigma_path,
                     const std::string& action_path, const std::string& out) {
    auto a = std::make_shared<const FinHopfAlgebra>(io::hopf_from_json(io::read_json_file(a_path)));
    auto b = std::make_shared<const FinHopfAlgebra>(io::hopf_from_json(io::read_json_file(b_path)));
    const json sj = io::read_json_file(sigma_path);
    io::require_keys(sj, {"sigma"}, "pairing file");
    PairingTable sigma(a, b, io::mat_from_json(a->field(), sj.at("sigma")));
    const json aj = io::read_json_file(action_path);
    HopfAction phi = io::action_from_json(aj, a);
    if (!phi.group().is_finite()) throw io_error("build double: only finite structure groups are materializable");

    HopfPiCoalgebra d = double_picoalgebra(a, b, sigma, phi);
    bool nondegenerate = true;
    try {
        HopfAction psi = dual_action(sigma, phi);
        install_crossing(d, sigma, phi, psi);
        install_r_matrix(d, sigma, dual_bases(sigma));
    } catch (const non_invertible&) {
        nondegenerate = false; // degenerate pairing: quotient first to get a crossing and R-matrix
    }

    json inputs;
    inputs["A"] = io::read_json_file(a_path);
    inputs["B"] = io::read_json_file(b_path);
    inputs["sigma"] = sj;
    inputs["action"] = aj;
    const json bundle = io::bundle_to_json(d, "double", a->field(), enumerate_colors(d.group()), json::object(), inputs);
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json")
        io::save_bundle_file(out, bundle);
    else
        io::save_bundle_dir(out, bundle);
    std::cout << "wrote double bundle to " << out << (nondegenerate ? "" : " (degenerate pairing: no crossing/R)")
              << "\n";
    return 0;
}

struct LoadedFamily {
    HopfPiCoalgebra h;
    std::vector<std::pair<std::string, GroupElem>> colors;
    VerificationReport extra_checks;
};

// dg/double bundles verify straight from the files; an bundles rebuild the
// quotient family from the stored inputs (the gl test set is not closed under
// products) and additionally compare the stored components against the
// rebuilt ones.
LoadedFamily family_from_bundle(const Bundle& bundle) {
    const std::string kind = bundle.manifest.at("kind").get<std::string>();
    if (kind != "an") return LoadedFamily{io::picoalgebra_from_bundle(bundle), bundle.colors, {}};

    if (!bundle.manifest.contains("__inputs")) throw io_error("an bundle: missing input files");
    const json& inputs = bundle.manifest.at("__inputs");
    io::require_keys(inputs, {"A", "B", "sigma", "action"}, "an bundle inputs");
    auto a = std::make_shared<const FinHopfAlgebra>(io::hopf_from_json(inputs.at("A")));
    auto b = std::make_shared<const FinHopfAlgebra>(io::hopf_from_json(inputs.at("B")));
    PairingTable sigma(a, b, io::mat_from_json(a->field(), inputs.at("sigma").at("sigma")));
    HopfAction phi = io::action_from_json(inputs.at("action"), a);

    HopfPiCoalgebra d = double_picoalgebra(a, b, sigma, phi);
    HopfAction psi = dual_action(sigma, phi);
    install_crossing(d, sigma, phi, psi);
    install_r_matrix(d, sigma, dual_bases(sigma));

    const Vec seed = io::vec_from_json(a->field(), bundle.manifest.at("quotient_seed"));
    HopfPiCoalgebra d_copy = d;
    CoidealFamily ideal{[d_copy, seed](const GroupElem& color) {
        return hopfpi::detail::ideal_closure(d_copy.component(color), seed);
    }};
    std::vector<GroupElem> elems;
    for (const auto& [name, e] : bundle.colors) elems.push_back(e);
    HopfPiCoalgebra quo = quotient_picoalgebra(d, ideal, elems);

    // stored component files must match the deterministic rebuild
    VerificationReport extra;
    for (const auto& [name, e] : bundle.colors) {
        CheckEntry entry{"bundle-component-match", {name}, true, {}, ""};
        auto it = bundle.components.find(name);
        if (it == bundle.components.end()) {
            entry.pass = false;
            entry.detail = "component file missing";
        } else {
            const FinAlgebra stored = io::algebra_from_json(bundle.field, it->second);
            const FinAlgebra& rebuilt = quo.component(e);
            if (!(stored.mult.as_matrix(bundle.field) == rebuilt.mult.as_matrix(bundle.field)) ||
                !(stored.unit == rebuilt.unit))
                entry.pass = false;
        }
        extra.add(std::move(entry));
    }
    return LoadedFamily{std::move(quo), bundle.colors, std::move(extra)};
}

int emit_report(const VerificationReport& rep, const std::string& format, const std::string& out_path) {
    std::string payload;
    if (format == "json")
        payload = io::report_to_json(rep).dump(2) + "\n";
    else
        payload = io::report_to_text(rep);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw io_error("cannot write " + out_path);
        out << payload;
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_verify(const std::string& in, const std::string& suite, const std::string& colors_arg,
               const std::string& format, const std::string& out_path) {
    const Bundle bundle = io::load_bundle(in);
    LoadedFamily family = family_from_bundle(bundle);

    std::vector<GroupElem> colors;
    if (colors_arg == "all") {
        for (const auto& [name, e] : family.colors) colors.push_back(e);
    } else {
        std::string item;
        std::stringstream ss(colors_arg);
        while (std::getline(ss, item, ',')) {
            bool found = false;
            for (const auto& [name, e] : family.colors)
                if (name == item) {
                    colors.push_back(e);
                    found = true;
                    break;
                }
            if (!found) throw io_error("unknown color '" + item + "' (names come from the bundle manifest)");
        }
    }
    if (colors.empty()) throw io_error("empty color set");

    VerificationReport rep = std::move(family.extra_checks);
    const bool all = suite == "all";
    if (all || suite == "picoalgebra") rep.merge(verify_picoalgebra(family.h, colors));
    if ((all && family.h.has_crossing()) || suite == "crossing") rep.merge(verify_crossing(family.h, colors));
    if ((all && family.h.has_rmatrix()) || suite == "qt") {
        rep.merge(verify_quasitriangular(family.h, colors));
        rep.merge(verify_r_derived(family.h, colors));
    }
    if ((all && family.h.has_rmatrix()) || suite == "ybe") rep.merge(verify_colored_ybe(family.h, colors));
    if ((all && family.h.has_twist()) || suite == "ribbon") rep.merge(verify_ribbon(family.h, colors));
    rep.sort();
    return emit_report(rep, format, out_path);
}

int cmd_verify_sl2(const std::string& n_arg, const std::string& alpha, const std::string& beta,
                   const std::string& gamma, int prec, const std::string& format, const std::string& out_path) {
    std::vector<int> dims;
    {
        std::string item;
        std::stringstream ss(n_arg);
        while (std::getline(ss, item, ',')) dims.push_back(std::stoi(item));
    }
    if (dims.size() != 2 && dims.size() != 3) throw io_error("--n takes two or three dimensions, e.g. 2,2,2");
    const std::vector<HPoly> colors =
        dims.size() == 2 ? std::vector<HPoly>{parse_hpoly(alpha), parse_hpoly(beta)}
                         : std::vector<HPoly>{parse_hpoly(alpha), parse_hpoly(beta), parse_hpoly(gamma)};

    VerificationReport rep;
    for (std::size_t i = 0; i < dims.size(); ++i) rep.merge(check_uh_relations(dims[i], colors[i], prec));
    for (std::size_t i = 0; i < dims.size(); ++i)
        for (std::size_t j = 0; j < dims.size(); ++j)
            if (i != j) rep.merge(check_qt1_rep(dims[i], dims[j], colors[i], colors[j], prec));
    if (dims.size() == 3)
        rep.merge(check_colored_ybe_rep(dims[0], dims[1], dims[2], colors[0], colors[1], colors[2], prec));
    rep.sort();
    return emit_report(rep, format, out_path);
}

int cmd_export(const std::string& in, const std::string& what, const std::string& color, const std::string& color2) {
    const Bundle bundle = io::load_bundle(in);
    json result;
    if (what == "manifest") {
        result = bundle.manifest;
        if (result.contains("__inputs")) result.erase("__inputs");
    } else if (what == "component") {
        auto it = bundle.components.find(color);
        if (it == bundle.components.end()) throw io_error("no component for color '" + color + "'");
        result = it->second;
    } else {
        std::string stem = what;
        if (what == "antipode" || what == "twist") stem += "__" + color;
        if (what == "comult" || what == "crossing" || what == "rmatrix") stem += "__" + color + "__" + color2;
        auto it = bundle.maps.find(stem);
        if (it == bundle.maps.end()) throw io_error("no map '" + stem + "' in bundle");
        result = it->second;
    }
    std::cout << result.dump(2) << "\n";
    return 0;
}

int cmd_inspect(const std::string& in) {
    const Bundle bundle = io::load_bundle(in);
    std::cout << "kind: " << bundle.manifest.at("kind").get<std::string>() << "\n";
    std::cout << "field: " << bundle.field.describe() << "\n";
    std::cout << "group: " << bundle.manifest.at("group").at("kind").get<std::string>() << "\n";
    std::cout << "crossing: " << (bundle.manifest.value("has_crossing", false) ? "yes" : "no")
              << ", rmatrix: " << (bundle.manifest.value("has_rmatrix", false) ? "yes" : "no")
              << ", twist: " << (bundle.manifest.value("has_twist", false) ? "yes" : "no") << "\n";
    std::cout << "colors:\n";
    for (const auto& [name, e] : bundle.colors) {
        std::cout << "  " << name << " = " << bundle.group.serialize(e);
        auto it = bundle.components.find(name);
        if (it != bundle.components.end()) std::cout << "  (component dim " << it->second.at("dim").get<Index>() << ")";
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact construction and verification of twisted-double Hopf group-coalgebras"};
    app.require_subcommand(1);

    std::string group = "z2", field_text = "q", out, in, a_path, b_path, sigma_path, action_path;
    std::string suite = "all", colors_arg = "all", format = "json", report_out;
    std::string what = "manifest", color, color2;
    std::string n_list = "2,2", alpha = "0", beta = "0", gamma = "0";
    int an_n = 1, prec = 6;

    auto* build = app.add_subcommand("build", "build a family and write its bundle");
    build->require_subcommand(1);
    auto* build_dg_cmd = build->add_subcommand("dg", "twisted double of a finite group algebra");
    build_dg_cmd->add_option("--group", group, "z2|z4|zN|s3|table:FILE")->required();
    build_dg_cmd->add_option("--field", field_text, "q or fp:P (default q)");
    build_dg_cmd->add_option("--out", out, "output bundle directory")->required();
    auto* build_an_cmd = build->add_subcommand("an", "GL_n-colored quotient family");
    build_an_cmd->add_option("--n", an_n, "rank n >= 1")->required();
    build_an_cmd->add_option("--field", field_text, "q or fp:P (default q)");
    build_an_cmd->add_option("--out", out, "output bundle directory")->required();
    auto* build_double_cmd = build->add_subcommand("double", "generic twisted double from files");
    build_double_cmd->add_option("--A", a_path, "Hopf algebra file")->required();
    build_double_cmd->add_option("--B", b_path, "Hopf algebra file")->required();
    build_double_cmd->add_option("--sigma", sigma_path, "pairing file")->required();
    build_double_cmd->add_option("--action", action_path, "action file")->required();
    build_double_cmd->add_option("--out", out, "output bundle (.json file or directory)")->required();

    auto* verify = app.add_subcommand("verify", "run axiom suites over a bundle");
    auto* verify_sl2_cmd = verify->add_subcommand("sl2", "rank-1 h-adic checks at the representation level");
    verify_sl2_cmd->add_option("--n", n_list, "two or three dimensions, e.g. 2,2,2")->required();
    verify_sl2_cmd->add_option("--alpha", alpha, "color polynomial in h (default 0)");
    verify_sl2_cmd->add_option("--beta", beta, "color polynomial in h (default 0)");
    verify_sl2_cmd->add_option("--gamma", gamma, "color polynomial in h (default 0)");
    verify_sl2_cmd->add_option("--prec", prec, "series precision N (default 6)");
    verify_sl2_cmd->add_option("--report", format, "json|text (default json)");
    verify_sl2_cmd->add_option("--out", report_out, "write the report to a file instead of stdout");
    verify->add_option("--in", in, "bundle directory or .json file");
    verify->add_option("--suite", suite, "picoalgebra|crossing|qt|ybe|ribbon|all (default all)");
    verify->add_option("--colors", colors_arg, "all or comma-separated color names (default all)");
    verify->add_option("--report", format, "json|text (default json)");
    verify->add_option("--out", report_out, "write the report to a file instead of stdout");

    auto* export_cmd = app.add_subcommand("export", "print one bundle artifact as JSON");
    export_cmd->add_option("--in", in, "bundle directory or .json file")->required();
    export_cmd->add_option("--what", what, "manifest|component|comult|counit|antipode|crossing|rmatrix|twist");
    export_cmd->add_option("--color", color, "first color name");
    export_cmd->add_option("--color2", color2, "second color name");

    auto* inspect_cmd = app.add_subcommand("inspect", "summarize a bundle");
    inspect_cmd->add_option("--in", in, "bundle directory or .json file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_dg_cmd->parsed()) return cmd_build_dg(group, field_text, out);
        if (build_an_cmd->parsed()) return cmd_build_an(an_n, field_text, out);
        if (build_double_cmd->parsed()) return cmd_build_double(a_path, b_path, sigma_path, action_path, out);
        if (verify_sl2_cmd->parsed()) return cmd_verify_sl2(n_list, alpha, beta, gamma, prec, format, report_out);
        if (verify->parsed()) {
            if (in.empty()) throw hopfpi::io_error("verify: --in is required (or use `verify sl2`)");
            return cmd_verify(in, suite, colors_arg, format, report_out);
        }
        if (export_cmd->parsed()) return cmd_export(in, what, color, color2);
        if (inspect_cmd->parsed()) return cmd_inspect(in);
    } catch (const std::exception& e) {
        hopfpi::json err;
        err["error"]["type"] = typeid(e).name();
        err["error"]["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 0;
}
