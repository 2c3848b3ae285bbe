// calkin: batch analysis of linear combinations of composition operators.
// JSON reports on stdout; exit 0 = ok, 1 = parse error, 2 = verdict-level
// error, 3 = indeterminate outcome.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "calkin/calkin.hpp"

namespace {

using namespace calkin;

struct options {
    std::string map_file, comb_file, maps_file, weights_file;
    std::string mode = "auto";
    std::string emit_csv;
    double beta = 1.0;
    int section_n = 256;
    int angle_count = 4096;
    std::vector<double> partition{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> radii;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int exit_code_for(const error& e) {
    switch (e.code()) {
        case errc::parse_error:
        case errc::exact_mode_required:
            return 1;
        case errc::indeterminate:
        case errc::indeterminate_data_match:
            return 3;
        default:
            return 2;
    }
}

json error_json(const error& e) {
    json j;
    j["schema"] = "calkin/error/1";
    j["error"] = errc_name(e.code());
    j["detail"] = e.what();
    if (e.witness()) j["witness"] = {e.witness()->real(), e.witness()->imag()};
    return j;
}

// Loads the "maps" array (or a bare array) from a file.
std::vector<json> map_array(const json& j) {
    if (j.is_array()) return std::vector<json>(j.begin(), j.end());
    if (j.is_object() && j.contains("maps"))
        return std::vector<json>(j.at("maps").begin(), j.at("maps").end());
    throw error(errc::parse_error, "expected a map array or an object with \"maps\"");
}

template <class Fn>
int dispatch_map(const options& opt, Fn&& fn) {
    parsed_map pm = parse_map(load_json_file(opt.map_file), parse_mode(opt.mode));
    if (pm.exact) return fn(*pm.em);
    return fn(*pm.fm);
}

template <class Fn>
int dispatch_maps(const options& opt, Fn&& fn) {
    arithmetic_mode mode = parse_mode(opt.mode);
    std::vector<json> arr = map_array(load_json_file(opt.maps_file));
    bool exact = mode != arithmetic_mode::floating;
    for (const auto& m : arr) exact = exact && io_detail::all_literals_exact(m);
    if (mode == arithmetic_mode::exact && !exact)
        throw error(errc::exact_mode_required, "input contains float literals");
    if (exact) {
        std::vector<exact_map> maps;
        for (const auto& m : arr) maps.push_back(io_detail::build_map<exact_complex>(m));
        return fn(maps);
    }
    std::vector<float_map> maps;
    for (const auto& m : arr) maps.push_back(io_detail::build_map<cnum>(m));
    return fn(maps);
}

template <class Fn>
int dispatch_comb(const options& opt, Fn&& fn) {
    parsed_combination pc = parse_combination(load_json_file(opt.comb_file), parse_mode(opt.mode));
    if (pc.exact) return fn(*pc.ec);
    return fn(*pc.fc);
}

int cmd_validate(const options& opt) {
    return dispatch_map(opt, [&](const auto& m) {
        validation_report rep = validate_self_map(m);
        emit(validation_json(rep));
        if (rep.result == verdict::indeterminate) return 3;
        return rep.passed() ? 0 : 2;
    });
}

int cmd_analyze(const options& opt) {
    return dispatch_map(opt, [&](const auto& m) {
        auto cs = find_contact_points(m);
        emit(contact_set_json(cs));
        return 0;
    });
}

int cmd_compact(const options& opt) {
    return dispatch_comb(opt, [&](const auto& comb) {
        using C = std::decay_t<decltype(comb.coefficients[0])>;
        relation_engine<C> eng(comb.maps);
        auto v = eng.decide(comb.coefficients);
        emit(verdict_json(eng, v, comb.space.beta));
        if (!opt.emit_csv.empty()) {
            // finite-section corroboration: (N, sigma_skip) for a small ladder
            std::vector<std::vector<double>> rows;
            for (int n : {256, 512, 1024}) {
                auto fs = finite_section(comb, n);
                int skip = static_cast<int>(std::ceil(std::sqrt(double(n))));
                rows.push_back({double(n), singular_tail(fs, skip)});
            }
            write_csv((std::filesystem::path(opt.emit_csv) / "section_tails.csv").string(),
                      "N,sigma_skip", rows);
        }
        return 0;
    });
}

int cmd_relations(const options& opt) {
    return dispatch_maps(opt, [&](const auto& maps) {
        relation_engine eng(maps);
        auto rs = eng.relation_space();
        emit(relation_space_json(rs));
        return 0;
    });
}

int cmd_enorm(const options& opt) {
    return dispatch_map(opt, [&](const auto& m) {
        using C = std::decay_t<decltype(m.a())>;
        auto cs = find_contact_points(m);
        auto en = essential_norm_composition(cs, space_spec(opt.beta));
        json j;
        j["schema"] = "calkin/enorm/1";
        j["mode"] = is_exact_v<C> ? "exact" : "float";
        j["beta"] = opt.beta;
        if (en.exact) j["essential_norm_sq"] = *en.exact;
        if (en.exact_rational) j["essential_norm_sq_exact"] = rational_string(*en.exact_rational);
        j["lower_bound"] = en.lower_bound;
        // singular Clark measure per boundary value alpha in phi(F)
        j["clark"] = json::array();
        std::vector<C> seen;
        for (const auto& p : cs.points) {
            bool dup = false;
            for (const C& a : seen)
                dup = dup || scalar_ops<C>::compare(a, p.boundary_value()) == match::equal;
            if (dup) continue;
            seen.push_back(p.boundary_value());
            auto mu = singular_clark(cs, p.boundary_value());
            json mj;
            mj["alpha"] = scalar_json(p.boundary_value());
            mj["atoms"] = json::array();
            for (const auto& [zeta, mass] : mu.atoms)
                mj["atoms"].push_back({{"zeta", scalar_json(zeta)},
                                       {"mass", real_json<C>(mass)}});
            j["clark"].push_back(std::move(mj));
        }
        if (!opt.emit_csv.empty()) {
            std::vector<std::vector<double>> rows;
            for (const C& alpha : seen) {
                cnum af = scalar_ops<C>::as_complex(alpha);
                for (cnum z : {cnum(0, 0), cnum(0, 0.3), cnum(0.5, 0), cnum(-0.4, 0.4),
                               cnum(0, -0.85)}) {
                    auto probe = clark_radial_probe(m, cs, alpha, z);
                    rows.push_back({z.real(), z.imag(), af.real(), af.imag(), probe.residual});
                }
            }
            write_csv((std::filesystem::path(opt.emit_csv) / "clark_residuals.csv").string(),
                      "z_re,z_im,alpha_re,alpha_im,residual", rows);
        }
        if (!opt.weights_file.empty()) {
            json wj = load_json_file(opt.weights_file);
            std::vector<C> weights;
            for (const auto& w : wj.at("weights"))
                weights.push_back(io_detail::materialize<C>(io_detail::parse_scalar(w)));
            auto wb = weighted_essential_bounds(cs, weights);
            j["weighted"] = {{"lower", wb.lower},
                             {"upper", wb.upper},
                             {"compact", wb.compact}};
            if (wb.lower_rational)
                j["weighted"]["lower_exact"] = rational_string(*wb.lower_rational);
        }
        emit(j);
        return 0;
    });
}

int cmd_diffbounds(const options& opt) {
    return dispatch_maps(opt, [&](const auto& maps) {
        if (maps.size() != 2)
            throw error(errc::parse_error, "difference bounds need exactly two maps");
        auto db = difference_bounds(maps[0], maps[1], space_spec(opt.beta));
        json j;
        j["schema"] = "calkin/diffbounds/1";
        j["lower"] = db.lower;
        if (db.lower_rational) j["lower_exact"] = rational_string(*db.lower_rational);
        j["upper_quantity"] = db.upper_quantity;
        j["upper_note"] =
            "essential norm squared is at most this quantity times an unspecified absolute constant";
        j["rho_small"] = db.rho_small;
        emit(j);
        return 0;
    });
}

int cmd_osculate(const options& opt) {
    return dispatch_map(opt, [&](const auto& m) {
        auto parts = osculating_decomposition(m);
        json j;
        j["schema"] = "calkin/osculate/1";
        j["maps"] = json::array();
        for (const auto& p : parts) j["maps"].push_back(map_json(p));
        auto rep = sum_decomposition_check(m, parts);
        j["sum_matches_modulo_compacts"] = rep.equivalent;
        emit(j);
        return 0;
    });
}

int cmd_connect(const options& opt) {
    return dispatch_maps(opt, [&](const auto& maps) {
        if (maps.size() != 2)
            throw error(errc::parse_error, "connectedness check needs exactly two maps");
        bool same = connectedness_check(maps[0], maps[1]);
        json j;
        j["schema"] = "calkin/connect/1";
        j["same_component"] = same;
        emit(j);
        return 0;
    });
}

int cmd_probe(const options& opt) {
    return dispatch_comb(opt, [&](const auto& comb) {
        auto rep = compactness_probe(comb, opt.radii, opt.angle_count);
        json j;
        j["schema"] = "calkin/probe/1";
        j["note"] = "heuristic corroboration only; the grouped-sum verdict is authoritative";
        j["consistent_with_compact"] = rep.consistent_with_compact;
        j["tolerance"] = rep.tolerance;
        j["radius_max"] = json::array();
        for (auto& [r, v] : rep.radius_max) j["radius_max"].push_back({r, v});
        emit(j);
        if (!opt.emit_csv.empty()) {
            std::vector<std::vector<double>> rows;
            for (auto& [r, v] : rep.radius_max) rows.push_back({r, v});
            write_csv((std::filesystem::path(opt.emit_csv) / "probe_radius_max.csv").string(),
                      "radius,max_kernel_form", rows);
            // kernel-form estimates along the approach curve at each contact
            std::vector<cnum> zetas;
            for (const auto& m : comb.maps)
                for (const auto& p : find_contact_points(m).points) {
                    cnum z = scalar_ops<std::decay_t<decltype(p.zeta)>>::as_complex(p.zeta);
                    bool dup = false;
                    for (const cnum& w : zetas) dup = dup || std::abs(w - z) < 1e-9;
                    if (!dup) zetas.push_back(z);
                }
            for (std::size_t i = 0; i < zetas.size(); ++i) {
                test_curve cv = curve_points(zetas[i], 1, 1e3, 40, {1e-4, 2e-10});
                auto est = kernel_lowerbound_estimate(comb, cv);
                std::vector<std::vector<double>> table;
                for (auto& [depth, val] : est.table) table.push_back({depth, val});
                write_csv((std::filesystem::path(opt.emit_csv) /
                           ("kernel_curve_" + std::to_string(i) + ".csv"))
                              .string(),
                          "depth,estimate", table);
            }
        }
        return 0;
    });
}

int cmd_path(const options& opt) {
    return dispatch_maps(opt, [&](const auto& maps) {
        if (maps.size() != 2)
            throw error(errc::parse_error, "path probe needs exactly two maps");
        auto rep = path_lipschitz_probe(maps[0], maps[1], opt.partition, opt.section_n);
        json j;
        j["schema"] = "calkin/path/1";
        j["n"] = rep.n;
        j["rho_sup"] = rep.rho_sup;
        j["fitted_ratio"] = rep.fitted_ratio;
        j["rows"] = json::array();
        for (const auto& row : rep.rows)
            j["rows"].push_back({{"s", row.s}, {"r", row.r}, {"ratio", row.ratio}});
        emit(j);
        if (!opt.emit_csv.empty()) {
            std::vector<std::vector<double>> rows;
            for (const auto& row : rep.rows) rows.push_back({row.s, row.r, row.ratio});
            write_csv((std::filesystem::path(opt.emit_csv) / "path_ratios.csv").string(),
                      "s,r,ratio", rows);
        }
        return 0;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-data compactness analysis for combinations of composition operators"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    options opt;
    app.add_option("--mode", opt.mode, "arithmetic: auto, exact, or float")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    app.add_option("--emit-csv", opt.emit_csv, "directory for CSV sidecars");

    auto add_map = [&](CLI::App* c) { c->add_option("--map", opt.map_file)->required(); };
    auto add_maps = [&](CLI::App* c) { c->add_option("--maps", opt.maps_file)->required(); };
    auto add_comb = [&](CLI::App* c) { c->add_option("--comb", opt.comb_file)->required(); };

    CLI::App* validate = app.add_subcommand("validate", "check that a map sends the disk into itself");
    add_map(validate);
    CLI::App* analyze = app.add_subcommand("analyze", "boundary report: contact points, jets, class flags");
    add_map(analyze);
    CLI::App* compact = app.add_subcommand("compact", "decide compactness of a linear combination");
    add_comb(compact);
    CLI::App* dim = app.add_subcommand("dim", "dimension of the span of the operator cosets");
    add_maps(dim);
    CLI::App* relations = app.add_subcommand("relations", "relation space and kernel basis");
    add_maps(relations);
    CLI::App* enorm = app.add_subcommand("enorm", "essential norm of one composition operator");
    add_map(enorm);
    enorm->add_option("--beta", opt.beta, "space parameter (1 = Hardy)");
    enorm->add_option("--weights", opt.weights_file, "weight values at the contact points");
    CLI::App* diffb = app.add_subcommand("diffbounds", "essential-norm bounds for a difference");
    add_maps(diffb);
    CLI::App* osculate = app.add_subcommand("osculate", "osculating linear fractional decomposition");
    add_map(osculate);
    CLI::App* connect = app.add_subcommand("connect", "same-component check for two maps");
    add_maps(connect);
    CLI::App* probe = app.add_subcommand("probe", "kernel-form compactness corroboration scan");
    add_comb(probe);
    probe->add_option("--radii", opt.radii, "probe radii");
    probe->add_option("--angles", opt.angle_count, "size of the uniform angle grid");
    CLI::App* path = app.add_subcommand("path", "finite-section Lipschitz ratios along a segment");
    add_maps(path);
    path->add_option("--partition", opt.partition, "parameter values in [0, 1]");
    path->add_option("-N,--section", opt.section_n, "finite-section size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (analyze->parsed()) return cmd_analyze(opt);
        if (compact->parsed()) return cmd_compact(opt);
        if (dim->parsed()) {
            return dispatch_maps(opt, [&](const auto& maps) {
                relation_engine eng(maps);
                json j;
                j["schema"] = "calkin/dimension/1";
                j["n"] = eng.size();
                j["dimension"] = eng.coset_dimension();
                emit(j);
                return 0;
            });
        }
        if (relations->parsed()) return cmd_relations(opt);
        if (enorm->parsed()) return cmd_enorm(opt);
        if (diffb->parsed()) return cmd_diffbounds(opt);
        if (osculate->parsed()) return cmd_osculate(opt);
        if (connect->parsed()) return cmd_connect(opt);
        if (probe->parsed()) return cmd_probe(opt);
        if (path->parsed()) return cmd_path(opt);
    } catch (const calkin::error& e) {
        emit(error_json(e));
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}
