#pragma once

#include <json.hpp>

#include <fstream>
#include <variant>

#include "calkin/bounds.hpp"
#include "calkin/curves.hpp"
#include "calkin/path_probe.hpp"

namespace calkin {

using nlohmann::json;

enum class arithmetic_mode { automatic, exact, floating };

inline arithmetic_mode parse_mode(const std::string& s) {
    if (s == "auto") return arithmetic_mode::automatic;
    if (s == "exact") return arithmetic_mode::exact;
    if (s == "float") return arithmetic_mode::floating;
    throw error(errc::parse_error, "mode must be auto, exact or float");
}

namespace io_detail {

// A scalar literal: string -> Gaussian rational (exact), number or [re, im]
// pair -> complex double.
struct scalar_literal {
    std::variant<exact_complex, cnum> v;
    bool exact() const { return std::holds_alternative<exact_complex>(v); }
    cnum as_float() const {
        return exact() ? to_complex(std::get<exact_complex>(v)) : std::get<cnum>(v);
    }
    const exact_complex& as_exact() const { return std::get<exact_complex>(v); }
};

inline scalar_literal parse_scalar(const json& j) {
    scalar_literal s;
    if (j.is_string()) {
        s.v = parse_exact_complex(j.get<std::string>());
    } else if (j.is_number_integer()) {
        s.v = exact_complex(rational(j.get<long long>()));
    } else if (j.is_number()) {
        s.v = cnum(j.get<double>(), 0.0);
    } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        s.v = cnum(j[0].get<double>(), j[1].get<double>());
    } else {
        throw error(errc::parse_error, "expected a rational string, number, or [re, im] pair");
    }
    return s;
}

template <class C>
C materialize(const scalar_literal& s) {
    if constexpr (is_exact_v<C>) {
        if (!s.exact())
            throw error(errc::exact_mode_required, "float literal in exact-mode input");
        return s.as_exact();
    } else {
        return s.as_float();
    }
}

template <class C>
self_map<C> build_map(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw error(errc::parse_error, "map object needs a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    if (type == "lft") {
        return self_map<C>::linear_fractional(
            materialize<C>(parse_scalar(j.at("a"))), materialize<C>(parse_scalar(j.at("b"))),
            materialize<C>(parse_scalar(j.at("c"))), materialize<C>(parse_scalar(j.at("d"))));
    }
    if (type == "rational") {
        std::vector<C> num, den;
        for (const auto& x : j.at("num")) num.push_back(materialize<C>(parse_scalar(x)));
        for (const auto& x : j.at("den")) den.push_back(materialize<C>(parse_scalar(x)));
        return self_map<C>::rational(std::move(num), std::move(den));
    }
    if (type == "compose")
        return self_map<C>::composed(build_map<C>(j.at("outer")), build_map<C>(j.at("inner")));
    throw error(errc::parse_error, "unknown map type '" + type + "'");
}

inline bool all_literals_exact(const json& j) {
    if (j.is_string()) return true;
    if (j.is_number()) return j.is_number_integer();
    if (j.is_array()) {
        if (j.size() == 2 && j[0].is_number() && j[1].is_number()) return false;
        for (const auto& x : j) {
            if (!all_literals_exact(x)) return false;
        }
        return true;
    }
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (k == "type") continue;
            if (!all_literals_exact(v)) return false;
        }
        return true;
    }
    return true;
}

} // namespace io_detail

// A map plus the arithmetic it was parsed into. Exact when every literal in
// the file is a rational string (or integer) and the mode allows it.
struct parsed_map {
    bool exact = false;
    std::optional<exact_map> em;
    std::optional<float_map> fm;

    const float_map& as_float() {
        if (!fm) fm = to_float(*em);
        return *fm;
    }
};

inline parsed_map parse_map(const json& j, arithmetic_mode mode) {
    parsed_map out;
    bool want_exact = mode != arithmetic_mode::floating && io_detail::all_literals_exact(j);
    if (mode == arithmetic_mode::exact && !io_detail::all_literals_exact(j))
        throw error(errc::exact_mode_required, "input contains float literals");
    if (want_exact) {
        out.exact = true;
        out.em = io_detail::build_map<exact_complex>(j);
    } else {
        out.fm = io_detail::build_map<cnum>(j);
    }
    return out;
}

struct parsed_combination {
    bool exact = false;
    std::optional<combination<exact_complex>> ec;
    std::optional<combination<cnum>> fc;
    space_spec space;
};

inline parsed_combination parse_combination(const json& j, arithmetic_mode mode) {
    if (!j.is_object() || !j.contains("maps") || !j.contains("coeffs"))
        throw error(errc::parse_error, "combination needs \"maps\" and \"coeffs\"");
    parsed_combination out;
    out.space = space_spec(j.value("beta", 1.0));
    bool want_exact = mode != arithmetic_mode::floating;
    if (want_exact) {
        for (const auto& m : j.at("maps"))
            want_exact = want_exact && io_detail::all_literals_exact(m);
        for (const auto& c : j.at("coeffs"))
            want_exact = want_exact && io_detail::all_literals_exact(c);
        if (mode == arithmetic_mode::exact && !want_exact)
            throw error(errc::exact_mode_required, "input contains float literals");
    }
    if (want_exact) {
        std::vector<exact_map> maps;
        std::vector<exact_complex> coeffs;
        for (const auto& m : j.at("maps")) maps.push_back(io_detail::build_map<exact_complex>(m));
        for (const auto& c : j.at("coeffs"))
            coeffs.push_back(io_detail::materialize<exact_complex>(io_detail::parse_scalar(c)));
        out.exact = true;
        out.ec = combination<exact_complex>(std::move(maps), std::move(coeffs), out.space);
    } else {
        std::vector<float_map> maps;
        std::vector<cnum> coeffs;
        for (const auto& m : j.at("maps")) maps.push_back(io_detail::build_map<cnum>(m));
        for (const auto& c : j.at("coeffs"))
            coeffs.push_back(io_detail::parse_scalar(c).as_float());
        out.fc = combination<cnum>(std::move(maps), std::move(coeffs), out.space);
    }
    return out;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw error(errc::parse_error, std::string("JSON: ") + e.what());
    }
}

// ---- report serialization ------------------------------------------------

template <class C>
json scalar_json(const C& v) {
    if constexpr (is_exact_v<C>) {
        return gaussian_string(v);
    } else {
        return json::array({v.real(), v.imag()});
    }
}

template <class C>
json real_json(const typename scalar_ops<C>::real_type& v) {
    if constexpr (is_exact_v<C>) {
        return rational_string(v);
    } else {
        return v;
    }
}

inline const char* flag3_name(flag3 f) {
    switch (f) {
        case flag3::yes: return "yes";
        case flag3::no: return "no";
        default: return "indeterminate";
    }
}

inline json validation_json(const validation_report& rep) {
    json j;
    j["schema"] = "calkin/validate/1";
    j["result"] = rep.result == verdict::pass ? "pass"
                : rep.result == verdict::fail ? "fail"
                                              : "indeterminate";
    j["certificate"] = rep.certificate;
    j["is_automorphism"] = rep.is_automorphism;
    j["boundary_contact"] = rep.boundary_contact;
    j["sup_modulus"] = rep.sup_modulus;
    if (rep.failure) j["error"] = errc_name(*rep.failure);
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    if (rep.witness) j["witness"] = {rep.witness->real(), rep.witness->imag()};
    return j;
}

template <class C>
json contact_set_json(const contact_set<C>& cs) {
    json j;
    j["schema"] = "calkin/boundary/1";
    j["mode"] = is_exact_v<C> ? "exact" : "float";
    j["points"] = json::array();
    for (const auto& p : cs.points) {
        json pj;
        pj["zeta"] = scalar_json(p.zeta);
        pj["order"] = p.order;
        pj["abs_derivative"] = real_json<C>(p.abs_derivative);
        pj["data"] = json::array();
        for (const auto& e : p.data.entries) pj["data"].push_back(scalar_json(e));
        pj["halfplane"] = json::array();
        for (const auto& e : p.halfplane.u_derivs) pj["halfplane"].push_back(scalar_json(e));
        j["points"].push_back(std::move(pj));
    }
    j["class"] = {{"in_s", cs.map_class.in_s},
                  {"in_s0", flag3_name(cs.map_class.in_s0)},
                  {"in_s2", cs.map_class.in_s2},
                  {"in_l", cs.map_class.in_l},
                  {"automorphism", cs.map_class.automorphism}};
    return j;
}

template <class C>
json verdict_json(const relation_engine<C>& eng, const compactness_verdict<C>& v, double beta) {
    json j;
    j["schema"] = "calkin/verdict/1";
    j["mode"] = is_exact_v<C> ? "exact" : "float";
    if (!is_exact_v<C>)
        j["confidence"] = "float data: verdict holds at matching threshold 1e-10, not exactly";
    j["beta"] = beta;
    j["beta_free"] = true;
    j["compact"] = v.compact;
    j["groups"] = json::array();
    for (const auto& g : eng.groups()) {
        json gj;
        gj["zeta"] = scalar_json(g.zeta);
        gj["order"] = g.order;
        gj["data"] = json::array();
        for (const auto& e : g.data.entries) gj["data"].push_back(scalar_json(e));
        gj["members"] = g.members;
        j["groups"].push_back(std::move(gj));
    }
    j["violated"] = json::array();
    for (const auto& [idx, sum] : v.violated)
        j["violated"].push_back({{"group", idx}, {"sum", scalar_json(sum)}});
    return j;
}

template <class C>
json relation_space_json(const relation_space_data<C>& rs) {
    json j;
    j["schema"] = "calkin/relations/1";
    j["mode"] = is_exact_v<C> ? "exact" : "float";
    j["n"] = rs.n;
    j["dimension"] = rs.span_basis.size();
    j["generators"] = rs.generators;
    auto basis_json = [](const std::vector<std::vector<C>>& rows) {
        json arr = json::array();
        for (const auto& row : rows) {
            json rj = json::array();
            for (const auto& x : row) rj.push_back(scalar_json(x));
            arr.push_back(std::move(rj));
        }
        return arr;
    };
    j["span_basis"] = basis_json(rs.span_basis);
    j["kernel_basis"] = basis_json(rs.kernel_basis);
    return j;
}

template <class C>
json map_json(const self_map<C>& m) {
    json j;
    switch (m.variant()) {
        case self_map<C>::kind::linear_fractional:
            j["type"] = "lft";
            j["a"] = scalar_json(m.a());
            j["b"] = scalar_json(m.b());
            j["c"] = scalar_json(m.c());
            j["d"] = scalar_json(m.d());
            break;
        case self_map<C>::kind::rational_quotient: {
            j["type"] = "rational";
            j["num"] = json::array();
            j["den"] = json::array();
            for (const auto& x : m.num()) j["num"].push_back(scalar_json(x));
            for (const auto& x : m.den()) j["den"].push_back(scalar_json(x));
            break;
        }
        case self_map<C>::kind::composite:
            j["type"] = "compose";
            j["outer"] = map_json(m.outer());
            j["inner"] = map_json(m.inner());
            break;
    }
    return j;
}

inline void write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw error(errc::parse_error, "cannot write '" + path + "'");
    out << header << "\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

} // namespace calkin
