#include "qec/problem_io.hpp"

#include <fstream>
#include <sstream>

namespace qec {

using nlohmann::json;

Field field_from_json(const json& j) {
    if (j.is_null()) return Field::rationals();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Q") return Field::rationals();
        throw InputError("unknown field \"" + s + "\"");
    }
    if (j.is_object() && j.contains("Fp")) {
        if (!j["Fp"].is_number_integer()) throw InputError("Fp needs an integer prime");
        return Field::prime(j["Fp"].get<std::int64_t>());
    }
    throw InputError("field must be \"Q\" or {\"Fp\": p}");
}

json field_to_json(const Field& k) {
    if (k.is_rational()) return "Q";
    return json{{"Fp", k.characteristic()}};
}

Scalar scalar_from_json(const Field& k, const json& j) {
    mpq_class q;
    if (j.is_number_integer()) {
        q = mpq_class(std::to_string(j.get<long long>()));
    } else if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (q.set_str(s, 10) != 0) throw InputError("not a rational: \"" + s + "\"");
        if (q.get_den() == 0) throw InputError("zero denominator in \"" + s + "\"");
        q.canonicalize();
    } else {
        throw InputError("coefficients must be integers or strings like \"3/4\"");
    }
    return k.from_rational(q);
}

std::vector<Scalar> parse_scalar_list(const Field& k, const std::string& csv) {
    std::vector<Scalar> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw InputError("empty entry in list \"" + csv + "\"");
        out.push_back(scalar_from_json(k, json(item.substr(b, e - b + 1))));
    }
    return out;
}

namespace {

int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("missing integer \"") + key + "\"");
    return j[key].get<int>();
}

}  // namespace

ProblemInput problem_from_json(const json& j) {
    if (!j.is_object()) throw InputError("problem must be a JSON object");
    if (j.contains("fermat")) {
        const json& f = j["fermat"];
        Field k = field_from_json(f.contains("field") ? f["field"] : (j.contains("field") ? j["field"] : json()));
        int n = get_int(f, "n"), m = get_int(f, "m");
        if (!f.contains("a") || !f["a"].is_array()) throw InputError("fermat needs an array \"a\"");
        std::vector<Scalar> a, b;
        for (auto& x : f["a"]) a.push_back(scalar_from_json(k, x));
        if (static_cast<int>(a.size()) != n + 1) throw InputError("\"a\" needs n+1 entries");
        if (!f.contains("b")) {
            // a single diagonal hypersurface
            RingPtr R = make_ring(k, 0, n);
            Polynomial F(R);
            for (int i = 0; i <= n; ++i) F.add_term(Monomial::var(R->x(i), m), a[i]);
            return {ProblemInstance::from_polys(R, m, {F}), std::nullopt};
        }
        for (auto& x : f["b"]) b.push_back(scalar_from_json(k, x));
        FermatInstance fi{k, n, m, a, b};
        fi.validate();
        return {fi.to_problem(), fi};
    }
    Field k = field_from_json(j.contains("field") ? j["field"] : json());
    int n = get_int(j, "n"), r = get_int(j, "r"), m = get_int(j, "m");
    if (!j.contains("polys") || !j["polys"].is_array()) throw InputError("missing array \"polys\"");
    std::vector<std::string> polys;
    for (auto& p : j["polys"]) {
        if (!p.is_string()) throw InputError("polys must be strings");
        polys.push_back(p.get<std::string>());
    }
    ProblemInput in{ProblemInstance::create(k, n, r, m, polys), std::nullopt};
    in.fermat = detect_fermat_pair(in.instance);
    return in;
}

ProblemInput read_problem(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
    return problem_from_json(j);
}

json gw_to_json(const GWForm& f) {
    json diag = json::array();
    const Field& k = f.field();
    for (auto& [a, c] : f.diag()) {
        for (long i = 0; i < c; ++i) diag.push_back(k.format(a));
        for (long i = 0; i < -c; ++i) diag.push_back("-" + k.format(a));
    }
    return json{{"h", f.h()}, {"diag", diag}};
}

json diagnostics_to_json(const ChiDiagnostics& d) {
    json j{{"route", d.route},
           {"chern_degree_X", d.chern_ci},
           {"chern_degree_total", d.chern_biproj},
           {"seconds", d.seconds}};
    if (d.route != "odd-dimension") {
        j["rho"] = d.rho.str();
        j["middle_bidegree"] = d.middle.str();
        j["dim_Jrho"] = d.dim_Jrho;
        j["dim_Jtilde_top"] = d.dim_Jtilde;
        j["dim_middle"] = d.dim_middle;
        j["rank_primitive"] = d.rank_primitive;
        j["rank_nonprimitive"] = d.rank_nonprimitive;
        j["rank_Q"] = d.rank_Q;
        j["hyperbolic_total"] = d.hyperbolic_calX;
        j["Ctilde_terms"] = d.ctilde_terms;
        j["Ctilde_leading_term"] = d.ctilde_leading;
        if (!d.C.empty()) j["C"] = d.C;
        j["trace_unit"] = d.trace_unit;
    }
    if (d.assumptions) {
        j["assumptions"] = json{{"status", d.assumptions->status_name()},
                                {"fermat_shortcut", d.assumptions->used_fermat_shortcut},
                                {"notes", d.assumptions->notes}};
    } else {
        j["assumptions"] = json{{"status", "assumed"}};
    }
    return j;
}

json result_to_json(const ChiResult& res) {
    const Field& k = res.chi_X.field();
    json j{{"schema", 1}, {"field", field_to_json(k)}, {"chi_X", gw_to_json(res.chi_X)},
           {"chi_total", gw_to_json(res.chi_calX)}, {"rank", res.chi_X.rank()}};
    j["signature"] = k.is_rational() ? json(signature(res.chi_X)) : json(nullptr);
    j["disc"] = k.format(discriminant(res.chi_X).rep);
    j["diagnostics"] = diagnostics_to_json(res.diag);
    return j;
}

json checks_to_json(const std::vector<OracleCheck>& checks) {
    json a = json::array();
    for (auto& c : checks) {
        json e{{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"agree", c.agree}, {"counted", c.counted}};
        if (!c.note.empty()) e["note"] = c.note;
        a.push_back(e);
    }
    return a;
}

}  // namespace qec
