#include "qec/problem_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qec;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kMismatch = 1, kBadInput = 2;

struct InputOpts {
    std::string input;
    bool assume_smooth = false;
    int dmax = -1;
    bool verify_all = false;
    std::string details;
    bool json_out = false;
    std::size_t max_columns = 200000;
    bool no_limit = false;
};

Field field_from_flag(const std::string& s) {
    if (s == "Q" || s == "q") return Field::rationals();
    std::string t = s;
    if (t.rfind("F", 0) == 0) t = t.substr(t[1] == '_' ? 2 : 1);
    try {
        return Field::prime(std::stoll(t));
    } catch (const std::invalid_argument&) {
        throw InputError("field must be Q or a prime such as F11");
    }
}

ChiOptions chi_options(const InputOpts& o) {
    ChiOptions c;
    c.assume_smooth = o.assume_smooth;
    c.assumptions.dmax = o.dmax;
    c.max_columns = o.no_limit ? static_cast<std::size_t>(-1) : o.max_columns;
    return c;
}

void print_checks(const std::vector<OracleCheck>& checks) {
    for (auto& c : checks) {
        std::cout << (c.agree ? "  agree   " : (c.counted ? "  DIFFER  " : "  differ  ")) << c.name << ": expected "
                  << c.expected << ", got " << c.got;
        if (!c.counted) std::cout << " (reported only)";
        if (!c.note.empty()) std::cout << " [" << c.note << "]";
        std::cout << "\n";
    }
}

bool all_counted_agree(const std::vector<OracleCheck>& checks) {
    for (auto& c : checks)
        if (c.counted && !c.agree) return false;
    return true;
}

int run_compute(const InputOpts& o) {
    ProblemInput in = read_problem(o.input);
    ChiResult res = compute_chi(in.instance, chi_options(o));
    json out = result_to_json(res);
    std::vector<OracleCheck> checks;
    if (o.verify_all) {
        checks = verify_all(in.instance, res);
        out["checks"] = checks_to_json(checks);
    }
    if (!o.details.empty()) {
        std::ofstream os(o.details);
        if (!os) throw InputError("cannot write " + o.details);
        os << out.dump(2) << "\n";
    }
    if (o.json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        const Field& k = res.chi_X.field();
        std::cout << "chi(X) = " << res.chi_X.str() << "\n";
        std::cout << "chi(total space) = " << res.chi_calX.str() << "\n";
        std::cout << "rank " << res.chi_X.rank();
        if (k.is_rational()) std::cout << ", signature " << signature(res.chi_X);
        std::cout << ", disc " << k.format(discriminant(res.chi_X).rep) << "\n";
        std::cout << "route " << res.diag.route << ", " << res.diag.seconds << " s\n";
        if (o.verify_all) print_checks(checks);
    }
    if (o.verify_all && !all_counted_agree(checks)) {
        if (o.json_out) print_checks(checks);
        std::cerr << "oracle mismatch\n";
        return kMismatch;
    }
    return kOk;
}

struct FermatOpts {
    int n = 2, m = 2;
    std::string a, b, field = "Q";
    bool json_out = false;
    bool verify_all = false;
    std::size_t max_columns = 200000;
};

int run_fermat(const FermatOpts& o) {
    Field k = field_from_flag(o.field);
    std::vector<Scalar> a = parse_scalar_list(k, o.a);
    json out{{"schema", 1}};
    std::vector<OracleCheck> checks;
    if (o.b.empty()) {
        ClosedForm lv = levine_hypersurface_closed_form(k, o.n, o.m, a);
        out["chi_X"] = gw_to_json(lv.form);
        out["printed_hyperbolic"] = lv.printed_h.get_str();
        if (!o.json_out) {
            std::cout << lv.form.str() << "\n";
            if (!lv.printed_consistent())
                std::cout << "note: rank forces " << lv.rank_h << "*H; the printed constant gives " << lv.printed_h
                          << "*H\n";
        }
        if (o.verify_all) {
            RingPtr R = make_ring(k, 0, o.n);
            Polynomial F(R);
            for (int i = 0; i <= o.n; ++i) F.add_term(Monomial::var(R->x(i), o.m), a[i]);
            ProblemInstance inst = ProblemInstance::from_polys(R, o.m, {F});
            ChiOptions c;
            c.max_columns = o.max_columns;
            checks = verify_all(inst, compute_chi(inst, c));
        }
    } else {
        FermatInstance f{k, o.n, o.m, a, parse_scalar_list(k, o.b)};
        f.validate();
        GWForm chi = f.n % 2 ? fermat_closed_form(f).form : fermat_closed_form_descended(f);
        ClosedForm printed = fermat_closed_form(f);
        out["chi_X"] = gw_to_json(chi);
        out["printed_closed_form"] = gw_to_json(printed.form);
        out["printed_hyperbolic"] = printed.printed_h.get_str();
        if (!o.json_out) {
            std::cout << chi.str() << "\n";
            std::cout << "printed closed form: " << printed.form.str() << "\n";
            if (!printed.printed_consistent())
                std::cout << "note: rank forces " << printed.rank_h << "*H; the printed constant gives "
                          << printed.printed_h << "*H\n";
        }
        if (f.n % 2 == 0) {
            GWForm tot = fermat_total_space_closed_form(f).form, rh = riemann_hurwitz_chi(f);
            out["chi_total"] = gw_to_json(tot);
            out["riemann_hurwitz"] = gw_to_json(rh);
            if (!o.json_out)
                std::cout << "total space: " << tot.str() << "\nRiemann-Hurwitz: " << rh.str() << "\n";
        }
        if (f.n == 2) {
            N2TraceForms t = fermat_n2_trace_forms(f);
            out["etale"] = json{{"e", k.format(t.e)},
                                {"f", k.format(t.f)},
                                {"two_step", gw_to_json(t.two_step)},
                                {"direct", gw_to_json(t.direct)},
                                {"printed_intermediate_matches", gw_equals(t.printed_intermediate, t.two_step)},
                                {"printed_final_matches", gw_equals(t.printed_final, t.two_step)}};
            if (!o.json_out) {
                std::cout << "etale trace form: " << t.two_step.str() << " (e = " << k.format(t.e)
                          << ", f = " << k.format(t.f) << ")\n";
                std::cout << "printed intermediate " << t.printed_intermediate.str()
                          << (gw_equals(t.printed_intermediate, t.two_step) ? " matches" : " does not match") << "\n";
                std::cout << "printed final " << t.printed_final.str()
                          << (gw_equals(t.printed_final, t.two_step) ? " matches" : " does not match") << "\n";
            }
        }
        if (o.verify_all) {
            ProblemInstance inst = f.to_problem();
            ChiOptions c;
            c.max_columns = o.max_columns;
            checks = verify_all(inst, compute_chi(inst, c));
        }
    }
    if (o.verify_all) {
        out["checks"] = checks_to_json(checks);
        if (!o.json_out) print_checks(checks);
    }
    if (o.json_out) std::cout << out.dump(2) << "\n";
    return o.verify_all && !all_counted_agree(checks) ? kMismatch : kOk;
}

int run_gw(const std::string& op, const std::vector<std::string>& forms, const std::string& field, bool json_out) {
    Field k = field_from_flag(field);
    std::vector<GWForm> fs;
    for (auto& s : forms) fs.push_back(parse_gw(s, k));
    if (op == "eq") {
        if (fs.size() != 2) throw InputError("gw eq takes two forms");
        bool eq = gw_equals(fs[0], fs[1]);
        if (json_out) std::cout << json{{"equal", eq}}.dump() << "\n";
        else std::cout << (eq ? "true" : "false") << "\n";
        return kOk;
    }
    if (op == "simplify" || op == "invariants") {
        if (fs.size() != 1) throw InputError("gw " + op + " takes one form");
        GWForm f = fs[0].simplified();
        json j = gw_to_json(f);
        j["rank"] = f.rank();
        if (f.is_honest()) {
            j["disc"] = k.format(discriminant(f).rep);
            if (k.is_rational()) {
                j["signature"] = signature(f);
                json hs = json::object();
                for (auto& v : relevant_places(f))
                    hs[v.prime == 0 ? std::string("inf") : v.prime.get_str()] = hasse_invariant(f, v);
                j["hasse"] = hs;
            }
        }
        if (json_out) std::cout << j.dump(2) << "\n";
        else if (op == "simplify") std::cout << f.str() << "\n";
        else std::cout << j.dump(2) << "\n";
        return kOk;
    }
    throw InputError("unknown gw operation \"" + op + "\" (eq, simplify, invariants)");
}

int run_dims(const InputOpts& o) {
    ProblemInput in = read_problem(o.input);
    JacobianSystem sys = build_system(in.instance);
    std::size_t lim = o.no_limit ? static_cast<std::size_t>(-1) : o.max_columns;
    json j{{"schema", 1}, {"rho", sys.rho.str()}};
    j["dim_Jrho"] = J_piece(sys, sys.rho, lim).dim();
    j["dim_Jtilde_top"] = Jtilde_piece(sys, sys.jtilde_top(), lim).dim();
    json h = json::object();
    for (int q = sys.r; q <= sys.n + sys.r - 1; ++q) {
        Bidegree b = sys.hodge_bidegree(q);
        if (!b.nonnegative()) {
            h[std::to_string(q)] = 0;
            continue;
        }
        h[std::to_string(q)] = hodge_piece(sys, q, lim).dim();
    }
    j["hodge"] = h;
    if (o.json_out) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "rho " << sys.rho.str() << "\n";
        std::cout << "dim J^rho = " << j["dim_Jrho"] << "\n";
        std::cout << "dim J~ top = " << j["dim_Jtilde_top"] << "\n";
        for (auto& [q, d] : h.items()) std::cout << "q = " << q << ": " << d << "\n";
    }
    return kOk;
}

int run_check(const InputOpts& o) {
    ProblemInput in = read_problem(o.input);
    AssumptionOptions a;
    a.dmax = o.dmax;
    AssumptionReport rep = check_assumptions(in.instance, a);
    if (o.json_out) {
        std::cout << json{{"status", rep.status_name()}, {"fermat_shortcut", rep.used_fermat_shortcut}, {"notes", rep.notes}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << rep.status_name() << "\n";
        for (auto& n : rep.notes) std::cout << "  " << n << "\n";
    }
    return rep.passed() ? kOk : kMismatch;
}

void add_input_flags(CLI::App* c, InputOpts& o, bool full) {
    c->add_option("-i,--input", o.input, "problem JSON")->required()->check(CLI::ExistingFile);
    c->add_flag("--json", o.json_out, "JSON output");
    c->add_option("--dmax", o.dmax, "degree bound of the smoothness certificate");
    c->add_option("--max-columns", o.max_columns, "ambient monomial limit per graded piece");
    c->add_flag("--no-size-limit", o.no_limit, "lift the monomial limit");
    if (full) {
        c->add_flag("--assume-smooth", o.assume_smooth, "skip the smoothness certificate");
        c->add_flag("--verify-all", o.verify_all, "run every applicable oracle");
        c->add_option("--emit-details", o.details, "write the full result JSON here");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic Euler characteristic of complete intersections"};
    app.require_subcommand(1);

    InputOpts compute_o, dims_o, check_o;
    auto* compute = app.add_subcommand("compute", "chi(X) in GW(k) by the Jacobian ring method");
    add_input_flags(compute, compute_o, true);
    auto* dims = app.add_subcommand("dims", "graded piece dimensions");
    add_input_flags(dims, dims_o, false);
    auto* check = app.add_subcommand("check", "smoothness and genericity certificate");
    add_input_flags(check, check_o, false);

    FermatOpts fo;
    auto* fermat = app.add_subcommand("fermat", "closed forms for diagonal intersections");
    fermat->add_option("--n", fo.n, "ambient dimension")->required();
    fermat->add_option("--m", fo.m, "degree")->required();
    fermat->add_option("--a", fo.a, "coefficients of the first form, comma separated")->required();
    fermat->add_option("--b", fo.b, "coefficients of the second form (omit for a hypersurface)");
    fermat->add_option("--field", fo.field, "Q or F<p>");
    fermat->add_flag("--json", fo.json_out, "JSON output");
    fermat->add_flag("--verify-all", fo.verify_all, "also run the Jacobian pipeline and compare");
    fermat->add_option("--max-columns", fo.max_columns, "ambient monomial limit per graded piece");

    std::string gw_op, gw_field = "Q";
    std::vector<std::string> gw_forms;
    bool gw_json = false;
    auto* gw = app.add_subcommand("gw", "forms such as \"2*H + <3> - <-1>\"");
    gw->add_option("op", gw_op, "eq, simplify or invariants")->required();
    gw->add_option("forms", gw_forms, "forms")->required();
    gw->add_option("--field", gw_field, "Q or F<p>");
    gw->add_flag("--json", gw_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*compute) return run_compute(compute_o);
        if (*dims) return run_dims(dims_o);
        if (*check) return run_check(check_o);
        if (*fermat) return run_fermat(fo);
        if (*gw) return run_gw(gw_op, gw_forms, gw_field, gw_json);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const InvalidInstance& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return kBadInput;
    } catch (const InvalidField& e) {
        std::cerr << "invalid field: " << e.what() << "\n";
        return kBadInput;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kBadInput;
    } catch (const FormSyntaxError& e) {
        std::cerr << e.what() << "\n";
        return kBadInput;
    } catch (const UnknownVariable& e) {
        std::cerr << "unknown variable: " << e.what() << "\n";
        return kBadInput;
    } catch (const DegreeMismatch& e) {
        std::cerr << "degree mismatch: " << e.what() << "\n";
        return kBadInput;
    } catch (const CharacteristicClash& e) {
        std::cerr << "characteristic: " << e.what() << "\n";
        return kBadInput;
    } catch (const SizeLimitExceeded& e) {
        std::cerr << "size limit: " << e.what() << " (use --max-columns or --no-size-limit)\n";
        return kBadInput;
    } catch (const QecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kOk;
}
