#include "endoscopy_kit/cli.hpp"

#include <cstdlib>
#include <exception>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "endoscopy_kit/centralizers.hpp"
#include "endoscopy_kit/forms.hpp"
#include "endoscopy_kit/golden.hpp"
#include "endoscopy_kit/json_io.hpp"
#include "endoscopy_kit/lir_u31.hpp"
#include "endoscopy_kit/multiplicity.hpp"
#include "endoscopy_kit/params.hpp"

namespace ek {

namespace {

using nlohmann::json;

json make_report(const std::string& command, json inputs, json results,
                 const std::string& status) {
    json r;
    r["command"] = command;
    r["inputs"] = std::move(inputs);
    r["results"] = std::move(results);
    r["status"] = status;
    return r;
}

void emit(std::ostream& out, const json& report) { out << report.dump(2) << "\n"; }

json factor_to_json(const ClassicalFactor& f) {
    return json{{"kind", factor_kind_name(f.kind)}, {"size", f.size}, {"label", f.label}};
}

json group_to_json(const GroupProduct& g) {
    json factors = json::array();
    for (const auto& f : g.factors) factors.push_back(factor_to_json(f));
    return json{{"name", g.str()}, {"factors", std::move(factors)}};
}

json component_data_to_json(const ComponentData& cd, bool unitary) {
    json j;
    j["pi0_rank"] = cd.pi0_rank;
    j["pi0_sbar_rank"] = cd.pi0_sbar_rank;
    if (unitary) {
        j["s_natural_rank"] = cd.s_natural_rank;
    } else {
        j["s_natural_torus"] = cd.s_natural_torus;
        j["torus_exponents"] = cd.torus_exponents;
        j["center_exponent"] = cd.center_exponent;
    }
    j["kill_vector"] = cd.kill_vector;
    return j;
}

json float_with_tol(double value, double tol) {
    return json{{"value", value}, {"tolerance", tol}};
}

json complex_with_tol(const std::complex<double>& z, double tol) {
    json j = complex_to_json(z);
    j["tolerance"] = tol;
    return j;
}

/// The distinguished single component with the nontrivial tag in every
/// two-component factor (the fiber the multiplicity constants live on).
ComponentUnion elliptic_union(const GroupProduct& g) {
    std::vector<int> tags;
    for (const auto& f : g.factors) tags.push_back(f.pi0() == 2 ? 1 : 0);
    ComponentUnion u;
    u.components.push_back(std::move(tags));
    return u;
}

ComponentUnion parse_component_selector(const GroupProduct& g, const std::string& sel) {
    if (sel == "all") return ComponentUnion::all_components(g);
    if (sel == "elliptic") return elliptic_union(g);
    if (sel == "identity") return ComponentUnion::identity_component(g);
    size_t used = 0;
    unsigned long long mask = std::stoull(sel, &used, 0);
    if (used != sel.size())
        throw std::invalid_argument("component selector must be 'all', 'elliptic', "
                                    "'identity' or an integer mask");
    return ComponentUnion::from_mask(g, mask);
}

GroupProduct identity_component_of(const GroupProduct& g) {
    GroupProduct h = g;
    for (auto& f : h.factors)
        if (f.kind == FactorKind::O) f.kind = FactorKind::SO;
    return h;
}

CliConfig load_config(const std::string& flag_path) {
    CliConfig cfg;
    auto apply = [&cfg](const json& j) {
        if (j.contains("max_weyl_count")) cfg.max_weyl_count = j["max_weyl_count"].get<long long>();
        if (j.contains("v_probe")) cfg.v_probe = j["v_probe"].get<double>();
        if (j.contains("lir_tolerance")) cfg.lir_tolerance = j["lir_tolerance"].get<double>();
        if (j.contains("bruteforce_rel_tol"))
            cfg.bruteforce_rel_tol = j["bruteforce_rel_tol"].get<double>();
        if (j.contains("size_flag")) cfg.size_flag = j["size_flag"].get<std::string>();
    };
    if (const char* env = std::getenv("ENDOSCOPY_KIT_CONFIG"); env && *env)
        apply(load_json_file(env));
    if (!flag_path.empty()) apply(load_json_file(flag_path));
    if (cfg.size_flag != "pi0_s" && cfg.size_flag != "pi0_sbar")
        throw std::invalid_argument("size_flag must be 'pi0_s' or 'pi0_sbar'");
    return cfg;
}

// ---------------------------------------------------------------------------
// subcommand bodies (each returns the process exit code)
// ---------------------------------------------------------------------------

int cmd_centralizer(std::ostream& out, const CliConfig& cfg, const std::string& param_path,
                    bool with_weyl, bool with_diagram) {
    json inputs;
    FormalParameter p = param_from_json(load_json_file(param_path));
    inputs["param"] = param_to_json(p);

    GroupProduct s = centralizer(p);
    json results;
    results["group"] = group_to_json(s);
    results["component"] = component_data_to_json(component_data(s, p), p.context.is_unitary());
    results["class"] = p.context.is_unitary() ? param_class_name(classify(p)) : "linear";
    if (with_weyl) {
        json rows = json::array();
        for (const auto& w : weyl_data(s, cfg.max_weyl_count)) {
            json r;
            r["matrix"] = w.matrix;
            r["component"] = w.component;
            r["det_w_minus_1"] = w.det_w_minus_1;
            r["regular"] = w.regular;
            r["sgn0"] = w.sgn0;
            rows.push_back(std::move(r));
        }
        results["weyl"] = std::move(rows);
    }
    if (with_diagram) {
        DiagramReport rep = diagram_check(p);
        results["diagram"] = json{{"family", rep.family},
                                  {"w0_order", rep.w0_order},
                                  {"w_order", rep.w_order},
                                  {"r_order", rep.r_order},
                                  {"s_levi_order", rep.s_levi_order},
                                  {"n_order", rep.n_order},
                                  {"s_order", rep.s_order},
                                  {"row1_exact", rep.row1_exact},
                                  {"row2_exact", rep.row2_exact},
                                  {"col1_exact", rep.col1_exact},
                                  {"col2_exact", rep.col2_exact},
                                  {"w_rad_eq_w0", rep.w_rad_eq_w0},
                                  {"regular_element_count", rep.regular_element_count},
                                  {"ok", rep.ok},
                                  {"first_failure", rep.first_failure}};
    }
    emit(out, make_report("centralizer", inputs, results, "ok"));
    return 0;
}

int cmd_constants(std::ostream& out, const CliConfig& cfg, const std::string& param_path,
                  const std::string& selector) {
    json inputs;
    FormalParameter p = param_from_json(load_json_file(param_path));
    inputs["param"] = param_to_json(p);
    inputs["component"] = selector;

    GroupProduct s = centralizer(p);
    ComponentUnion u = parse_component_selector(s, selector);

    json results;
    results["group"] = s.str();
    results["i"] = rat_to_json(i_of_S(s, u, cfg.max_weyl_count));
    results["e"] = rat_to_json(e_of_S(s, u));

    try {
        results["sigma_of_S0"] = rat_to_json(sigma(identity_component_of(s)));
    } catch (const std::exception& e) {
        results["sigma_of_S0"] = nullptr;
        results["sigma_note"] = e.what();
    }
    try {
        SizeFlag flag = cfg.size_flag == "pi0_sbar" ? SizeFlag::Pi0SBar : SizeFlag::Pi0S;
        results["stable_coefficient"] = rat_to_json(stable_mult_coefficient(p, flag));
        results["stable_coefficient_flag"] = cfg.size_flag;
    } catch (const std::exception& e) {
        results["stable_coefficient"] = nullptr;
        results["stable_coefficient_note"] = e.what();
    }

    json breakdown = json::array();
    for (const auto& tags : u.components) {
        ComponentUnion single;
        single.components.push_back(tags);
        breakdown.push_back(json{{"tags", tags},
                                 {"i", rat_to_json(i_of_S(s, single, cfg.max_weyl_count))}});
    }
    results["per_component"] = std::move(breakdown);

    emit(out, make_report("constants", inputs, results, "ok"));
    return 0;
}

LocalInvariant invariant_from_flags(long long x, int a, int p, int q) {
    LocalInvariant inv;
    inv.x = x;
    inv.a = a;
    inv.p = p;
    inv.q = q;
    return inv;
}

int cmd_forms_local(std::ostream& out, const std::string& group, int N,
                    const std::string& kind_name) {
    PlaceKind kind = place_kind_from_name(kind_name);
    json inputs{{"group", group}, {"N", N}, {"kind", kind_name}};
    json results;
    if (group == "U" && (kind == PlaceKind::PAdicInert || kind == PlaceKind::RealInert)) {
        ULocalInvariantSet set = u_local_invariants(kind, N);
        if (kind == PlaceKind::PAdicInert) {
            results["delta"] = set.delta;
        } else {
            json sigs = json::array();
            for (auto [sp, sq] : set.signatures) sigs.push_back(json{{"p", sp}, {"q", sq}});
            results["signatures"] = std::move(sigs);
        }
    } else {
        GLLocalInvariantSet set = gl_local_invariants(kind, N);
        results["modulus"] = set.modulus;
    }
    emit(out, make_report("forms local", inputs, results, "ok"));
    return 0;
}

int cmd_forms_feasible(std::ostream& out, const std::string& spec_path) {
    GlobalInnerFormSpec spec = inner_form_from_json(load_json_file(spec_path));
    json inputs{{"spec", inner_form_to_json(spec)}};
    FeasibilityReport rep = global_feasible(spec);
    json results{{"feasible", rep.feasible},
                 {"obstruction", rep.obstruction},
                 {"reason", rep.reason}};
    emit(out, make_report("forms feasible", inputs, results,
                          rep.feasible ? "ok" : "infeasible"));
    return 0;
}

int cmd_forms_globalize(std::ostream& out, const std::string& group_name, int N,
                        const std::string& target_path) {
    GroupFamily group = group_name == "GL" ? GroupFamily::GL : GroupFamily::U;
    Place target = place_from_json(group, load_json_file(target_path));
    json inputs{{"group", group_name}, {"N", N}, {"target", place_to_json(group, target)}};
    GlobalInnerFormSpec spec = globalize(group, N, target);
    json results{{"spec", inner_form_to_json(spec)},
                 {"feasible", global_feasible(spec).feasible}};
    emit(out, make_report("forms globalize", inputs, results, "ok"));
    return 0;
}

int cmd_forms_endoscopy(std::ostream& out, int N, bool twisted) {
    json inputs{{"N", N}, {"twisted", twisted}};
    json rows = json::array();
    for (const auto& t : endoscopy_enumerate(N, twisted)) {
        json r{{"N1", t.N1}, {"N2", t.N2}, {"out_order", t.out_order}};
        if (twisted) {
            r["kappa1"] = t.kappa1;
            r["kappa2"] = t.kappa2;
        }
        rows.push_back(std::move(r));
    }
    json results{{"data", std::move(rows)},
                 {"count", static_cast<long long>(endoscopy_enumerate(N, twisted).size())}};
    emit(out, make_report("forms endoscopy", inputs, results, "ok"));
    return 0;
}

int cmd_forms_signs(std::ostream& out, const std::string& param_path, bool archimedean,
                    int d, long long k, bool has_k) {
    FormalParameter p = param_from_json(load_json_file(param_path));
    InnerFormField field{archimedean, d};
    json inputs{{"param", param_to_json(p)},
                {"archimedean", archimedean},
                {"d", d}};
    json results;
    results["a_psi"] = a_psi(p, field);
    if (has_k) {
        inputs["k"] = k;
        RhoCheck chk = rho_spsi_check(p, field, k);
        results["extends"] = chk.extends;
        if (chk.extends)
            results["rho_value"] = chk.rho_value;
        else
            results["rho_value"] = nullptr;
        results["a_value"] = chk.a_value;
        results["relevant"] = chk.relevant;
        results["equal"] = chk.equal;
    }
    emit(out, make_report("forms signs", inputs, results, "ok"));
    return 0;
}

int cmd_forms_relevance(std::ostream& out, const std::string& param_path,
                        const std::string& kind_name, const LocalInvariant& inv) {
    FormalParameter p = param_from_json(load_json_file(param_path));
    PlaceKind kind = place_kind_from_name(kind_name);
    json inputs{{"param", param_to_json(p)}, {"kind", kind_name}};
    LeviShape shape = minimal_levi_shape(p);
    json results{{"minimal_levi", json{{"N_minus", shape.N_minus}, {"blocks", shape.blocks}}},
                 {"relevant", relevance(p, kind, inv)}};
    emit(out, make_report("forms relevance", inputs, results, "ok"));
    return 0;
}

int cmd_lir(std::ostream& out, const CliConfig& cfg, const std::string& x_text,
            double v, bool has_v, bool bruteforce, bool full_json) {
    std::vector<HalfInt> xs;
    if (!x_text.empty()) {
        xs.push_back(HalfInt::parse(x_text));
    } else {
        for (const auto& row : lir_table()) xs.push_back(row.x);
    }
    double v_probe = has_v ? v : cfg.v_probe;
    json inputs;
    if (!x_text.empty()) inputs["x"] = halfint_to_json(xs[0]);
    inputs["v"] = v_probe;
    inputs["bruteforce"] = bruteforce;

    LirVerification ver = verify_u31_rows(xs, bruteforce, v_probe, cfg.lir_tolerance);
    json rows = json::array();
    for (const auto& r : ver.rows) {
        json row;
        row["x"] = halfint_to_json(r.x);
        row["scalar_limit"] = float_with_tol(r.scalar_limit, cfg.lir_tolerance);
        row["pairing"] = r.pairing;
        row["pass"] = r.pass;
        if (full_json) {
            row["prefactor"] = complex_to_json(r.prefactor);
            row["l_ratio_at_v"] = complex_to_json(r.l_ratio_at_v);
            row["integral_constant_measured"] =
                complex_with_tol(r.integral_constant_measured, 1e-8);
            row["centralizer"] = r.centralizer;
        }
        rows.push_back(std::move(row));
    }
    json results{{"rows", std::move(rows)}, {"all_pass", ver.all_pass}};
    emit(out, make_report("lir-u31", inputs, results, ver.all_pass ? "ok" : "error"));
    return ver.all_pass ? 0 : 1;
}

int cmd_verify_all(std::ostream& out) {
    GoldenSummary s = run_golden_cases();
    json results{{"total", s.total},
                 {"passed", s.passed},
                 {"failed", s.total - s.passed},
                 {"failures", s.failures}};
    emit(out, make_report("verify-all", json::object(), results,
                          s.failures.empty() ? "ok" : "error"));
    return s.failures.empty() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariants of the endoscopic classification for unitary and linear groups"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (see README)");

    // centralizer
    auto* c_cent = app.add_subcommand("centralizer", "centralizer of a formal parameter");
    std::string cent_param;
    bool cent_weyl = false, cent_diagram = false;
    c_cent->add_option("--param", cent_param, "parameter JSON file")->required();
    c_cent->add_flag("--weyl", cent_weyl, "include the Weyl element table");
    c_cent->add_flag("--diagram", cent_diagram, "include the exactness diagram report");

    // constants
    auto* c_const = app.add_subcommand("constants", "orientation/stability constants");
    std::string const_param, const_sel = "all";
    c_const->add_option("--param", const_param, "parameter JSON file")->required();
    c_const->add_option("--component", const_sel,
                        "'all', 'elliptic', 'identity' or an integer mask");

    // forms + nested subcommands
    auto* c_forms = app.add_subcommand("forms", "inner-form invariants");
    c_forms->require_subcommand(1);
    auto* c_local = c_forms->add_subcommand("local", "local invariant sets");
    std::string f_group = "U", f_kind = "padic_inert";
    int f_N = 1;
    c_local->add_option("--group", f_group, "U or GL")->check(CLI::IsMember({"U", "GL"}));
    c_local->add_option("--N", f_N, "rank")->required();
    c_local->add_option("--kind", f_kind, "place kind");

    auto* c_feas = c_forms->add_subcommand("feasible", "global feasibility of local data");
    std::string feas_spec;
    c_feas->add_option("--spec", feas_spec, "global spec JSON file")->required();

    auto* c_glob = c_forms->add_subcommand("globalize", "extend a local target globally");
    std::string glob_group = "U", glob_target;
    int glob_N = 1;
    c_glob->add_option("--group", glob_group, "U or GL")->check(CLI::IsMember({"U", "GL"}));
    c_glob->add_option("--N", glob_N, "rank")->required();
    c_glob->add_option("--target", glob_target, "place JSON file")->required();

    auto* c_endo = c_forms->add_subcommand("endoscopy", "elliptic endoscopic data");
    int endo_N = 1;
    bool endo_twisted = false;
    c_endo->add_option("--N", endo_N, "rank")->required();
    c_endo->add_flag("--twisted", endo_twisted, "twisted data");

    auto* c_signs = c_forms->add_subcommand("signs", "inner-form sign characters");
    std::string signs_param;
    bool signs_arch = false;
    int signs_d = 1;
    long long signs_k = 0;
    c_signs->add_option("--param", signs_param, "parameter JSON file")->required();
    c_signs->add_flag("--archimedean", signs_arch, "real base field");
    c_signs->add_option("--d", signs_d, "division-algebra degree");
    auto* signs_k_opt = c_signs->add_option("--k", signs_k, "inner-form class to check");

    auto* c_rel = c_forms->add_subcommand("relevance", "parameter relevance for a local form");
    std::string rel_param, rel_kind = "padic_inert";
    long long rel_x = 0;
    int rel_a = 0, rel_p = 0, rel_q = 0;
    c_rel->add_option("--param", rel_param, "parameter JSON file")->required();
    c_rel->add_option("--kind", rel_kind, "place kind");
    c_rel->add_option("--x", rel_x, "general-linear invariant");
    c_rel->add_option("--a", rel_a, "inert p-adic invariant");
    c_rel->add_option("--p", rel_p, "real signature p");
    c_rel->add_option("--q", rel_q, "real signature q");

    // lir-u31
    auto* c_lir = app.add_subcommand("lir-u31", "rank-one intertwining table");
    std::string lir_x;
    double lir_v = 0.5;
    bool lir_brute = false, lir_json = false;
    c_lir->add_option("--x", lir_x, "single spectral value (e.g. 0.5)");
    auto* lir_v_opt = c_lir->add_option("--v", lir_v, "evaluation point v > 0");
    c_lir->add_flag("--bruteforce", lir_brute, "cross-check by direct quadrature");
    c_lir->add_flag("--json", lir_json, "include all numeric fields per row");

    // verify-all
    app.add_subcommand("verify-all", "run the full golden table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        CliConfig cfg = load_config(config_path);
        if (app.got_subcommand("centralizer"))
            return cmd_centralizer(out, cfg, cent_param, cent_weyl, cent_diagram);
        if (app.got_subcommand("constants"))
            return cmd_constants(out, cfg, const_param, const_sel);
        if (app.got_subcommand("forms")) {
            if (c_forms->got_subcommand("local")) return cmd_forms_local(out, f_group, f_N, f_kind);
            if (c_forms->got_subcommand("feasible")) return cmd_forms_feasible(out, feas_spec);
            if (c_forms->got_subcommand("globalize"))
                return cmd_forms_globalize(out, glob_group, glob_N, glob_target);
            if (c_forms->got_subcommand("endoscopy"))
                return cmd_forms_endoscopy(out, endo_N, endo_twisted);
            if (c_forms->got_subcommand("signs"))
                return cmd_forms_signs(out, signs_param, signs_arch, signs_d, signs_k,
                                       signs_k_opt->count() > 0);
            if (c_forms->got_subcommand("relevance"))
                return cmd_forms_relevance(out, rel_param, rel_kind,
                                           invariant_from_flags(rel_x, rel_a, rel_p, rel_q));
        }
        if (app.got_subcommand("lir-u31"))
            return cmd_lir(out, cfg, lir_x, lir_v, lir_v_opt->count() > 0, lir_brute, lir_json);
        if (app.got_subcommand("verify-all")) return cmd_verify_all(out);
        err << "no subcommand dispatched\n";
        return 2;
    } catch (const std::exception& e) {
        emit(out, make_report("error", json::object(), json::object(),
                              std::string("error: ") + e.what()));
        err << e.what() << "\n";
        return 2;
    }
}

} // namespace ek
