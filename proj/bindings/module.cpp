#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "endoscopy_kit/centralizers.hpp"
#include "endoscopy_kit/cli.hpp"
#include "endoscopy_kit/golden.hpp"
#include "endoscopy_kit/json_io.hpp"
#include "endoscopy_kit/lir_u31.hpp"
#include "endoscopy_kit/multiplicity.hpp"
#include "endoscopy_kit/params.hpp"

namespace py = pybind11;

namespace {

using nlohmann::json;

ek::FormalParameter parse_param(const std::string& text) {
    return ek::param_from_json(json::parse(text));
}

std::string centralizer_json(const std::string& param_text) {
    ek::FormalParameter p = parse_param(param_text);
    ek::GroupProduct s = ek::centralizer(p);
    ek::ComponentData cd = ek::component_data(s, p);
    json factors = json::array();
    for (const auto& f : s.factors)
        factors.push_back(json{{"kind", ek::factor_kind_name(f.kind)},
                               {"size", f.size},
                               {"label", f.label}});
    json out{{"name", s.str()},
             {"factors", std::move(factors)},
             {"pi0_rank", cd.pi0_rank},
             {"pi0_sbar_rank", cd.pi0_sbar_rank}};
    return out.dump();
}

std::string classify_name(const std::string& param_text) {
    return ek::param_class_name(ek::classify(parse_param(param_text)));
}

std::pair<long long, long long> constants_i(const std::string& param_text,
                                            const std::string& selector) {
    ek::FormalParameter p = parse_param(param_text);
    ek::GroupProduct s = ek::centralizer(p);
    ek::ComponentUnion u;
    if (selector == "all") {
        u = ek::ComponentUnion::all_components(s);
    } else if (selector == "identity") {
        u = ek::ComponentUnion::identity_component(s);
    } else if (selector == "elliptic") {
        std::vector<int> tags;
        for (const auto& f : s.factors) tags.push_back(f.pi0() == 2 ? 1 : 0);
        u.components.push_back(std::move(tags));
    } else {
        u = ek::ComponentUnion::from_mask(s, std::stoull(selector, nullptr, 0));
    }
    ek::Rat r = ek::i_of_S(s, u);
    return {r.num(), r.den()};
}

py::dict golden_summary() {
    ek::GoldenSummary s = ek::run_golden_cases();
    py::dict d;
    d["total"] = s.total;
    d["passed"] = s.passed;
    d["failures"] = s.failures;
    return d;
}

py::tuple run_cli_py(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = ek::run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "combinatorial invariants of the endoscopic classification";

    m.def("centralizer", &centralizer_json, py::arg("param_json"),
          "centralizer of a formal parameter (JSON in, JSON out)");
    m.def("classify", &classify_name, py::arg("param_json"),
          "shape class of a unitary formal parameter");
    m.def("constants_i", &constants_i, py::arg("param_json"), py::arg("component") = "all",
          "orientation constant i over the selected components, as (num, den)");
    m.def(
        "lir_scalar",
        [](int two_x) { return ek::lir_scalar(ek::HalfInt(two_x)); }, py::arg("two_x"),
        "normalized-intertwining scalar limit at the spectral value two_x/2");
    m.def(
        "lir_pairing",
        [](int two_x) { return ek::pi_a3_pairing(ek::HalfInt(two_x)); }, py::arg("two_x"),
        "component-pairing sign at the spectral value two_x/2");
    m.def(
        "lir_verify",
        [](bool bruteforce) {
            ek::LirVerification v = ek::verify_u31(bruteforce);
            py::list rows;
            for (const auto& r : v.rows) {
                py::dict d;
                d["two_x"] = r.x.two_x();
                d["scalar_limit"] = r.scalar_limit;
                d["pairing"] = r.pairing;
                d["pass"] = r.pass;
                rows.append(d);
            }
            return py::make_tuple(v.all_pass, rows);
        },
        py::arg("bruteforce") = false, "run the rank-one verification table");
    m.def("run_golden", &golden_summary, "run the full golden table");
    m.def("run_cli", &run_cli_py, py::arg("args"),
          "invoke the command-line interface; returns (exit_code, stdout, stderr)");
}
