#include "endoscopy_kit/golden.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "endoscopy_kit/centralizers.hpp"
#include "endoscopy_kit/forms.hpp"
#include "endoscopy_kit/gamma.hpp"
#include "endoscopy_kit/lir_u31.hpp"
#include "endoscopy_kit/multiplicity.hpp"
#include "endoscopy_kit/params.hpp"

namespace ek {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

/// Unitary parameter (kappa = +1) made of one-dimensional constituents with
/// the given (parity, multiplicity) pairs.
FormalParameter chars_param(const std::vector<std::pair<int, int>>& parity_mult) {
    FormalParameter p;
    p.context = Context::unitary(+1);
    int total = 0;
    int counter = 0;
    for (auto [parity, mult] : parity_mult) {
        SimpleParameter sp;
        sp.id = "psi" + std::to_string(++counter);
        sp.m = sp.n = sp.r = 1;
        sp.self_dual = true;
        sp.parity = parity;
        p.constituents.push_back({sp, mult});
        total += mult;
    }
    p.ambient_N = total;
    p.validate();
    return p;
}

/// The parity making every one-dimensional constituent land on the
/// orthogonal side of U(N) with kappa = +1.
int oside_parity(int N) { return (N % 2 == 0) ? -1 : +1; }

FormalParameter linear_param(const std::vector<std::pair<int, int>>& dim_mult) {
    FormalParameter p;
    p.context = Context::linear();
    int total = 0;
    int counter = 0;
    for (auto [n, mult] : dim_mult) {
        SimpleParameter sp;
        sp.id = "nu" + std::to_string(++counter);
        sp.m = 1;
        sp.n = n;
        sp.r = 1;
        sp.self_dual = true;
        sp.parity = 0;
        p.constituents.push_back({sp, mult});
        total += n * mult;
    }
    p.ambient_N = total;
    p.validate();
    return p;
}

std::string check(bool ok, const std::string& message) { return ok ? "" : message; }

template <typename T>
std::string expect_eq(const T& got, const T& want, const std::string& what) {
    if (got == want) return "";
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    return os.str();
}

std::string expect_rat(const Rat& got, const Rat& want, const std::string& what) {
    if (got == want) return "";
    return what + ": got " + got.str() + ", want " + want.str();
}

std::string expect_near(std::complex<double> got, std::complex<double> want,
                        double rel, const std::string& what) {
    double scale = std::max(1.0, std::abs(want));
    if (std::abs(got - want) <= rel * scale) return "";
    std::ostringstream os;
    os << what << ": got (" << got.real() << "," << got.imag() << "), want ("
       << want.real() << "," << want.imag() << ")";
    return os.str();
}

} // namespace

const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cases = [] {
        std::vector<GoldenCase> g;

        // ----- parameter algebra -------------------------------------------
        g.push_back({"twist-parity-n2", [] {
            return expect_eq(parity_of_twist(+1, 2), -1, "parity of a 2-twist");
        }});
        g.push_back({"twist-parity-n3", [] {
            return expect_eq(parity_of_twist(-1, 3), -1, "parity of a 3-twist");
        }});
        g.push_back({"kappa-simple-1x2", [] {
            // both evaluation routes give +1 for the (1,2) shape
            return expect_eq(kappa_of_simple(1, 2, +1), +1, "kappa of the (1,2) shape");
        }});
        g.push_back({"arch-parity-half", [] {
            return expect_eq(arch_parity({HalfInt(1), HalfInt(-1)}), -1,
                             "parity of (1/2,-1/2)");
        }});
        g.push_back({"arch-parity-one", [] {
            return expect_eq(arch_parity({HalfInt(2), HalfInt(-2)}), +1,
                             "parity of (1,-1)");
        }});
        g.push_back({"signed-partition-u31-int", [] {
            SignedPartition sp = signed_partition(u31_arch_parameter(HalfInt(2)));
            std::string err = expect_eq(sp.I_plus.size(), (size_t)2, "|I+|");
            if (err.empty()) err = expect_eq(sp.I_minus.size(), (size_t)1, "|I-|");
            if (err.empty()) err = expect_eq(sp.J.size(), (size_t)0, "|J|");
            return err;
        }});
        g.push_back({"signed-partition-u31-half", [] {
            SignedPartition sp = signed_partition(u31_arch_parameter(HalfInt(1)));
            std::string err = expect_eq(sp.I_plus.size(), (size_t)2, "|I+|");
            if (err.empty()) err = expect_eq(sp.I_minus.size(), (size_t)0, "|I-|");
            return err;
        }});
        g.push_back({"classify-discrete", [] {
            auto p = chars_param({{oside_parity(3), 1}, {oside_parity(3), 1}, {oside_parity(3), 1}});
            return expect_eq(param_class_name(classify(p)), std::string("discrete"),
                             "class of a multiplicity-free parameter");
        }});
        g.push_back({"classify-elliptic-q1", [] {
            auto p = chars_param({{oside_parity(4), 2}, {oside_parity(4), 1}, {oside_parity(4), 1}});
            return expect_eq(param_class_name(classify(p)),
                             std::string("elliptic_non_discrete(q=1)"),
                             "class of a once-doubled parameter");
        }});
        g.push_back({"classify-exc2", [] {
            auto p = chars_param({{oside_parity(4), 3}, {oside_parity(4), 1}});
            return expect_eq(param_class_name(classify(p)), std::string("exc2"),
                             "class of a tripled parameter");
        }});

        // ----- centralizers ------------------------------------------------
        g.push_back({"centralizer-elliptic-shape", [] {
            auto p = chars_param({{oside_parity(4), 2}, {oside_parity(4), 1}, {oside_parity(4), 1}});
            return expect_eq(centralizer(p).str(), std::string("O(2) x O(1) x O(1)"),
                             "once-doubled centralizer");
        }});
        g.push_back({"centralizer-u31-int", [] {
            return expect_eq(centralizer(u31_arch_parameter(HalfInt(2))).str(),
                             std::string("O(1) x O(1) x Sp(2)"),
                             "integer-row centralizer");
        }});
        g.push_back({"centralizer-u31-half", [] {
            return expect_eq(centralizer(u31_arch_parameter(HalfInt(1))).str(),
                             std::string("O(3) x O(1)"), "x = 1/2 centralizer");
        }});
        g.push_back({"centralizer-u31-minus-half", [] {
            return expect_eq(centralizer(u31_arch_parameter(HalfInt(-1))).str(),
                             std::string("O(1) x O(3)"), "x = -1/2 centralizer");
        }});
        g.push_back({"centralizer-linear", [] {
            return expect_eq(centralizer(linear_param({{1, 2}, {1, 3}})).str(),
                             std::string("GL(2) x GL(3)"), "linear centralizer");
        }});
        g.push_back({"component-rank-mixed", [] {
            auto p = chars_param({{oside_parity(4), 2}, {oside_parity(4), 1}, {oside_parity(4), 1}});
            auto cd = component_data(centralizer(p), p);
            std::string err = expect_eq(cd.pi0_rank, 3, "component rank");
            // odd multiplicities put the central -1 outside the identity
            // component, so the quotient loses one factor of Z/2
            if (err.empty()) err = expect_eq(cd.pi0_sbar_rank, 2, "quotient component rank");
            return err;
        }});
        g.push_back({"component-rank-all-even", [] {
            auto p = chars_param({{oside_parity(4), 2}, {oside_parity(4), 2}});
            auto cd = component_data(centralizer(p), p);
            std::string err = expect_eq(cd.pi0_rank, 2, "component rank");
            // all multiplicities even: the central -1 already lies in the
            // identity component and the quotient keeps the full rank
            if (err.empty()) err = expect_eq(cd.pi0_sbar_rank, 2, "quotient component rank");
            return err;
        }});
        g.push_back({"s-natural-linear", [] {
            auto p = linear_param({{2, 2}}); // one 2-dimensional constituent, doubled
            auto cd = component_data(centralizer(p), p);
            std::string err = check(cd.s_natural_torus, "S-natural should be a torus");
            if (err.empty()) err = expect_eq(cd.center_exponent, 2LL, "center exponent");
            return err;
        }});
        g.push_back({"weyl-sp2", [] {
            GroupProduct sp2 = product_from_names({"Sp(2)"});
            auto data = weyl_data(sp2);
            if (data.size() != 2) return std::string("Sp(2) Weyl set should have 2 elements");
            for (const auto& d : data) {
                if (d.matrix[0][0] == 1) continue; // identity
                std::string err = check(d.regular, "flip should be regular");
                if (err.empty()) err = expect_eq(d.sgn0, -1, "flip sgn0");
                if (err.empty())
                    err = expect_eq(std::llabs(d.det_w_minus_1), 2LL, "flip |det(w-1)|");
                return err;
            }
            return std::string("flip element not found");
        }});
        g.push_back({"diagram-exc1", [] {
            auto p = chars_param({{-oside_parity(4), 2}, {oside_parity(4), 1}, {oside_parity(4), 1}});
            if (param_class_name(classify(p)) != "exc1")
                return std::string("setup is not an exc1 parameter");
            auto rep = diagram_check(p);
            std::string err = check(rep.ok, "diagram not exact: " + rep.first_failure);
            if (err.empty()) err = expect_eq(rep.w_order, 2LL, "|W|");
            if (err.empty()) err = expect_eq(rep.w0_order, 2LL, "|W0|");
            if (err.empty()) err = expect_eq(rep.regular_element_count, 1, "regular count");
            return err;
        }});

        // ----- multiplicity constants --------------------------------------
        g.push_back({"i-elliptic-fiber-q1", [] {
            auto p = chars_param({{oside_parity(4), 2}, {oside_parity(4), 1}, {oside_parity(4), 1}});
            GroupProduct s = centralizer(p);
            ComponentUnion fiber{{{1, 1, 1}}};
            return expect_rat(i_of_S(s, fiber), Rat(1, 2), "elliptic fiber weight, q = 1");
        }});
        g.push_back({"i-exc1-fiber", [] {
            auto p = chars_param({{-oside_parity(4), 2}, {oside_parity(4), 1}, {oside_parity(4), 1}});
            GroupProduct s = centralizer(p); // O(1) x O(1) x Sp(2)
            ComponentUnion fiber{{{1, 1, 0}}};
            return expect_rat(i_of_S(s, fiber), Rat(-1, 4), "exceptional fiber weight (doubled)");
        }});
        g.push_back({"i-exc2-fiber", [] {
            auto p = chars_param({{oside_parity(4), 3}, {oside_parity(4), 1}});
            GroupProduct s = centralizer(p); // O(3) x O(1)
            ComponentUnion fiber{{{1, 1}}};
            return expect_rat(i_of_S(s, fiber), Rat(-1, 4), "exceptional fiber weight (tripled)");
        }});
        g.push_back({"i-e-discrete", [] {
            auto p = chars_param({{oside_parity(3), 1}, {oside_parity(3), 1}, {oside_parity(3), 1}});
            GroupProduct s = centralizer(p);
            ComponentUnion u = ComponentUnion::identity_component(s);
            std::string err = expect_rat(i_of_S(s, u), Rat(1), "discrete single-component weight");
            if (err.empty()) err = expect_rat(e_of_S(s, u), Rat(1), "discrete e-expansion");
            return err;
        }});

        // ----- inner forms --------------------------------------------------
        g.push_back({"real-signature-reduction", [] {
            LocalInvariant i31{0, 0, 3, 1}, i22{0, 0, 2, 2};
            std::string err =
                expect_eq(u_reduction(PlaceKind::RealInert, 4, i31), 1, "reduction of (3,1)");
            if (err.empty())
                err = expect_eq(u_reduction(PlaceKind::RealInert, 4, i22), 0, "reduction of (2,2)");
            return err;
        }});
        g.push_back({"padic-inert-odd-trivial", [] {
            return expect_eq(u_local_invariants(PlaceKind::PAdicInert, 3).delta, 1,
                             "inert invariant count, odd rank");
        }});
        g.push_back({"gl-real-moduli", [] {
            std::string err = expect_eq(gl_local_invariants(PlaceKind::RealSplit, 4).modulus, 2LL,
                                        "real modulus, N = 4");
            if (err.empty())
                err = expect_eq(gl_local_invariants(PlaceKind::RealSplit, 3).modulus, 3LL,
                                "real modulus, N = 3");
            return err;
        }});
        g.push_back({"gl-levi-transfer", [] {
            LocalInvariant x2{2, 0, 0, 0}; // the degree-2 division algebra at p
            LeviShape even{0, {2, 2}}, odd{0, {3, 1}};
            std::string err = check(
                levi_transfers(even, GroupFamily::GL, 4, PlaceKind::PAdicSplit, x2),
                "(2,2) should transfer to the quaternionic form");
            if (err.empty())
                err = check(!levi_transfers(odd, GroupFamily::GL, 4, PlaceKind::PAdicSplit, x2),
                            "(3,1) should not transfer to the quaternionic form");
            return err;
        }});
        g.push_back({"u-levi-transfer-inert", [] {
            LocalInvariant a1{0, 1, 0, 0};
            LeviShape hermitian{2, {1}}, linear{0, {2}};
            std::string err = check(
                levi_transfers(hermitian, GroupFamily::U, 4, PlaceKind::PAdicInert, a1),
                "hermitian shape should transfer");
            if (err.empty())
                err = check(!levi_transfers(linear, GroupFamily::U, 4, PlaceKind::PAdicInert, a1),
                            "linear shape should not transfer");
            return err;
        }});
        g.push_back({"u-relevance-linear-levi", [] {
            auto p = chars_param({{oside_parity(4), 2}, {oside_parity(4), 2}});
            LocalInvariant a1{0, 1, 0, 0};
            return check(!relevance(p, PlaceKind::PAdicInert, a1),
                         "fully-doubled parameter should be irrelevant off the quasi-split form");
        }});
        g.push_back({"u-feasibility-parity", [] {
            GlobalInnerFormSpec spec;
            spec.group = GroupFamily::U;
            spec.N = 4;
            spec.places.push_back({"u", PlaceKind::PAdicInert, {0, 1, 0, 0}});
            FeasibilityReport rep = global_feasible(spec);
            std::string err = check(!rep.feasible, "odd parity sum should be infeasible");
            if (err.empty()) err = expect_eq(rep.obstruction, 1LL, "obstruction");
            spec.places.push_back({"w", PlaceKind::PAdicInert, {0, 1, 0, 0}});
            if (err.empty())
                err = check(global_feasible(spec).feasible, "even parity sum should be feasible");
            return err;
        }});
        g.push_back({"u-globalize-even", [] {
            GlobalInnerFormSpec spec =
                globalize(GroupFamily::U, 4, {"u", PlaceKind::PAdicInert, {0, 1, 0, 0}});
            if (spec.places.size() != 2) return std::string("expected one auxiliary place");
            const Place& aux = spec.places[1];
            std::string err = expect_eq(aux.id, std::string("v2"), "auxiliary place id");
            if (err.empty())
                err = check(aux.kind == PlaceKind::RealInert, "auxiliary place should be real");
            if (err.empty()) err = expect_eq(aux.inv.p, 1, "auxiliary signature p");
            if (err.empty()) err = expect_eq(aux.inv.q, 3, "auxiliary signature q");
            if (err.empty())
                err = check(global_feasible(spec).feasible, "globalization must be feasible");
            return err;
        }});
        g.push_back({"u-globalize-odd", [] {
            GlobalInnerFormSpec spec =
                globalize(GroupFamily::U, 3, {"u", PlaceKind::RealInert, {0, 0, 2, 1}});
            std::string err =
                expect_eq(spec.places.size(), (size_t)1, "odd rank needs no auxiliary place");
            if (err.empty())
                err = check(global_feasible(spec).feasible, "odd-rank spec must be feasible");
            return err;
        }});
        g.push_back({"endoscopy-ordinary-n4", [] {
            auto data = endoscopy_enumerate(4, false);
            if (data.size() != 3) return std::string("GL(4) should have 3 ordinary data");
            std::string err = expect_eq(data[0].N1, 4, "first datum");
            if (err.empty()) err = expect_eq(data[1].N1, 3, "second datum");
            if (err.empty()) err = expect_eq(data[2].N1, 2, "third datum");
            if (err.empty()) err = expect_eq(data[2].out_order, 2, "equal-split outer order");
            if (err.empty()) err = expect_eq(data[1].out_order, 1, "unequal-split outer order");
            return err;
        }});
        g.push_back({"endoscopy-twisted-n2", [] {
            auto data = endoscopy_enumerate(2, true);
            if (data.size() != 3) return std::string("twisted GL(2) should have 3 data");
            // (2,0) carries both sign pairs of equal parity; (1,1) keeps one
            std::string err = expect_eq(data[0].kappa1 * data[0].kappa2, -1, "(2,0) sign pair");
            if (err.empty()) err = expect_eq(data[2].N1, 1, "diagonal datum");
            if (err.empty())
                err = expect_eq(data[2].kappa1 * data[2].kappa2, -1, "(1,1) sign pair");
            return err;
        }});
        g.push_back({"kottwitz-sign", [] {
            std::string err = expect_eq(kottwitz_sign_gl(4, 2), +1, "sign of GL(2,D2)");
            if (err.empty()) err = expect_eq(kottwitz_sign_gl(4, 4), -1, "sign of GL(1,D4)");
            return err;
        }});
        g.push_back({"a-psi-real", [] {
            auto p = linear_param({{2, 1}});
            return expect_eq(a_psi(p, {true, 2}), -1, "real sign, even twist");
        }});
        g.push_back({"a-psi-padic-d2", [] {
            auto p = linear_param({{2, 1}});
            return expect_eq(a_psi(p, {false, 2}), -1, "p-adic sign, d = 2");
        }});
        g.push_back({"a-psi-padic-d3", [] {
            auto p = linear_param({{2, 1}});
            return expect_eq(a_psi(p, {false, 3}), +1, "p-adic sign, d = 3");
        }});
        g.push_back({"rho-real-quaternionic", [] {
            auto p = linear_param({{2, 1}});
            RhoCheck chk = rho_spsi_check(p, {true, 2}, 1);
            std::string err = expect_eq(chk.rho_value, -1, "character value");
            if (err.empty()) err = expect_eq(chk.a_value, -1, "sign value");
            if (err.empty()) err = check(chk.equal, "the two signs must agree");
            return err;
        }});
        g.push_back({"levi-weyl-structure", [] {
            LeviWeylGroup w = weyl_group_levi({0, {2, 2, 1}});
            std::string err = expect_eq(w.order, 16LL, "relative Weyl order");
            if (err.empty()) err = expect_eq(w.perm_orbits.size(), (size_t)2, "orbit count");
            if (err.empty())
                err = expect_eq(t_minus({3, {3}}, {1}), -1, "sign of a flip on an odd block");
            return err;
        }});

        // ----- rank-one numerics --------------------------------------------
        g.push_back({"lir-prefactors", [] {
            const auto& table = lir_table();
            std::string err;
            for (const auto& row : table) {
                if (row.x.two_x() == 0)
                    err = expect_near(row.prefactor, {-1.0, 0.0}, 1e-15, "prefactor at x=0");
                if (row.x.two_x() == -1)
                    err = expect_near(row.prefactor, {0.0, -1.0}, 1e-15, "prefactor at x=-1/2");
                if (!err.empty()) return err;
            }
            return err;
        }});
        g.push_back({"lir-lambda", [] {
            return expect_eq(lambda_w_psi(), -1.0, "archimedean lambda factor");
        }});
        g.push_back({"bruhat-involution-point", [] {
            BruhatPoint bp = bruhat_decompose({1.0, 2.0}, {0.0, -0.5}, 0.7);
            BruhatPoint back = bruhat_decompose(bp.Y1, bp.Y2, bp.Y3);
            std::string err = expect_near(back.Y1, {1.0, 2.0}, 1e-12, "involution, first slot");
            if (err.empty()) err = expect_near(back.Y2, {0.0, -0.5}, 1e-12, "involution, second slot");
            if (err.empty())
                err = expect_near({back.Y3, 0.0}, {0.7, 0.0}, 1e-12, "involution, third slot");
            if (err.empty())
                err = expect_near(back.c, 1.0 / std::conj(bp.c), 1e-12, "cocycle reciprocity");
            return err;
        }});
        g.push_back({"integral-closed-x0", [] {
            double v = 0.5;
            std::complex<double> want = 8.0 * kPi * kPi * gamma(2.0 * v) * 4.0;
            return expect_near(integral_closed(HalfInt(0), v), want, 1e-8, "closed integral, x=0");
        }});
        g.push_back({"integral-closed-xm2", [] {
            double v = 0.5;
            std::complex<double> want = 8.0 * kPi * kPi * gamma(2.0 * v) * (-4.0 / 15.0);
            return expect_near(integral_closed(HalfInt(-4), v), want, 1e-8,
                               "closed integral, x=-2");
        }});
        g.push_back({"integral-closed-half", [] {
            double v = 0.5;
            std::complex<double> want =
                8.0 * std::pow(kPi, 3) * gamma(2.0 * v) * std::complex<double>{0.0, 1.0};
            return expect_near(integral_closed(HalfInt(1), v), want, 1e-8,
                               "closed integral, x=1/2");
        }});
        g.push_back({"lir-scalar-values", [] {
            std::string err =
                expect_near(lir_scalar(HalfInt(1)), {1.0, 0.0}, 1e-6, "scalar at x=1/2");
            if (err.empty())
                err = expect_near(lir_scalar(HalfInt(0)), {-1.0, 0.0}, 1e-6, "scalar at x=0");
            if (err.empty())
                err = expect_near(lir_scalar(HalfInt(-4)), {-1.0, 0.0}, 1e-6, "scalar at x=-2");
            return err;
        }});
        g.push_back({"pairing-values", [] {
            std::string err = expect_eq(pi_a3_pairing(HalfInt(0)), -1, "pairing at integer x");
            if (err.empty()) err = expect_eq(pi_a3_pairing(HalfInt(1)), +1, "pairing at x=1/2");
            if (err.empty()) err = expect_eq(pi_a3_pairing(HalfInt(-1)), -1, "pairing at x=-1/2");
            return err;
        }});
        g.push_back({"lir-row-consistency", [] {
            for (int two_x : {2, 1}) {
                HalfInt x(two_x);
                double scal = lir_scalar(x).real();
                int pair = pi_a3_pairing(x);
                if (std::abs(scal - pair) > 1e-6) {
                    return "scalar/pairing mismatch at x = " + x.str();
                }
            }
            return std::string();
        }});

        return g;
    }();
    return cases;
}

GoldenSummary run_golden_cases() {
    GoldenSummary s;
    for (const auto& c : golden_cases()) {
        ++s.total;
        std::string msg;
        try {
            msg = c.run();
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        if (msg.empty())
            ++s.passed;
        else
            s.failures.push_back(c.name + ": " + msg);
    }
    return s;
}

} // namespace ek
