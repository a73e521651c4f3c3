#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "endoscopy_kit/params.hpp"

using namespace ek;

namespace {

FormalParameter unitary_chars(int kappa, const std::vector<std::pair<int, int>>& parity_mult) {
    FormalParameter p;
    p.context = Context::unitary(kappa);
    int total = 0, counter = 0;
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
    return p;
}

} // namespace

TEST_CASE("twist parity follows the alternating rule") {
    CHECK(parity_of_twist(+1, 1) == +1);
    CHECK(parity_of_twist(+1, 2) == -1);
    CHECK(parity_of_twist(-1, 3) == -1);
    CHECK(parity_of_twist(-1, 2) == +1);
    CHECK_THROWS_AS(parity_of_twist(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(parity_of_twist(+1, 0), std::invalid_argument);
}

TEST_CASE("kappa of a simple shape agrees with the parity route exhaustively") {
    // Route A: the closed exponent (m-1)(n-1).
    // Route B: kappa = (-1)^{mn-1} b with b = (-1)^{n-1} b_base and
    //          b_base = (-1)^{m-1} kappa_base.
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            for (int kb : {+1, -1}) {
                int via_b = ((m * n - 1) % 2 == 0 ? 1 : -1) *
                            ((n - 1) % 2 == 0 ? 1 : -1) *
                            ((m - 1) % 2 == 0 ? 1 : -1) * kb;
                CHECK(kappa_of_simple(m, n, kb) == via_b);
            }
        }
    }
    // frozen values
    CHECK(kappa_of_simple(1, 1, +1) == +1);
    CHECK(kappa_of_simple(1, 2, +1) == +1);
    CHECK(kappa_of_simple(2, 2, -1) == +1);
}

TEST_CASE("archimedean character parity") {
    CHECK(arch_parity({HalfInt(1), HalfInt(-1)}) == -1);  // (1/2,-1/2)
    CHECK(arch_parity({HalfInt(0), HalfInt(0)}) == +1);   // trivial
    CHECK(arch_parity({HalfInt(2), HalfInt(-2)}) == +1);  // (1,-1)
    CHECK_THROWS_AS(arch_parity({HalfInt(1), HalfInt(1)}), std::invalid_argument);
}

TEST_CASE("archimedean parity matches the twist rule on twisted characters") {
    // (a,-a) tensor the n-dimensional twist has constituents
    // (a+k, -a-k) for symmetric k; the product of their parities equals the
    // twist-rule prediction.
    for (int two_a = -6; two_a <= 6; ++two_a) {
        for (int n = 1; n <= 4; ++n) {
            HalfInt a(two_a);
            int base = arch_parity({a, -a});
            int expected = parity_of_twist(base, n);
            // the twisted representation is irreducible with highest exponent
            // a' = a + (n-1)/2; its parity as a (2a')-difference character:
            HalfInt top(two_a + (n - 1));
            int got = arch_parity({top, -top});
            CHECK(got == expected);
        }
    }
}

TEST_CASE("validation rejects malformed parameters") {
    auto p = unitary_chars(+1, {{-1, 2}, {-1, 1}, {-1, 1}});
    CHECK_NOTHROW(p.validate());

    auto bad_total = p;
    bad_total.ambient_N = 5;
    CHECK_THROWS_AS(bad_total.validate(), std::invalid_argument);

    auto dup = p;
    dup.constituents[1].param.id = dup.constituents[0].param.id;
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    auto no_parity = p;
    no_parity.constituents[0].param.parity = 0;
    CHECK_THROWS_AS(no_parity.validate(), std::invalid_argument);

    auto paired_with_parity = p;
    paired_with_parity.constituents[0].param.self_dual = false;
    CHECK_THROWS_AS(paired_with_parity.validate(), std::invalid_argument);
}

TEST_CASE("signed partition splits by the sign rule") {
    // N = 4, kappa = +1: one-dimensional constituents land on the orthogonal
    // side iff parity = -1.
    auto p = unitary_chars(+1, {{-1, 2}, {-1, 1}, {-1, 1}});
    SignedPartition sp = signed_partition(p);
    CHECK(sp.I_plus.size() == 3);
    CHECK(sp.I_minus.empty());
    CHECK(sp.J.empty());

    // flipping one parity moves it to the symplectic side, where odd
    // multiplicity is rejected
    auto q = unitary_chars(+1, {{+1, 2}, {-1, 1}, {-1, 1}});
    SignedPartition sq = signed_partition(q);
    CHECK(sq.I_plus.size() == 2);
    CHECK(sq.I_minus.size() == 1);

    auto bad = unitary_chars(+1, {{+1, 1}, {-1, 2}, {-1, 1}});
    CHECK_THROWS_AS(signed_partition(bad), std::invalid_argument);

    // non-self-dual orbits go to J and count twice in the ambient dimension
    FormalParameter r = unitary_chars(+1, {{-1, 2}});
    SimpleParameter orbit;
    orbit.id = "tau";
    orbit.m = orbit.n = orbit.r = 1;
    orbit.self_dual = false;
    orbit.parity = 0;
    r.constituents.push_back({orbit, 1});
    r.ambient_N = 4;
    SignedPartition sr = signed_partition(r);
    CHECK(sr.J.size() == 1);
}

TEST_CASE("shape classification") {
    auto disc = unitary_chars(+1, {{+1, 1}, {+1, 1}, {+1, 1}});
    CHECK(classify(disc).kind == ParamClassKind::Discrete);

    auto ell1 = unitary_chars(+1, {{-1, 2}, {-1, 1}, {-1, 1}});
    auto c1 = classify(ell1);
    CHECK(c1.kind == ParamClassKind::EllipticNonDiscrete);
    CHECK(c1.q == 1);

    auto ell2 = unitary_chars(+1, {{-1, 2}, {-1, 2}});
    auto c2 = classify(ell2);
    CHECK(c2.kind == ParamClassKind::EllipticNonDiscrete);
    CHECK(c2.q == 2);

    auto exc1 = unitary_chars(+1, {{+1, 2}, {-1, 1}, {-1, 1}});
    CHECK(classify(exc1).kind == ParamClassKind::Exc1);

    auto exc2 = unitary_chars(+1, {{-1, 3}, {-1, 1}});
    CHECK(classify(exc2).kind == ParamClassKind::Exc2);

    auto other = unitary_chars(+1, {{-1, 4}});
    CHECK(classify(other).kind == ParamClassKind::OtherNonElliptic);

    // a doubled symplectic-side constituent next to a doubled orthogonal one
    // is neither exceptional nor elliptic
    auto mixed = unitary_chars(+1, {{+1, 2}, {-1, 2}});
    CHECK(classify(mixed).kind == ParamClassKind::OtherNonElliptic);
}

TEST_CASE("the rank-one family hits all four centralizer rows") {
    SUBCASE("integer") {
        auto p = u31_arch_parameter(HalfInt(2)); // x = 1
        SignedPartition sp = signed_partition(p);
        CHECK(sp.I_minus.size() == 1);
        CHECK(sp.I_plus.size() == 2);
        CHECK(p.constituents[0].mult == 2);
    }
    SUBCASE("x = 1/2 merges into a tripled character") {
        auto p = u31_arch_parameter(HalfInt(1));
        REQUIRE(p.constituents.size() == 2);
        CHECK(p.constituents[0].mult == 3);
        CHECK(p.constituents[1].mult == 1);
        CHECK(classify(p).kind == ParamClassKind::Exc2);
    }
    SUBCASE("x = -1/2 merges the other way") {
        auto p = u31_arch_parameter(HalfInt(-1));
        REQUIRE(p.constituents.size() == 2);
        CHECK(p.constituents[0].mult == 1);
        CHECK(p.constituents[1].mult == 3);
    }
    SUBCASE("generic half-integer") {
        auto p = u31_arch_parameter(HalfInt(3)); // x = 3/2
        SignedPartition sp = signed_partition(p);
        CHECK(sp.I_plus.size() == 3);
        CHECK(sp.I_minus.empty());
        CHECK(classify(p).kind == ParamClassKind::EllipticNonDiscrete);
    }
    SUBCASE("every member is a valid U(4) parameter") {
        for (int two_x = -8; two_x <= 8; ++two_x) {
            auto p = u31_arch_parameter(HalfInt(two_x));
            CHECK(p.ambient_N == 4);
            CHECK_NOTHROW(p.validate());
        }
    }
}
