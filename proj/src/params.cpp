#include "endoscopy_kit/params.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ek {

namespace {

int pow_m1(long long e) { return (e % 2 == 0) ? +1 : -1; }

} // namespace

void FormalParameter::validate() const {
    if (ambient_N <= 0) throw std::invalid_argument("ambient dimension must be positive");
    if (constituents.empty()) throw std::invalid_argument("parameter has no constituents");
    std::set<std::string> ids;
    long long total = 0;
    for (const auto& c : constituents) {
        if (c.mult < 1) throw std::invalid_argument("multiplicity must be >= 1");
        if (c.param.m < 1 || c.param.n < 1 || c.param.r < 1)
            throw std::invalid_argument("constituent dimensions must be positive");
        if (!ids.insert(c.param.id).second)
            throw std::invalid_argument("duplicate constituent id: " + c.param.id);
        if (c.param.self_dual) {
            if (context.is_unitary() && c.param.parity == 0)
                throw std::invalid_argument("self-dual constituent needs a parity: " + c.param.id);
        } else {
            if (c.param.parity != 0)
                throw std::invalid_argument("non-self-dual constituent cannot carry a parity: " + c.param.id);
        }
        long long dim = static_cast<long long>(c.mult) * c.param.dim();
        if (context.is_unitary() && !c.param.self_dual) dim *= 2; // dual-pair orbit
        total += dim;
    }
    if (total != ambient_N)
        throw std::invalid_argument("constituent dimensions sum to " + std::to_string(total) +
                                    ", expected " + std::to_string(ambient_N));
}

int parity_of_twist(int base_parity, int n) {
    if (base_parity != 1 && base_parity != -1) throw std::invalid_argument("parity must be +-1");
    if (n < 1) throw std::invalid_argument("n must be positive");
    return pow_m1(n - 1) * base_parity;
}

int kappa_of_simple(int m, int n, int kappa_base) {
    if (kappa_base != 1 && kappa_base != -1) throw std::invalid_argument("kappa must be +-1");
    if (m < 1 || n < 1) throw std::invalid_argument("m, n must be positive");
    return pow_m1(static_cast<long long>(m - 1) * (n - 1)) * kappa_base;
}

int arch_parity(const ArchCharacter& c) {
    if (!c.conjugate_self_dual())
        throw std::invalid_argument("character is not conjugate self-dual (b != -a)");
    int diff_twice = c.a.two_x() - c.b.two_x(); // = 2(a-b)
    if (diff_twice % 2 != 0) throw std::invalid_argument("a - b is not an integer");
    return pow_m1(diff_twice / 2);
}

int kappa_of_constituent(const FormalParameter& p, int index) {
    const auto& c = p.constituents.at(static_cast<size_t>(index));
    if (!c.param.self_dual) throw std::invalid_argument("kappa_i undefined for non-self-dual constituent");
    return pow_m1(c.param.dim() - 1) * c.param.parity;
}

SignedPartition signed_partition(const FormalParameter& p) {
    if (!p.context.is_unitary())
        throw std::invalid_argument("signed partition requires the unitary context");
    p.validate();
    SignedPartition sp;
    for (int i = 0; i < static_cast<int>(p.constituents.size()); ++i) {
        const auto& c = p.constituents[static_cast<size_t>(i)];
        if (!c.param.self_dual) {
            sp.J.push_back(i);
            continue;
        }
        int kappa_i = kappa_of_constituent(p, i);
        int target = pow_m1(p.ambient_N - c.param.dim()) * p.context.kappa;
        if (kappa_i == target) {
            sp.I_plus.push_back(i);
        } else {
            if (c.mult % 2 != 0)
                throw std::invalid_argument("odd multiplicity on the symplectic side: " + c.param.id);
            sp.I_minus.push_back(i);
        }
    }
    return sp;
}

ParamClass classify(const FormalParameter& p) {
    if (!p.context.is_unitary())
        throw std::invalid_argument("classification requires the unitary context");
    SignedPartition sp = signed_partition(p);
    auto mult_of = [&](int i) { return p.constituents[static_cast<size_t>(i)].mult; };

    bool all_one = std::all_of(p.constituents.begin(), p.constituents.end(),
                               [](const Constituent& c) { return c.mult == 1; });
    if (all_one && sp.I_minus.empty() && sp.J.empty()) return {ParamClassKind::Discrete, 0};

    // Exc1: one doubled symplectic-side constituent, all others single on
    // the orthogonal side.
    if (sp.J.empty() && sp.I_minus.size() == 1 && mult_of(sp.I_minus[0]) == 2) {
        bool rest_single = std::all_of(sp.I_plus.begin(), sp.I_plus.end(),
                                       [&](int i) { return mult_of(i) == 1; });
        if (rest_single) return {ParamClassKind::Exc1, 0};
    }

    // Exc2: one tripled orthogonal-side constituent, all others single,
    // everything on the orthogonal side.
    if (sp.J.empty() && sp.I_minus.empty()) {
        int tripled = 0, bad = 0;
        for (int i : sp.I_plus) {
            if (mult_of(i) == 3) ++tripled;
            else if (mult_of(i) != 1) ++bad;
        }
        if (tripled == 1 && bad == 0) return {ParamClassKind::Exc2, 0};
    }

    // Elliptic non-discrete: all orthogonal side, multiplicities in {1,2},
    // at least one doubled.
    if (sp.J.empty() && sp.I_minus.empty()) {
        int q = 0;
        bool ok = true;
        for (int i : sp.I_plus) {
            if (mult_of(i) == 2) ++q;
            else if (mult_of(i) != 1) ok = false;
        }
        if (ok && q >= 1) return {ParamClassKind::EllipticNonDiscrete, q};
    }

    return {ParamClassKind::OtherNonElliptic, 0};
}

std::string param_class_name(const ParamClass& c) {
    switch (c.kind) {
        case ParamClassKind::Discrete: return "discrete";
        case ParamClassKind::EllipticNonDiscrete:
            return "elliptic_non_discrete(q=" + std::to_string(c.q) + ")";
        case ParamClassKind::Exc1: return "exc1";
        case ParamClassKind::Exc2: return "exc2";
        case ParamClassKind::OtherNonElliptic: return "other_non_elliptic";
    }
    return "?";
}

FormalParameter u31_arch_parameter(HalfInt x) {
    // Characters (a,-a) are simple parameters of dimension 1; parity is the
    // parity of a - (-a) = 2a. The doubled character (x,-x) merges with
    // (1/2,-1/2) or (-1/2,1/2) when x = +-1/2.
    auto chr = [](HalfInt a, int mult) {
        ArchCharacter c{a, -a};
        SimpleParameter sp;
        sp.id = "chi(" + a.str() + ")";
        sp.m = 1;
        sp.n = 1;
        sp.r = 1;
        sp.self_dual = true;
        sp.parity = arch_parity(c);
        return Constituent{sp, mult};
    };
    FormalParameter p;
    p.context = Context::unitary(+1);
    p.ambient_N = 4;
    HalfInt half(1), mhalf(-1);
    if (x == half) {
        p.constituents = {chr(half, 3), chr(mhalf, 1)};
    } else if (x == mhalf) {
        p.constituents = {chr(half, 1), chr(mhalf, 3)};
    } else {
        p.constituents = {chr(x, 2), chr(half, 1), chr(mhalf, 1)};
    }
    p.validate();
    return p;
}

} // namespace ek
