#include "endoscopy_kit/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ek {

std::string place_kind_name(PlaceKind k) {
    switch (k) {
        case PlaceKind::PAdicSplit: return "padic_split";
        case PlaceKind::PAdicInert: return "padic_inert";
        case PlaceKind::RealSplit: return "real_split";
        case PlaceKind::RealInert: return "real_inert";
        case PlaceKind::Complex: return "complex";
    }
    return "?";
}

PlaceKind place_kind_from_name(const std::string& s) {
    if (s == "padic_split") return PlaceKind::PAdicSplit;
    if (s == "padic_inert") return PlaceKind::PAdicInert;
    if (s == "real_split") return PlaceKind::RealSplit;
    if (s == "real_inert") return PlaceKind::RealInert;
    if (s == "complex") return PlaceKind::Complex;
    throw std::invalid_argument("unknown place kind: " + s);
}

ULocalInvariantSet u_local_invariants(PlaceKind kind, int N) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    ULocalInvariantSet out;
    out.kind = kind;
    out.N = N;
    switch (kind) {
        case PlaceKind::PAdicInert:
            out.delta = (N % 2 == 0) ? 2 : 1;
            break;
        case PlaceKind::RealInert:
            for (int q = 0; q <= N; ++q) out.signatures.emplace_back(N - q, q);
            break;
        default:
            throw std::invalid_argument("split place: use the general-linear invariant set");
    }
    return out;
}

GLLocalInvariantSet gl_local_invariants(PlaceKind kind, int N) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    GLLocalInvariantSet out;
    out.kind = kind;
    out.N = N;
    switch (kind) {
        case PlaceKind::PAdicSplit:
        case PlaceKind::PAdicInert:
            out.modulus = 1; // every integer class occurs
            break;
        case PlaceKind::RealSplit:
        case PlaceKind::RealInert:
            out.modulus = (N % 2 == 0) ? N / 2 : N;
            break;
        case PlaceKind::Complex:
            out.modulus = N;
            break;
    }
    return out;
}

void validate_place(GroupFamily group, int N, const Place& place) {
    auto bad = [&](const std::string& why) {
        throw std::invalid_argument("place '" + place.id + "': " + why);
    };
    if (group == GroupFamily::GL) {
        auto set = gl_local_invariants(place.kind, N);
        if (place.inv.x % set.modulus != 0)
            bad("invariant " + std::to_string(place.inv.x) + " not a multiple of " +
                std::to_string(set.modulus));
        return;
    }
    // unitary group
    switch (place.kind) {
        case PlaceKind::PAdicInert: {
            int delta = (N % 2 == 0) ? 2 : 1;
            if (place.inv.a < 0 || place.inv.a >= delta)
                bad("inert invariant must lie in Z/" + std::to_string(delta));
            break;
        }
        case PlaceKind::RealInert:
            if (place.inv.p < 0 || place.inv.q < 0 || place.inv.p + place.inv.q != N)
                bad("signature must satisfy p + q = N with p, q >= 0");
            break;
        case PlaceKind::PAdicSplit:
            break; // any integer class
        case PlaceKind::RealSplit:
        case PlaceKind::Complex: {
            auto set = gl_local_invariants(place.kind, N);
            if (place.inv.x % set.modulus != 0)
                bad("split invariant " + std::to_string(place.inv.x) +
                    " not a multiple of " + std::to_string(set.modulus));
            break;
        }
    }
}

int u_reduction(PlaceKind kind, int N, const LocalInvariant& inv) {
    switch (kind) {
        case PlaceKind::PAdicInert:
            return (N % 2 == 0) ? inv.a % 2 : 0;
        case PlaceKind::RealInert:
            return static_cast<int>((N / 2 + inv.q) % 2);
        case PlaceKind::PAdicSplit:
        case PlaceKind::RealSplit:
            return static_cast<int>(((inv.x % 2) + 2) % 2);
        case PlaceKind::Complex:
            return 0;
    }
    return 0;
}

FeasibilityReport global_feasible(const GlobalInnerFormSpec& spec) {
    std::set<std::string> ids;
    for (const auto& pl : spec.places) {
        if (!ids.insert(pl.id).second)
            throw std::invalid_argument("duplicate place id: " + pl.id);
        validate_place(spec.group, spec.N, pl);
    }
    FeasibilityReport rep;
    if (spec.group == GroupFamily::GL) {
        long long sum = 0;
        for (const auto& pl : spec.places) sum += pl.inv.x;
        rep.feasible = (sum == 0);
        rep.obstruction = sum;
        rep.reason = rep.feasible ? "invariants sum to zero"
                                  : "invariants sum to " + std::to_string(sum);
        return rep;
    }
    if (spec.N % 2 == 1) {
        rep.feasible = true;
        rep.reason = "odd rank: every valid local collection globalizes";
        return rep;
    }
    int sum = 0;
    for (const auto& pl : spec.places) sum = (sum + u_reduction(pl.kind, spec.N, pl.inv)) % 2;
    rep.feasible = (sum == 0);
    rep.obstruction = sum;
    rep.reason = rep.feasible ? "parity sum is zero" : "parity sum is 1";
    return rep;
}

GlobalInnerFormSpec globalize(GroupFamily group, int N, const Place& target) {
    validate_place(group, N, target);
    GlobalInnerFormSpec spec;
    spec.group = group;
    spec.N = N;
    spec.places.push_back(target);
    if (group == GroupFamily::GL) {
        if (target.inv.x != 0) {
            Place aux;
            aux.id = "v2";
            aux.kind = PlaceKind::PAdicSplit;
            aux.inv.x = -target.inv.x;
            spec.places.push_back(aux);
        }
        return spec;
    }
    if (N % 2 == 1) return spec; // nothing to balance
    int a = u_reduction(target.kind, N, target.inv);
    Place aux;
    aux.id = "v2";
    aux.kind = PlaceKind::RealInert;
    if (a == 0) {
        aux.inv.p = N / 2;
        aux.inv.q = N / 2;
    } else {
        aux.inv.p = N / 2 - 1;
        aux.inv.q = N / 2 + 1;
    }
    spec.places.push_back(aux);
    return spec;
}

int LeviShape::total(GroupFamily group) const {
    int sum = 0;
    for (int b : blocks) sum += b;
    return group == GroupFamily::U ? N_minus + 2 * sum : sum;
}

namespace {

/// Degree of the division algebra carrying a general-linear invariant x.
int division_degree(int N, long long x) {
    long long r = ((x % N) + N) % N;
    return static_cast<int>(N / std::gcd(static_cast<long long>(N), r));
}

} // namespace

bool levi_transfers(const LeviShape& shape, GroupFamily group, int N,
                    PlaceKind kind, const LocalInvariant& inv) {
    if (shape.total(group) != N)
        throw std::invalid_argument("Levi shape does not fill the group");
    // The full group is a Levi of itself and always transfers.
    if (group == GroupFamily::U && shape.blocks.empty()) return true;
    if (group == GroupFamily::GL && shape.blocks.size() == 1) return true;
    if (group == GroupFamily::GL ||
        kind == PlaceKind::PAdicSplit || kind == PlaceKind::RealSplit ||
        kind == PlaceKind::Complex) {
        // At a split place the unitary group and its Levis are general
        // linear: the hermitian part contributes one more block.
        int d = division_degree(N, inv.x);
        if (group == GroupFamily::U && shape.N_minus > 0 && shape.N_minus % d != 0)
            return false;
        for (int b : shape.blocks)
            if (b % d != 0) return false;
        return true;
    }
    if (kind == PlaceKind::RealInert)
        throw std::domain_error(
            "real-place Levi transfer for unitary groups needs an external table");
    // inert p-adic unitary place
    if (inv.a == 0) return true;       // quasi-split: every Levi transfers
    return shape.N_minus > 0;          // otherwise exactly the non-linear shapes
}

LeviShape minimal_levi_shape(const FormalParameter& p) {
    p.validate();
    if (!p.context.is_unitary())
        throw std::invalid_argument("minimal Levi shape requires the unitary context");
    LeviShape shape;
    for (const auto& c : p.constituents) {
        int Ni = c.param.dim();
        if (c.param.self_dual) {
            if (c.mult % 2 == 1) shape.N_minus += Ni;
            for (int t = 0; t < c.mult / 2; ++t) shape.blocks.push_back(Ni);
        } else {
            for (int t = 0; t < c.mult; ++t) shape.blocks.push_back(Ni);
        }
    }
    std::sort(shape.blocks.begin(), shape.blocks.end(), std::greater<int>());
    return shape;
}

bool relevance(const FormalParameter& p, PlaceKind kind, const LocalInvariant& inv) {
    LeviShape shape = minimal_levi_shape(p);
    return levi_transfers(shape, GroupFamily::U, p.ambient_N, kind, inv);
}

std::vector<EndoTriple> endoscopy_enumerate(int N, bool twisted) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    std::vector<EndoTriple> out;
    for (int N2 = 0; 2 * N2 <= N; ++N2) {
        int N1 = N - N2;
        if (!twisted) {
            EndoTriple t;
            t.N1 = N1;
            t.N2 = N2;
            t.out_order = (N1 == N2) ? 2 : 1;
            out.push_back(t);
            continue;
        }
        bool same_parity = ((N1 - N2) % 2 == 0);
        std::vector<std::pair<int, int>> kappas =
            same_parity ? std::vector<std::pair<int, int>>{{1, -1}, {-1, 1}}
                        : std::vector<std::pair<int, int>>{{1, 1}, {-1, -1}};
        if (N1 == N2) kappas.resize(1); // the two sign choices are isomorphic
        for (auto [k1, k2] : kappas) {
            EndoTriple t;
            t.N1 = N1;
            t.N2 = N2;
            t.kappa1 = k1;
            t.kappa2 = k2;
            t.out_order = (N1 == N2) ? 2 : 1;
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end(), [](const EndoTriple& a, const EndoTriple& b) {
        if (a.N1 != b.N1) return a.N1 > b.N1;
        if (a.kappa1 != b.kappa1) return a.kappa1 > b.kappa1;
        return a.kappa2 > b.kappa2;
    });
    return out;
}

int kottwitz_sign_gl(int N, int d) {
    if (d < 1 || N % d != 0)
        throw std::invalid_argument("division-algebra degree must divide N");
    int M = N / d;
    return ((N - M) % 2 == 0) ? +1 : -1;
}

namespace {

int pow_sign(int base, long long exponent) {
    if (base == 1) return 1;
    return (exponent % 2 == 0) ? 1 : -1;
}

/// Sign contributed by a single constituent (multiplicity not applied).
int a_psi_single(const SimpleParameter& sp, const InnerFormField& field) {
    int f = sp.m;        // cuspidal field degree
    int twist = sp.n;    // size of the principal unipotent block
    int r = sp.r;
    if (field.archimedean) {
        if (r != 1)
            throw std::invalid_argument("archimedean constituents must have r = 1");
        if (f == 2) return 1;
        if (f == 1) return (twist % 2 == 0) ? pow_sign(-1, twist / 2) : 1;
        throw std::invalid_argument("archimedean constituents need field degree 1 or 2");
    }
    int d = field.d;
    if (d < 1) throw std::invalid_argument("division-algebra degree must be positive");
    if ((static_cast<long long>(f) * twist) % d != 0) return 1;
    int s = d / std::gcd(d, f); // smallest s with d | f s
    if (s % 2 == 1) return 1;
    return pow_sign(-1, static_cast<long long>(r) * (twist / s));
}

} // namespace

int a_psi(const FormalParameter& p, const InnerFormField& field) {
    p.validate();
    if (p.context.is_unitary())
        throw std::invalid_argument("the sign a_psi is defined for linear parameters");
    int sign = 1;
    for (const auto& c : p.constituents)
        sign *= pow_sign(a_psi_single(c.param, field), c.mult);
    return sign;
}

bool packet_nonempty(const FormalParameter& p, const InnerFormField& field) {
    p.validate();
    if (p.context.is_unitary())
        throw std::invalid_argument("packet transfer is defined for linear parameters");
    for (const auto& c : p.constituents) {
        long long f = c.param.m;
        long long twist = c.param.n;
        long long r = c.param.r;
        if (field.archimedean) {
            if (r != 1)
                throw std::invalid_argument("archimedean constituents must have r = 1");
            if (field.d <= 1) continue; // split form
            if ((f * twist) % 2 != 0) return false;
        } else {
            if (field.d < 1)
                throw std::invalid_argument("division-algebra degree must be positive");
            // Either unipotent restriction of the constituent must land on
            // blocks the division algebra can carry.
            if ((f * r) % field.d != 0 && (f * twist) % field.d != 0) return false;
        }
    }
    return true;
}

RhoCheck rho_spsi_check(const FormalParameter& p, const InnerFormField& field, long long k) {
    p.validate();
    if (p.context.is_unitary())
        throw std::invalid_argument("the character check is defined for linear parameters");
    int N = p.ambient_N;

    k = ((k % N) + N) % N;
    RhoCheck chk;
    if (field.archimedean) {
        if (k != 0 && (N % 2 != 0 || k != N / 2))
            throw std::invalid_argument("archimedean class must be 0 or N/2");
    } else {
        if ((k * field.d) % N != 0)
            throw std::invalid_argument("class k must satisfy k d = 0 mod N");
        long long r = k * field.d / N;
        if (std::gcd(r, static_cast<long long>(field.d)) != 1)
            throw std::invalid_argument("class k does not define a degree-d form");
    }

    // The distinguished element acts on the i-th isotypic block by
    // (-1)^{twist_i - 1}; its image in the reduced centralizer is the sign
    // zeta below. The center reaches the reduced centralizer via z -> z^{N/n'}
    // with n' = gcd of the constituent dimensions, so class k corresponds to
    // the character exponent k n'/N when that is an integer.
    long long gcd_all = 0;
    for (const auto& c : p.constituents)
        gcd_all = std::gcd(gcd_all, static_cast<long long>(c.param.dim()));
    long long zeta_exp = 0; // exponent of (-1)
    for (const auto& c : p.constituents) {
        long long nprime = c.param.dim() / gcd_all;
        zeta_exp += static_cast<long long>(c.param.n - 1) * c.mult * nprime;
    }
    int zeta = (zeta_exp % 2 == 0) ? 1 : -1;
    chk.extends = (k * gcd_all) % N == 0;
    if (chk.extends)
        chk.rho_value = pow_sign(zeta, k * gcd_all / N);

    if (field.archimedean && k == 0) {
        chk.a_value = 1; // quasi-split form
        chk.relevant = true;
    } else {
        chk.a_value = a_psi(p, field);
        chk.relevant = packet_nonempty(p, field);
    }
    chk.equal = chk.extends && (chk.rho_value == chk.a_value);
    return chk;
}

LeviWeylGroup weyl_group_levi(const LeviShape& shape) {
    LeviWeylGroup w;
    w.k = static_cast<int>(shape.blocks.size());
    std::vector<int> seen;
    for (int i = 0; i < w.k; ++i) {
        bool placed = false;
        for (size_t o = 0; o < w.perm_orbits.size(); ++o) {
            if (shape.blocks[(size_t)w.perm_orbits[o][0]] == shape.blocks[(size_t)i]) {
                w.perm_orbits[o].push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) w.perm_orbits.push_back({i});
    }
    w.order = 1;
    for (int i = 0; i < w.k; ++i) w.order *= 2;
    for (const auto& orbit : w.perm_orbits) {
        long long f = 1;
        for (size_t j = 2; j <= orbit.size(); ++j) f *= static_cast<long long>(j);
        w.order *= f;
    }
    for (int i = 0; i < w.k; ++i)
        w.t_minus_generators.push_back(shape.blocks[(size_t)i] % 2 == 0 ? 1 : -1);
    return w;
}

int t_minus(const LeviShape& shape, const std::vector<int>& flips) {
    if (flips.size() != shape.blocks.size())
        throw std::invalid_argument("flip pattern size mismatch");
    int sign = 1;
    for (size_t i = 0; i < flips.size(); ++i)
        if (flips[i] % 2 != 0) sign *= (shape.blocks[i] % 2 == 0 ? 1 : -1);
    return sign;
}

} // namespace ek
