#include "endoscopy_kit/multiplicity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ek {

ComponentUnion ComponentUnion::all_components(const GroupProduct& g) {
    ComponentUnion u;
    std::vector<int> tags(g.factors.size(), 0);
    while (true) {
        u.components.push_back(tags);
        size_t pos = g.factors.size();
        bool wrapped = true;
        while (pos > 0) {
            --pos;
            if (++tags[pos] < g.factors[pos].pi0()) { wrapped = false; break; }
            tags[pos] = 0;
        }
        if (g.factors.empty() || wrapped) break;
    }
    return u;
}

ComponentUnion ComponentUnion::identity_component(const GroupProduct& g) {
    ComponentUnion u;
    u.components.push_back(std::vector<int>(g.factors.size(), 0));
    return u;
}

ComponentUnion ComponentUnion::from_mask(const GroupProduct& g, unsigned long long mask) {
    ComponentUnion all = all_components(g);
    if (all.components.size() < 64 && mask >= (1ULL << all.components.size()))
        throw std::invalid_argument("component mask selects nonexistent components");
    ComponentUnion u;
    for (size_t k = 0; k < all.components.size(); ++k)
        if (mask & (1ULL << k)) u.components.push_back(all.components[k]);
    return u;
}

bool ComponentUnion::contains(const std::vector<int>& tags) const {
    return std::find(components.begin(), components.end(), tags) != components.end();
}

// ---------------------------------------------------------------------------
// Elliptic classes
// ---------------------------------------------------------------------------

namespace {

struct FactorClass {
    int tag = 0;
    std::vector<ClassicalFactor> cent0;
    long long pi0 = 1;
    std::string pattern;
};

void push_so(std::vector<ClassicalFactor>& v, int n, const std::string& label) {
    if (n >= 1) v.push_back({FactorKind::SO, n, label});
}

void push_sp(std::vector<ClassicalFactor>& v, int n, const std::string& label) {
    if (n >= 1) v.push_back({FactorKind::Sp, n, label});
}

/// Involution classes with elliptic connected centralizer for one factor,
/// or an empty list when the factor admits none.
std::vector<FactorClass> factor_classes(const ClassicalFactor& f) {
    std::vector<FactorClass> out;
    std::string base = f.str();
    switch (f.kind) {
        case FactorKind::O:
        case FactorKind::SO:
            if (f.size == 0) { out.push_back({0, {}, 1, base + ":(0,0)"}); break; }
            for (int q = 0; q <= f.size; ++q) {
                int p = f.size - q;
                if (f.kind == FactorKind::SO && q % 2 != 0) continue;
                if (p == 2 || q == 2) continue; // SO(2) central torus in the centralizer
                FactorClass c;
                c.tag = (f.kind == FactorKind::O) ? q % 2 : 0;
                push_so(c.cent0, p, f.label + "+");
                push_so(c.cent0, q, f.label + "-");
                c.pi0 = (p >= 1 && q >= 1) ? 2 : 1;
                c.pattern = base + ":(" + std::to_string(p) + "," + std::to_string(q) + ")";
                out.push_back(std::move(c));
            }
            break;
        case FactorKind::Sp:
            for (int b = 0; 2 * b <= f.size; ++b) {
                int q = 2 * b, p = f.size - q;
                FactorClass c;
                c.tag = 0;
                push_sp(c.cent0, p, f.label + "+");
                push_sp(c.cent0, q, f.label + "-");
                c.pi0 = 1;
                c.pattern = base + ":(" + std::to_string(p) + "," + std::to_string(q) + ")";
                out.push_back(std::move(c));
            }
            break;
        case FactorKind::GL:
        case FactorKind::Torus:
            if (f.size == 0) out.push_back({0, {}, 1, base + ":(0)"});
            // otherwise: central torus everywhere, no elliptic classes
            break;
    }
    return out;
}

} // namespace

std::vector<EllipticClass> elliptic_classes(const GroupProduct& g) {
    std::vector<std::vector<FactorClass>> per_factor;
    for (const auto& f : g.factors) {
        per_factor.push_back(factor_classes(f));
        if (per_factor.back().empty()) return {}; // some factor has no elliptic class
    }
    long long ambient_dim = g.dim();
    std::vector<EllipticClass> out;
    std::vector<size_t> idx(per_factor.size(), 0);
    while (true) {
        EllipticClass cls;
        for (size_t fi = 0; fi < per_factor.size(); ++fi) {
            const FactorClass& fc = per_factor[fi][idx[fi]];
            cls.tags.push_back(fc.tag);
            for (const auto& sub : fc.cent0) cls.centralizer0.factors.push_back(sub);
            cls.pi0_order *= fc.pi0;
            if (!cls.pattern.empty()) cls.pattern += " ";
            cls.pattern += fc.pattern;
        }
        cls.central = (cls.centralizer0.dim() == ambient_dim);
        out.push_back(std::move(cls));

        size_t pos = per_factor.size();
        bool wrapped = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < per_factor[pos].size()) { wrapped = false; break; }
            idx[pos] = 0;
        }
        if (per_factor.empty() || wrapped) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// i, sigma, e
// ---------------------------------------------------------------------------

Rat i_of_S(const GroupProduct& g, const ComponentUnion& u, long long max_count) {
    auto wd = weyl_data(g, max_count);
    Rat sum(0);
    for (const auto& d : wd) {
        if (!u.contains(d.component)) continue;
        if (!d.regular) continue;
        long long den = d.det_w_minus_1;
        if (den < 0) den = -den;
        sum += Rat(d.sgn0, den);
    }
    return sum / Rat(g.weyl0_order());
}

namespace {

/// Canonical sorted multiset key of the factor sizes and kinds.
std::string sigma_key(const GroupProduct& g) {
    std::vector<std::string> parts;
    for (const auto& f : g.factors)
        parts.push_back(factor_kind_name(f.kind) + "(" + std::to_string(f.size) + ")");
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& p : parts) key += p + "|";
    return key;
}

/// Drop factors that are trivial as groups: anything of size zero and the
/// one-point special orthogonal group.
GroupProduct nontrivial_part(const GroupProduct& g) {
    GroupProduct h;
    for (const auto& f : g.factors) {
        if (f.size == 0) continue;
        if (f.size == 1 && f.kind == FactorKind::SO) continue;
        h.factors.push_back(f);
    }
    return h;
}

} // namespace

Rat sigma(const GroupProduct& g_in) {
    static std::map<std::string, Rat> memo;

    GroupProduct g = nontrivial_part(g_in);
    for (const auto& f : g.factors) {
        bool ok = (f.kind == FactorKind::Sp && f.size >= 2 && f.size % 2 == 0) ||
                  (f.kind == FactorKind::SO && f.size >= 3);
        if (f.kind == FactorKind::SO && f.size == 2)
            throw std::domain_error("sigma undefined: SO(2) factor has infinite centre");
        if (!ok)
            throw std::domain_error("sigma undefined for factor " + f.str() +
                                    " (needs a connected group with finite centre)");
    }
    std::string key = sigma_key(g);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (g.factors.empty()) {
        memo[key] = Rat(1);
        return Rat(1);
    }

    Rat i_val = i_of_S(g, ComponentUnion::identity_component(g));
    Rat noncentral(0);
    long long central_count = 0;
    for (const auto& cls : elliptic_classes(g)) {
        if (cls.central) { ++central_count; continue; }
        noncentral += sigma(cls.centralizer0) / Rat(cls.pi0_order);
    }
    if (central_count == 0)
        throw std::logic_error("no central elliptic class found for " + g.str());
    Rat result = (i_val - noncentral) / Rat(central_count);
    memo[key] = result;
    return result;
}

Rat e_of_S(const GroupProduct& g, const ComponentUnion& u) {
    Rat sum(0);
    for (const auto& cls : elliptic_classes(g)) {
        if (!u.contains(cls.tags)) continue;
        sum += sigma(cls.centralizer0) / Rat(cls.pi0_order);
    }
    return sum;
}

Rat stable_mult_coefficient(const FormalParameter& p, SizeFlag flag) {
    p.validate();
    for (const auto& c : p.constituents)
        if (c.param.n != 1)
            throw std::invalid_argument(
                "stable coefficient requires trivial twist parts (n = 1) throughout");

    GroupProduct S = centralizer(p);
    ComponentData cd = component_data(S, p);

    // sigma of the identity component modulo the (order <= 2) central
    // subgroup shared with the ambient dual group.
    Rat sig(0);
    bool infinite_center = !S.identity_component_has_finite_center();
    if (infinite_center) {
        sig = Rat(0);
    } else {
        bool minus_one_inside = true; // -1 lies in S^0 iff every O-factor has even size
        for (const auto& f : S.factors)
            if (f.kind == FactorKind::O && f.size % 2 == 1) minus_one_inside = false;
        GroupProduct S0;
        for (const auto& f : S.factors) {
            if (f.kind == FactorKind::O) S0.factors.push_back({FactorKind::SO, f.size, f.label});
            else S0.factors.push_back(f);
        }
        if (!minus_one_inside) {
            sig = sigma(S0); // quotient by the trivial intersection changes nothing
        } else {
            GroupProduct core = nontrivial_part(S0);
            if (core.factors.empty()) {
                sig = Rat(1);
            } else if (core.factors.size() == 1 && core.factors[0].kind == FactorKind::Sp &&
                       core.factors[0].size == 2) {
                // Sp(2)/{+-1} is SO(3)
                GroupProduct so3;
                so3.factors.push_back({FactorKind::SO, 3, core.factors[0].label});
                sig = sigma(so3);
            } else {
                throw std::domain_error("unsupported central quotient for " + S.str());
            }
        }
    }

    int rank = (flag == SizeFlag::Pi0S) ? cd.pi0_rank : cd.pi0_sbar_rank;
    Rat size(1);
    for (int i = 0; i < rank; ++i) size = size * Rat(2);
    return sig / size;
}

// ---------------------------------------------------------------------------
// Factor parsing
// ---------------------------------------------------------------------------

ClassicalFactor factor_from_name(const std::string& name) {
    auto open = name.find('(');
    auto close = name.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("bad factor name: " + name);
    std::string head = name.substr(0, open);
    int size = 0;
    try {
        size = std::stoi(name.substr(open + 1, close - open - 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad factor size in: " + name);
    }
    if (size < 0) throw std::invalid_argument("negative factor size in: " + name);
    ClassicalFactor f;
    f.size = size;
    f.label = name;
    if (head == "O") f.kind = FactorKind::O;
    else if (head == "SO") f.kind = FactorKind::SO;
    else if (head == "Sp") f.kind = FactorKind::Sp;
    else if (head == "SL") {
        // only the rank-one case coincides with a symplectic group
        if (size != 2) throw std::invalid_argument("unsupported factor: " + name);
        f.kind = FactorKind::Sp;
        f.label = "Sp(2)";
    } else if (head == "GL") f.kind = FactorKind::GL;
    else if (head == "T" || head == "Torus") f.kind = FactorKind::Torus;
    else throw std::invalid_argument("unknown factor kind: " + name);
    if (f.kind == FactorKind::Sp && f.size % 2 != 0)
        throw std::invalid_argument("symplectic factors need even size: " + name);
    return f;
}

GroupProduct product_from_names(const std::vector<std::string>& names) {
    GroupProduct g;
    int counter = 0;
    for (const auto& n : names) {
        ClassicalFactor f = factor_from_name(n);
        f.label += "#" + std::to_string(counter++);
        g.factors.push_back(std::move(f));
    }
    return g;
}

} // namespace ek
