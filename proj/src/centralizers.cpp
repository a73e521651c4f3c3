#include "endoscopy_kit/centralizers.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ek {

std::string factor_kind_name(FactorKind k) {
    switch (k) {
        case FactorKind::O: return "O";
        case FactorKind::Sp: return "Sp";
        case FactorKind::GL: return "GL";
        case FactorKind::SO: return "SO";
        case FactorKind::Torus: return "T";
    }
    return "?";
}

int ClassicalFactor::torus_rank() const {
    switch (kind) {
        case FactorKind::O:
        case FactorKind::SO: return size / 2;
        case FactorKind::Sp: return size / 2;
        case FactorKind::GL: return size;
        case FactorKind::Torus: return size;
    }
    return 0;
}

long long ClassicalFactor::dim() const {
    long long n = size;
    switch (kind) {
        case FactorKind::O:
        case FactorKind::SO: return n * (n - 1) / 2;
        case FactorKind::Sp: return n * (n + 1) / 2;
        case FactorKind::GL: return n * n;
        case FactorKind::Torus: return n;
    }
    return 0;
}

int ClassicalFactor::pi0() const {
    return (kind == FactorKind::O && size >= 1) ? 2 : 1;
}

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long long pow2(int k) { return 1LL << k; }

} // namespace

long long ClassicalFactor::weyl0_order() const {
    int k = torus_rank();
    switch (kind) {
        case FactorKind::O:
        case FactorKind::SO:
            if (size % 2 == 0) return k == 0 ? 1 : pow2(k - 1) * factorial(k); // type D
            return pow2(k) * factorial(k);                                    // type B
        case FactorKind::Sp: return pow2(k) * factorial(k);                   // type C
        case FactorKind::GL: return factorial(size);                          // type A
        case FactorKind::Torus: return 1;
    }
    return 1;
}

std::string ClassicalFactor::str() const {
    return factor_kind_name(kind) + "(" + std::to_string(size) + ")";
}

int GroupProduct::torus_rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.torus_rank();
    return r;
}

long long GroupProduct::dim() const {
    long long d = 0;
    for (const auto& f : factors) d += f.dim();
    return d;
}

long long GroupProduct::weyl0_order() const {
    long long w = 1;
    for (const auto& f : factors) w *= f.weyl0_order();
    return w;
}

long long GroupProduct::component_count() const {
    long long c = 1;
    for (const auto& f : factors) c *= f.pi0();
    return c;
}

std::vector<int> GroupProduct::minus_one_tag() const {
    std::vector<int> tag;
    tag.reserve(factors.size());
    for (const auto& f : factors)
        tag.push_back(f.kind == FactorKind::O ? f.size % 2 : 0);
    return tag;
}

bool GroupProduct::identity_component_has_finite_center() const {
    for (const auto& f : factors) {
        if (f.kind == FactorKind::GL) return false;
        if (f.kind == FactorKind::Torus && f.size >= 1) return false;
        if ((f.kind == FactorKind::O || f.kind == FactorKind::SO) && f.size == 2) return false;
    }
    return true;
}

std::string GroupProduct::str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " x ";
        s += factors[i].str();
    }
    return s;
}

GroupProduct centralizer(const FormalParameter& p) {
    p.validate();
    GroupProduct g;
    if (p.context.is_unitary()) {
        SignedPartition sp = signed_partition(p);
        for (int i : sp.I_plus)
            g.factors.push_back({FactorKind::O, p.constituents[(size_t)i].mult,
                                 p.constituents[(size_t)i].param.id});
        for (int i : sp.I_minus)
            g.factors.push_back({FactorKind::Sp, p.constituents[(size_t)i].mult,
                                 p.constituents[(size_t)i].param.id});
        for (int i : sp.J)
            g.factors.push_back({FactorKind::GL, p.constituents[(size_t)i].mult,
                                 p.constituents[(size_t)i].param.id});
    } else {
        for (const auto& c : p.constituents)
            g.factors.push_back({FactorKind::GL, c.mult, c.param.id});
    }
    return g;
}

ComponentData component_data(const GroupProduct& g, const FormalParameter& p) {
    ComponentData cd;
    if (p.context.is_unitary()) {
        for (const auto& f : g.factors) {
            if (f.kind == FactorKind::O) {
                ++cd.pi0_rank;
                cd.kill_vector.push_back(f.size % 2);
            }
        }
        cd.s_natural_rank = cd.pi0_rank;
        bool kill_nonzero = std::any_of(cd.kill_vector.begin(), cd.kill_vector.end(),
                                        [](int b) { return b != 0; });
        cd.pi0_sbar_rank = kill_nonzero ? cd.pi0_rank - 1 : cd.pi0_rank;
    } else {
        cd.s_natural_torus = true;
        long long gcd_all = 0;
        std::vector<long long> dims;
        for (const auto& c : p.constituents) {
            dims.push_back(c.param.dim());
            gcd_all = std::gcd(gcd_all, dims.back());
        }
        for (long long d : dims) cd.torus_exponents.push_back(d / gcd_all);
        cd.center_exponent = p.ambient_N / gcd_all;
    }
    return cd;
}

// ---------------------------------------------------------------------------
// Weyl enumeration
// ---------------------------------------------------------------------------

namespace {

/// One coset element of a single factor: a signed permutation of the local
/// torus coordinates plus the component tag.
struct FactorElt {
    std::vector<int> perm;  // j -> perm[j]
    std::vector<int> sign;  // sign carried by coordinate j
    int tag = 0;
};

std::vector<FactorElt> factor_elements(const ClassicalFactor& f) {
    int k = f.torus_rank();
    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p(static_cast<size_t>(k));
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    auto signed_perms = [&](bool even_only, bool signs_at_all) {
        std::vector<FactorElt> out;
        for (const auto& p : perms) {
            if (!signs_at_all) {
                out.push_back({p, std::vector<int>(static_cast<size_t>(k), +1), 0});
                continue;
            }
            for (long long bits = 0; bits < pow2(k); ++bits) {
                int flips = 0;
                std::vector<int> sg(static_cast<size_t>(k), +1);
                for (int j = 0; j < k; ++j)
                    if (bits & (1LL << j)) { sg[(size_t)j] = -1; ++flips; }
                if (even_only && flips % 2 != 0) continue;
                out.push_back({p, sg, 0});
            }
        }
        return out;
    };

    std::vector<FactorElt> elts;
    switch (f.kind) {
        case FactorKind::O:
            if (f.size % 2 == 0) {
                // every signed permutation occurs once; the component is the
                // parity of the number of sign flips
                elts = signed_perms(false, true);
                for (auto& e : elts) {
                    int flips = 0;
                    for (int s : e.sign)
                        if (s < 0) ++flips;
                    e.tag = flips % 2;
                }
            } else {
                // all signed permutations on each of the two components (the
                // non-identity component differs by the central -1, which
                // acts trivially on the torus)
                auto base = signed_perms(false, true);
                for (const auto& e : base) elts.push_back(e);
                for (auto e : base) { e.tag = 1; elts.push_back(e); }
            }
            break;
        case FactorKind::SO:
            elts = signed_perms(f.size % 2 == 0, true);
            break;
        case FactorKind::Sp:
            elts = signed_perms(false, true);
            break;
        case FactorKind::GL:
            elts = signed_perms(false, false);
            break;
        case FactorKind::Torus:
            elts = {{std::vector<int>(static_cast<size_t>(k)), std::vector<int>(static_cast<size_t>(k), +1), 0}};
            std::iota(elts[0].perm.begin(), elts[0].perm.end(), 0);
            break;
    }
    return elts;
}

/// Roots of the identity component of one factor, in local coordinates.
std::vector<std::vector<int>> factor_positive_roots(const ClassicalFactor& f) {
    int k = f.torus_rank();
    std::vector<std::vector<int>> roots;
    auto vec = [&](int i, int vi, int j, int vj) {
        std::vector<int> v(static_cast<size_t>(k), 0);
        v[(size_t)i] = vi;
        if (j >= 0) v[(size_t)j] += vj;
        return v;
    };
    switch (f.kind) {
        case FactorKind::GL:
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) roots.push_back(vec(i, 1, j, -1));
            break;
        case FactorKind::Sp:
            for (int i = 0; i < k; ++i) {
                for (int j = i + 1; j < k; ++j) {
                    roots.push_back(vec(i, 1, j, -1));
                    roots.push_back(vec(i, 1, j, +1));
                }
                roots.push_back(vec(i, 2, -1, 0));
            }
            break;
        case FactorKind::O:
        case FactorKind::SO:
            for (int i = 0; i < k; ++i) {
                for (int j = i + 1; j < k; ++j) {
                    roots.push_back(vec(i, 1, j, -1));
                    roots.push_back(vec(i, 1, j, +1));
                }
                if (f.size % 2 == 1) roots.push_back(vec(i, 1, -1, 0)); // type B short root
            }
            break;
        case FactorKind::Torus:
            break;
    }
    return roots;
}

long long checked_ll(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("determinant overflow");
    return static_cast<long long>(v);
}

__int128 det_int(std::vector<std::vector<__int128>> a) {
    size_t n = a.size();
    if (n == 0) return 1;
    // fraction-free Gaussian elimination (Bareiss)
    __int128 sign = 1, prev = 1;
    for (size_t i = 0; i + 1 < n; ++i) {
        if (a[i][i] == 0) {
            size_t p = i + 1;
            while (p < n && a[p][i] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[i], a[p]);
            sign = -sign;
        }
        for (size_t r = i + 1; r < n; ++r)
            for (size_t c = i + 1; c < n; ++c)
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
        prev = a[i][i];
    }
    return sign * a[n - 1][n - 1];
}

bool root_positive(const std::vector<int>& v) {
    for (int x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false; // the zero vector never arises from a root
}

} // namespace

std::vector<std::vector<int>> positive_roots(const GroupProduct& g) {
    std::vector<std::vector<int>> all;
    int total = g.torus_rank();
    int offset = 0;
    for (const auto& f : g.factors) {
        for (const auto& r : factor_positive_roots(f)) {
            std::vector<int> v(static_cast<size_t>(total), 0);
            for (int j = 0; j < f.torus_rank(); ++j) v[(size_t)(offset + j)] = r[(size_t)j];
            all.push_back(std::move(v));
        }
        offset += f.torus_rank();
    }
    return all;
}

std::vector<WeylDatum> weyl_data(const GroupProduct& g, long long max_count) {
    std::vector<std::vector<FactorElt>> per_factor;
    long long total = 1;
    for (const auto& f : g.factors) {
        per_factor.push_back(factor_elements(f));
        total *= static_cast<long long>(per_factor.back().size());
        if (total > max_count)
            throw std::runtime_error("Weyl enumeration bound exceeded (" + std::to_string(total) +
                                     " > " + std::to_string(max_count) + ")");
    }

    int rank = g.torus_rank();
    std::vector<int> offsets;
    {
        int off = 0;
        for (const auto& f : g.factors) { offsets.push_back(off); off += f.torus_rank(); }
    }
    auto proots = positive_roots(g);

    std::vector<WeylDatum> out;
    std::vector<size_t> idx(per_factor.size(), 0);
    bool done = false;
    // Odometer over factor elements; a factorless product still has the
    // single identity element.
    while (true) {
        WeylDatum d;
        d.component.resize(g.factors.size(), 0);
        d.matrix.assign(static_cast<size_t>(rank), std::vector<long long>(static_cast<size_t>(rank), 0));
        for (size_t fi = 0; fi < g.factors.size(); ++fi) {
            const FactorElt& e = per_factor[fi][idx[fi]];
            d.component[fi] = e.tag;
            int off = offsets[fi];
            for (size_t j = 0; j < e.perm.size(); ++j)
                d.matrix[(size_t)(off + e.perm[j])][(size_t)off + j] = e.sign[j];
        }
        // det(w - 1)
        {
            std::vector<std::vector<__int128>> a(static_cast<size_t>(rank),
                                                 std::vector<__int128>(static_cast<size_t>(rank), 0));
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j)
                    a[(size_t)i][(size_t)j] = d.matrix[(size_t)i][(size_t)j] - (i == j ? 1 : 0);
            d.det_w_minus_1 = checked_ll(det_int(std::move(a)));
        }
        d.regular = (d.det_w_minus_1 != 0);
        // sgn0: parity of positive roots of S^0 sent to negative roots
        int flipped = 0;
        for (const auto& r : proots) {
            std::vector<int> img(static_cast<size_t>(rank), 0);
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j)
                    img[(size_t)i] += static_cast<int>(d.matrix[(size_t)i][(size_t)j]) * r[(size_t)j];
            if (!root_positive(img)) ++flipped;
        }
        d.sgn0 = (flipped % 2 == 0) ? +1 : -1;
        out.push_back(std::move(d));

        // advance odometer (last factor fastest)
        size_t pos = per_factor.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < per_factor[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) { done = true; break; }
        }
        if (per_factor.empty() || done) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Diagram exactness
// ---------------------------------------------------------------------------

namespace {

using Mask = uint32_t;

/// Enumerate the image of an F2-linear map given by basis images.
std::set<Mask> image_of(const std::vector<Mask>& basis_images) {
    std::set<Mask> img{0};
    for (Mask b : basis_images) {
        std::set<Mask> next;
        for (Mask v : img) { next.insert(v); next.insert(v ^ b); }
        img = std::move(next);
    }
    return img;
}

/// Kernel of the map x -> xor of basis images selected by bits of x,
/// domain dimension dim.
std::set<Mask> kernel_of(const std::vector<Mask>& basis_images, int dim) {
    std::set<Mask> ker;
    for (Mask x = 0; x < (Mask(1) << dim); ++x) {
        Mask y = 0;
        for (int i = 0; i < dim; ++i)
            if (x & (Mask(1) << i)) y ^= basis_images[(size_t)i];
        if (y == 0) ker.insert(x);
    }
    return ker;
}

} // namespace

DiagramReport diagram_check(const FormalParameter& p) {
    DiagramReport rep;
    ParamClass cls = classify(p);
    rep.family = param_class_name(cls);
    if (cls.kind == ParamClassKind::OtherNonElliptic)
        throw std::invalid_argument("diagram check supports discrete/elliptic/exc1/exc2 shapes only");

    GroupProduct S = centralizer(p);
    auto wd = weyl_data(S);

    std::set<std::vector<std::vector<long long>>> mats, mats0, mats_reg;
    for (const auto& d : wd) {
        mats.insert(d.matrix);
        if (std::all_of(d.component.begin(), d.component.end(), [](int t) { return t == 0; }))
            mats0.insert(d.matrix);
        if (d.regular) mats_reg.insert(d.matrix);
    }
    rep.w_order = static_cast<long long>(mats.size());
    rep.w0_order = static_cast<long long>(mats0.size());
    rep.regular_element_count = static_cast<int>(mats_reg.size());
    if (rep.w_order % rep.w0_order != 0)
        throw std::logic_error("Weyl component counts do not divide");
    rep.r_order = rep.w_order / rep.w0_order;
    // For these shapes the relevant reflection group of the identity
    // component acts faithfully on the torus, so the distinct-matrix count
    // must equal the group order computed from the factor table.
    rep.w_rad_eq_w0 = (S.weyl0_order() == rep.w0_order);

    // Indices of O-factors of S, by label.
    std::map<std::string, int> s_bit_of_label;
    {
        int bit = 0;
        for (const auto& f : S.factors)
            if (f.kind == FactorKind::O) s_bit_of_label[f.label] = bit++;
    }
    int dim_s = static_cast<int>(s_bit_of_label.size());
    rep.s_order = pow2(dim_s);

    // Hermitian part of the minimal Levi: constituents of odd residual
    // multiplicity; its centralizer components give one bit per such
    // constituent. The split-off pair blocks contribute connected GL
    // factors and no component bits.
    std::vector<std::string> herm_labels;
    std::vector<std::string> doubled_labels; // constituents losing a full pair
    for (const auto& c : p.constituents) {
        if (c.mult % 2 == 1) herm_labels.push_back(c.param.id);
        if (c.mult >= 2) doubled_labels.push_back(c.param.id);
    }
    int dim_snn = static_cast<int>(herm_labels.size());
    rep.s_levi_order = pow2(dim_snn);

    // Abstract W coordinates: one bit per doubled constituent whose pair
    // block supports the reflection swapping it with its dual copy.
    int dim_w = 0, dim_w0 = 0;
    switch (cls.kind) {
        case ParamClassKind::Discrete: dim_w = 0; dim_w0 = 0; break;
        case ParamClassKind::EllipticNonDiscrete: dim_w = cls.q; dim_w0 = 0; break;
        case ParamClassKind::Exc1:
        case ParamClassKind::Exc2: dim_w = 1; dim_w0 = 1; break;
        default: break;
    }
    auto fail = [&](const std::string& what) {
        if (rep.first_failure.empty()) rep.first_failure = what;
    };
    if (rep.w_order != pow2(dim_w)) fail("|W| != model order");
    if (rep.w0_order != pow2(dim_w0)) fail("|W0| != model order");

    int dim_r = dim_w - dim_w0;
    rep.n_order = rep.s_levi_order * rep.w_order;

    // nu: S(M)-bits -> S-bits, matching labels (the exc2 tripled
    // constituent's hermitian copy lands in the O(3) component coordinate).
    std::vector<Mask> nu;
    for (const auto& lab : herm_labels) {
        auto it = s_bit_of_label.find(lab);
        if (it == s_bit_of_label.end()) { fail("hermitian factor missing in S"); nu.push_back(0); }
        else nu.push_back(Mask(1) << it->second);
    }
    // mu: W-bits -> S-bits. Elliptic reflections flip the determinant of an
    // O(2) factor; exceptional reflections are realized inside the identity
    // component and map to zero.
    std::vector<Mask> mu;
    if (cls.kind == ParamClassKind::EllipticNonDiscrete) {
        for (const auto& lab : doubled_labels) {
            auto it = s_bit_of_label.find(lab);
            if (it == s_bit_of_label.end()) { fail("doubled factor missing in S"); mu.push_back(0); }
            else mu.push_back(Mask(1) << it->second);
        }
    } else {
        mu.assign(static_cast<size_t>(dim_w), 0);
    }
    // pi: S-bits -> R-bits (project onto the doubled-factor coordinates for
    // elliptic shapes; zero otherwise).
    std::vector<Mask> pi(static_cast<size_t>(dim_s), 0);
    if (cls.kind == ParamClassKind::EllipticNonDiscrete) {
        for (size_t qi = 0; qi < doubled_labels.size(); ++qi) {
            auto it = s_bit_of_label.find(doubled_labels[qi]);
            if (it != s_bit_of_label.end()) pi[(size_t)it->second] = Mask(1) << qi;
        }
    }

    // Row 1: 1 -> S(M) -> N -> W -> 1 with N = S(M) (+) W (split model):
    // injectivity of s -> (s,0), kernel of projection = image, surjectivity.
    {
        std::vector<Mask> incl;
        for (int i = 0; i < dim_snn; ++i) incl.push_back(Mask(1) << i);
        std::vector<Mask> proj;
        for (int i = 0; i < dim_snn; ++i) proj.push_back(0);
        for (int i = 0; i < dim_w; ++i) proj.push_back(Mask(1) << i);
        bool inj = kernel_of(incl, dim_snn).size() == 1;
        bool mid = kernel_of(proj, dim_snn + dim_w) == image_of(incl);
        bool surj = image_of(proj).size() == (size_t)pow2(dim_w);
        rep.row1_exact = inj && mid && surj;
        if (!rep.row1_exact) fail("row 1 (Levi components -> N -> W)");
    }
    // Row 2: 1 -> S(M) -> S -> R -> 1 via nu and pi.
    {
        bool inj = kernel_of(nu, dim_snn).size() == 1;
        bool mid = kernel_of(pi, dim_s) == image_of(nu);
        bool surj = image_of(pi).size() == (size_t)pow2(dim_r);
        rep.row2_exact = inj && mid && surj;
        if (!rep.row2_exact) fail("row 2 (Levi components -> S -> R)");
    }
    // Column 1: 1 -> W0 -> W -> R -> 1 (W0 spans the first dim_w0 bits for
    // the exceptional shapes; R the remaining ones).
    {
        std::vector<Mask> incl;
        for (int i = 0; i < dim_w0; ++i) incl.push_back(Mask(1) << i);
        std::vector<Mask> quo;
        for (int i = 0; i < dim_w; ++i)
            quo.push_back(i < dim_w0 ? 0 : Mask(1) << (i - dim_w0));
        bool inj = kernel_of(incl, dim_w0).size() == 1;
        bool mid = kernel_of(quo, dim_w) == image_of(incl);
        bool surj = image_of(quo).size() == (size_t)pow2(dim_r);
        rep.col1_exact = inj && mid && surj;
        if (!rep.col1_exact) fail("column 1 (W0 -> W -> R)");
    }
    // Column 2: W0 -> N -> S exact at N; the second map sends (s,w) to
    // nu(s) + mu(w).
    {
        std::vector<Mask> w0_in_n;
        for (int i = 0; i < dim_w0; ++i) w0_in_n.push_back(Mask(1) << (dim_snn + i));
        std::vector<Mask> tau;
        for (int i = 0; i < dim_snn; ++i) tau.push_back(nu[(size_t)i]);
        for (int i = 0; i < dim_w; ++i) tau.push_back(mu[(size_t)i]);
        rep.col2_exact = kernel_of(tau, dim_snn + dim_w) == image_of(w0_in_n);
        if (!rep.col2_exact) fail("column 2 (W0 -> N -> S)");
    }

    rep.ok = rep.row1_exact && rep.row2_exact && rep.col1_exact && rep.col2_exact &&
             rep.w_rad_eq_w0 && rep.first_failure.empty();
    return rep;
}

} // namespace ek
