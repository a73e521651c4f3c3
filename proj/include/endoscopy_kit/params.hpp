#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endoscopy_kit/halfint.hpp"

namespace ek {

/// Context a formal parameter lives in: the unitary-group side carries a
/// sign kappa; the linear side carries nothing.
enum class ContextKind { Unitary, Linear };

struct Context {
    ContextKind kind = ContextKind::Unitary;
    int kappa = +1; // meaningful only for Unitary

    static Context unitary(int kappa) { return Context{ContextKind::Unitary, kappa}; }
    static Context linear() { return Context{ContextKind::Linear, +1}; }
    bool is_unitary() const { return kind == ContextKind::Unitary; }
};

/// One simple constituent of a formal parameter.
///
/// m: dimension of the cuspidal/irreducible base; n: dimension of the
/// SU(2)-factor (the parameter is generic iff n = 1); r: dimension of the
/// extra SU(2)-factor appearing only in the linear-group sign rules.
/// parity is +1 (conjugate-orthogonal) or -1 (conjugate-symplectic), and 0
/// ("none") exactly when the constituent is not conjugate self-dual.
struct SimpleParameter {
    std::string id;
    int m = 1;
    int n = 1;
    int r = 1;
    bool self_dual = true;
    int parity = +1; // +1 / -1 / 0 = none

    int dim() const { return m * n * r; }
};

struct Constituent {
    SimpleParameter param;
    int mult = 1; // ell_i >= 1
};

/// A formal parameter: a multiset of simple constituents with
/// multiplicities. Non-self-dual constituents (unitary context) are stored
/// once per dual-pair orbit and counted with dimension 2*dim in the ambient
/// total.
struct FormalParameter {
    Context context;
    int ambient_N = 0;
    std::vector<Constituent> constituents;

    /// Throws std::invalid_argument on any structural violation
    /// (dimension bookkeeping, parity/self-duality consistency, duplicate
    /// ids, non-positive multiplicities).
    void validate() const;
};

/// A character z -> z^a zbar^b of the Weil group of C, with a - b integral.
struct ArchCharacter {
    HalfInt a, b;
    bool conjugate_self_dual() const { return b == -a; }
};

/// The partition of constituent indices by the kappa-sign rule.
struct SignedPartition {
    std::vector<int> I_plus;  // orthogonal-type factors: O(ell)
    std::vector<int> I_minus; // symplectic-type factors: Sp(ell), ell even
    std::vector<int> J;       // non-self-dual orbit pairs: GL(ell)
};

enum class ParamClassKind { Discrete, EllipticNonDiscrete, Exc1, Exc2, OtherNonElliptic };

struct ParamClass {
    ParamClassKind kind;
    int q = 0; // for EllipticNonDiscrete: number of doubled constituents
};

/// Parity of a twist by the n-dimensional SU(2)-representation:
/// (-1)^(n-1) * base_parity.
int parity_of_twist(int base_parity, int n);

/// Sign transfer between the kappa of a simple parameter of shape m x n and
/// the kappa of its base: (-1)^((m-1)(n-1)) * kappa_base. (The exponent
/// mn - m - n - 1 has the same parity; both routes — the direct exponent and
/// the parity chain through (-1)^(N-1) b — agree identically.)
int kappa_of_simple(int m, int n, int kappa_base);

/// +1 (orthogonal) if a - b is even, -1 (symplectic) if odd; requires the
/// character to be conjugate self-dual (b = -a) and a - b integral.
int arch_parity(const ArchCharacter& c);

/// Per-constituent sign kappa_i = (-1)^(dim_i - 1) * parity_i.
int kappa_of_constituent(const FormalParameter& p, int index);

/// Split the constituents into I+/I-/J by the sign rule
/// kappa_i = kappa * (-1)^(N - N_i). Unitary context only; throws if a
/// symplectic-side multiplicity is odd.
SignedPartition signed_partition(const FormalParameter& p);

/// Shape classification (unitary context): Discrete, then Exc1, Exc2,
/// EllipticNonDiscrete(q), else OtherNonElliptic.
ParamClass classify(const FormalParameter& p);

std::string param_class_name(const ParamClass& c);

/// Convenience: the archimedean parameter 2(x,-x) + (1/2,-1/2) + (-1/2,1/2)
/// of ambient dimension 4, with characters merged when x = +-1/2; kappa=+1.
/// The shape drives the four-row centralizer table and the sign tables of
/// the rank-one U(3,1) verification.
FormalParameter u31_arch_parameter(HalfInt x);

} // namespace ek
