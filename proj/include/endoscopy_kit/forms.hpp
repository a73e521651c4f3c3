#pragma once

#include <string>
#include <utility>
#include <vector>

#include "endoscopy_kit/params.hpp"

namespace ek {

/// Behaviour of a place of the base field with respect to the quadratic
/// extension defining the unitary group.
enum class PlaceKind { PAdicSplit, PAdicInert, RealSplit, RealInert, Complex };

std::string place_kind_name(PlaceKind k);
PlaceKind place_kind_from_name(const std::string& s);

enum class GroupFamily { GL, U };

/// Inner-form invariant at a single place, in normal form. Which fields are
/// meaningful depends on the group and the place kind:
///  - GL at any place, or U at a split place: the integer x;
///  - U at an inert p-adic place: the class a in Z/delta (delta in {1,2});
///  - U at an inert real place: the signature (p, q).
struct LocalInvariant {
    long long x = 0;
    int a = 0;
    int p = 0, q = 0;
};

struct Place {
    std::string id;
    PlaceKind kind = PlaceKind::PAdicSplit;
    LocalInvariant inv;
};

struct GlobalInnerFormSpec {
    GroupFamily group = GroupFamily::U;
    int N = 1;
    std::vector<Place> places; // unlisted places are implicitly trivial
};

/// Description of the invariant set for U(N) at an inert place.
struct ULocalInvariantSet {
    PlaceKind kind;
    int N = 1;
    int delta = 1;                               // size of the p-adic inert group
    std::vector<std::pair<int, int>> signatures; // real inert: all (p, q)
};

ULocalInvariantSet u_local_invariants(PlaceKind kind, int N);

/// Description of the allowed GL(N) invariants at a place: the set is
/// modulus * Z (modulus 1 means all integers).
struct GLLocalInvariantSet {
    PlaceKind kind;
    int N = 1;
    long long modulus = 1;
};

GLLocalInvariantSet gl_local_invariants(PlaceKind kind, int N);

/// Throws std::invalid_argument naming the place when its invariant is not
/// in normal form for the given group and N.
void validate_place(GroupFamily group, int N, const Place& place);

/// The mod-2 reduction a_v of a U(N) local invariant used by the global
/// parity condition.
int u_reduction(PlaceKind kind, int N, const LocalInvariant& inv);

struct FeasibilityReport {
    bool feasible = false;
    long long obstruction = 0; // the failing sum when infeasible
    std::string reason;
};

/// Does a collection of local invariants arise from a global inner form?
/// GL: the integer invariants must sum to zero. U: automatic for odd N;
/// for even N the mod-2 reductions must sum to zero.
FeasibilityReport global_feasible(const GlobalInnerFormSpec& spec);

/// Deterministically extend one prescribed local invariant to a feasible
/// global collection: for odd N (or an already-balanced target) all other
/// places stay trivial; otherwise a single auxiliary place "v2" carries the
/// compensating invariant (archimedean inert with signature (N/2, N/2) or
/// (N/2 - 1, N/2 + 1) for U, p-adic with the negated integer for GL).
GlobalInnerFormSpec globalize(GroupFamily group, int N, const Place& target);

/// Shape of a Levi subgroup: for U(N), a quasi-split hermitian part of size
/// N_minus plus general-linear blocks counted once (N = N_minus + 2*sum);
/// for GL(N) just the blocks (N = sum).
struct LeviShape {
    int N_minus = 0;
    std::vector<int> blocks;

    bool linear() const { return N_minus == 0; }
    int total(GroupFamily group) const;
};

/// Does this Levi shape transfer to the inner form described by (kind, inv)?
/// GL over a division algebra of degree d: iff d divides every block.
/// U at an inert p-adic place: always for the quasi-split form, and exactly
/// for the non-linear shapes otherwise. U at a split place follows the GL
/// rule. U at a real place is not decided here and throws.
bool levi_transfers(const LeviShape& shape, GroupFamily group, int N,
                    PlaceKind kind, const LocalInvariant& inv);

/// Minimal Levi shape through which a unitary parameter factors: the
/// odd-multiplicity self-dual constituents stay hermitian, everything else
/// pairs off into general-linear blocks.
LeviShape minimal_levi_shape(const FormalParameter& p);

/// Is the parameter relevant for the given local form, i.e. does its
/// minimal Levi shape transfer?
bool relevance(const FormalParameter& p, PlaceKind kind, const LocalInvariant& inv);

/// One elliptic endoscopic datum at the combinatorial level.
struct EndoTriple {
    int N1 = 0, N2 = 0;
    int kappa1 = 0, kappa2 = 0; // 0 when not applicable (ordinary data)
    int out_order = 1;
};

/// Elliptic endoscopic data for GL(N)-with-involution at the combinatorial
/// level: ordinary data are the splittings N1 >= N2 >= 0 (outer
/// automorphisms of order 2 exactly when N1 = N2); twisted data also carry
/// sign pairs, (1,-1)/(-1,1) when N1 and N2 have equal parity and
/// (1,1)/(-1,-1) otherwise, with only one pair kept when N1 = N2.
std::vector<EndoTriple> endoscopy_enumerate(int N, bool twisted = false);

/// The sign attached to the inner form GL(N/d, D) of GL(N), deg D = d.
int kottwitz_sign_gl(int N, int d);

/// Local field data for the GL sign computations.
struct InnerFormField {
    bool archimedean = false;
    int d = 1; // division-algebra degree: 2 for the real quaternionic form
};

/// The sign a_psi of a linear parameter at the given inner form.
int a_psi(const FormalParameter& p, const InnerFormField& field);

/// Whether the parameter carries a non-empty packet on the inner form
/// described by the field data: each constituent must transfer through one
/// of its two unipotent restrictions (p-adic: d divides f*r or f*m; real
/// quaternionic: f*m even).
bool packet_nonempty(const FormalParameter& p, const InnerFormField& field);

struct RhoCheck {
    bool extends = false;  // class k reaches a character of the reduced centralizer
    int rho_value = 0;     // character value on the distinguished element (0 when !extends)
    int a_value = 1;       // independently computed sign
    bool relevant = false; // non-empty packet: only then is equality asserted
    bool equal = false;
};

/// Cross-check: the character of the reduced centralizer determined by the
/// integer k (the inner-form class) agrees on the distinguished central
/// element with the sign a_psi whenever the packet is non-empty. The center
/// maps onto the reduced centralizer by z -> z^{N/n'} (n' the gcd of the
/// constituent dimensions), so class k corresponds to the character exponent
/// k n'/N; when that is not an integer no character extends and rho_value is
/// left at 0. Validates k against the field data.
RhoCheck rho_spsi_check(const FormalParameter& p, const InnerFormField& field, long long k);

/// Relative Weyl group of a Levi inside U(N): (Z/2)^k semidirect the
/// block-dimension-preserving permutations.
struct LeviWeylGroup {
    int k = 0;                                 // number of general-linear blocks
    std::vector<std::vector<int>> perm_orbits; // indices grouped by equal block size
    long long order = 1;                       // 2^k * prod of orbit factorials
    std::vector<int> t_minus_generators;       // value on the i-th sign flip: (-1)^{N_i}
};

LeviWeylGroup weyl_group_levi(const LeviShape& shape);

/// Value of the sign homomorphism on the element with the given flip
/// pattern (the permutation part never contributes).
int t_minus(const LeviShape& shape, const std::vector<int>& flips);

} // namespace ek
