#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "endoscopy_kit/params.hpp"

namespace ek {

enum class FactorKind { O, Sp, GL, SO, Torus };

std::string factor_kind_name(FactorKind k);

/// One classical factor of a centralizer product. size is the defining
/// parameter: O(size), Sp(size) (size even), GL(size), SO(size), or a torus
/// of dimension size.
struct ClassicalFactor {
    FactorKind kind;
    int size;
    std::string label; // constituent id this factor came from (may be empty)

    int torus_rank() const;
    /// Complex dimension of the factor as an algebraic group.
    long long dim() const;
    /// Number of connected components (2 for O(size>=1), else 1).
    int pi0() const;
    /// Order of the Weyl group of the identity component.
    long long weyl0_order() const;
    std::string str() const;
};

/// An ordered product of classical factors modeling a centralizer and its
/// subquotients. The diagonal -1 of the ambient dual group sits in each
/// factor as -identity.
struct GroupProduct {
    std::vector<ClassicalFactor> factors;

    int torus_rank() const;
    long long dim() const;
    long long weyl0_order() const;
    long long component_count() const; // product of factor pi0's
    /// Component tag of the central element -1 (one entry per factor;
    /// nonzero only on O-factors of odd size).
    std::vector<int> minus_one_tag() const;
    /// True if the identity component has finite centre (no GL factor, no
    /// torus factor, no O(2)/SO(2) factor).
    bool identity_component_has_finite_center() const;
    std::string str() const;
};

/// Component-group bookkeeping derived from a centralizer.
struct ComponentData {
    int pi0_rank = 0;          // S_psi-components: elementary abelian 2-group rank
    bool s_natural_torus = false; // linear context: S-natural is a 1-dim torus
    int s_natural_rank = 0;    // unitary context: rank of S-natural (= pi0_rank)
    std::vector<long long> torus_exponents; // linear: reduced block dimensions n_i'
    long long center_exponent = 0;          // linear: z -> z^(N/gcd) into S-natural
    std::vector<int> kill_vector;  // image of -1 in the component group, one bit per O-factor
    int pi0_sbar_rank = 0;     // rank after quotienting by the kill vector
};

/// One element of the (possibly disconnected) Weyl set N_S(T)/T: an integer
/// matrix on the cocharacter lattice plus the component of S it lives on.
struct WeylDatum {
    std::vector<std::vector<long long>> matrix; // torus_rank x torus_rank
    std::vector<int> component;                 // one tag per factor
    long long det_w_minus_1 = 0;
    bool regular = false;
    int sgn0 = +1;
};

/// S_psi as an explicit product: O(ell_i) over I+, Sp(ell_i) over I-,
/// GL(ell_j) over J (unitary); GL(ell_i) per constituent (linear).
GroupProduct centralizer(const FormalParameter& p);

/// Component groups of centralizer(p). The quotient rank drops by one
/// exactly when the image of -1 in the component group is nonzero, i.e.
/// when some orthogonal-side multiplicity is odd.
ComponentData component_data(const GroupProduct& g, const FormalParameter& p);

/// Full enumeration of N_S(T)/T with matrices, determinants, regularity and
/// root-sign characters. Deterministic order. Throws if the total count
/// exceeds max_count.
std::vector<WeylDatum> weyl_data(const GroupProduct& g, long long max_count = 1000000);

/// Positive roots of the identity component, embedded in the full
/// cocharacter coordinate blocks.
std::vector<std::vector<int>> positive_roots(const GroupProduct& g);

/// Exactness report for the component-group/Weyl-group diagram of a
/// parameter sitting on its minimal Levi. All six groups are finite
/// elementary abelian 2-groups in the product model; the maps are explicit
/// F2-linear maps.
struct DiagramReport {
    std::string family;      // discrete / elliptic / exc1 / exc2
    long long w0_order = 0;  // distinct Weyl matrices on the identity component
    long long w_order = 0;   // distinct Weyl matrices over all components
    long long r_order = 0;   // w_order / w0_order
    long long s_levi_order = 0;    // pi0 of the Levi-part centralizer
    long long n_order = 0;         // middle extension (split model)
    long long s_order = 0;         // pi0 of the full centralizer
    bool row1_exact = false; // 1 -> S(M) -> N -> W -> 1
    bool row2_exact = false; // 1 -> S(M) -> S -> R -> 1
    bool col1_exact = false; // 1 -> W0 -> W -> R -> 1
    bool col2_exact = false; // W0 -> N -> S exact at N
    bool w_rad_eq_w0 = true;
    int regular_element_count = -1; // distinct regular Weyl matrices (rank>0 shapes)
    bool ok = false;
    std::string first_failure;
};

/// Builds the diagram for the parameter's minimal Levi (doubled
/// constituents contribute linear blocks) and checks exactness of both rows
/// and both columns. Supported shapes: discrete, elliptic non-discrete,
/// exc1, exc2.
DiagramReport diagram_check(const FormalParameter& p);

} // namespace ek
