#pragma once

#include <string>
#include <vector>

#include "endoscopy_kit/centralizers.hpp"
#include "endoscopy_kit/params.hpp"
#include "endoscopy_kit/rational.hpp"

namespace ek {

/// A union of connected components of a product group, stored as the list
/// of selected component tag vectors (one tag per factor, in factor order).
struct ComponentUnion {
    std::vector<std::vector<int>> components;

    /// Every connected component of g.
    static ComponentUnion all_components(const GroupProduct& g);
    /// Just the identity component of g.
    static ComponentUnion identity_component(const GroupProduct& g);
    /// Subset of all_components(g) selected by bits of mask, in the
    /// canonical enumeration order (last factor's tag varies fastest).
    static ComponentUnion from_mask(const GroupProduct& g, unsigned long long mask);

    bool contains(const std::vector<int>& tags) const;
};

/// One conjugacy class of elliptic semisimple elements (order <= 2 with
/// centralizer of maximal rank and no central torus in its connected
/// centralizer).
struct EllipticClass {
    std::vector<int> tags;       ///< component tag per ambient factor
    GroupProduct centralizer0;   ///< connected centralizer inside the identity component
    long long pi0_order = 1;     ///< component count of the full centralizer in the identity component
    bool central = false;        ///< the class is central in the identity component
    std::string pattern;         ///< eigenvalue pattern, e.g. "O(3):(1,2)"
};

/// All elliptic semisimple classes of g. Empty whenever some factor has a
/// positive-dimensional central torus (GL or a nontrivial torus factor).
std::vector<EllipticClass> elliptic_classes(const GroupProduct& g);

/// Weighted orientation count over the selected components:
/// |W(S^0)|^{-1} * sum over torus-regular Weyl coset representatives w of
/// sgn0(w) / |det(w - 1)|.
Rat i_of_S(const GroupProduct& g, const ComponentUnion& u,
           long long max_count = 1000000);

/// Elliptic-class expansion of the same quantity:
/// sum over elliptic classes s in the selected components of
/// |pi_0(Cent(s))|^{-1} * sigma(Cent(s)^0).
Rat e_of_S(const GroupProduct& g, const ComponentUnion& u);

/// The stable constant sigma(G) for a connected group with finite centre
/// (products of Sp(2k) and SO(n), n != 2), defined recursively by
///   i(G) = sum over elliptic classes s of |pi_0(G_s)|^{-1} sigma(G_s^0),
/// solved for the central classes. Memoized. Throws std::domain_error when
/// the centre is infinite (GL, torus, or SO(2)/O(2) factors).
Rat sigma(const GroupProduct& g);

/// Which finite component group normalizes the stable coefficient.
enum class SizeFlag { Pi0S, Pi0SBar };

/// Coefficient sigma(Sbar^0) / |component group| attached to a parameter
/// whose constituents all have trivial symplectic-twist part (n = 1).
Rat stable_mult_coefficient(const FormalParameter& p, SizeFlag flag = SizeFlag::Pi0S);

/// Parse a factor name such as "O(3)", "Sp(2)", "SL(2)" (an alias for
/// Sp(2)), "GL(1)", "SO(4)" or "T(1)".
ClassicalFactor factor_from_name(const std::string& name);

/// Build a product group from factor names.
GroupProduct product_from_names(const std::vector<std::string>& names);

} // namespace ek
